# %% [markdown]
# # Exact extremal numbers on tiny instances
#
# Branch and bound over the lexicographic candidate edges, warm-started with
# the star.

# %%
import math

from tightcycle import compare_constructions, exact_extremal, rows_to_csv

# %%
for r, n in [(2, 5), (3, 4), (3, 5), (3, 6), (4, 6)]:
    res = exact_extremal(r, n)
    print(f"f_{r}({n}) = {res.value:2d}   star {math.comb(n - 1, r - 1):2d}   nodes {res.nodes_explored}")

# %% An extremal 3-graph on six vertices.
print(exact_extremal(3, 6).witness.edges)

# %% With a node budget the answer is only a lower bound.
res = exact_extremal(3, 6, budget=100)
print(res.value, res.exhaustive)

# %% Constructions at a common vertex budget.
print(rows_to_csv(compare_constructions(3, [24, 48], k=2, max_states=10**5)))
