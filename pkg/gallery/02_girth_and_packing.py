# %% [markdown]
# # High-girth templates and random packings
#
# A random bipartite graph is thinned until it has no cycle of length at
# most 2k, then randomly relabelled copies are peeled into an edge-disjoint
# family.

# %%
import numpy as np

from tightcycle import coverage_stats, generate_high_girth, pack, shortest_cycle_length

# %%
for n in (16, 64, 256):
    for k in (2, 3):
        sizes = [len(generate_high_girth(n, k, seed=s)) for s in range(5)]
        print(f"n={n:3d} k={k} edges/n: {np.round(np.array(sizes) / n, 2)}")

# %% Girth of one template.
G = generate_high_girth(64, 2, seed=3)
print("edges", len(G), "girth", shortest_cycle_length(G))

# %% Pack t = n // k copies; later copies lose whatever earlier ones took.
fam = pack(G, None, 2, seed=3)
print([len(g) for g in fam.members])
st = coverage_stats(fam)
print(f"covered {st.coverage_ratio:.3f} of K_(n,n); mean-field predicts "
      f"{1 - st.predicted_missing_fraction:.3f}")
