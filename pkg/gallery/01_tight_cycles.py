# %% [markdown]
# # Tight cycles and the detector
#
# A tight cycle in an r-uniform hypergraph is a cyclic vertex sequence in
# which every r consecutive vertices form an edge.

# %%
import itertools

from tightcycle import (
    TightCycleWitness,
    complete_r_partite,
    find_tight_cycle,
    new_hypergraph,
    parse,
    serialize,
    star,
    verify_witness,
)

# %% All four triples on four vertices close up into a 4-cycle.
K4 = new_hypergraph(3, 4, itertools.combinations(range(4), 3))
w = find_tight_cycle(K4)
print(w.format())
print("windows:", w.windows(3))

# %% The star (every triple through vertex 0) has none.
S = star(3, 8)
print(len(S), "edges, cycle:", find_tight_cycle(S))

# %% Length filters: K_{2,2,2} only has cycles whose length is a multiple of 3.
P = complete_r_partite(3, [2, 2, 2])
for ell in (4, 5, 6):
    print(ell, find_tight_cycle(P, min_length=ell, max_length=ell))

# %% Witnesses are checked independently of the search.
print(verify_witness(K4, TightCycleWitness((2, 0, 3, 1))))

# %% The edge-list text format round-trips.
text = serialize(P)
print(text)
assert parse(text) == P
