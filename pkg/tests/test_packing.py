import math
from collections import Counter

import pytest

from tightcycle.core import new_bipartite
from tightcycle.girth import generate_high_girth, has_cycle_at_most, shortest_cycle_length
from tightcycle.packing import (
    PackingError,
    PackingFamily,
    copy_seed,
    coverage_stats,
    pack,
    parse_family,
    random_copy,
    serialize_family,
)


def full(n):
    return new_bipartite(n, n, [(x, y) for x in range(n) for y in range(n)])


def union_of_copies(H, t, seed):
    edges = set()
    for i in range(1, t + 1):
        edges |= random_copy(H, copy_seed(seed, i)).edge_set
    return edges


class TestRandomCopy:
    def test_full_is_fixed(self):
        assert random_copy(full(5), 3) == full(5)

    @pytest.mark.parametrize("seed", range(10))
    def test_isomorphism_invariants(self, seed):
        H = generate_high_girth(16, 2, seed=seed)
        C = random_copy(H, seed + 100)
        assert len(C) == len(H)
        assert shortest_cycle_length(C) == shortest_cycle_length(H)
        assert sorted(Counter(x for x, _ in C.edges).values()) == sorted(Counter(x for x, _ in H.edges).values())

    def test_deterministic(self):
        H = generate_high_girth(16, 2, seed=1)
        assert random_copy(H, 9) == random_copy(H, 9)


class TestPack:
    def test_single_copy(self):
        H = generate_high_girth(16, 2, seed=4)
        fam = pack(H, 1, 2, seed=8)
        assert fam.members == (random_copy(H, copy_seed(8, 1)),)
        assert fam.edge_sum == len(H)

    def test_matchings(self):
        H = new_bipartite(4, 4, [(i, i) for i in range(4)])
        fam = pack(H, 2, 2, seed=5)
        union = union_of_copies(H, 2, 5)
        assert fam.edge_sum == len(union) <= 8
        assert not (fam.members[0].edge_set & fam.members[1].edge_set)

    @pytest.mark.parametrize("seed", range(5))
    def test_family_invariants(self, seed):
        n, k = 32, 2
        H = generate_high_girth(n, k, seed=seed)
        fam = pack(H, None, k, seed=seed)
        assert fam.t == n // k
        mult = Counter(e for g in fam.members for e in g.edges)
        assert max(mult.values()) == 1
        assert fam.edge_sum == len(union_of_copies(H, fam.t, seed))
        assert fam.edge_sum <= n * n
        for g in fam.members:
            assert not has_cycle_at_most(g, 2 * k)
        fam.validate()

    def test_prefix_depends_only_on_its_seeds(self):
        H = generate_high_girth(24, 2, seed=2)
        a = pack(H, 4, 2, seed=6)
        b = pack(H, 12, 2, seed=6)
        assert a.members == b.members[:4]

    def test_kt_precondition(self):
        with pytest.raises(PackingError, match="precondition kt > n"):
            pack(full(4), 3, 2)

    def test_short_cycle_rejected(self):
        with pytest.raises(PackingError, match="template has short cycle"):
            pack(full(4), 2, 2)

    def test_eclipsed_members_retained(self):
        fam = pack(full(6), None, 1, seed=0)
        assert fam.t == 6 and len(fam.members) == 6
        assert [len(g) for g in fam.members] == [36, 0, 0, 0, 0, 0]

    def test_validate_names_member(self):
        a = new_bipartite(4, 4, [(0, 0), (1, 1)])
        b = new_bipartite(4, 4, [(1, 1)])
        fam = PackingFamily(4, 2, 2, (a, b))
        with pytest.raises(PackingError, match="member 2"):
            fam.validate()


class TestCoverage:
    def test_full_single(self):
        st = coverage_stats(pack(full(5), 1, 1, seed=0))
        assert st.coverage_ratio == 1
        assert st.predicted_missing_fraction == pytest.approx(math.exp(-1))

    def test_empty_template(self):
        st = coverage_stats(pack(new_bipartite(5, 5, []), 2, 2, seed=0))
        assert st.edge_sum == 0 and st.predicted_missing_fraction == 1

    def test_beats_mean_field_prediction(self):
        # per-edge miss probability is (1 - q)^t < exp(-q t), so coverage should
        # exceed the prediction in most runs
        n, k, t = 64, 2, 32
        wins = 0
        for seed in range(11, 21):
            H = generate_high_girth(n, k, seed=seed)
            st = coverage_stats(pack(H, t, k, seed=seed))
            wins += st.coverage_ratio > 1 - st.predicted_missing_fraction
        assert wins >= 8


def test_family_roundtrip():
    H = generate_high_girth(12, 2, seed=3)
    fam = pack(H, None, 2, seed=3)
    text = serialize_family(fam)
    assert text.startswith(f"# family 12 2 6 3 {fam.edge_sum}\n")
    back = parse_family(text)
    assert back == fam
