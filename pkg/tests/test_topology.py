import itertools

import pytest
from hypothesis import given, strategies as st

from gyrolab.topology import (
    FiniteTopology,
    TopologyError,
    check_separation,
    enumerate_topologies,
    is_preorder,
    mask,
    members,
    preorder_nbhds,
    topology_from_dict,
)


def closure_oracle(tau, A):
    """Intersection of every closed superset of A."""
    out = tau.full
    for F in tau.closed_sets:
        if A & ~F == 0:
            out &= F
    return out


def raw_topologies(n):
    """Every family of subsets that is a topology, by brute force (tiny n)."""
    full = (1 << n) - 1
    inner = [s for s in range(1, full)]
    for r in range(len(inner) + 1):
        for fam in itertools.combinations(inner, r):
            opens = set(fam) | {0, full}
            if all(a | b in opens and a & b in opens for a in opens for b in opens):
                yield frozenset(opens)


def test_preorder_counts():
    # number of topologies on n labelled points
    assert [sum(1 for _ in preorder_nbhds(n)) for n in range(1, 6)] == [1, 4, 29, 355, 6942]


def test_preorders_match_raw_families():
    for n in (1, 2, 3):
        via_preorders = {tau.opens for tau in enumerate_topologies(n)}
        assert via_preorders == set(raw_topologies(n))


def test_min_nbhd_is_least_open():
    for tau in enumerate_topologies(4):
        for x in range(4):
            m = tau.min_nbhd[x]
            assert m in tau.opens and m >> x & 1
            assert all(m & ~U == 0 for U in tau.opens if U >> x & 1)
        for U in tau.opens:
            assert U == mask([]) or U == _union(tau.min_nbhd[x] for x in members(U))


def _union(ms):
    out = 0
    for m in ms:
        out |= m
    return out


def test_closure_examples():
    sierpinski = FiniteTopology.from_sets(2, [[], [0], [0, 1]])
    assert sierpinski.closure(0) == 0
    assert sierpinski.closure(mask([0])) == 0b11
    assert sierpinski.closed_sets == {0, 0b10, 0b11}
    d = FiniteTopology.discrete(5)
    for A in range(32):
        assert d.closure(A) == A


@given(st.integers(0, 354), st.integers(0, 15), st.integers(0, 15))
def test_closure_properties(k, A, B):
    tau = _TOP4[k]
    cl = tau.closure
    assert cl(A) == closure_oracle(tau, A)
    assert A & ~cl(A) == 0
    assert cl(cl(A)) == cl(A)
    if A & ~B == 0:
        assert cl(A) & ~cl(B) == 0
    assert cl(A | B) == cl(A) | cl(B)
    assert tau.interior(A) == tau.full & ~cl(tau.full & ~A)


_TOP4 = list(enumerate_topologies(4))


def test_separation_examples():
    assert check_separation(FiniteTopology.discrete(3)) == check_separation(FiniteTopology.discrete(3))
    s = check_separation(FiniteTopology.discrete(3))
    assert s.T0 and s.T1 and s.hausdorff and s.regular
    assert not check_separation(FiniteTopology.indiscrete(2)).T0
    s = check_separation(FiniteTopology.from_sets(2, [[], [0], [0, 1]]))
    assert s.T0 and not s.T1


def test_hausdorff_means_discrete():
    for n in range(1, 5):
        for tau in enumerate_topologies(n):
            if check_separation(tau).hausdorff:
                assert tau == FiniteTopology.discrete(n)


def test_regular_matches_definition():
    for tau in enumerate_topologies(3):
        reg = all(
            any(x in members(U) and F & ~V == 0 and not U & V for U in tau.opens for V in tau.opens)
            for F in tau.closed_sets for x in range(3) if not F >> x & 1)
        assert check_separation(tau).regular == reg


@pytest.mark.parametrize("data", [
    {"order": 2, "opens": [[0]]},
    {"order": 2, "opens": [[], [1, 0], [0, 1]]},
    {"order": 2, "opens": [[], [0], [0], [0, 1]]},
    {"order": 2, "opens": [[], [2], [0, 1]]},
    {"order": 3, "opens": [[], [0], [1], [0, 1, 2]]},
    {"order": 0, "opens": []},
    {"opens": []},
])
def test_loader_rejects(data):
    with pytest.raises(TopologyError):
        topology_from_dict(data)


def test_from_min_nbhds_requires_preorder():
    with pytest.raises(TopologyError):
        FiniteTopology.from_min_nbhds(2, [0b10, 0b10])
    assert not is_preorder([0b11, 0b110, 0b100])


def test_subspace():
    tau = FiniteTopology.from_sets(4, [[], [0, 2], [0, 1, 2, 3]])
    sub = tau.subspace([0, 2])
    assert sub == FiniteTopology.indiscrete(2)
