import pytest
from hypothesis import given, strategies as st

from semiflat.errors import SizeCapExceeded
from semiflat.semimodule import LEFT, RIGHT, bourne_quotient, free_semimodule, identity, regular_module
from semiflat.semiring import boolean, chain, truncation, zmod
from semiflat.tensor import (
    bounded_tensor,
    induced_tensor_map,
    sum_distribution_map,
    takahashi_tensor,
    tensor,
    theta_ideal,
    theta_module,
    verify_tensor_oracles,
    with_side,
)
from semiflat.zoo import commutative_monoids, semimodules_up_to

import oracles

RINGS = [zmod(4), zmod(6)]
NONRINGS = [boolean(), chain(3), truncation(3)]


def pairs(semirings, bound, cap):
    out = []
    for S in semirings:
        rights = semimodules_up_to(S, bound, RIGHT)
        lefts = semimodules_up_to(S, bound, LEFT)
        out.extend((F, M) for F in rights for M in lefts if F.size * M.size <= cap)
    return out


RING_PAIRS = pairs(RINGS, 4, 16)
SMALL_PAIRS = pairs(NONRINGS, 3, 9)


@pytest.mark.parametrize("F, M", RING_PAIRS, ids=lambda X: X.name)
def test_group_tensor_sizes(F, M):
    # over Z/n every module is an abelian group and the tensor is the group tensor
    assert oracles.is_group(F.add) and oracles.is_group(M.add)
    T = tensor(F, M, cap=16)
    assert T.certified
    assert T.size == oracles.group_tensor_size(F.add, M.add)


@given(st.sampled_from(SMALL_PAIRS))
def test_tensor_identifies_what_relations_force(pair):
    F, M = pair
    T = tensor(F, M, cap=9)
    find, words = oracles.bounded_identifications(F, M, 3)
    roots = {}
    for i, w in enumerate(words):
        roots.setdefault(find(i), set()).add(T.class_of(list(w)))
    assert all(len(classes) == 1 for classes in roots.values())


@given(st.sampled_from([p for p in SMALL_PAIRS if p[0].size * p[1].size <= 6]), st.sampled_from([2, 3]))
def test_balanced_maps_factor_through_tensor(pair, csize):
    F, M = pair
    T = tensor(F, M, cap=9)
    for C in commutative_monoids(csize):
        for beta in oracles.balanced_maps(F, M, C):
            h = []
            for c in T.monoid.elements:
                acc = 0
                for f, m in T.rep_terms(c):
                    acc = C[acc][beta[(f, m)]]
                h.append(acc)
            for f in F.elements:
                for m in M.elements:
                    assert h[T.class_of([(f, m)])] == beta[(f, m)]
            for a in T.monoid.elements:
                for b in T.monoid.elements:
                    assert h[T.monoid.add[a][b]] == C[h[a]][h[b]]


def test_z2_tensor_z2_over_z4():
    S = zmod(4)
    Q, _ = bourne_quotient(regular_module(S, LEFT), {0, S.index_of("2")})
    T = tensor(with_side(Q, RIGHT), Q)
    assert T.certified and T.size == 2


def test_boolean_free_tensor():
    B = boolean()
    T = tensor(free_semimodule(B, 2, RIGHT), free_semimodule(B, 2, LEFT))
    # B^2 (x) B^2 = B^4
    assert T.size == 16


@pytest.mark.parametrize("S", [boolean(), chain(3), chain(4), truncation(3), zmod(4), zmod(6)],
                         ids=lambda S: S.name)
def test_theta_is_iso_on_small_modules(S):
    for M in semimodules_up_to(S, 4, RIGHT):
        theta = theta_module(M, cap=24)
        assert theta.is_injective() and theta.is_surjective()


def test_theta_ideal_z4():
    S = zmod(4)
    A, _ = bourne_quotient(regular_module(S, RIGHT), {0, S.index_of("2")})
    I = {0, S.index_of("2")}
    th = theta_ideal(A, I)
    # A(x)I has two elements, AI = 0
    assert not th.iso and th.AI == frozenset({0})


def test_cap_is_enforced():
    S = chain(3)
    with pytest.raises(SizeCapExceeded):
        tensor(free_semimodule(S, 2, RIGHT), free_semimodule(S, 2, LEFT), cap=20)


@given(st.sampled_from(SMALL_PAIRS))
def test_bounded_route_agrees(pair):
    F, M = pair
    T = tensor(F, M, cap=9)
    B = bounded_tensor(F, M, slack=2, exact=T)
    assert B.sound and B.complete and B.num_classes == T.size


@given(st.sampled_from(SMALL_PAIRS))
def test_oracles_pass(pair):
    F, M = pair
    rep = verify_tensor_oracles(F, M, M, cap=27, max_cokernels=4)
    assert rep.passed, rep.notes


@given(st.sampled_from([p for p in SMALL_PAIRS if p[0].size <= 2]))
def test_sum_distribution(pair):
    F, M = pair
    h = sum_distribution_map(F, M, M, cap=18)
    assert h.is_injective() and h.is_surjective()


def test_induced_map_of_identity_is_identity():
    S = chain(3)
    F = regular_module(S, RIGHT)
    M = regular_module(S, LEFT)
    TM = tensor(F, M)
    h = induced_tensor_map(F, identity(M), TM, TM)
    assert h.map == tuple(range(TM.size))


def test_takahashi_of_cancellative_is_unchanged():
    S = zmod(4)
    F, M = regular_module(S, RIGHT), regular_module(S, LEFT)
    assert takahashi_tensor(F, M).size == 4


def test_takahashi_collapses_idempotent_tensor():
    # an idempotent monoid has a one-element cancellative hull
    S = chain(3)
    assert takahashi_tensor(regular_module(S, RIGHT), regular_module(S, LEFT)).size == 1
