import itertools

import pytest
from hypothesis import given, strategies as st

from semiflat.errors import NotAdditivelyRegular, SizeCapExceeded
from semiflat.regularity import (
    CONFIRMED,
    PREMISE_FAILS,
    WITNESS_FOUND,
    additive_witnesses,
    bez_neumann_check,
    check_abc,
    ideals,
    is_direct_summand,
    matrix_regularity_scan,
    principal_ideal,
    regularity_profile,
    sflatvon_harness,
    star_inverse,
    vn_witnesses,
)
from semiflat.semimodule import LEFT, RIGHT, regular_module
from semiflat.semiring import boolean, chain, matrix_semiring, product, truncation, zmod

import oracles

CATALOG = [boolean(), chain(3), chain(4), truncation(3), zmod(4), zmod(6), product(zmod(2), chain(2))]


@pytest.mark.parametrize("S", CATALOG + [matrix_semiring(boolean(), 2)], ids=lambda S: S.name)
def test_vn_witnesses_match_brute_force(S):
    brute = oracles.von_neumann(S.mul)
    got = vn_witnesses(S)
    for a in S.elements:
        assert (got[a] is None) == (not brute[a])
        if got[a] is not None:
            assert got[a] == min(brute[a])
    assert regularity_profile(S).vn_regular == all(brute.values())


@pytest.mark.parametrize("S, regular", [
    (chain(3), True), (chain(4), True), (boolean(), True), (zmod(6), True),
    (zmod(4), False), (truncation(3), True), (product(zmod(2), chain(2)), True),
])
def test_known_regularity(S, regular):
    # Z/n is regular iff n is squarefree; chains and B are idempotent; 2*s*2 = 2 in N_3 with s = 1
    assert regularity_profile(S).vn_regular is regular


def test_truncation_is_not_additively_regular_nor_subtractive():
    p = regularity_profile(truncation(3))
    assert not p.additively_regular and not p.subtractive
    assert additive_witnesses(truncation(3))[1] is None


def test_chain4_matrix_counterexample():
    S = chain(4)
    A = [["0", "1"], ["2", "3"]]
    scan = matrix_regularity_scan(S, 2, [A])
    assert len(scan.non_regular) == 1
    idx = [[S.index_of(x) for x in row] for row in A]
    assert not oracles.matrix_regular(S.add, S.mul, idx)


def test_chain4_full_matrix_scan_against_brute_force():
    S = chain(4)
    scan = matrix_regularity_scan(S, 2)
    assert scan.examined == 256
    brute = [A for A in itertools.product(S.elements, repeat=4)
             if not oracles.matrix_regular(S.add, S.mul, [list(A[:2]), list(A[2:])])]
    assert len(scan.non_regular) == len(brute) == 24
    for A, B in scan.witnesses.items():
        assert oracles.matmul(S.add, S.mul, oracles.matmul(S.add, S.mul, A, B), A) == [list(r) for r in A]


def test_matrices_over_field_are_regular():
    # M_n(K) is von Neumann regular for a field K
    assert matrix_regularity_scan(zmod(2), 2).all_regular
    assert matrix_regularity_scan(zmod(3), 2, cap=10**8).all_regular


def test_matrix_scan_cap():
    with pytest.raises(SizeCapExceeded):
        matrix_regularity_scan(chain(4), 3)


def test_star_inverse():
    # additively idempotent: a + b + a = a and b + a + b = b force b = a
    S = product(chain(3), boolean())
    assert all(star_inverse(S, a) == a for a in S.elements)
    # rings: b is the additive inverse
    Z = zmod(6)
    assert all(Z.add[a][star_inverse(Z, a)] == 0 for a in Z.elements)
    with pytest.raises(NotAdditivelyRegular):
        star_inverse(truncation(3), 1)


@pytest.mark.parametrize("S", [chain(3), chain(4), boolean()], ids=lambda S: S.name)
def test_abc_on_chains(S):
    assert check_abc(S) == (True, True, True)
    p = regularity_profile(S)
    assert p.left_bezout and p.right_bezout


@pytest.mark.parametrize("S", CATALOG, ids=lambda S: S.name)
def test_ideals_brute_force(S):
    for side in (LEFT, RIGHT):
        R = regular_module(S, side)
        assert {I.members for I in ideals(S, side)} == set(oracles.all_subsemimodules(R.add, R.action))


@given(st.sampled_from(CATALOG), st.data())
def test_principal_ideals(S, data):
    c = data.draw(st.sampled_from(list(S.elements)))
    I = principal_ideal(S, c, LEFT)
    assert I == frozenset(S.mul[s][c] for s in S.elements)
    assert c in I
    assert all(S.add[x][y] in I for x in I for y in I)


def test_chain3_ideal_not_summand():
    S = chain(3)
    a = S.index_of("a")
    assert not is_direct_summand(S, {0, a}).summand
    assert is_direct_summand(S, set(S.elements)).summand


def test_z6_summand():
    S = zmod(6)
    I = {S.index_of(x) for x in ("0", "2", "4")}
    v = is_direct_summand(S, I)
    assert v.summand and v.complement.members == {S.index_of("0"), S.index_of("3")}


def test_direct_summand_brute_force():
    for S in CATALOG:
        for I in ideals(S, LEFT):
            brute = any(
                len({S.add[i][j] for i in I.members for j in J.members}) == S.size == len(I) * len(J)
                for J in ideals(S, LEFT))
            assert is_direct_summand(S, I).summand == brute


def test_sflatvon_harness():
    r = sflatvon_harness(zmod(4), 4)
    assert r.status == WITNESS_FOUND
    side, A, ideal = r.witness
    assert A.size == 2 and ideal.members == frozenset({0, zmod(4).index_of("2")})
    assert sflatvon_harness(chain(3)).status == PREMISE_FAILS
    assert sflatvon_harness(truncation(3)).status == PREMISE_FAILS


def test_bez_neumann():
    r = bez_neumann_check(chain(3), 4)
    assert r.status == CONFIRMED and not r.refutations and r.checked > 0
    assert bez_neumann_check(zmod(4), 3).status == PREMISE_FAILS


def test_noncommutative_profile():
    M2 = matrix_semiring(boolean(), 2)
    p = regularity_profile(M2)
    assert p.vn_regular
