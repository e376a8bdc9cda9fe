import pytest
from hypothesis import given, strategies as st

from semiflat.flatness import (
    FLAVOURS,
    TensorCache,
    flatness_survey,
    flatness_wrt,
    lemma360_check,
    left_ideals,
    s_flatness,
)
from semiflat.semimodule import (
    LEFT,
    RIGHT,
    bourne_quotient,
    direct_sum,
    free_semimodule,
    regular_module,
    restrict_to,
)
from semiflat.semiring import boolean, chain, truncation, zmod
from semiflat.tensor import with_side
from semiflat.zoo import semimodules_up_to

import oracles

CACHE = TensorCache(cap=24)


def z2_over_z4():
    S = zmod(4)
    Q, _ = bourne_quotient(regular_module(S, LEFT), {0, S.index_of("2")})
    return S, with_side(Q, RIGHT)


def test_z2_not_flat_over_z4():
    S, Z2 = z2_over_z4()
    v = flatness_wrt(Z2, regular_module(S, LEFT), cache=CACHE)
    assert (v.m_flat, v.i_flat, v.e_flat) == (False, False, False)
    two = S.index_of("2")
    assert all(v.witnesses[k].members == frozenset({0, two}) for k in FLAVOURS)
    assert v.consistent


@pytest.mark.parametrize("S", [boolean(), chain(3), truncation(3), zmod(4)], ids=lambda S: S.name)
def test_regular_module_is_flat_against_everything(S):
    F = regular_module(S, RIGHT)
    for M in semimodules_up_to(S, 4, LEFT):
        v = flatness_wrt(F, M, cache=CACHE)
        assert (v.m_flat, v.i_flat, v.e_flat) == (True, True, True)


def _group_is_free_over_z4(M) -> bool:
    # Z/4 is local, so a finite flat module is free: a sum of copies of Z/4
    return sorted(oracles.elementary_divisors(M.add)) in ([], [4], [4, 4])


def test_flat_modules_over_z4_are_free():
    S = zmod(4)
    targets = semimodules_up_to(S, 4, LEFT)
    for F in semimodules_up_to(S, 4, RIGHT):
        flat = all(flatness_wrt(F, M, cache=CACHE).m_flat for M in targets)
        assert flat == _group_is_free_over_z4(F), F.name


def test_everything_is_flat_over_z6():
    S = zmod(6)
    targets = semimodules_up_to(S, 4, LEFT)
    for F in semimodules_up_to(S, 4, RIGHT):
        for M in targets:
            v = flatness_wrt(F, M, cache=CACHE)
            assert (v.m_flat, v.i_flat, v.e_flat) == (True, True, True)


POOL = [(F, M) for S in (boolean(), chain(3), truncation(3))
        for F in semimodules_up_to(S, 3, RIGHT) for M in semimodules_up_to(S, 3, LEFT)]


@given(st.sampled_from(POOL))
def test_inclusions_and_route_agreement(pair):
    F, M = pair
    v = flatness_wrt(F, M, cache=CACHE)
    assert v.consistent
    assert not v.e_flat or v.i_flat
    assert not v.m_flat or v.i_flat
    for k in FLAVOURS:
        assert set(v.routes[k]) == {"def", "ses"}


@given(st.sampled_from(POOL))
def test_routes_run_separately(pair):
    F, M = pair
    both = flatness_wrt(F, M, cache=CACHE)
    d = flatness_wrt(F, M, route="def", cache=CACHE)
    s = flatness_wrt(F, M, route="ses", cache=CACHE)
    for k in FLAVOURS:
        assert d.flag(k) == s.flag(k) == both.flag(k)


@given(st.sampled_from(POOL))
def test_m_flat_matches_brute_force_injectivity(pair):
    # F is M-m-flat iff sum f_i (x) l_i = sum f'_j (x) l'_j in F(x)L whenever it holds in F(x)M
    F, M = pair
    v = flatness_wrt(F, M, cache=CACHE)
    TM = CACHE.get(F, M)
    expected = True
    for L in oracles.all_subsemimodules(M.add, M.action):
        inc = restrict_to(M, L)
        TL = CACHE.get(F, inc.dom)
        seen = {}
        for terms, c in TL.all_forms():
            image = TM.class_of([(f, inc.map[x]) for f, x in terms])
            if seen.setdefault(image, c) != c:
                expected = False
    assert v.m_flat == expected


def test_direct_sum_flatness_is_conjunction():
    S, Z2 = z2_over_z4()
    R = regular_module(S, RIGHT)
    M = regular_module(S, LEFT)
    D = direct_sum(R, Z2).module
    v = flatness_wrt(D, M, cache=TensorCache(cap=32))
    assert v.m_flat is False
    B = boolean()
    BR = regular_module(B, RIGHT)
    for N in semimodules_up_to(B, 4, LEFT):
        v2 = flatness_wrt(direct_sum(BR, BR).module, N, cache=TensorCache(cap=16))
        assert v2.m_flat is True and v2.e_flat is True


def test_s_flatness_examples():
    S, Z2 = z2_over_z4()
    v = s_flatness(Z2, cache=CACHE)
    assert v.m_flat is False and v.witnesses["m"].members == frozenset({0, S.index_of("2")})
    C3 = chain(3)
    v = s_flatness(regular_module(C3, RIGHT), cache=CACHE)
    assert (v.m_flat, v.i_flat, v.e_flat) == (True, True, True)
    assert v.consistent


@pytest.mark.parametrize("S", [boolean(), chain(3), zmod(4), zmod(6), truncation(3)], ids=lambda S: S.name)
def test_left_ideals_brute_force(S):
    R = regular_module(S, LEFT)
    assert {I.members for I in left_ideals(S)} == set(oracles.all_subsemimodules(R.add, R.action))


def test_lemma360_examples():
    S = zmod(4)
    F = regular_module(S, RIGHT)
    two = S.index_of("2")
    r = lemma360_check(F, {0, two}, {0, two})
    assert r.KI == frozenset({0}) and r.FI == frozenset({0, two}) and not r.equal
    C = chain(3)
    a = C.index_of("a")
    r = lemma360_check(regular_module(C, RIGHT), {0, a}, {0, a})
    assert r.KI == frozenset({0, a}) == r.meet and r.equal
    assert lemma360_check(F, {0}, {0, two}).equal


def test_survey_z4():
    r = flatness_survey(zmod(4), 4)
    assert not r.violations and r.inconclusive == 0
    for e in r.entries:
        assert e.member("e") == e.member("m") == _group_is_free_over_z4(e.module)
    assert all(row["e"] and row["m"] for row in r.free_modules.values())


def test_survey_boolean_bound3():
    r = flatness_survey(boolean(), 3)
    assert not r.violations


def test_survey_finds_strictness_over_chain3():
    r = flatness_survey(chain(3), 3)
    assert not r.violations
    assert r.strictness["i_not_e"]
    assert set(r.members("e")) <= set(r.members("i"))
    assert set(r.members("m")) <= set(r.members("i"))


def test_free_module_flat_boolean():
    B = boolean()
    F = free_semimodule(B, 2, RIGHT)
    for M in semimodules_up_to(B, 4, LEFT):
        v = flatness_wrt(F, M, cache=TensorCache(cap=16))
        assert v.m_flat and v.e_flat
