import pytest

from semiflat.claims import (
    check_closed_sub_factor,
    check_i_normal,
    check_lemma_exact,
    check_pullback,
    check_r_exact,
    check_retracts,
    check_semi_ex,
    check_sum_flat,
    check_u_sum,
    morphism_family,
)
from semiflat.flatness import TensorCache
from semiflat.semimodule import LEFT, RIGHT, regular_module
from semiflat.semiring import boolean, chain, truncation, zmod
from semiflat.zoo import semimodules_up_to

SEMIRINGS = [boolean(), chain(3), truncation(3), zmod(4)]


@pytest.fixture(scope="module", params=SEMIRINGS, ids=lambda S: S.name)
def catalog(request):
    S = request.param
    return S, semimodules_up_to(S, 3, LEFT), semimodules_up_to(S, 3, RIGHT, min_size=2)


def test_morphism_family_shapes():
    M = regular_module(zmod(4))
    into, out = morphism_family(M)
    assert all(f.cod.size == M.size for f in into)
    assert all(f.dom.size == M.size for f in out)
    assert into and out


@pytest.mark.parametrize("checker", [check_lemma_exact, check_i_normal, check_u_sum, check_pullback,
                                     check_semi_ex])
def test_exactness_claims_hold(catalog, checker):
    S, mods, _ = catalog
    r = checker(mods)
    assert r.checked > 0
    assert r.passed, r.violations[:3]


def test_r_exact_holds(catalog):
    S, mods, rights = catalog
    r = check_r_exact(mods, rights, TensorCache(16))
    assert r.passed, r.violations[:3]


@pytest.mark.parametrize("checker", [check_sum_flat, check_retracts, check_closed_sub_factor])
def test_closure_claims_hold(catalog, checker):
    S, mods, rights = catalog
    r = checker(rights, mods, TensorCache(18))
    assert r.passed, r.violations[:3]


def test_claim_failure_is_reported():
    r = check_lemma_exact(semimodules_up_to(chain(3), 2, LEFT))
    assert r.passed
    for k in range(60):
        r.fail(f"synthetic {k}")
    assert not r.passed
    assert len(r.violations) == 50 and "synthetic 59" in r.violations[-1]
