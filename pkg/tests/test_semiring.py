import itertools

import pytest
from hypothesis import given, strategies as st

from semiflat.errors import AxiomViolation, BadParams, SizeCapExceeded, SizeMismatch
from semiflat.semiring import (
    boolean,
    catalog_ids,
    chain,
    check_semiring_axioms,
    matmul,
    matrix_semiring,
    opposite_semiring,
    parse_semiring_id,
    product,
    truncation,
    validate_semiring,
    zmod,
)

import oracles

CATALOG = [boolean(), chain(3), chain(4), chain(5), truncation(3), truncation(4), zmod(4), zmod(6),
           product(zmod(2), chain(2)), matrix_semiring(boolean(), 2)]


@pytest.mark.parametrize("S", CATALOG, ids=lambda S: S.name)
def test_catalog_satisfies_axioms(S):
    assert oracles.semiring_axioms_hold(S.add, S.mul)
    check_semiring_axioms(S.add, S.mul)


@pytest.mark.parametrize("ident", catalog_ids())
def test_catalog_ids_resolve(ident):
    S = parse_semiring_id(ident)
    assert S.name == ident or ident == "boolean"
    assert S.zero == 0 and S.one == 1


def test_chain_is_max_min():
    S = chain(4)
    value = {i: int(lab) for i, lab in enumerate(S.labels)}
    for a, b in itertools.product(S.elements, repeat=2):
        assert value[S.add[a][b]] == max(value[a], value[b])
        assert value[S.mul[a][b]] == min(value[a], value[b])
    assert S.labels[S.one] == "3"


def test_chain3_labels():
    S = chain(3)
    assert S.labels == ("0", "1", "a")
    a = S.index_of("a")
    assert S.mul[a][a] == a and S.add[a][S.one] == S.one


def test_truncation_saturates():
    S = truncation(3)
    two = S.index_of("2")
    assert S.add[S.one][S.one] == two
    assert S.add[two][S.one] == two
    assert S.mul[two][two] == two


def test_zmod_is_ring_arithmetic():
    S = zmod(6)
    v = [int(x) for x in S.labels]
    for a, b in itertools.product(S.elements, repeat=2):
        assert v[S.add[a][b]] == (v[a] + v[b]) % 6
        assert v[S.mul[a][b]] == (v[a] * v[b]) % 6


def test_matrix_semiring_size_and_product():
    B = boolean()
    M = matrix_semiring(B, 2)
    assert M.size == 16
    assert oracles.semiring_axioms_hold(M.add, M.mul)
    assert not M.is_commutative()
    with pytest.raises(SizeCapExceeded):
        matrix_semiring(chain(4), 3)


def test_opposite_reverses_products():
    M = matrix_semiring(boolean(), 2)
    Mo = opposite_semiring(M)
    for a, b in itertools.product(M.elements, repeat=2):
        assert Mo.mul[a][b] == M.mul[b][a]
    assert opposite_semiring(Mo).mul == M.mul


@pytest.mark.parametrize("bad, axiom", [
    ("comm", "additive commutativity"),
    ("dist", "distributivity"),
    ("absorb", "zero absorption"),
])
def test_broken_tables_are_rejected(bad, axiom):
    S = chain(3)
    add = [list(r) for r in S.add]
    mul = [list(r) for r in S.mul]
    if bad == "comm":
        add[1][2] = 0
    elif bad == "dist":
        # a*a = 1 instead of a
        mul[2][2] = 1
    else:
        mul[2][0] = 2
    with pytest.raises(AxiomViolation) as exc:
        validate_semiring(add, mul)
    assert axiom.split()[-1] in exc.value.axiom
    assert not oracles.semiring_axioms_hold(add, mul)


def test_validate_rejects_shapes():
    with pytest.raises(SizeMismatch):
        validate_semiring([[0, 1], [1]], [[0, 0], [0, 1]])
    with pytest.raises(SizeMismatch):
        validate_semiring([[0, 2], [2, 0]], [[0, 0], [0, 1]])


def test_validate_normalizes_zero_and_one():
    # boolean semiring with zero stored at index 1
    add = [[0, 0], [0, 1]]
    mul = [[0, 1], [1, 1]]
    S = validate_semiring(add, mul, zero=1, one=0, labels=["T", "F"])
    assert S.labels == ("F", "T")
    assert S.add == boolean().add and S.mul == boolean().mul


@pytest.mark.parametrize("ident", ["chain:1", "zmod:x", "nope", "product(chain:3)"])
def test_bad_ids(ident):
    with pytest.raises((BadParams, ValueError)):
        parse_semiring_id(ident)


@given(st.lists(st.integers(0, 3), min_size=12, max_size=12))
def test_matmul_associative_over_chain4(entries):
    S = chain(4)
    A = (tuple(entries[0:2]), tuple(entries[2:4]))
    B = (tuple(entries[4:6]), tuple(entries[6:8]))
    C = (tuple(entries[8:10]), tuple(entries[10:12]))
    assert matmul(S, matmul(S, A, B), C) == matmul(S, A, matmul(S, B, C))
    assert [list(r) for r in matmul(S, A, B)] == oracles.matmul(S.add, S.mul, A, B)


@given(st.sampled_from(CATALOG[:8]), st.data())
def test_product_is_componentwise(S, data):
    T = chain(3)
    P = product(S, T)
    pair = {f"({S.labels[i]},{T.labels[j]})": (i, j) for i in S.elements for j in T.elements}
    x, y = (data.draw(st.sampled_from(list(P.elements))) for _ in range(2))
    (a, b), (c, d) = pair[P.labels[x]], pair[P.labels[y]]
    assert pair[P.labels[P.add[x][y]]] == (S.add[a][c], T.add[b][d])
    assert pair[P.labels[P.mul[x][y]]] == (S.mul[a][c], T.mul[b][d])
