"""Finite semirings given by operation tables.

Elements are dense indices ``0..n-1``.  Every constructor normalizes so that
the additive identity is index 0 and the multiplicative identity is index 1;
``labels`` keeps the human-readable names.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import AxiomViolation, BadParams, SizeCapExceeded, SizeMismatch

DEFAULT_ELEMENT_CAP = 4096

Table = tuple[tuple[int, ...], ...]


def _freeze(table) -> Table:
    return tuple(tuple(int(v) for v in row) for row in table)


@dataclass(frozen=True)
class FiniteSemiring:
    name: str
    add: Table
    mul: Table
    labels: tuple[str, ...] = field(default=(), compare=False)

    zero = 0
    one = 1

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i) for i in range(len(self.add))))

    @property
    def size(self) -> int:
        return len(self.add)

    def __len__(self):
        return len(self.add)

    def __repr__(self):
        return f"FiniteSemiring({self.name!r}, size={self.size})"

    @property
    def elements(self) -> range:
        return range(len(self.add))

    def plus(self, a: int, b: int) -> int:
        return self.add[a][b]

    def times(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def sum(self, items) -> int:
        acc = 0
        for x in items:
            acc = self.add[acc][x]
        return acc

    def index_of(self, label) -> int:
        label = str(label)
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"{self.name} has no element labelled {label!r}") from None

    def label(self, i: int) -> str:
        return self.labels[i]

    def is_commutative(self) -> bool:
        n = self.size
        return all(self.mul[a][b] == self.mul[b][a] for a in range(n) for b in range(a + 1, n))

    def is_additively_idempotent(self) -> bool:
        return all(self.add[a][a] == a for a in self.elements)

    def idempotents(self) -> list[int]:
        return [e for e in self.elements if self.mul[e][e] == e]


def _permute(table, perm):
    """Relabel a table: new index ``perm[old]``."""
    n = len(table)
    inv = [0] * n
    for old, new in enumerate(perm):
        inv[new] = old
    return [[perm[table[inv[i]][inv[j]]] for j in range(n)] for i in range(n)]


def _first(mask: np.ndarray):
    hits = np.argwhere(mask)
    return tuple(int(v) for v in hits[0])


def check_semiring_axioms(add, mul, zero: int = 0, one: int = 1) -> None:
    """Exhaustive check of every semiring law; raises on the first failure."""
    A = np.asarray(add, dtype=np.int64)
    M = np.asarray(mul, dtype=np.int64)
    n = A.shape[0]
    idx = np.arange(n)

    bad = A != A.T
    if bad.any():
        raise AxiomViolation("additive commutativity", _first(bad))
    bad = A[zero] != idx
    if bad.any():
        raise AxiomViolation("additive identity", _first(bad[None, :])[1:])
    bad = A[A[:, :, None], idx[None, None, :]] != A[idx[:, None, None], A[None, :, :]]
    if bad.any():
        raise AxiomViolation("additive associativity", _first(bad))
    bad = (M[one] != idx) | (M[:, one] != idx)
    if bad.any():
        raise AxiomViolation("multiplicative identity", _first(bad[None, :])[1:])
    if zero == one:
        raise AxiomViolation("zero distinct from one", (zero,))
    bad = M[M[:, :, None], idx[None, None, :]] != M[idx[:, None, None], M[None, :, :]]
    if bad.any():
        raise AxiomViolation("multiplicative associativity", _first(bad))
    bad = (M[:, zero] != zero) | (M[zero, :] != zero)
    if bad.any():
        raise AxiomViolation("zero absorption", _first(bad[None, :])[1:])
    # a(b+c) = ab+ac
    lhs = M[idx[:, None, None], A[None, :, :]]
    rhs = A[M[:, :, None], M[:, None, :]]
    bad = lhs != rhs
    if bad.any():
        raise AxiomViolation("left distributivity", _first(bad))
    # (a+b)c = ac+bc
    lhs = M[A[:, :, None], idx[None, None, :]]
    rhs = A[M[:, None, :], M[None, :, :]]
    bad = lhs != rhs
    if bad.any():
        raise AxiomViolation("right distributivity", _first(bad))


def validate_semiring(add, mul, zero: int = 0, one: int = 1, name: str = "S", labels=None) -> FiniteSemiring:
    """Build a :class:`FiniteSemiring` from raw tables after checking all laws."""
    n = len(add)
    if n < 2:
        raise SizeMismatch("a semiring needs at least two elements")
    for tname, t in (("add", add), ("mul", mul)):
        if len(t) != n or any(len(row) != n for row in t):
            raise SizeMismatch(f"{tname} table is not {n}x{n}")
        if any(not (0 <= int(v) < n) for row in t for v in row):
            raise SizeMismatch(f"{tname} table has entries outside [0, {n})")
    if not (0 <= zero < n and 0 <= one < n):
        raise SizeMismatch("zero/one index out of range")
    check_semiring_axioms(add, mul, zero, one)
    labels = list(labels) if labels is not None else [str(i) for i in range(n)]
    if (zero, one) != (0, 1):
        rest = [i for i in range(n) if i not in (zero, one)]
        order = [zero, one] + rest
        perm = [0] * n
        for new, old in enumerate(order):
            perm[old] = new
        add, mul = _permute(add, perm), _permute(mul, perm)
        labels = [labels[old] for old in order]
    return FiniteSemiring(name, _freeze(add), _freeze(mul), tuple(labels))


def _from_elements(name, elems, plus, times, zero, one, label=str) -> FiniteSemiring:
    """Tabulate a semiring over explicit python values, normalizing zero/one."""
    order = [zero, one] + [e for e in elems if e != zero and e != one]
    pos = {e: i for i, e in enumerate(order)}
    add = [[pos[plus(a, b)] for b in order] for a in order]
    mul = [[pos[times(a, b)] for b in order] for a in order]
    return FiniteSemiring(name, _freeze(add), _freeze(mul), tuple(label(e) for e in order))


def boolean() -> FiniteSemiring:
    return _from_elements("boolean", [0, 1], lambda a, b: a | b, lambda a, b: a & b, 0, 1)


def chain(n: int) -> FiniteSemiring:
    """The chain ``0 < 1 < ... < n-1`` with max as addition and min as multiplication."""
    if n < 2:
        raise BadParams("chain needs n >= 2")
    label = str
    if n == 3:
        label = {0: "0", 1: "a", 2: "1"}.__getitem__
    return _from_elements(f"chain:{n}", list(range(n)), max, min, 0, n - 1, label)


def truncation(k: int) -> FiniteSemiring:
    """Natural numbers truncated at ``k-1``: sums and products saturate."""
    if k < 2:
        raise BadParams("truncation needs k >= 2")
    top = k - 1
    return _from_elements(
        f"truncation:{k}", list(range(k)),
        lambda a, b: min(a + b, top), lambda a, b: min(a * b, top), 0, 1,
    )


def zmod(n: int) -> FiniteSemiring:
    if n < 2:
        raise BadParams("zmod needs n >= 2")
    return _from_elements(f"zmod:{n}", list(range(n)), lambda a, b: (a + b) % n, lambda a, b: (a * b) % n, 0, 1)


def product(S: FiniteSemiring, T: FiniteSemiring) -> FiniteSemiring:
    elems = list(itertools.product(S.elements, T.elements))
    return _from_elements(
        f"product({S.name},{T.name})", elems,
        lambda x, y: (S.add[x[0]][y[0]], T.add[x[1]][y[1]]),
        lambda x, y: (S.mul[x[0]][y[0]], T.mul[x[1]][y[1]]),
        (0, 0), (1, 1),
        label=lambda e: f"({S.labels[e[0]]},{T.labels[e[1]]})",
    )


def matmul(S: FiniteSemiring, A, B):
    """Row-by-column product of square matrices given as tuples of rows of indices."""
    n = len(A)
    add, mul = S.add, S.mul
    out = []
    for i in range(n):
        row = []
        Ai = A[i]
        for j in range(n):
            acc = 0
            for k in range(n):
                acc = add[acc][mul[Ai[k]][B[k][j]]]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def matadd(S: FiniteSemiring, A, B):
    return tuple(tuple(S.add[a][b] for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def zero_matrix(n: int):
    return tuple((0,) * n for _ in range(n))


def identity_matrix(n: int):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def all_matrices(S: FiniteSemiring, n: int):
    for flat in itertools.product(S.elements, repeat=n * n):
        yield tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))


def matrix_semiring(S: FiniteSemiring, n: int, cap: int = DEFAULT_ELEMENT_CAP) -> FiniteSemiring:
    """All n x n matrices over ``S``, materialized eagerly up to ``cap`` elements."""
    if n < 1:
        raise BadParams("matrix size must be positive")
    count = S.size ** (n * n)
    if count > cap:
        raise SizeCapExceeded(f"M_{n}({S.name}) has {count} elements > cap {cap}")

    def lab(A):
        return "[" + ";".join(",".join(S.labels[v] for v in row) for row in A) + "]"

    return _from_elements(
        f"matrix:{S.name}:{n}", list(all_matrices(S, n)),
        lambda A, B: matadd(S, A, B), lambda A, B: matmul(S, A, B),
        zero_matrix(n), identity_matrix(n), label=lab,
    )


def opposite_semiring(S: FiniteSemiring) -> FiniteSemiring:
    """Same carrier and addition, multiplication reversed."""
    mul = tuple(tuple(S.mul[b][a] for b in S.elements) for a in S.elements)
    name = S.name[:-3] if S.name.endswith("^op") else S.name + "^op"
    return FiniteSemiring(name, S.add, mul, S.labels)


CATALOG_KINDS = ("boolean", "chain", "truncation", "zmod", "product", "matrix")


def catalog_semiring(kind: str, *params) -> FiniteSemiring:
    if kind == "boolean":
        return boolean()
    if kind == "product":
        if len(params) != 2 or not all(isinstance(p, FiniteSemiring) for p in params):
            raise BadParams("product takes two semirings")
        return product(*params)
    if kind == "matrix":
        if len(params) < 2 or not isinstance(params[0], FiniteSemiring):
            raise BadParams("matrix takes a semiring and a size")
        return matrix_semiring(params[0], int(params[1]), *params[2:])
    ctor = {"chain": chain, "truncation": truncation, "zmod": zmod}.get(kind)
    if ctor is None:
        raise BadParams(f"unknown catalog kind {kind!r}")
    if len(params) != 1:
        raise BadParams(f"{kind} takes one integer parameter")
    try:
        value = int(params[0])
    except (TypeError, ValueError):
        raise BadParams(f"{kind} parameter must be an integer") from None
    return ctor(value)


def _split_top(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def parse_semiring_id(ident: str, cap: int = DEFAULT_ELEMENT_CAP) -> FiniteSemiring:
    """Resolve ids such as ``boolean``, ``chain:4``, ``zmod:6``, ``matrix:chain:4:2``
    or ``product(zmod:2,chain:2)``."""
    ident = ident.strip()
    if ident in ("boolean", "B"):
        return boolean()
    if ident.startswith("product(") and ident.endswith(")"):
        inner = _split_top(ident[len("product("):-1])
        if len(inner) != 2:
            raise BadParams(f"bad product id {ident!r}")
        return product(parse_semiring_id(inner[0], cap), parse_semiring_id(inner[1], cap))
    if ident.endswith("^op"):
        return opposite_semiring(parse_semiring_id(ident[:-3], cap))
    head, _, rest = ident.partition(":")
    if head == "matrix":
        base, _, n = rest.rpartition(":")
        if not base or not n:
            raise BadParams(f"bad matrix id {ident!r}")
        return matrix_semiring(parse_semiring_id(base, cap), int(n), cap)
    if head in ("chain", "truncation", "zmod"):
        return catalog_semiring(head, rest)
    raise BadParams(f"unknown semiring id {ident!r}")


def catalog_ids() -> list[str]:
    return [
        "boolean", "chain:3", "chain:4", "truncation:3", "zmod:4", "zmod:6",
        "product(zmod:2,chain:2)", "matrix:boolean:2", "matrix:chain:4:2",
    ]
