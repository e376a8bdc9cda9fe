"""Finite semimodules, their subobjects, quotients and morphisms.

A :class:`FiniteCommutativeMonoid` is the additive skeleton; a
:class:`FiniteSemimodule` adds a scalar action of a :class:`FiniteSemiring`
on a stated side.  ``action[s][m]`` is ``s*m`` for left modules and ``m*s``
for right modules, so linearity reads the same on both sides.

Subsets of a carrier are ``frozenset`` objects of element indices.  Everything
that only needs addition (kernels, closures, normality) works on plain
monoids too, which is how the tensor monoids are classified.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import AxiomViolation, IllDefined, SizeCapExceeded, SizeMismatch
from .semiring import FiniteSemiring, Table, _freeze

DEFAULT_MODULE_CAP = 4096
DEFAULT_ENUM_CAP = 10

LEFT, RIGHT = "left", "right"


class UnionFind:
    """Disjoint sets over ``0..n-1``; the root of a set is its smallest member."""

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra < rb:
            self.parent[rb] = ra
        else:
            self.parent[ra] = rb
        return True

    def labels(self) -> list[int]:
        """Class index per element, classes numbered by their smallest member."""
        roots = [self.find(x) for x in range(len(self.parent))]
        number: dict[int, int] = {}
        out = []
        for r in roots:
            if r not in number:
                number[r] = len(number)
            out.append(number[r])
        return out


@dataclass(frozen=True, eq=False, kw_only=True)
class FiniteCommutativeMonoid:
    add: Table
    name: str = "M"
    labels: tuple[str, ...] = ()

    zero = 0

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i) for i in range(len(self.add))))

    @property
    def size(self) -> int:
        return len(self.add)

    def __len__(self):
        return len(self.add)

    @property
    def elements(self) -> range:
        return range(len(self.add))

    @property
    def has_action(self) -> bool:
        return False

    def plus(self, a: int, b: int) -> int:
        return self.add[a][b]

    def sum(self, items: Iterable[int]) -> int:
        add = self.add
        acc = 0
        for x in items:
            acc = add[acc][x]
        return acc

    def __repr__(self):
        return f"{type(self).__name__}({self.name!r}, size={self.size})"


@dataclass(frozen=True, eq=False, kw_only=True)
class FiniteSemimodule(FiniteCommutativeMonoid):
    base: FiniteSemiring
    side: str
    action: Table

    @property
    def has_action(self) -> bool:
        return True

    def act(self, s: int, m: int) -> int:
        return self.action[s][m]


def same_structure(A: FiniteCommutativeMonoid, B: FiniteCommutativeMonoid) -> bool:
    """Equal tables (not isomorphism)."""
    if A.add != B.add:
        return False
    if A.has_action != B.has_action:
        return False
    if A.has_action:
        return A.base == B.base and A.side == B.side and A.action == B.action
    return True


# -- validation ------------------------------------------------------------------------


def check_monoid_axioms(add) -> None:
    n = len(add)
    for a in range(n):
        if add[0][a] != a or add[a][0] != a:
            raise AxiomViolation("additive identity", (a,))
    for a in range(n):
        for b in range(a + 1, n):
            if add[a][b] != add[b][a]:
                raise AxiomViolation("additive commutativity", (a, b))
    for a in range(n):
        row = add[a]
        for b in range(n):
            ab = row[b]
            for c in range(n):
                if add[ab][c] != row[add[b][c]]:
                    raise AxiomViolation("additive associativity", (a, b, c))


def check_action_axioms(S: FiniteSemiring, side: str, add, action) -> None:
    n = len(add)
    for m in range(n):
        if action[1][m] != m:
            raise AxiomViolation("unitality", (m,))
        if action[0][m] != 0:
            raise AxiomViolation("zero scalar", (m,))
    for s in S.elements:
        if action[s][0] != 0:
            raise AxiomViolation("zero element", (s,))
    for s in S.elements:
        act_s = action[s]
        for t in S.elements:
            act_t = action[t]
            act_sum = action[S.add[s][t]]
            for m in range(n):
                if act_sum[m] != add[act_s[m]][act_t[m]]:
                    raise AxiomViolation("scalar distributivity", (s, t, m))
    for s in S.elements:
        act_s = action[s]
        for m in range(n):
            for k in range(n):
                if act_s[add[m][k]] != add[act_s[m]][act_s[k]]:
                    raise AxiomViolation("vector distributivity", (s, m, k))
    for s in S.elements:
        for t in S.elements:
            st = action[S.mul[s][t]]
            for m in range(n):
                # left: (st)m = s(tm); right: m(st) = (ms)t
                other = action[s][action[t][m]] if side == LEFT else action[t][action[s][m]]
                if st[m] != other:
                    raise AxiomViolation("action associativity", (s, t, m))


def validate_monoid(add, name: str = "M", labels=None) -> FiniteCommutativeMonoid:
    n = len(add)
    if n < 1 or any(len(row) != n for row in add):
        raise SizeMismatch("addition table must be square and non-empty")
    if any(not (0 <= int(v) < n) for row in add for v in row):
        raise SizeMismatch("addition table entries out of range")
    check_monoid_axioms(add)
    return FiniteCommutativeMonoid(add=_freeze(add), name=name, labels=tuple(labels or ()))


def validate_semimodule(S: FiniteSemiring, side: str, add, action, name: str = "M", labels=None) -> FiniteSemimodule:
    if side not in (LEFT, RIGHT):
        raise SizeMismatch(f"side must be 'left' or 'right', got {side!r}")
    n = len(add)
    if n < 1 or any(len(row) != n for row in add):
        raise SizeMismatch("addition table must be square and non-empty")
    if len(action) != S.size or any(len(row) != n for row in action):
        raise SizeMismatch(f"action table must be {S.size}x{n}")
    for t in (add, action):
        if any(not (0 <= int(v) < n) for row in t for v in row):
            raise SizeMismatch("table entries out of range")
    check_monoid_axioms(add)
    check_action_axioms(S, side, add, action)
    return FiniteSemimodule(
        add=_freeze(add), name=name, labels=tuple(labels or ()), base=S, side=side, action=_freeze(action)
    )


def _trusted(template: FiniteCommutativeMonoid, add, action=None, name=None, labels=None):
    """Build a structure of the same kind as ``template`` from tables known to be valid."""
    name = name or template.name
    if template.has_action:
        return FiniteSemimodule(
            add=_freeze(add), action=_freeze(action), base=template.base, side=template.side,
            name=name, labels=tuple(labels or ()),
        )
    return FiniteCommutativeMonoid(add=_freeze(add), name=name, labels=tuple(labels or ()))


# -- standard constructions -------------------------------------------------------------


def regular_module(S: FiniteSemiring, side: str = LEFT) -> FiniteSemimodule:
    """``S`` acting on itself by multiplication."""
    if side == LEFT:
        action = S.mul
    else:
        action = tuple(tuple(S.mul[m][s] for m in S.elements) for s in S.elements)
    return FiniteSemimodule(add=S.add, action=action, base=S, side=side, name=f"{S.name}_{side[0]}", labels=S.labels)


def zero_module(S: FiniteSemiring | None = None, side: str = LEFT):
    if S is None:
        return FiniteCommutativeMonoid(add=((0,),), name="0")
    return FiniteSemimodule(add=((0,),), action=((0,),) * S.size, base=S, side=side, name="0")


def _radix_encode(coords: Sequence[int], radices: Sequence[int]) -> int:
    idx, mult = 0, 1
    for c, r in zip(coords, radices):
        idx += c * mult
        mult *= r
    return idx


def _radix_decode(idx: int, radices: Sequence[int]) -> tuple[int, ...]:
    out = []
    for r in radices:
        out.append(idx % r)
        idx //= r
    return tuple(out)


def product_structure(factors: Sequence[FiniteCommutativeMonoid], name: str | None = None, cap: int = DEFAULT_MODULE_CAP):
    """Componentwise structure on the cartesian product; tuple ``(0,...,0)`` is index 0."""
    radices = [F.size for F in factors]
    total = 1
    for r in radices:
        total *= r
    if total > cap:
        raise SizeCapExceeded(f"product of sizes {radices} = {total} exceeds cap {cap}")
    tuples = [_radix_decode(i, radices) for i in range(total)]
    add = [
        [_radix_encode([F.add[x][y] for F, x, y in zip(factors, a, b)], radices) for b in tuples]
        for a in tuples
    ]
    if not factors:
        return zero_module(), [()]
    first = factors[0]
    action = None
    if first.has_action:
        S = first.base
        action = [
            [_radix_encode([F.action[s][x] for F, x in zip(factors, a)], radices) for a in tuples]
            for s in S.elements
        ]
    labels = ["(" + ",".join(F.labels[x] for F, x in zip(factors, a)) + ")" for a in tuples]
    name = name or " + ".join(F.name for F in factors)
    return _trusted(first, add, action, name=name, labels=labels), tuples


def free_semimodule(S: FiniteSemiring, n: int, side: str = LEFT, cap: int = DEFAULT_MODULE_CAP) -> FiniteSemimodule:
    if n == 0:
        return zero_module(S, side)
    R = regular_module(S, side)
    F, _ = product_structure([R] * n, name=f"{S.name}^{n}_{side[0]}", cap=cap)
    return F


def free_structure_maps(S: FiniteSemiring, n: int, side: str = LEFT, cap: int = DEFAULT_MODULE_CAP):
    """``S^n`` with its coordinate injections and projections."""
    R = regular_module(S, side)
    F = free_semimodule(S, n, side, cap)
    radices = [S.size] * n
    inj = [
        Morphism(R, F, tuple(_radix_encode([s if j == i else 0 for j in range(n)], radices) for s in S.elements))
        for i in range(n)
    ]
    proj = [Morphism(F, R, tuple(_radix_decode(x, radices)[i] for x in F.elements)) for i in range(n)]
    return F, inj, proj


# -- morphisms ----------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Morphism:
    dom: FiniteCommutativeMonoid
    cod: FiniteCommutativeMonoid
    map: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.map[x]

    def __repr__(self):
        return f"Morphism({self.dom.name} -> {self.cod.name}, {self.map})"

    def image(self) -> frozenset[int]:
        return frozenset(self.map)

    def kernel(self) -> frozenset[int]:
        return frozenset(x for x, y in enumerate(self.map) if y == 0)

    def is_injective(self) -> bool:
        return len(set(self.map)) == len(self.map)

    def is_surjective(self) -> bool:
        return len(set(self.map)) == self.cod.size

    def is_zero(self) -> bool:
        return all(y == 0 for y in self.map)

    def same_as(self, other: "Morphism") -> bool:
        return self.map == other.map


MonoidMap = Morphism


def linearity_violation(dom, cod, fmap) -> tuple | None:
    """First law broken by ``fmap`` as a map ``dom -> cod`` (``None`` if linear)."""
    if len(fmap) != dom.size or any(not (0 <= y < cod.size) for y in fmap):
        return ("shape", ())
    if fmap[0] != 0:
        return ("zero", (0,))
    da, ca = dom.add, cod.add
    for a in dom.elements:
        fa = fmap[a]
        row = da[a]
        for b in range(a, dom.size):
            if fmap[row[b]] != ca[fa][fmap[b]]:
                return ("additivity", (a, b))
    if dom.has_action and cod.has_action:
        for s in dom.base.elements:
            for a in dom.elements:
                if fmap[dom.action[s][a]] != cod.action[s][fmap[a]]:
                    return ("linearity", (s, a))
    return None


def validate_morphism(dom, cod, fmap) -> Morphism:
    if dom.has_action and cod.has_action and (dom.base != cod.base or dom.side != cod.side):
        raise SizeMismatch("morphism between semimodules over different semirings or sides")
    fmap = tuple(int(v) for v in fmap)
    bad = linearity_violation(dom, cod, fmap)
    if bad is not None:
        raise AxiomViolation(bad[0], bad[1])
    return Morphism(dom, cod, fmap)


def identity(M) -> Morphism:
    return Morphism(M, M, tuple(M.elements))


def zero_map(M, N) -> Morphism:
    return Morphism(M, N, (0,) * M.size)


def compose(g: Morphism, f: Morphism) -> Morphism:
    """``g o f``."""
    if f.cod is not g.dom and f.cod.size != g.dom.size:
        raise SizeMismatch("cannot compose: codomain/domain differ")
    return Morphism(f.dom, g.cod, tuple(g.map[y] for y in f.map))


# -- subsets ------------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SubSemimodule:
    parent: FiniteCommutativeMonoid
    members: frozenset[int]

    def __contains__(self, x):
        return x in self.members

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))

    def __eq__(self, other):
        if isinstance(other, SubSemimodule):
            return self.members == other.members
        if isinstance(other, (set, frozenset)):
            return self.members == other
        return NotImplemented

    def __hash__(self):
        return hash(self.members)

    def __repr__(self):
        return "{" + ",".join(self.parent.labels[x] for x in sorted(self.members)) + "}"

    def module(self):
        return self.inclusion().dom

    def inclusion(self) -> Morphism:
        return restrict_to(self.parent, self.members)


def _members(L) -> frozenset[int]:
    if isinstance(L, SubSemimodule):
        return L.members
    return frozenset(L)


def is_subsemimodule(M, subset) -> bool:
    sub = _members(subset)
    if 0 not in sub:
        return False
    for a in sub:
        row = M.add[a]
        if any(row[b] not in sub for b in sub):
            return False
    if M.has_action:
        for s in M.base.elements:
            if any(M.action[s][a] not in sub for a in sub):
                return False
    return True


def restrict_to(M, subset) -> Morphism:
    """Inclusion of a (closed) subset, as a morphism from a freshly indexed structure."""
    members = sorted(_members(subset))
    if not members or members[0] != 0:
        raise SizeMismatch("subset must contain zero")
    pos = {x: i for i, x in enumerate(members)}
    try:
        add = [[pos[M.add[a][b]] for b in members] for a in members]
        action = None
        if M.has_action:
            action = [[pos[M.action[s][a]] for a in members] for s in M.base.elements]
    except KeyError:
        raise SizeMismatch("subset is not closed under the operations") from None
    labels = [M.labels[x] for x in members]
    sub = _trusted(M, add, action, name=f"{M.name}|{{{','.join(labels)}}}", labels=labels)
    return Morphism(sub, M, tuple(members))


def _closure(M, seed, with_action: bool) -> frozenset[int]:
    members = set(seed) | {0}
    frontier = list(members)
    scalars = list(M.base.elements) if (with_action and M.has_action) else []
    while frontier:
        new = []
        for a in frontier:
            cands = [M.action[s][a] for s in scalars]
            for b in list(members):
                cands.append(M.add[a][b])
            for c in cands:
                if c not in members:
                    members.add(c)
                    new.append(c)
        frontier = new
    return frozenset(members)


def subsemimodule_closure(M, seed=()) -> SubSemimodule:
    """Least subsemimodule containing ``seed``."""
    return SubSemimodule(M, _closure(M, seed, True))


def submonoid_closure(M, seed=()) -> frozenset[int]:
    """Least additive submonoid containing ``seed`` (ignores any scalar action)."""
    return _closure(M, seed, False)


def enumerate_subsemimodules(M, cap: int = DEFAULT_ENUM_CAP) -> list[SubSemimodule]:
    """All subsemimodules of ``M``, sorted by (size, members)."""
    if M.size > cap:
        raise SizeCapExceeded(f"{M.name} has {M.size} elements > enumeration cap {cap}")
    start = _closure(M, (), True)
    seen = {start}
    frontier = [start]
    while frontier:
        new = []
        for sub in frontier:
            for x in M.elements:
                if x not in sub:
                    bigger = _closure(M, sub | {x}, True)
                    if bigger not in seen:
                        seen.add(bigger)
                        new.append(bigger)
        frontier = new
    return [SubSemimodule(M, s) for s in sorted(seen, key=lambda s: (len(s), sorted(s)))]


def subtractive_closure(M, L) -> SubSemimodule:
    """``{m | m + l = l' for some l, l' in L}``."""
    sub = _members(L)
    out = frozenset(m for m in M.elements if any(M.add[m][l] in sub for l in sub))
    return SubSemimodule(M, out)


def is_subtractive(M, L) -> bool:
    return subtractive_closure(M, L).members == _members(L)


def cancellative_elements(M) -> frozenset[int]:
    n = M.size
    return frozenset(x for x in M.elements if len(set(M.add[x])) == n)


def is_cancellative(M) -> bool:
    return len(cancellative_elements(M)) == M.size


# -- congruences and quotients ----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Congruence:
    parent: FiniteCommutativeMonoid
    labels: tuple[int, ...]

    @property
    def num_classes(self) -> int:
        return max(self.labels) + 1 if self.labels else 0

    def classes(self) -> list[frozenset[int]]:
        out: list[set[int]] = [set() for _ in range(self.num_classes)]
        for x, c in enumerate(self.labels):
            out[c].add(x)
        return [frozenset(c) for c in out]

    def related(self, a: int, b: int) -> bool:
        return self.labels[a] == self.labels[b]


def congruence_violation(M, labels) -> tuple | None:
    for a in M.elements:
        for b in M.elements:
            if labels[a] != labels[b] or a >= b:
                continue
            for t in M.elements:
                if labels[M.add[a][t]] != labels[M.add[b][t]]:
                    return ("addition", (a, b, t))
            if M.has_action:
                for s in M.base.elements:
                    if labels[M.action[s][a]] != labels[M.action[s][b]]:
                        return ("scalar", (a, b, s))
    return None


def congruence_from_pairs(M, pairs=()) -> Congruence:
    """Least congruence containing ``pairs``."""
    uf = UnionFind(M.size)
    for a, b in pairs:
        uf.union(a, b)
    scalars = list(M.base.elements) if M.has_action else []
    changed = True
    while changed:
        changed = False
        for x in M.elements:
            r = uf.find(x)
            if r == x:
                continue
            for t in M.elements:
                changed |= uf.union(M.add[x][t], M.add[r][t])
            for s in scalars:
                changed |= uf.union(M.action[s][x], M.action[s][r])
    return Congruence(M, tuple(uf.labels()))


def quotient(M, cong) -> tuple:
    """``(M / cong, projection)``; classes are numbered by their smallest member."""
    labels = cong.labels if isinstance(cong, Congruence) else tuple(cong)
    k = max(labels) + 1
    reps = [None] * k
    for x, c in enumerate(labels):
        if reps[c] is None:
            reps[c] = x
    add = [[labels[M.add[reps[c]][reps[d]]] for d in range(k)] for c in range(k)]
    for a in M.elements:
        for b in M.elements:
            if labels[M.add[a][b]] != add[labels[a]][labels[b]]:
                raise IllDefined("quotient addition", (a, b))
    action = None
    if M.has_action:
        action = [[labels[M.action[s][reps[c]]] for c in range(k)] for s in M.base.elements]
        for s in M.base.elements:
            for a in M.elements:
                if labels[M.action[s][a]] != action[s][labels[a]]:
                    raise IllDefined("quotient action", (s, a))
    qlabels = []
    for c in range(k):
        members = [M.labels[x] for x in M.elements if labels[x] == c]
        qlabels.append("[" + ",".join(members) + "]")
    Q = _trusted(M, add, action, name=f"{M.name}/~", labels=qlabels)
    return Q, Morphism(M, Q, tuple(labels))


def bourne_labels(M, L) -> list[int]:
    """Classes of ``m ~ m'  iff  m + l = m' + l'`` for some ``l, l'`` in ``L``."""
    sub = _members(L)
    uf = UnionFind(M.size)
    for m in M.elements:
        row = M.add[m]
        for l in sub:
            uf.union(m, row[l])
    return uf.labels()


def bourne_quotient(M, L) -> tuple:
    """``(M/L, pi_L)``."""
    Q, pi = quotient(M, bourne_labels(M, L))
    name = f"{M.name}/{SubSemimodule(M, _members(L))!r}"
    Q = _trusted(Q, Q.add, getattr(Q, "action", None), name=name, labels=Q.labels)
    return Q, Morphism(M, Q, pi.map)


def cancellative_hull(M) -> tuple:
    """Quotient by ``m ~ m'  iff  m + k = m' + k`` for some ``k``."""
    uf = UnionFind(M.size)
    for k in M.elements:
        first_with: dict[int, int] = {}
        for m in M.elements:
            target = M.add[m][k]
            if target in first_with:
                uf.union(first_with[target], m)
            else:
                first_with[target] = m
    Q, pi = quotient(M, uf.labels())
    Q = _trusted(Q, Q.add, getattr(Q, "action", None), name=f"c({M.name})", labels=Q.labels)
    return Q, Morphism(M, Q, pi.map)


# -- classification of morphisms ------------------------------------------------------------------


@dataclass(frozen=True)
class MorphismClass:
    kernel: frozenset[int]
    image: frozenset[int]
    image_closure: frozenset[int]
    k_normal: bool
    i_normal: bool
    injective: bool
    surjective: bool
    k_witness: tuple | None = None
    i_witness: int | None = None

    @property
    def normal(self) -> bool:
        return self.k_normal and self.i_normal


def k_normal_witness(f: Morphism) -> tuple | None:
    """A pair ``(m, m')`` with ``f(m) = f(m')`` not related through ``Ker f`` (lowest first)."""
    labels = bourne_labels(f.dom, f.kernel())
    first: dict[int, int] = {}
    for m, y in enumerate(f.map):
        if y in first:
            if labels[first[y]] != labels[m]:
                # lowest partner in the fibre of y that is unrelated to m
                for a in f.dom.elements:
                    if f.map[a] == y and labels[a] != labels[m]:
                        return (a, m)
        else:
            first[y] = m
    return None


def classify_morphism(f: Morphism) -> MorphismClass:
    kernel = f.kernel()
    image = f.image()
    closure = subtractive_closure(f.cod, image).members
    kw = k_normal_witness(f)
    extra = sorted(closure - image)
    return MorphismClass(
        kernel=kernel,
        image=image,
        image_closure=closure,
        k_normal=kw is None,
        i_normal=not extra,
        injective=f.is_injective(),
        surjective=f.is_surjective(),
        k_witness=kw,
        i_witness=extra[0] if extra else None,
    )


def is_normal(f: Morphism) -> bool:
    return classify_morphism(f).normal


# -- direct sums ----------------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DirectSum:
    module: FiniteCommutativeMonoid
    summands: tuple
    injections: tuple[Morphism, ...]
    projections: tuple[Morphism, ...]
    coords: tuple[tuple[int, ...], ...]

    def index(self, *parts: int) -> int:
        return _radix_encode(parts, [M.size for M in self.summands])


def direct_sum(*summands, cap: int = DEFAULT_MODULE_CAP) -> DirectSum:
    if len(summands) == 1 and isinstance(summands[0], (list, tuple)):
        summands = tuple(summands[0])
    first = summands[0]
    for M in summands[1:]:
        if M.has_action != first.has_action or (
            M.has_action and (M.base != first.base or M.side != first.side)
        ):
            raise SizeMismatch("direct sum needs a common base semiring and side")
    D, tuples = product_structure(list(summands), cap=cap)
    radices = [M.size for M in summands]
    inj, proj = [], []
    for i, M in enumerate(summands):
        inj.append(Morphism(M, D, tuple(
            _radix_encode([x if j == i else 0 for j in range(len(summands))], radices) for x in M.elements
        )))
        proj.append(Morphism(D, M, tuple(t[i] for t in tuples)))
    return DirectSum(D, tuple(summands), tuple(inj), tuple(proj), tuple(tuples))


def sum_of_maps(maps: Sequence[Morphism], src: DirectSum | None = None, tgt: DirectSum | None = None):
    """The induced map ``(+) f_i : (+) L_i -> (+) M_i`` with its two sums."""
    src = src or direct_sum([f.dom for f in maps])
    tgt = tgt or direct_sum([f.cod for f in maps])
    fmap = tuple(tgt.index(*[f.map[x] for f, x in zip(maps, t)]) for t in src.coords)
    return Morphism(src.module, tgt.module, fmap), src, tgt


# -- pullbacks --------------------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Pullback:
    P: FiniteCommutativeMonoid
    iota_prime: Morphism
    g_prime: Morphism
    pairs: tuple[tuple[int, int], ...]
    g_prime_injective: bool
    image_subtractive_claim: bool | None


def pullback(iota: Morphism, g: Morphism) -> Pullback:
    """``P = {(u, m) | iota(u) = g(m)}`` with its two projections."""
    if iota.cod.size != g.cod.size:
        raise SizeMismatch("pullback needs a common codomain")
    U, M = iota.dom, g.dom
    pairs = [(u, m) for m in M.elements for u in U.elements if iota.map[u] == g.map[m]]
    pairs.sort(key=lambda p: (p != (0, 0), p[1], p[0]))
    pos = {p: i for i, p in enumerate(pairs)}
    add = [[pos[(U.add[a[0]][b[0]], M.add[a[1]][b[1]])] for b in pairs] for a in pairs]
    action = None
    if M.has_action and U.has_action:
        action = [[pos[(U.action[s][a[0]], M.action[s][a[1]])] for a in pairs] for s in M.base.elements]
    labels = [f"({U.labels[u]},{M.labels[m]})" for u, m in pairs]
    P = _trusted(M, add, action, name=f"{U.name} x_{g.cod.name} {M.name}", labels=labels)
    ip = Morphism(P, U, tuple(p[0] for p in pairs))
    gp = Morphism(P, M, tuple(p[1] for p in pairs))
    claim = None
    if is_subtractive(iota.cod, iota.image()):
        claim = is_subtractive(M, gp.image())
    return Pullback(P, ip, gp, tuple(pairs), gp.is_injective(), claim)


# -- morphism enumeration and isomorphism ----------------------------------------------------------------


def generation_plan(M) -> tuple[list[int], list[tuple]]:
    """Generators of ``M`` plus a derivation of every other element from them.

    Each derivation step is ``(x, 'add', a, b)`` or ``(x, 'act', s, a)`` where
    ``a``/``b`` were derived earlier.
    """
    gens: list[int] = []
    known = {0}
    steps: list[tuple] = []
    scalars = list(M.base.elements) if M.has_action else []

    def grow():
        changed = True
        while changed:
            changed = False
            for a in sorted(known):
                for s in scalars:
                    c = M.action[s][a]
                    if c not in known:
                        known.add(c)
                        steps.append((c, "act", s, a))
                        changed = True
                for b in sorted(known):
                    c = M.add[a][b]
                    if c not in known:
                        known.add(c)
                        steps.append((c, "add", a, b))
                        changed = True

    for x in M.elements:
        if x not in known:
            gens.append(x)
            known.add(x)
            grow()
    return gens, steps


def enumerate_morphisms(M, N, limit: int | None = None) -> list[Morphism]:
    """Every linear map ``M -> N`` (generator images tried in lexicographic order)."""
    gens, steps = generation_plan(M)
    out = []
    for images in itertools.product(N.elements, repeat=len(gens)):
        fmap = [0] * M.size
        for g, y in zip(gens, images):
            fmap[g] = y
        for x, kind, p, q in steps:
            fmap[x] = N.add[fmap[p]][fmap[q]] if kind == "add" else N.action[p][fmap[q]]
        fmap = tuple(fmap)
        if linearity_violation(M, N, fmap) is None:
            out.append(Morphism(M, N, fmap))
            if limit is not None and len(out) >= limit:
                break
    return out


def find_isomorphism(M, N) -> Morphism | None:
    if M.size != N.size or M.has_action != N.has_action:
        return None
    n = M.size
    for perm in itertools.permutations(range(1, n)):
        fmap = (0,) + perm
        if linearity_violation(M, N, fmap) is None:
            return Morphism(M, N, fmap)
    return None


def is_isomorphism(f: Morphism) -> bool:
    return f.is_injective() and f.is_surjective() and linearity_violation(f.dom, f.cod, f.map) is None


# -- bounded searches ------------------------------------------------------------------------------------


@dataclass(frozen=True)
class SearchVerdict:
    """Outcome of a bounded search.

    ``found`` with a witness is a proof; ``found=False`` only means nothing
    turned up within ``bound`` (``exhausted`` says the bound was the whole space).
    """

    found: bool
    witness: object = None
    bound: int = 0
    exhausted: bool = False
    note: str = ""


def _free_cover(M, gens: Sequence[int], cap: int, F=None) -> Morphism:
    S = M.base
    k = len(gens)
    if F is None:
        F = free_semimodule(S, k, M.side, cap)
    radices = [S.size] * k
    fmap = tuple(
        M.sum(M.action[s][g] for s, g in zip(_radix_decode(x, radices), gens)) for x in F.elements
    )
    return Morphism(F, M, fmap)


def is_normally_generated(M, gen_bound: int | None = None, cap: int = DEFAULT_MODULE_CAP) -> SearchVerdict:
    """Look for a normal epimorphism ``S^k -> M`` sending the basis to ``k <= gen_bound`` elements."""
    if M.size == 1:
        return SearchVerdict(True, (), 0, True, "zero module: empty sum")
    if gen_bound is None:
        gen_bound = M.size - 1
    S = M.base
    nonzero = [x for x in M.elements if x != 0]
    for k in range(1, gen_bound + 1):
        if S.size ** k > cap:
            raise SizeCapExceeded(f"S^{k} has {S.size ** k} elements > cap {cap}")
        F = free_semimodule(S, k, M.side, cap)
        for gens in itertools.combinations_with_replacement(nonzero, k):
            pi = _free_cover(M, gens, cap, F)
            if not pi.is_surjective():
                continue
            if classify_morphism(pi).normal:
                return SearchVerdict(True, gens, gen_bound, False)
    return SearchVerdict(False, None, gen_bound, False, "no normal epimorphism within bound")


def is_retract_of_free(M, rank_bound: int = 2, cap: int = DEFAULT_MODULE_CAP) -> SearchVerdict:
    """Search ``psi: M -> S^k``, ``theta: S^k -> M`` with ``theta o psi = id`` for ``k <= rank_bound``."""
    S = M.base
    if M.size == 1:
        return SearchVerdict(True, None, rank_bound, True, "zero module")
    for k in range(1, rank_bound + 1):
        if S.size ** k > cap:
            raise SizeCapExceeded(f"S^{k} has {S.size ** k} elements > cap {cap}")
        F = free_semimodule(S, k, M.side, cap)
        psis = enumerate_morphisms(M, F)
        for gens in itertools.product(M.elements, repeat=k):
            theta = _free_cover(M, gens, cap, F)
            for psi in psis:
                if all(theta.map[psi.map[m]] == m for m in M.elements):
                    return SearchVerdict(True, (psi, theta), rank_bound, False)
    return SearchVerdict(False, None, rank_bound, False, "no splitting within rank bound")
