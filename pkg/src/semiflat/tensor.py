"""Tensor products ``F (x)_S M`` of a right and a left semimodule.

Every element of the tensor monoid is a finite sum of pure tensors, and
``f(x)m + f'(x)m = (f+f')(x)m`` lets us merge all terms sharing the same
second factor.  So every element is ``sum_m  c_m (x) m`` for a function
``c: M\\{0} -> F``, and the tensor monoid is the quotient of the finite monoid
``F^(M\\{0})`` (pointwise addition) by the congruence generated by the
remaining relations: additivity in ``M``, balance ``fs (x) m = f (x) sm`` and
``f (x) 0 = 0``.  A generating set of pairs that is closed under translation
generates, as an equivalence, a congruence; so one union-find pass over
``x + a ~ x + b`` computes the tensor exactly.  The roles of the factors can
be swapped (``M^(F\\{0})``); the smaller encoding is used and the other one,
when small, serves as an independent cross-check.

``bounded_tensor`` is a second, deliberately naive route: congruence closure
over multisets of pure tensors up to a size bound.  It can only identify
elements that really are equal, so it confirms the exact route from below.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import CertificationFailure, IllDefined, SizeCapExceeded, SizeMismatch
from .semimodule import (
    LEFT,
    RIGHT,
    FiniteCommutativeMonoid,
    FiniteSemimodule,
    Morphism,
    UnionFind,
    _radix_decode,
    _radix_encode,
    bourne_labels,
    classify_morphism,
    direct_sum,
    enumerate_subsemimodules,
    regular_module,
    restrict_to,
    submonoid_closure,
    bourne_quotient,
    cancellative_hull,
    is_subtractive,
)

DEFAULT_TENSOR_CAP = 20
DEFAULT_SLACK = 2
MIRROR_CAP = 300
NORMAL_FORM_CAP = 20000


def with_side(M: FiniteSemimodule, side: str) -> FiniteSemimodule:
    """Reinterpret ``M`` on the other side; only legal over a commutative semiring."""
    if M.side == side:
        return M
    if not M.base.is_commutative():
        raise SizeMismatch(f"{M.name} is a {M.side} module over non-commutative {M.base.name}")
    return FiniteSemimodule(add=M.add, action=M.action, base=M.base, side=side, name=M.name, labels=M.labels)


def additive_part(M) -> FiniteCommutativeMonoid:
    return FiniteCommutativeMonoid(add=M.add, name=M.name, labels=M.labels)


class _Encoding:
    """Vectors over ``coef`` indexed by the nonzero elements of ``index``."""

    def __init__(self, coef, index, coef_is_left: bool):
        self.coef = coef
        self.index = index
        self.coef_is_left = coef_is_left
        self.slots = [x for x in index.elements if x != 0]
        self.slot_of = {x: i for i, x in enumerate(self.slots)}
        self.radices = [coef.size] * len(self.slots)
        self.size = coef.size ** len(self.slots)
        self.vecs = [_radix_decode(i, self.radices) for i in range(self.size)]

    def encode(self, vec) -> int:
        return _radix_encode(vec, self.radices)

    def add_vec(self, a, b):
        cadd = self.coef.add
        return tuple(cadd[x][y] for x, y in zip(a, b))

    def pure(self, f: int, m: int):
        """Vector of ``f (x) m`` (``f`` in the right factor, ``m`` in the left)."""
        c, i = (f, m) if self.coef_is_left else (m, f)
        vec = [0] * len(self.slots)
        if i != 0:
            vec[self.slot_of[i]] = c
        return tuple(vec)

    def terms(self, idx: int) -> list[tuple[int, int]]:
        vec = self.vecs[idx]
        out = []
        for slot, c in zip(self.slots, vec):
            if c != 0:
                out.append((c, slot) if self.coef_is_left else (slot, c))
        return out

    def of_terms(self, terms) -> tuple:
        vec = [0] * len(self.slots)
        cadd = self.coef.add
        for f, m in terms:
            c, i = (f, m) if self.coef_is_left else (m, f)
            if i != 0 and c != 0:
                k = self.slot_of[i]
                vec[k] = cadd[vec[k]][c]
        return tuple(vec)


def _relation_pairs(F, M, enc: _Encoding):
    S = F.base
    pairs = set()

    def rel(a, b):
        if a != b:
            ia, ib = enc.encode(a), enc.encode(b)
            pairs.add((min(ia, ib), max(ia, ib)))

    for m in M.elements:
        for f in F.elements:
            for f2 in F.elements:
                if f2 >= f:
                    rel(enc.pure(F.add[f][f2], m), enc.add_vec(enc.pure(f, m), enc.pure(f2, m)))
    for f in F.elements:
        for m in M.elements:
            for m2 in M.elements:
                if m2 >= m:
                    rel(enc.pure(f, M.add[m][m2]), enc.add_vec(enc.pure(f, m), enc.pure(f, m2)))
    for s in S.elements:
        for f in F.elements:
            fs = F.action[s][f]
            for m in M.elements:
                rel(enc.pure(fs, m), enc.pure(f, M.action[s][m]))
    return sorted(pairs)


def _tensor_labels(F, M, enc: _Encoding) -> list[int]:
    uf = UnionFind(enc.size)
    rels = _relation_pairs(F, M, enc)
    vecs, add_vec, encode = enc.vecs, enc.add_vec, enc.encode
    rel_vecs = [(vecs[a], vecs[b]) for a, b in rels]
    for x in vecs:
        for a, b in rel_vecs:
            uf.union(encode(add_vec(x, a)), encode(add_vec(x, b)))
    return uf.labels()


@dataclass(eq=False)
class TensorMonoid:
    monoid: FiniteCommutativeMonoid
    left_factor: FiniteSemimodule
    right_factor: FiniteSemimodule
    pure: tuple[tuple[int, ...], ...]
    certified: bool
    cap_used: int
    normal_form_size: int
    failures: tuple[str, ...] = ()
    _enc: _Encoding = field(default=None, repr=False)
    _labels: tuple[int, ...] = field(default=(), repr=False)
    _reps: tuple[int, ...] = field(default=(), repr=False)

    @property
    def size(self) -> int:
        return self.monoid.size

    def class_of(self, terms) -> int:
        """Class of ``sum f (x) m`` over ``terms = [(f, m), ...]``."""
        return self._labels[self._enc.encode(self._enc.of_terms(terms))]

    def rep_terms(self, c: int) -> list[tuple[int, int]]:
        return self._enc.terms(self._reps[c])

    def all_forms(self):
        """Every normal-form vector as ``(terms, class)``; used for well-definedness checks."""
        for idx in range(self._enc.size):
            yield self._enc.terms(idx), self._labels[idx]


def _build(F, M, coef_is_left: bool):
    enc = _Encoding(F, M, True) if coef_is_left else _Encoding(M, F, False)
    labels = _tensor_labels(F, M, enc)
    return enc, labels


def _mirror_agrees(T: TensorMonoid, enc2: _Encoding, labels2) -> bool:
    seen: dict[int, int] = {}
    for terms, c in T.all_forms():
        c2 = labels2[enc2.encode(enc2.of_terms(terms))]
        if seen.setdefault(c, c2) != c2:
            return False
    return len(set(seen.values())) == T.size == max(labels2) + 1


def tensor(F: FiniteSemimodule, M: FiniteSemimodule, cap: int = DEFAULT_TENSOR_CAP,
           crosscheck: bool = True) -> TensorMonoid:
    """The tensor monoid of a right module ``F`` and a left module ``M``."""
    if F.base != M.base:
        raise SizeMismatch("tensor factors over different semirings")
    F = with_side(F, RIGHT)
    M = with_side(M, LEFT)
    if F.size * M.size > cap:
        raise SizeCapExceeded(f"|F|*|M| = {F.size * M.size} > tensor cap {cap}")
    size_a = F.size ** (M.size - 1)
    size_b = M.size ** (F.size - 1)
    coef_is_left = size_a <= size_b
    if min(size_a, size_b) > NORMAL_FORM_CAP:
        raise SizeCapExceeded(f"normal form needs {min(size_a, size_b)} vectors")
    enc, labels = _build(F, M, coef_is_left)
    k = max(labels) + 1
    reps = [None] * k
    for idx, c in enumerate(labels):
        if reps[c] is None:
            reps[c] = idx
    add = [[labels[enc.encode(enc.add_vec(enc.vecs[reps[c]], enc.vecs[reps[d]]))] for d in range(k)]
           for c in range(k)]
    failures = []
    # quotient addition must not depend on representatives
    well_defined = True
    for i, vi in enumerate(enc.vecs):
        li = labels[i]
        row = add[li]
        for j in range(i, enc.size):
            if labels[enc.encode(enc.add_vec(vi, enc.vecs[j]))] != row[labels[j]]:
                well_defined = False
                break
        if not well_defined:
            break
    if not well_defined:
        failures.append("well-defined addition")
    pure = tuple(tuple(labels[enc.encode(enc.pure(f, m))] for m in M.elements) for f in F.elements)
    names = [
        " + ".join(f"{F.labels[f]}(x){M.labels[m]}" for f, m in enc.terms(r)) or "0" for r in reps
    ]
    monoid = FiniteCommutativeMonoid(add=tuple(tuple(r) for r in add), name=f"{F.name}(x){M.name}",
                                     labels=tuple(names))
    T = TensorMonoid(monoid, F, M, pure, False, F.size * M.size, enc.size, (), enc, tuple(labels), tuple(reps))
    failures += _pure_law_failures(T)
    if crosscheck and max(size_a, size_b) <= MIRROR_CAP:
        enc2, labels2 = _build(F, M, not coef_is_left)
        if not _mirror_agrees(T, enc2, labels2):
            failures.append("mirror normal form")
    T.failures = tuple(failures)
    T.certified = not failures
    return T


def _pure_law_failures(T: TensorMonoid) -> list[str]:
    F, M, add, pure = T.left_factor, T.right_factor, T.monoid.add, T.pure
    out = []
    for f in F.elements:
        if pure[f][0] != 0:
            out.append("f(x)0 = 0")
            break
    for m in M.elements:
        if pure[0][m] != 0:
            out.append("0(x)m = 0")
            break
    ok = all(
        pure[F.add[f][g]][m] == add[pure[f][m]][pure[g][m]]
        for f in F.elements for g in F.elements for m in M.elements
    )
    if not ok:
        out.append("additivity in F")
    ok = all(
        pure[f][M.add[m][n]] == add[pure[f][m]][pure[f][n]]
        for f in F.elements for m in M.elements for n in M.elements
    )
    if not ok:
        out.append("additivity in M")
    ok = all(
        pure[F.action[s][f]][m] == pure[f][M.action[s][m]]
        for s in F.base.elements for f in F.elements for m in M.elements
    )
    if not ok:
        out.append("balance")
    image = {v for row in pure for v in row}
    if len(submonoid_closure(T.monoid, image)) != T.size:
        out.append("generated by pure tensors")
    return out


# -- induced maps ---------------------------------------------------------------------------------------


def _induced(TA: TensorMonoid, TB: TensorMonoid, term_map, what: str) -> Morphism:
    fmap = [None] * TA.size
    for terms, c in TA.all_forms():
        image = TB.class_of([term_map(f, m) for f, m in terms])
        if fmap[c] is None:
            fmap[c] = image
        elif fmap[c] != image:
            raise IllDefined(what, terms)
    return Morphism(TA.monoid, TB.monoid, tuple(fmap))


def induced_tensor_map(F, phi: Morphism, TL: TensorMonoid | None = None, TM: TensorMonoid | None = None,
                       cap: int = DEFAULT_TENSOR_CAP) -> Morphism:
    """``id_F (x) phi : F (x) L -> F (x) M``."""
    TL = TL or tensor(F, phi.dom, cap)
    TM = TM or tensor(F, phi.cod, cap)
    return _induced(TL, TM, lambda f, m: (f, phi.map[m]), "id (x) phi")


def induced_tensor_map_left(psi: Morphism, M, TF: TensorMonoid | None = None, TG: TensorMonoid | None = None,
                            cap: int = DEFAULT_TENSOR_CAP) -> Morphism:
    """``psi (x) id_M : F (x) M -> G (x) M``."""
    TF = TF or tensor(psi.dom, M, cap)
    TG = TG or tensor(psi.cod, M, cap)
    return _induced(TF, TG, lambda f, m: (psi.map[f], m), "psi (x) id")


def monoid_map_classify(h: Morphism):
    return classify_morphism(h)


# -- theta isomorphisms ----------------------------------------------------------------------------------


def theta_module(M: FiniteSemimodule, T: TensorMonoid | None = None, cap: int = DEFAULT_TENSOR_CAP) -> Morphism:
    """``M (x) S -> M``, ``m (x) s |-> ms``; raises unless it is an isomorphism of right modules."""
    M = with_side(M, RIGHT)
    S = M.base
    T = T or tensor(M, regular_module(S, LEFT), cap)
    fmap = [None] * T.size
    for terms, c in T.all_forms():
        v = M.sum(M.action[s][m] for m, s in terms)
        if fmap[c] is None:
            fmap[c] = v
        elif fmap[c] != v:
            raise CertificationFailure(f"theta_{M.name} not well defined at {terms}")
    theta = Morphism(T.monoid, M, tuple(fmap))
    if not (theta.is_injective() and theta.is_surjective()):
        raise CertificationFailure(f"theta_{M.name} is not bijective")
    # transported right action: (m (x) s) t = m (x) st
    for terms, c in T.all_forms():
        for t in S.elements:
            moved = T.class_of([(m, S.mul[s][t]) for m, s in terms])
            if fmap[moved] != M.action[t][fmap[c]]:
                raise CertificationFailure(f"theta_{M.name} does not respect the action at {terms}, {t}")
    return theta


@dataclass(frozen=True)
class ThetaIdeal:
    theta: Morphism
    ideal: frozenset[int]
    AI: frozenset[int]
    injective: bool
    surjective: bool
    AI_subtractive_in_A: bool

    @property
    def iso(self) -> bool:
        return self.injective and self.surjective


def ideal_product(A: FiniteSemimodule, I) -> frozenset[int]:
    """Additive submonoid of ``A`` generated by ``{a i}``."""
    members = I.members if hasattr(I, "members") else frozenset(I)
    return submonoid_closure(A, {A.action[i][a] for a in A.elements for i in members})


def theta_ideal(A: FiniteSemimodule, I, T: TensorMonoid | None = None, cap: int = DEFAULT_TENSOR_CAP) -> ThetaIdeal:
    """``A (x) I -> AI``, ``a (x) i |-> ai`` for a left ideal ``I`` of ``S``."""
    A = with_side(A, RIGHT)
    S = A.base
    SL = regular_module(S, LEFT)
    members = I.members if hasattr(I, "members") else frozenset(I)
    inc = restrict_to(SL, members)
    T = T or tensor(A, inc.dom, cap)
    AI = ideal_product(A, members)
    AI_inc = restrict_to(additive_part(A), AI)
    pos = {x: i for i, x in enumerate(AI_inc.map)}
    fmap = [None] * T.size
    for terms, c in T.all_forms():
        v = pos[A.sum(A.action[inc.map[i]][a] for a, i in terms)]
        if fmap[c] is None:
            fmap[c] = v
        elif fmap[c] != v:
            raise CertificationFailure(f"theta_I not well defined at {terms}")
    theta = Morphism(T.monoid, AI_inc.dom, tuple(fmap))
    return ThetaIdeal(theta, members, AI, theta.is_injective(), theta.is_surjective(), is_subtractive(A, AI))


def takahashi_tensor(F, M, T: TensorMonoid | None = None, cap: int = DEFAULT_TENSOR_CAP):
    """Cancellative hull of the tensor monoid."""
    T = T or tensor(F, M, cap)
    H, _ = cancellative_hull(T.monoid)
    return H


# -- oracles -----------------------------------------------------------------------------------------------


@dataclass
class OracleReport:
    theta_iso: bool = True
    sum_distribution: bool = True
    cokernels: bool = True
    notes: list[str] = field(default_factory=list)
    uncertified: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.theta_iso and self.sum_distribution and self.cokernels and not self.uncertified


def sum_distribution_map(F, M, N, cap: int = DEFAULT_TENSOR_CAP) -> Morphism:
    """Canonical ``F (x) (M + N) -> (F (x) M) + (F (x) N)``."""
    D = direct_sum(M, N)
    TD = tensor(F, D.module, cap)
    TM, TN = tensor(F, M, cap), tensor(F, N, cap)
    target = direct_sum(TM.monoid, TN.monoid)
    fmap = [None] * TD.size
    for terms, c in TD.all_forms():
        a = TM.class_of([(f, D.coords[x][0]) for f, x in terms])
        b = TN.class_of([(f, D.coords[x][1]) for f, x in terms])
        v = target.index(a, b)
        if fmap[c] is None:
            fmap[c] = v
        elif fmap[c] != v:
            raise IllDefined("sum distribution map", terms)
    return Morphism(TD.monoid, target.module, tuple(fmap))


def preserves_cokernel(F, M, L, cap: int = DEFAULT_TENSOR_CAP) -> bool:
    """``F (x) (M/L)`` is the Bourne quotient of ``F (x) M`` by the image of ``F (x) L``."""
    inc = restrict_to(M, L)
    Q, pi = bourne_quotient(M, L)
    TL, TM, TQ = tensor(F, inc.dom, cap), tensor(F, M, cap), tensor(F, Q, cap)
    Fi = induced_tensor_map(F, inc, TL, TM)
    Fp = induced_tensor_map(F, pi, TM, TQ)
    if not Fp.is_surjective():
        return False
    labels = bourne_labels(TM.monoid, Fi.image())
    fibre_of: dict[int, int] = {}
    for x in TM.monoid.elements:
        if fibre_of.setdefault(labels[x], Fp.map[x]) != Fp.map[x]:
            return False
    return len(fibre_of) == TQ.size


def verify_tensor_oracles(F, M, N, cap: int = DEFAULT_TENSOR_CAP, max_cokernels: int | None = None) -> OracleReport:
    report = OracleReport()
    F = with_side(F, RIGHT)
    try:
        theta_module(F, cap=max(cap, F.size * F.base.size))
    except CertificationFailure as exc:
        report.theta_iso = False
        report.notes.append(str(exc))
    try:
        h = sum_distribution_map(F, M, N, cap=max(cap, F.size * M.size * N.size))
        if not (h.is_injective() and h.is_surjective()):
            report.sum_distribution = False
            report.notes.append("F(x)(M+N) -> F(x)M + F(x)N is not bijective")
    except IllDefined as exc:
        report.sum_distribution = False
        report.notes.append(str(exc))
    subs = enumerate_subsemimodules(M)
    if max_cokernels is not None:
        subs = subs[:max_cokernels]
    for L in subs:
        if not preserves_cokernel(F, M, L.members, cap):
            report.cokernels = False
            report.notes.append(f"cokernel of {L!r} -> {M.name} not preserved")
    for X in (M, N):
        T = tensor(F, X, cap)
        if not T.certified:
            report.uncertified.append(f"{F.name}(x){X.name}: {', '.join(T.failures)}")
    return report


# -- the naive bounded route ----------------------------------------------------------------------------------


@dataclass
class BoundedTensor:
    bound: int
    universe_size: int
    num_classes: int
    sound: bool
    complete: bool

    @property
    def agrees(self) -> bool:
        return self.sound and self.complete


def _idempotent(X) -> bool:
    return all(X.add[x][x] == x for x in X.elements)


def bounded_tensor(F, M, slack: int = DEFAULT_SLACK, exact: TensorMonoid | None = None,
                   universe_cap: int = 200000) -> BoundedTensor:
    """Congruence closure over multisets of at most ``min(|F'|,|M'|) + slack`` pure tensors.

    When both factors are additively idempotent, repeated terms collapse and
    the universe is every subset of pure-tensor generators, with no bound.
    The result is compared with the exact tensor: ``sound`` means no bounded
    class straddles two exact classes, ``complete`` means the counts agree.
    """
    F = with_side(F, RIGHT)
    M = with_side(M, LEFT)
    exact = exact or tensor(F, M, cap=F.size * M.size, crosscheck=False)
    gens = [(f, m) for f in F.elements if f for m in M.elements if m]
    gpos = {g: i for i, g in enumerate(gens)}
    idempotent = _idempotent(F) and _idempotent(M)
    if idempotent:
        bound = len(gens)
        if 2 ** bound > universe_cap:
            raise SizeCapExceeded(f"bounded universe 2^{bound} exceeds {universe_cap}")
        universe = [u for k in range(bound + 1) for u in itertools.combinations(range(len(gens)), k)]

        def join(u, a):
            return tuple(sorted(set(u) | set(a)))
    else:
        bound = min(len([f for f in F.elements if f]), len([m for m in M.elements if m])) + slack
        universe = []
        for k in range(bound + 1):
            universe.extend(itertools.combinations_with_replacement(range(len(gens)), k))
            if len(universe) > universe_cap:
                raise SizeCapExceeded(f"bounded universe exceeds {universe_cap}")

        def join(u, a):
            return tuple(sorted(u + a))
    upos = {u: i for i, u in enumerate(universe)}

    def term(f, m):
        return (gpos[(f, m)],) if f and m else ()

    rels = set()
    for m in M.elements:
        for f in F.elements:
            for g in F.elements:
                rels.add((term(F.add[f][g], m), join(term(f, m), term(g, m))))
    for f in F.elements:
        for m in M.elements:
            for n in M.elements:
                rels.add((term(f, M.add[m][n]), join(term(f, m), term(f, n))))
    for s in F.base.elements:
        for f in F.elements:
            for m in M.elements:
                rels.add((term(F.action[s][f], m), term(f, M.action[s][m])))
    rels = [(a, b) for a, b in rels if a != b]
    uf = UnionFind(len(universe))
    for u in universe:
        room = bound - len(u)
        for a, b in rels:
            if idempotent or (len(a) <= room and len(b) <= room):
                uf.union(upos[join(u, a)], upos[join(u, b)])
    labels = uf.labels()
    exact_of: dict[int, int] = {}
    sound = True
    for u, c in zip(universe, labels):
        e = exact.class_of([gens[i] for i in u])
        if exact_of.setdefault(c, e) != e:
            sound = False
    num = max(labels) + 1
    complete = sound and num == exact.size and len(set(exact_of.values())) == exact.size
    return BoundedTensor(bound, len(universe), num, sound, complete)
