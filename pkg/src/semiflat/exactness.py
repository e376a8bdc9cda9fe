"""Exactness of sequences of semimodules and commutative monoids.

At an interior node ``L -f-> M -g-> N`` four conditions are tracked:

* chain complex: ``g o f = 0``
* proper-exact: ``f(L) = Ker g``
* semi-exact: the subtractive closure of ``f(L)`` equals ``Ker g``
* exact: proper-exact and ``g`` k-normal

A leading ``0 ->`` or trailing ``-> 0`` is modelled with explicit zero maps,
so ``0 -> L -f-> M`` is exact exactly when ``f`` is injective.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import EndpointMismatch, HypothesisFailure, IllDefined, NotSubtractive, ShapeError
from .semimodule import (
    Morphism,
    SubSemimodule,
    bourne_labels,
    bourne_quotient,
    classify_morphism,
    compose,
    is_cancellative,
    is_subtractive,
    linearity_violation,
    subtractive_closure,
    zero_map,
    zero_module,
    _members,
)


def _zero_like(M):
    if M.has_action:
        return zero_module(M.base, M.side)
    return zero_module()


def _same_object(A, B) -> bool:
    if A is B:
        return True
    if A.size != B.size or A.add != B.add or A.has_action != B.has_action:
        return False
    return not A.has_action or (A.action == B.action and A.base == B.base and A.side == B.side)


@dataclass(frozen=True, eq=False)
class Sequence:
    """``[0 ->] M_0 -f_1-> M_1 -> ... -> M_k [-> 0]``."""

    morphisms: tuple[Morphism, ...]
    leading_zero: bool = False
    trailing_zero: bool = False

    def __post_init__(self):
        maps = tuple(self.morphisms)
        object.__setattr__(self, "morphisms", maps)
        if not maps:
            raise ShapeError("a sequence needs at least one morphism")
        for k, (f, g) in enumerate(zip(maps, maps[1:])):
            if not _same_object(f.cod, g.dom):
                raise EndpointMismatch(f"codomain of map {k + 1} is not the domain of map {k + 2}")

    @property
    def objects(self) -> list:
        return [self.morphisms[0].dom] + [f.cod for f in self.morphisms]

    def padded(self) -> list[Morphism]:
        """All maps including the zero maps at the ends."""
        maps = list(self.morphisms)
        if self.leading_zero:
            first = maps[0].dom
            maps.insert(0, zero_map(_zero_like(first), first))
        if self.trailing_zero:
            last = maps[-1].cod
            maps.append(zero_map(last, _zero_like(last)))
        return maps


def short_sequence(f: Morphism, g: Morphism) -> Sequence:
    """``0 -> L -f-> M -g-> N -> 0``."""
    return Sequence((f, g), leading_zero=True, trailing_zero=True)


@dataclass(frozen=True)
class NodeVerdict:
    chain_complex: bool
    proper_exact: bool
    semi_exact: bool
    exact: bool
    k_normal: bool
    # lowest counter-witnesses, None when the condition holds
    chain_witness: int | None = None
    proper_witness: int | None = None
    semi_witness: int | None = None
    k_witness: tuple | None = None

    def __post_init__(self):
        # exact => proper-exact => semi-exact => chain complex
        assert not self.exact or self.proper_exact
        assert not self.proper_exact or self.semi_exact
        assert not self.semi_exact or self.chain_complex


def _lowest(diff) -> int | None:
    return min(diff) if diff else None


def classify_pair(f: Morphism, g: Morphism) -> NodeVerdict:
    if not _same_object(f.cod, g.dom):
        raise EndpointMismatch("cod(f) differs from dom(g)")
    image = f.image()
    cls = classify_morphism(g)
    kernel = cls.kernel
    closure = subtractive_closure(f.cod, image).members
    chain_bad = [x for x in f.dom.elements if g.map[f.map[x]] != 0]
    proper = image == kernel
    semi = closure == kernel
    return NodeVerdict(
        chain_complex=not chain_bad,
        proper_exact=proper,
        semi_exact=semi,
        exact=proper and cls.k_normal,
        k_normal=cls.k_normal,
        chain_witness=chain_bad[0] if chain_bad else None,
        proper_witness=_lowest(image ^ kernel),
        semi_witness=_lowest(closure ^ kernel),
        k_witness=cls.k_witness,
    )


@dataclass(frozen=True)
class SequenceVerdict:
    nodes: tuple[NodeVerdict, ...]

    @property
    def chain_complex(self) -> bool:
        return all(v.chain_complex for v in self.nodes)

    @property
    def proper_exact(self) -> bool:
        return all(v.proper_exact for v in self.nodes)

    @property
    def semi_exact(self) -> bool:
        return all(v.semi_exact for v in self.nodes)

    @property
    def exact(self) -> bool:
        return all(v.exact for v in self.nodes)


def classify_sequence(seq: Sequence) -> SequenceVerdict:
    maps = seq.padded()
    return SequenceVerdict(tuple(classify_pair(f, g) for f, g in zip(maps, maps[1:])))


# -- short exact sequences ---------------------------------------------------------------------------


def kernel_iso(f: Morphism, g: Morphism) -> bool:
    """``f`` corestricts to an isomorphism ``L -> Ker g``."""
    return f.is_injective() and f.image() == g.kernel()


def cokernel_iso(f: Morphism, g: Morphism) -> bool:
    """``g`` induces an isomorphism ``M / f(L) -> N``.

    Equivalently ``g`` is onto and its fibres are the Bourne classes of ``f(L)``.
    """
    if not g.is_surjective():
        return False
    labels = bourne_labels(f.cod, f.image())
    fibre_of_class: dict[int, int] = {}
    class_of_fibre: dict[int, int] = {}
    for m, y in enumerate(g.map):
        c = labels[m]
        if fibre_of_class.setdefault(c, y) != y or class_of_fibre.setdefault(y, c) != c:
            return False
    return True


@dataclass(frozen=True, eq=False)
class ShortExactVerdict:
    holds: bool
    f_injective: bool
    image_is_kernel: bool
    g_surjective: bool
    g_k_normal: bool
    f_normal: bool | None = None
    g_normal: bool | None = None
    cokernel_map: Morphism | None = None  # M/f(L) -> N when the sequence is exact


def _cokernel_comparison(f: Morphism, g: Morphism) -> Morphism:
    Q, pi = bourne_quotient(f.cod, f.image())
    hmap = [None] * Q.size
    for m, c in enumerate(pi.map):
        if hmap[c] is None:
            hmap[c] = g.map[m]
        elif hmap[c] != g.map[m]:
            raise IllDefined("M/f(L) -> N", (m, c))
    return Morphism(Q, g.cod, tuple(hmap))


def is_short_exact(seq: Sequence) -> ShortExactVerdict:
    if len(seq.morphisms) != 2 or not (seq.leading_zero and seq.trailing_zero):
        raise ShapeError("expected 0 -> L -> M -> N -> 0")
    f, g = seq.morphisms
    fc, gc = classify_morphism(f), classify_morphism(g)
    verdict = ShortExactVerdict(
        holds=fc.injective and fc.image == gc.kernel and gc.surjective and gc.k_normal,
        f_injective=fc.injective,
        image_is_kernel=fc.image == gc.kernel,
        g_surjective=gc.surjective,
        g_k_normal=gc.k_normal,
    )
    if not verdict.holds:
        return verdict
    h = _cokernel_comparison(f, g)
    assert fc.normal and gc.normal, "short exact sequence with a non-normal map"
    assert h.is_injective() and h.is_surjective() and linearity_violation(h.dom, h.cod, h.map) is None
    assert classify_sequence(seq).exact
    return ShortExactVerdict(
        holds=True,
        f_injective=True,
        image_is_kernel=True,
        g_surjective=True,
        g_k_normal=True,
        f_normal=fc.normal,
        g_normal=gc.normal,
        cokernel_map=h,
    )


def canonical_ses(M, L) -> Sequence:
    """``0 -> L -> M -> M/L -> 0`` for a subtractive ``L``."""
    members = _members(L)
    if not is_subtractive(M, members):
        raise NotSubtractive(f"{SubSemimodule(M, members)!r} is not subtractive in {M.name}")
    iota = SubSemimodule(M, members).inclusion()
    _, pi = bourne_quotient(M, members)
    seq = short_sequence(iota, pi)
    assert is_short_exact(seq).holds
    return seq


# -- statements about 0 -> L -> M -> N -> 0 ------------------------------------------------------------


def lemma_exact_items(f: Morphism, g: Morphism) -> dict[int, tuple[bool, bool]]:
    """Both sides of the seven equivalences relating exactness to kernels and cokernels.

    Each value is ``(left, right)``; the statements say they agree.
    """
    fc, gc = classify_morphism(f), classify_morphism(g)
    node = classify_pair(f, g)
    at_l = classify_pair(zero_map(_zero_like(f.dom), f.dom), f)
    at_n = classify_pair(g, zero_map(g.cod, _zero_like(g.cod)))
    kiso, ciso = kernel_iso(f, g), cokernel_iso(f, g)
    return {
        1: (at_l.exact, fc.injective),
        2: (at_n.exact, gc.surjective),
        3: (at_l.exact and node.proper_exact and fc.normal, kiso),
        4: (at_l.exact and node.exact, kiso and gc.k_normal),
        5: (node.semi_exact and at_n.semi_exact and gc.normal, ciso),
        6: (node.exact and at_n.exact, ciso and fc.i_normal),
        7: (at_l.exact and node.exact and at_n.exact, kiso and ciso),
    }


# -- induced maps on cokernels ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class InducedMap:
    """``h : A'' -> B''`` with ``h o p = q o g``.

    ``clause1``/``clause2`` are None when the extra hypotheses of the
    corresponding statement fail, otherwise whether its conclusion holds.
    """

    h: Morphism
    clause1: bool | None
    clause2: bool | None
    notes: tuple[str, ...] = field(default_factory=tuple)


def induced_cokernel_map(i: Morphism, p: Morphism, j: Morphism, q: Morphism, f: Morphism, g: Morphism) -> InducedMap:
    """Rows ``A' -i-> A -p-> A''`` and ``B' -j-> B -q-> B''``, verticals ``f : A' -> B'`` and ``g : A -> B``."""
    for a, b, what in ((i, p, "top row"), (j, q, "bottom row")):
        if not _same_object(a.cod, b.dom):
            raise EndpointMismatch(what)
    if not (_same_object(f.dom, i.dom) and _same_object(f.cod, j.dom)
            and _same_object(g.dom, i.cod) and _same_object(g.cod, j.cod)):
        raise EndpointMismatch("vertical maps do not fit the rows")
    if compose(j, f).map != compose(g, i).map:
        raise HypothesisFailure("left square commutes")
    if not classify_pair(i, p).semi_exact:
        raise HypothesisFailure("top row semi-exact")
    if not classify_pair(j, q).semi_exact:
        raise HypothesisFailure("bottom row semi-exact")
    pc = classify_morphism(p)
    if not (pc.surjective and pc.normal):
        raise HypothesisFailure("p normal epimorphism")

    hmap: list[int | None] = [None] * p.cod.size
    for a in p.dom.elements:
        value = q.map[g.map[a]]
        target = p.map[a]
        if hmap[target] is None:
            hmap[target] = value
        elif hmap[target] != value:
            raise IllDefined("induced map", (a, target))
    bad = linearity_violation(p.cod, q.cod, hmap)
    if bad is not None:
        raise IllDefined("induced map linearity", bad)
    h = Morphism(p.cod, q.cod, tuple(hmap))

    notes = []
    clause1 = None
    qc = classify_morphism(q)
    if qc.surjective and qc.normal and f.is_surjective() and g.is_injective():
        clause1 = h.is_injective()
        if g.is_surjective():
            clause1 = clause1 and h.is_surjective()
            notes.append("g is an isomorphism, so h should be one")
    clause2 = None
    if (is_cancellative(p.dom) and is_cancellative(q.dom)
            and j.is_injective() and f.is_injective() and h.is_injective()):
        clause2 = g.is_injective()
    return InducedMap(h, clause1, clause2, tuple(notes))
