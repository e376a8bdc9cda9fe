"""Bounded sweeps that check the structural statements about exactness,
normality and flatness on families of small modules.

Every checker returns a :class:`ClaimCheck` listing how many instances were
examined and a description of each violation.  An empty violation list is
only a statement about the instances examined.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import HypothesisFailure, IllDefined, SizeCapExceeded
from .exactness import (
    classify_pair,
    cokernel_iso,
    induced_cokernel_map,
    is_short_exact,
    kernel_iso,
    lemma_exact_items,
    short_sequence,
)
from .flatness import FLAVOURS, TensorCache, flatness_wrt
from .semimodule import (
    Morphism,
    bourne_quotient,
    classify_morphism,
    compose,
    direct_sum,
    enumerate_morphisms,
    enumerate_subsemimodules,
    identity,
    is_retract_of_free,
    is_subtractive,
    pullback,
    subtractive_closure,
    sum_of_maps,
)
from .tensor import induced_tensor_map


@dataclass
class ClaimCheck:
    claim: str
    checked: int = 0
    violations: list[str] = field(default_factory=list)
    skipped: int = 0

    @property
    def passed(self) -> bool:
        return not self.violations

    def fail(self, message: str):
        if len(self.violations) < 50:
            self.violations.append(message)
        else:
            self.violations[-1] = f"... and more ({message})"


def morphism_family(M) -> tuple[list[Morphism], list[Morphism]]:
    """Maps into and out of ``M`` used by the sweeps.

    Into ``M``: inclusions of every subsemimodule and every endomorphism.
    Out of ``M``: every Bourne projection ``M -> M/K`` and every endomorphism.
    """
    subs = enumerate_subsemimodules(M)
    ends = enumerate_morphisms(M, M)
    into = [L.inclusion() for L in subs] + ends
    out = [bourne_quotient(M, L.members)[1] for L in subs] + ends
    return into, out


# -- exactness -----------------------------------------------------------------------------------------------


def check_lemma_exact(modules) -> ClaimCheck:
    """The seven kernel/cokernel characterisations and the short-exact-sequence corollary."""
    res = ClaimCheck("exactness characterisations")
    for M in modules:
        into, out = morphism_family(M)
        for f in into:
            for g in out:
                res.checked += 1
                for item, (lhs, rhs) in lemma_exact_items(f, g).items():
                    if lhs != rhs:
                        res.fail(f"item {item} on {f} / {g}: {lhs} vs {rhs}")
                verdict = is_short_exact(short_sequence(f, g))
                fc, gc = classify_morphism(f), classify_morphism(g)
                third = fc.injective and fc.image == gc.kernel and gc.surjective and gc.k_normal
                second = kernel_iso(f, g) and cokernel_iso(f, g)
                if not (verdict.holds == second == third):
                    res.fail(f"short exact equivalence on {f} / {g}")
                if verdict.holds and not (fc.normal and gc.normal):
                    res.fail(f"short exact with a non-normal map: {f} / {g}")
    return res


def check_i_normal(modules) -> ClaimCheck:
    """Normality of composites ``g o f`` when ``g`` is injective or ``f`` surjective."""
    res = ClaimCheck("normality of composites")
    for M in modules:
        into, out = morphism_family(M)
        for f in into:
            for g in out:
                fc, gc = classify_morphism(f), classify_morphism(g)
                hc = classify_morphism(compose(g, f))
                if gc.injective:
                    res.checked += 1
                    if fc.k_normal != hc.k_normal:
                        res.fail(f"1a on {f} / {g}")
                    if hc.i_normal and not fc.i_normal or hc.normal and not fc.normal:
                        res.fail(f"1b on {f} / {g}")
                    if gc.i_normal and (fc.i_normal != hc.i_normal or fc.normal != hc.normal):
                        res.fail(f"1c on {f} / {g}")
                if fc.surjective:
                    res.checked += 1
                    if gc.i_normal != hc.i_normal:
                        res.fail(f"2a on {f} / {g}")
                    if hc.k_normal and not gc.k_normal or hc.normal and not gc.normal:
                        res.fail(f"2b on {f} / {g}")
                    if fc.k_normal and (gc.k_normal != hc.k_normal or gc.normal != hc.normal):
                        res.fail(f"2c on {f} / {g}")
    return res


def check_u_sum(modules, limit: int = 12, max_maps: int = 60) -> ClaimCheck:
    """``f1 (+) f2`` is (k-, i-)normal exactly when both summands are.

    At most ``limit`` maps per module and ``max_maps`` overall (evenly spaced) are paired.
    """
    res = ClaimCheck("normality of direct sums of maps")
    maps = []
    for M in modules:
        into, out = morphism_family(M)
        maps.extend((into + out)[:limit])
    if len(maps) > max_maps:
        step = len(maps) / max_maps
        maps = [maps[int(k * step)] for k in range(max_maps)]
    for f1, f2 in itertools.combinations_with_replacement(maps, 2):
        if f1.dom.size * f2.dom.size > 16 or f1.cod.size * f2.cod.size > 16:
            continue
        if f1.dom.base != f2.dom.base or f1.dom.side != f2.dom.side:
            continue
        res.checked += 1
        s, _, _ = sum_of_maps([f1, f2])
        c1, c2, cs = classify_morphism(f1), classify_morphism(f2), classify_morphism(s)
        for attr in ("k_normal", "i_normal", "normal"):
            if getattr(cs, attr) != (getattr(c1, attr) and getattr(c2, attr)):
                res.fail(f"{attr} on {f1} (+) {f2}")
    return res


def check_pullback(modules) -> ClaimCheck:
    """Pulling a short exact sequence back along ``U <= N``: ``g'`` is a (normal) monomorphism."""
    res = ClaimCheck("pullback of a short exact sequence")
    for M in modules:
        for L in enumerate_subsemimodules(M):
            if not is_subtractive(M, L.members):
                continue
            N, g = bourne_quotient(M, L.members)
            for U in enumerate_subsemimodules(N):
                res.checked += 1
                pb = pullback(U.inclusion(), g)
                if not pb.g_prime_injective:
                    res.fail(f"g' not injective for U={U!r} in {N.name}")
                if is_subtractive(N, U.members) and not pb.image_subtractive_claim:
                    res.fail(f"g'(P) not subtractive for subtractive U={U!r} in {N.name}")
    return res


def check_semi_ex(modules) -> ClaimCheck:
    """Induced maps between cokernels of canonical rows.

    Rows are ``L -> M -> M/L`` (``L`` subtractive) and ``L' -> M -> M/L'`` with
    ``L'`` the closure of ``g(L)`` for an endomorphism ``g``; the pullback
    diagram of a short exact sequence is included as well.
    """
    res = ClaimCheck("maps induced on cokernels")
    for M in modules:
        ends = enumerate_morphisms(M, M)
        for L in enumerate_subsemimodules(M):
            if not is_subtractive(M, L.members):
                continue
            i = L.inclusion()
            _, p = bourne_quotient(M, L.members)
            for g in ends:
                image = frozenset(g.map[x] for x in L.members)
                L2 = subtractive_closure(M, image)
                j = L2.inclusion()
                _, q = bourne_quotient(M, L2.members)
                pos = {x: k for k, x in enumerate(j.map)}
                f = Morphism(i.dom, j.dom, tuple(pos[g.map[x]] for x in i.map))
                res.checked += 1
                try:
                    out = induced_cokernel_map(i, p, j, q, f, g)
                except (HypothesisFailure, IllDefined) as exc:
                    res.fail(f"{g} on {L!r}: {exc}")
                    continue
                if compose(out.h, p).map != compose(q, g).map:
                    res.fail(f"h o p != q o g for {g} on {L!r}")
                if out.clause1 is False:
                    res.fail(f"clause (1) fails for {g} on {L!r}")
                if out.clause2 is False:
                    res.fail(f"clause (2) fails for {g} on {L!r}")
            # pullback diagram: L -> P -> U over L -> M -> N
            N, gq = bourne_quotient(M, L.members)
            for U in enumerate_subsemimodules(N):
                pb = pullback(U.inclusion(), gq)
                Pm = pb.P
                fprime = Morphism(i.dom, Pm, tuple(pb.pairs.index((0, m)) for m in i.map))
                res.checked += 1
                try:
                    out = induced_cokernel_map(fprime, pb.iota_prime, i, gq, identity(i.dom), pb.g_prime)
                except (HypothesisFailure, IllDefined) as exc:
                    res.fail(f"pullback diagram over U={U!r}: {exc}")
                    continue
                if out.h.map != U.inclusion().map:
                    res.fail(f"pullback diagram: h is not the inclusion of {U!r}")
                if out.clause1 is False:
                    res.fail(f"pullback diagram clause (1) over {U!r}")
    return res


def check_r_exact(modules, right_modules, cache: TensorCache) -> ClaimCheck:
    """Tensoring ``L -> M -> M/L -> 0`` keeps semi-exactness and normality of the projection."""
    res = ClaimCheck("right exactness of tensoring")
    for M in modules:
        for L in enumerate_subsemimodules(M):
            f = L.inclusion()
            Q, g = bourne_quotient(M, L.members)
            exact = is_subtractive(M, L.members)
            for G in right_modules:
                if G.base != M.base:
                    continue
                try:
                    TL, TM, TQ = cache.get(G, f.dom), cache.get(G, M), cache.get(G, Q)
                except SizeCapExceeded:
                    res.skipped += 1
                    continue
                if not (TL.certified and TM.certified and TQ.certified):
                    res.skipped += 1
                    continue
                res.checked += 1
                Gf = induced_tensor_map(G, f, TL, TM)
                Gg = induced_tensor_map(G, g, TM, TQ)
                gc = classify_morphism(Gg)
                tag = f"{G.name} (x) ({L!r} -> {M.name})"
                # (1) surjective normal maps stay surjective and normal
                if not (gc.surjective and gc.normal):
                    res.fail(f"(1) {tag}")
                # (2) semi-exactness survives
                if not classify_pair(Gf, Gg).semi_exact:
                    res.fail(f"(2) {tag}")
                # (3) exact input with i-normal G(x)f gives exact output
                if exact and classify_morphism(Gf).i_normal and not classify_pair(Gf, Gg).exact:
                    res.fail(f"(3) {tag}")
    return res


# -- flatness closure properties -------------------------------------------------------------------------


def check_sum_flat(subjects, targets, cache: TensorCache, max_pairs: int | None = None) -> ClaimCheck:
    """``F1 (+) F2`` is M-x-flat exactly when both summands are."""
    res = ClaimCheck("flatness of direct sums")
    pairs = [(a, b) for a, b in itertools.combinations_with_replacement(subjects, 2)
             if a.size * b.size * max((M.size for M in targets), default=1) <= cache.cap]
    if max_pairs is not None:
        pairs = pairs[:max_pairs]
    for F1, F2 in pairs:
        D = direct_sum(F1, F2).module
        for M in targets:
            v1, v2 = flatness_wrt(F1, M, "def", cache), flatness_wrt(F2, M, "def", cache)
            vd = flatness_wrt(D, M, "def", cache)
            res.checked += 1
            for k in FLAVOURS:
                a, b, d = v1.flag(k), v2.flag(k), vd.flag(k)
                if None in (a, b, d):
                    res.skipped += 1
                    continue
                if d != (a and b):
                    res.fail(f"{k}: {F1.name} (+) {F2.name} vs {M.name}: {d} but parts {a}, {b}")
    return res


def check_retracts(subjects, targets, cache: TensorCache, rank_bound: int = 2) -> ClaimCheck:
    """Retracts inherit every flavour of relative flatness.

    Retract pairs come from summands of direct sums and from splittings found
    by :func:`is_retract_of_free`.
    """
    res = ClaimCheck("flatness of retracts")
    pairs = []
    for F1, F2 in itertools.combinations_with_replacement(subjects, 2):
        D = direct_sum(F1, F2)
        if D.module.size <= cache.cap:
            pairs.append((F1, D.module))
    for A in subjects:
        try:
            split = is_retract_of_free(A, rank_bound)
        except SizeCapExceeded:
            continue
        if split.found and split.witness is not None:
            psi, theta = split.witness
            assert all(theta.map[psi.map[x]] == x for x in A.elements)
            pairs.append((A, psi.cod))
    for small, big in pairs:
        for M in targets:
            if big.size * M.size > cache.cap:
                res.skipped += 1
                continue
            vb = flatness_wrt(big, M, "def", cache)
            vs = flatness_wrt(small, M, "def", cache)
            res.checked += 1
            for k in FLAVOURS:
                if vb.flag(k) is True and vs.flag(k) is False:
                    res.fail(f"{k}: {big.name} is {M.name}-flat but its retract {small.name} is not")
    return res


def check_closed_sub_factor(subjects, targets, cache: TensorCache) -> ClaimCheck:
    """Relative flatness passes to subtractive submodules and (for m, i) to quotients."""
    res = ClaimCheck("flatness along short exact sequences")
    for F in subjects:
        for M in targets:
            if F.size * M.size > cache.cap:
                continue
            vm = flatness_wrt(F, M, "def", cache)
            for L in enumerate_subsemimodules(M):
                if not is_subtractive(M, L.members):
                    continue
                res.checked += 1
                vl = flatness_wrt(F, L.module(), "def", cache)
                Q, _ = bourne_quotient(M, L.members)
                vq = flatness_wrt(F, Q, "def", cache)
                for k in FLAVOURS:
                    if vm.flag(k) is True and vl.flag(k) is False:
                        res.fail(f"(1) {k}: {F.name} is {M.name}-flat, not flat for {L!r}")
                for k in ("m", "i"):
                    if vm.flag(k) is True and vq.flag(k) is False:
                        res.fail(f"(2) {k}: {F.name} is {M.name}-flat, not flat for {Q.name}")
    return res
