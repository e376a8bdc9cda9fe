"""One row per reproduced claim; ``reproduce_paper`` runs all of them.

Row names (for ``--only``): matrix, chain3-summand, theta, z4-witness,
inclusions, routes, closure, oracles, bezout, exactness.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from . import semiring as sr
from .claims import (
    check_closed_sub_factor,
    check_i_normal,
    check_lemma_exact,
    check_pullback,
    check_r_exact,
    check_retracts,
    check_semi_ex,
    check_sum_flat,
    check_u_sum,
)
from .errors import CertificationFailure, SemiflatError, SizeCapExceeded
from .flatness import TensorCache, flatness_survey, s_flatness
from .regularity import (
    WITNESS_FOUND,
    CONFIRMED,
    bez_neumann_check,
    check_abc,
    ideals,
    is_direct_summand,
    matrix_regularity_scan,
    regularity_profile,
    sflatvon_harness,
    vn_witnesses,
)
from .reports import ERROR, OK, VIOLATION, AnalysisReport, Row
from .semimodule import LEFT, RIGHT, FiniteSemimodule, bourne_quotient, regular_module
from .tensor import DEFAULT_SLACK, bounded_tensor, sum_distribution_map, theta_module
from .zoo import semimodules_up_to

SWEEP_BOUND = 4
CLOSURE_CAP = 27  # admits F1 (+) F2 with |F1| = |F2| = 3 against targets of size 3


def sweep_semirings():
    return [sr.boolean(), sr.chain(3), sr.chain(4), sr.truncation(3), sr.zmod(4), sr.zmod(6)]


def theta_semirings():
    out = [sr.boolean(), sr.product(sr.boolean(), sr.boolean()), sr.product(sr.zmod(2), sr.chain(2))]
    for n in (3, 4, 5):
        out.append(sr.chain(n))
    for n in (3, 4, 5):
        out.append(sr.truncation(n))
    for n in (2, 3, 4, 5):
        out.append(sr.zmod(n))
    return out


@dataclass
class Context:
    """Results shared between rows within one run."""

    surveys: dict = field(default_factory=dict)
    caches: dict = field(default_factory=dict)

    def cache(self, S) -> TensorCache:
        if S.name not in self.caches:
            self.caches[S.name] = TensorCache(cap=max(SWEEP_BOUND * SWEEP_BOUND, SWEEP_BOUND * S.size))
        return self.caches[S.name]

    def survey(self, S):
        if S.name not in self.surveys:
            self.surveys[S.name] = flatness_survey(S, SWEEP_BOUND, cache=self.cache(S))
        return self.surveys[S.name]


def _row(name, kind, ok, method, verdict, witnesses=None, notes=None) -> Row:
    return Row(name, kind, OK if ok else VIOLATION, method, verdict, witnesses or {}, notes or [],
               {"bound": SWEEP_BOUND})


def row_matrix(ctx: Context) -> Row:
    S = sr.chain(4)
    A = [["0", "1"], ["2", "3"]]
    scan = matrix_regularity_scan(S, 2, [A])
    vn = vn_witnesses(S)
    base_regular = all(v is not None for v in vn.values())
    ok = base_regular and len(scan.non_regular) == 1
    return _row("matrix", "Example: non-regular matrix over a regular chain", ok,
                "all 256 candidates B",
                {"chain4_vn_regular": base_regular, "A_regular": not scan.non_regular,
                 "candidates": S.size ** 4},
                {"vn": {S.label(a): S.label(s) if s is not None else None for a, s in vn.items()}})


def row_chain3_summand(ctx: Context) -> Row:
    S = sr.chain(3)
    p = regularity_profile(S)
    a = S.index_of("a")
    I = frozenset(S.mul[s][a] for s in S.elements)
    verdict = is_direct_summand(S, I, LEFT)
    candidates = ideals(S, LEFT)
    ok = p.vn_regular and p.additively_regular and not verdict.summand and len(candidates) == 3
    return _row("chain3-summand", "Example: principal ideal that is not a direct summand", ok,
                "every ideal as complement",
                {"vn_regular": p.vn_regular, "additively_regular": p.additively_regular,
                 "I": "{" + ",".join(S.labels[x] for x in sorted(I)) + "}",
                 "is_direct_summand": verdict.summand, "candidates": len(candidates)})


def row_theta(ctx: Context) -> Row:
    checked, failures = 0, []
    for S in theta_semirings():
        bound = min(5, 20 // S.size)
        for M in semimodules_up_to(S, bound, RIGHT):
            checked += 1
            try:
                theta_module(M, cap=20)
            except (CertificationFailure, SemiflatError) as exc:
                failures.append(f"{M.name}: {exc}")
    return _row("theta", "M (x) S -> M is an isomorphism", not failures,
                "certified tensor + bijection + action check",
                {"pairs": checked, "failures": len(failures)}, notes=failures[:10])


def row_z4_witness(ctx: Context) -> Row:
    S = sr.zmod(4)
    p = regularity_profile(S)
    SL = regular_module(S, LEFT)
    Q, _ = bourne_quotient(SL, {0, 2})
    Z2 = FiniteSemimodule(add=Q.add, action=Q.action, base=S, side=RIGHT, name="Z/2", labels=Q.labels)
    v = s_flatness(Z2, cache=ctx.cache(S))
    h = sflatvon_harness(S, SWEEP_BOUND)
    m_witness = v.witnesses.get("m")
    ok = (p.subtractive and not p.vn_regular and v.m_flat is False and v.i_flat is False
          and v.e_flat is False and m_witness is not None and m_witness.members == frozenset({0, 2})
          and h.status == WITNESS_FOUND and h.witness[1].size == 2)
    return _row("z4-witness", "Z/4: subtractive, not regular, Z/2 not S-flat", ok,
                "theta_I over all ideals; bounded contrapositive search",
                {"subtractive": p.subtractive, "vn_regular": p.vn_regular, "m_flat": v.m_flat,
                 "i_flat": v.i_flat, "e_flat": v.e_flat, "harness": h.status,
                 "witness_size": h.witness[1].size if h.witness else None},
                {"ideal": repr(m_witness)})


def row_inclusions(ctx: Context) -> Row:
    verdict, notes, total = {}, [], 0
    for S in sweep_semirings():
        r = ctx.survey(S)
        bad = [v for v in r.violations if "routes disagree" not in v]
        total += len(bad)
        verdict[S.name] = {"subjects": len(r.entries), "violations": len(bad), "inconclusive": r.inconclusive,
                           "strict_i_not_e": r.strictness["i_not_e"], "strict_i_not_m": r.strictness["i_not_m"]}
        notes.extend(bad[:5])
    return _row("inclusions", "e-flat => i-flat and m-flat => i-flat", total == 0,
                f"all right F and left M of size <= {SWEEP_BOUND}", verdict, notes=notes)


def row_routes(ctx: Context) -> Row:
    verdict, notes, total = {}, [], 0
    for S in sweep_semirings():
        r = ctx.survey(S)
        pairs = sum(len(e.per_target) for e in r.entries)
        dis = [f"{e.module.name} vs {v.target}: {v.disagreements}" for e in r.entries for v in e.per_target
               if not v.consistent]
        s_dis = []
        for e in r.entries:
            sv = s_flatness(e.module, cache=ctx.cache(S))
            if not sv.consistent:
                s_dis.append(f"{e.module.name}: {sv.routes}")
        total += len(dis) + len(s_dis)
        verdict[S.name] = {"pairs": pairs, "route_disagreements": len(dis), "theta_disagreements": len(s_dis)}
        notes.extend((dis + s_dis)[:5])
    return _row("routes", "definition, exact-sequence and theta_I routes agree", total == 0,
                "both routes on every pair of the sweep", verdict, notes=notes)


def row_closure(ctx: Context) -> Row:
    verdict, notes, total = {}, [], 0
    for S in sweep_semirings():
        cache = TensorCache(cap=CLOSURE_CAP)
        subjects = semimodules_up_to(S, 3, RIGHT, min_size=2)
        targets = semimodules_up_to(S, 3, LEFT)
        checks = [check_sum_flat(subjects, targets, cache), check_retracts(subjects, targets, cache),
                  check_closed_sub_factor(subjects, targets, cache)]
        verdict[S.name] = {c.claim: {"checked": c.checked, "violations": len(c.violations)} for c in checks}
        for c in checks:
            total += len(c.violations)
            notes.extend(c.violations[:3])
    return _row("closure", "direct sums, retracts and short exact sequences", total == 0,
                f"subjects and targets of size <= 3, tensor cap {CLOSURE_CAP}", verdict, notes=notes)


def row_oracles(ctx: Context) -> Row:
    verdict, notes = {}, []
    theta_fail = sum_fail = uncertified = bounded_fail = 0
    for S in sweep_semirings():
        cache = ctx.cache(S)
        ctx.survey(S)
        subjects = semimodules_up_to(S, SWEEP_BOUND, RIGHT, min_size=2)
        lefts = semimodules_up_to(S, 2, LEFT, min_size=2)
        n_theta = n_sum = 0
        for F in subjects:
            n_theta += 1
            try:
                theta_module(F, cap=F.size * S.size)
            except (CertificationFailure, SemiflatError) as exc:
                theta_fail += 1
                notes.append(f"theta {F.name}: {exc}")
            for M in lefts:
                for N in lefts:
                    if F.size * M.size * N.size > 16:
                        continue
                    n_sum += 1
                    try:
                        h = sum_distribution_map(F, M, N, cap=16)
                        if not (h.is_injective() and h.is_surjective()):
                            raise SemiflatError("not bijective")
                    except SemiflatError as exc:
                        sum_fail += 1
                        notes.append(f"sum {F.name} / {M.name}, {N.name}: {exc}")
        bad = [k for k, T in cache._store.items() if not T.certified]
        uncertified += len(bad)
        # the naive bounded congruence at default slack must reproduce every exact tensor
        n_bounded = 0
        for T in list(cache._store.values()):
            try:
                B = bounded_tensor(T.left_factor, T.right_factor, slack=DEFAULT_SLACK, exact=T)
            except SizeCapExceeded:
                continue
            n_bounded += 1
            if not B.agrees:
                bounded_fail += 1
                notes.append(f"bounded route disagrees on {T.left_factor.name} (x) {T.right_factor.name}")
        verdict[S.name] = {"theta_checked": n_theta, "sums_checked": n_sum, "tensors": len(cache),
                           "uncertified": len(bad), "bounded_checked": n_bounded}
    ok = theta_fail == 0 and sum_fail == 0 and uncertified == 0 and bounded_fail == 0
    verdict["totals"] = {"theta_failures": theta_fail, "sum_failures": sum_fail, "uncertified": uncertified,
                         "bounded_disagreements": bounded_fail, "slack": DEFAULT_SLACK}
    return _row("oracles", "tensor oracles: theta, finite direct sums, bounded route", ok,
                "every tensor built in the sweep", verdict, notes=notes[:10])


def row_bezout(ctx: Context) -> Row:
    verdict, ok = {}, True
    for S in (sr.chain(3), sr.chain(4)):
        p = regularity_profile(S)
        abc = check_abc(S)
        h = bez_neumann_check(S, SWEEP_BOUND)
        good = all(abc) and p.left_bezout and p.right_bezout and h.status == CONFIRMED and not h.refutations
        ok = ok and good
        verdict[S.name] = {"abc": list(abc), "left_bezout": p.left_bezout, "right_bezout": p.right_bezout,
                           "normally_generated_checked": h.checked, "refutations": len(h.refutations)}
    return _row("bezout", "ABC conditions, Bezout, normally generated modules S-m-flat", ok,
                f"bounded check, size <= {SWEEP_BOUND}", verdict)


def row_exactness(ctx: Context) -> Row:
    verdict, notes, total = {}, [], 0
    for S in sweep_semirings():
        mods = semimodules_up_to(S, SWEEP_BOUND, LEFT)
        rights = semimodules_up_to(S, 3, RIGHT, min_size=2)
        checks = [check_lemma_exact(mods), check_i_normal(mods), check_u_sum(mods), check_pullback(mods),
                  check_semi_ex(mods), check_r_exact(mods, rights, TensorCache(16))]
        verdict[S.name] = {c.claim: {"checked": c.checked, "violations": len(c.violations)} for c in checks}
        for c in checks:
            total += len(c.violations)
            notes.extend(c.violations[:3])
    return _row("exactness", "exactness lemmas on generated families", total == 0,
                f"modules of size <= {SWEEP_BOUND}, generated morphism families", verdict, notes=notes)


ROWS = {
    "matrix": row_matrix,
    "chain3-summand": row_chain3_summand,
    "theta": row_theta,
    "z4-witness": row_z4_witness,
    "inclusions": row_inclusions,
    "routes": row_routes,
    "closure": row_closure,
    "oracles": row_oracles,
    "bezout": row_bezout,
    "exactness": row_exactness,
}


def run_row(name: str, ctx: Context | None = None) -> Row:
    ctx = ctx or Context()
    start = time.perf_counter()
    try:
        row = ROWS[name](ctx)
    except AssertionError as exc:
        row = Row(name, "reproduction", VIOLATION, notes=[f"consistency check failed: {exc}"])
    except Exception as exc:  # a crashing row is reported, the rest still run
        row = Row(name, "reproduction", ERROR, notes=[f"{type(exc).__name__}: {exc}"])
    row.seconds = time.perf_counter() - start
    return row


def reproduce_paper(only: list[str] | None = None) -> AnalysisReport:
    names = list(ROWS) if not only else only
    unknown = [n for n in names if n not in ROWS]
    if unknown:
        raise KeyError(f"unknown rows {unknown}; choose from {list(ROWS)}")
    ctx = Context()
    return AnalysisReport("reproduction", [run_row(n, ctx) for n in names])
