"""Execute the analyses listed in a workspace and collect report rows."""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor

from .errors import SemiflatError, SizeCapExceeded
from .exactness import Sequence, classify_sequence, is_short_exact
from .flatness import TensorCache, flatness_survey, flatness_wrt, s_flatness
from .regularity import bez_neumann_check, matrix_regularity_scan, regularity_profile, sflatvon_harness
from .reports import ERROR, INCONCLUSIVE, OK, VIOLATION, AnalysisReport, Row
from .semimodule import LEFT
from .tensor import bounded_tensor, tensor, verify_tensor_oracles
from .workspace import Analysis, WorkspaceConfig


def sub_repr(M, members) -> str:
    return "{" + ",".join(M.labels[x] for x in sorted(members)) + "}"


def _tri_status(*flags) -> str:
    return INCONCLUSIVE if any(f is None for f in flags) else OK


def flatness_row(name: str, v, method: str, caps: dict) -> Row:
    status = _tri_status(v.m_flat, v.i_flat, v.e_flat)
    if not v.consistent:
        status = VIOLATION
    return Row(
        name, "flatness", status, method,
        verdict={"subject": v.subject, "target": v.target, "m_flat": v.m_flat, "i_flat": v.i_flat,
                 "e_flat": v.e_flat, "routes": v.routes},
        witnesses={k: repr(w) for k, w in v.witnesses.items()},
        notes=list(v.notes), caps=caps,
    )


def regularity_row(name: str, S, caps: dict) -> Row:
    p = regularity_profile(S)
    verdict = {
        "vn_regular": p.vn_regular,
        "additively_regular": p.additively_regular,
        "left_subtractive": p.left_subtractive,
        "right_subtractive": p.right_subtractive,
        "left_bezout": p.left_bezout,
        "right_bezout": p.right_bezout,
        "idempotent_principal_ok": p.idempotent_principal_ok,
        "abc": list(p.abc) if p.abc is not None else None,
    }
    witnesses = {"vn": {S.label(a): (S.label(s) if s is not None else None) for a, s in p.vn_witness.items()}}
    for k, v in p.offending.items():
        witnesses[k] = S.label(v) if isinstance(v, int) else repr(v)
    return Row(name, "regularity", OK, "exhaustive", verdict, witnesses, list(p.notes), caps)


def _matrix_label(S, A) -> str:
    return "[" + ";".join(",".join(S.labels[v] for v in row) for row in A) + "]"


def _run_one(a: Analysis, cfg: WorkspaceConfig, cache: TensorCache) -> Row:
    caps = cfg.caps.as_dict()
    p = a.params
    if a.op == "regularity":
        return regularity_row(a.name, cfg.semiring(p["semiring"]), caps)
    if a.op == "matrix_scan":
        S = cfg.semiring(p["semiring"])
        scan = matrix_regularity_scan(S, int(p.get("n", 2)), p.get("matrices"))
        return Row(a.name, "matrix_scan", OK, "brute force over all B",
                   {"semiring": S.name, "n": scan.n, "examined": scan.examined,
                    "non_regular": len(scan.non_regular), "all_regular": scan.all_regular},
                   {"non_regular": [_matrix_label(S, A) for A in scan.non_regular[:20]]}, caps=caps)
    if a.op == "tensor":
        F, M = cfg.module(p["right"]), cfg.module(p["left"])
        T = tensor(F, M, cfg.caps.tensor_cap)
        verdict = {"size": T.size, "certified": T.certified, "failures": list(T.failures)}
        status = OK if T.certified else INCONCLUSIVE
        notes = []
        if p.get("bounded", True):
            try:
                B = bounded_tensor(F, M, slack=cfg.caps.slack, exact=T)
                verdict.update({"bounded_classes": B.num_classes, "bounded_sound": B.sound,
                                "bounded_complete": B.complete})
            except SizeCapExceeded as exc:
                notes.append(f"bounded route skipped: {exc}")
        if p.get("oracles"):
            rep = verify_tensor_oracles(F, M, M, cfg.caps.tensor_cap)
            verdict["oracles_passed"] = rep.passed
            notes.extend(rep.notes + rep.uncertified)
            if not (rep.theta_iso and rep.sum_distribution and rep.cokernels):
                status = VIOLATION
        return Row(a.name, "tensor", status, "exact quotient of free monoid", verdict,
                   {"elements": list(T.monoid.labels)}, notes, caps)
    if a.op == "flatness":
        F = cfg.module(p["subject"])
        route = p.get("route", "both")
        if "target" in p:
            v = flatness_wrt(F, cfg.module(p["target"]), route, cache, cfg.caps.enum_cap)
            return flatness_row(a.name, v, f"route={route}", caps)
        from .zoo import semimodules_up_to

        bound = int(p.get("bound", cfg.caps.module_size_bound))
        rows = [flatness_wrt(F, M, route, cache, cfg.caps.enum_cap)
                for M in semimodules_up_to(F.base, bound, LEFT)]
        flags = {}
        for k in ("m", "i", "e"):
            vals = [v.flag(k) for v in rows]
            flags[k] = False if False in vals else (None if None in vals else True)
        bad = [v for v in rows if not v.consistent]
        status = VIOLATION if bad else _tri_status(*flags.values())
        witnesses = {}
        for k in ("m", "i", "e"):
            for v in rows:
                if v.flag(k) is False:
                    witnesses[k] = f"{v.target}: {v.witnesses.get(k)!r}"
                    break
        return Row(a.name, "flatness", status, f"route={route}, all targets of size <= {bound}",
                   {"subject": F.name, "targets": len(rows), "m_flat": flags["m"], "i_flat": flags["i"],
                    "e_flat": flags["e"]}, witnesses,
                   [f"bounded claim: only targets with at most {bound} elements"], caps)
    if a.op == "s_flatness":
        v = s_flatness(cfg.module(p["subject"]), cache, enum_cap=max(cfg.caps.enum_cap, 64))
        return flatness_row(a.name, v, "theta_I over all left ideals + definition cross-check", caps)
    if a.op == "survey":
        S = cfg.semiring(p["semiring"])
        bound = int(p.get("bound", cfg.caps.module_size_bound))
        r = flatness_survey(S, bound)
        status = VIOLATION if r.violations else (INCONCLUSIVE if r.inconclusive else OK)
        return Row(a.name, "survey", status, "both routes, all modules up to isomorphism",
                   {"semiring": S.name, "bound": bound, "subjects": len(r.entries),
                    "F_m": r.members("m"), "F_i": r.members("i"), "F_e": r.members("e"),
                    "free": r.free_modules, "inconclusive_pairs": r.inconclusive},
                   {"strictness": r.strictness}, list(r.violations), caps)
    if a.op == "exactness":
        maps = [cfg.morphism(x) for x in p["maps"]]
        seq = Sequence(tuple(maps), bool(p.get("leading_zero")), bool(p.get("trailing_zero")))
        verdict = classify_sequence(seq)
        nodes = [{"chain_complex": n.chain_complex, "proper_exact": n.proper_exact,
                  "semi_exact": n.semi_exact, "exact": n.exact} for n in verdict.nodes]
        out = {"nodes": nodes, "exact": verdict.exact, "semi_exact": verdict.semi_exact,
               "proper_exact": verdict.proper_exact}
        if len(maps) == 2 and seq.leading_zero and seq.trailing_zero:
            out["short_exact"] = is_short_exact(seq).holds
        witnesses = {}
        for k, n in enumerate(verdict.nodes):
            for attr in ("chain_witness", "proper_witness", "semi_witness", "k_witness"):
                w = getattr(n, attr)
                if w is not None:
                    witnesses[f"node{k}.{attr}"] = w
        return Row(a.name, "exactness", OK, "per-node classification", out, witnesses, caps=caps)
    if a.op in ("sflatvon", "bez_neumann"):
        S = cfg.semiring(p["semiring"])
        bound = int(p.get("bound", cfg.caps.module_size_bound))
        fn = sflatvon_harness if a.op == "sflatvon" else bez_neumann_check
        r = fn(S, bound)
        status = VIOLATION if r.refutations else OK
        w = {}
        if r.witness is not None:
            side, A, ideal = r.witness
            w = {"module": A.name, "side": side, "size": A.size, "ideal": repr(ideal)}
        return Row(a.name, a.op, status, f"bounded search, size <= {bound}",
                   {"status": r.status, "checked": r.checked}, w, r.notes + r.refutations, caps)
    raise SemiflatError(f"unknown op {a.op}")


def run_analysis(a: Analysis, cfg: WorkspaceConfig, cache: TensorCache | None = None) -> Row:
    cache = TensorCache(cfg.caps.tensor_cap) if cache is None else cache
    start = time.perf_counter()
    try:
        row = _run_one(a, cfg, cache)
    except SizeCapExceeded as exc:
        row = Row(a.name, a.op, INCONCLUSIVE, notes=[f"cap exceeded: {exc}"], caps=cfg.caps.as_dict())
    except AssertionError as exc:
        row = Row(a.name, a.op, VIOLATION, notes=[f"internal consistency check failed: {exc}"],
                  caps=cfg.caps.as_dict())
    except SemiflatError as exc:
        row = Row(a.name, a.op, ERROR, notes=[f"{type(exc).__name__}: {exc}"], caps=cfg.caps.as_dict())
    row.seconds = time.perf_counter() - start
    return row


def run(cfg: WorkspaceConfig, title: str = "analysis", jobs: int = 1) -> AnalysisReport:
    """Run every analysis; one failing analysis does not stop the rest.

    With ``jobs > 1`` analyses run on a thread pool; rows are still reported in
    workspace order so the rendered report does not depend on ``jobs``.
    """
    cache = TensorCache(cfg.caps.tensor_cap)
    if jobs <= 1 or len(cfg.analyses) <= 1:
        rows = [run_analysis(a, cfg, cache) for a in cfg.analyses]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(lambda a: run_analysis(a, cfg, cache), cfg.analyses))
    return AnalysisReport(title, rows)
