"""Command line entry point: ``semiflat <command> ...``.

Modules can be named on the command line without a workspace file:

    zmod:4/regular-left        S as a left module over itself
    chain:3/free2-right        S^2 as a right module
    chain:3/r3.1               the catalog module of that name (see ``catalog list --modules``)
    zmod:4/regular-left/by:0,2 Bourne quotient by the listed elements

A reference that matches an id in ``--workspace`` wins.
"""

from __future__ import annotations

import argparse
import sys

from . import reproduce
from .analyze import run
from .errors import AxiomViolation, BadParams, InputError, UnknownReference
from .reports import EXIT_INPUT, EXIT_OK, AnalysisReport, render
from .semimodule import LEFT, RIGHT, bourne_quotient, free_semimodule, regular_module
from .semiring import catalog_ids
from .workspace import Analysis, WorkspaceConfig, config_from_dict, parse_workspace
from .zoo import enumerate_semimodules, semimodules_up_to


def _caps_override(args) -> dict:
    out = {}
    if getattr(args, "cap", None) is not None:
        out["tensor_cap"] = args.cap
    if getattr(args, "slack", None) is not None:
        out["slack"] = args.slack
    if getattr(args, "bound", None) is not None:
        out["module_size_bound"] = args.bound
    return out


def load_config(args) -> WorkspaceConfig:
    if getattr(args, "workspace", None):
        return parse_workspace(args.workspace, _caps_override(args))
    return config_from_dict({}, _caps_override(args))


def resolve_module(cfg: WorkspaceConfig, ref: str):
    if ref in cfg.semimodules:
        return cfg.semimodules[ref]
    sr_id, _, rest = ref.partition("/")
    if not rest:
        raise UnknownReference(ref)
    S = cfg.semiring(sr_id)
    kind, _, quot = rest.partition("/")
    if kind.startswith("regular-"):
        M = regular_module(S, kind[len("regular-"):])
    elif kind.startswith("free") and "-" in kind:
        n, _, side = kind[4:].partition("-")
        M = free_semimodule(S, int(n), side, cap=cfg.caps.element_cap)
    elif kind[:1] in ("l", "r") and "." in kind:
        side = LEFT if kind[0] == "l" else RIGHT
        size, _, k = kind[1:].partition(".")
        try:
            M = enumerate_semimodules(S, int(size), side)[int(k)]
        except (ValueError, IndexError):
            raise UnknownReference(ref) from None
    else:
        raise UnknownReference(ref)
    if M.side not in (LEFT, RIGHT):
        raise UnknownReference(ref)
    if quot:
        if not quot.startswith("by:"):
            raise UnknownReference(ref)
        members = {M.labels.index(x) if x in M.labels else int(x) for x in quot[3:].split(",") if x}
        M, _ = bourne_quotient(M, members)
    cfg.semimodules[ref] = M
    return M


def _emit(report: AnalysisReport, args) -> int:
    sys.stdout.write(render(report, args.format, getattr(args, "timing", False)))
    return report.exit_code()


def _single(cfg: WorkspaceConfig, op: str, params: dict, args, title: str) -> int:
    cfg.analyses = [Analysis(op, params, title)]
    return _emit(run(cfg, title), args)


def _need_workspace(args):
    if not args.workspace:
        raise BadParams("--workspace is required")


def cmd_validate(args) -> int:
    _need_workspace(args)
    cfg = parse_workspace(args.workspace, _caps_override(args))
    print(f"ok: {len(cfg.semirings)} semirings, {len(cfg.semimodules)} semimodules, "
          f"{len(cfg.morphisms)} morphisms, {len(cfg.analyses)} analyses")
    return EXIT_OK


def cmd_analyze(args) -> int:
    _need_workspace(args)
    cfg = parse_workspace(args.workspace, _caps_override(args))
    report = run(cfg, "analysis", jobs=args.jobs)
    if args.only:
        report.rows = [r for r in report.rows if r.name in args.only]
    return _emit(report, args)


def cmd_tensor(args) -> int:
    cfg = load_config(args)
    resolve_module(cfg, args.right)
    resolve_module(cfg, args.left)
    return _single(cfg, "tensor", {"right": args.right, "left": args.left, "oracles": args.oracles},
                   args, "tensor")


def cmd_flatness(args) -> int:
    cfg = load_config(args)
    resolve_module(cfg, args.subject)
    if args.target == "S":
        return _single(cfg, "s_flatness", {"subject": args.subject}, args, "s-flatness")
    params = {"subject": args.subject, "route": args.route}
    if args.target_all:
        params["target_all"] = True
    elif args.target:
        resolve_module(cfg, args.target)
        params["target"] = args.target
    else:
        raise BadParams("give --target, --target S or --target-all")
    return _single(cfg, "flatness", params, args, "flatness")


def cmd_regularity(args) -> int:
    cfg = load_config(args)
    S = cfg.semiring(args.semiring)
    cfg.analyses = [Analysis("regularity", {"semiring": args.semiring}, "regularity")]
    if args.matrix_scan:
        cfg.analyses.append(Analysis("matrix_scan", {"semiring": args.semiring, "n": args.matrix_scan},
                                     f"matrix-scan-{args.matrix_scan}"))
    if args.sflatvon:
        cfg.analyses.append(Analysis("sflatvon", {"semiring": args.semiring}, "sflatvon"))
    if args.bez_neumann:
        cfg.analyses.append(Analysis("bez_neumann", {"semiring": args.semiring}, "bez-neumann"))
    return _emit(run(cfg, f"regularity of {S.name}"), args)


def cmd_reproduce(args) -> int:
    try:
        report = reproduce.reproduce_paper(args.only)
    except KeyError as exc:
        raise BadParams(str(exc.args[0])) from None
    return _emit(report, args)


def cmd_catalog(args) -> int:
    if args.modules:
        cfg = load_config(args)
        S = cfg.semiring(args.modules)
        bound = args.bound or 3
        for side in (LEFT, RIGHT):
            for M in semimodules_up_to(S, bound, side):
                print(f"{M.name}\t{side}\tsize={M.size}")
        return EXIT_OK
    for ident in catalog_ids():
        print(ident)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--workspace", help="JSON workspace file")
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--bound", type=int, help="module size bound for sweeps")
    common.add_argument("--cap", type=int, help="tensor cap |F|*|M|")
    common.add_argument("--slack", type=int, help="slack for the bounded tensor route")
    common.add_argument("--timing", action="store_true", help="include wall-clock seconds (not deterministic)")

    p = argparse.ArgumentParser(prog="semiflat", description="Finite semiring flatness and exactness checks.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="parse and check a workspace")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("analyze", parents=[common], help="run the analyses of a workspace")
    s.add_argument("--only", nargs="+", help="keep only these analysis names in the report")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("tensor", parents=[common], help="tensor product of a right and a left module")
    s.add_argument("--right", required=True)
    s.add_argument("--left", required=True)
    s.add_argument("--oracles", action="store_true", help="also run the oracle checks")
    s.set_defaults(func=cmd_tensor)

    s = sub.add_parser("flatness", parents=[common], help="m/i/e-flatness of a right module")
    s.add_argument("--subject", required=True)
    s.add_argument("--target", help="left module, or S for S-flatness")
    s.add_argument("--target-all", action="store_true", help="every catalog target up to --bound")
    s.add_argument("--route", choices=("def", "ses", "both"), default="both")
    s.set_defaults(func=cmd_flatness)

    s = sub.add_parser("regularity", parents=[common], help="regularity profile of a semiring")
    s.add_argument("--semiring", required=True)
    s.add_argument("--matrix-scan", type=int, metavar="N", help="scan all N x N matrices")
    s.add_argument("--sflatvon", action="store_true", help="bounded search for a non-S-flat witness")
    s.add_argument("--bez-neumann", action="store_true", help="bounded Bezout / normal generation check")
    s.set_defaults(func=cmd_regularity)

    s = sub.add_parser("reproduce-paper", parents=[common], help="run the reproduction suite")
    s.add_argument("--only", nargs="+", choices=list(reproduce.ROWS), metavar="ROW")
    s.set_defaults(func=cmd_reproduce)

    s = sub.add_parser("catalog", parents=[common], help="catalog listings")
    s.add_argument("action", choices=("list",))
    s.add_argument("--modules", metavar="SEMIRING", help="list catalog modules over this semiring")
    s.set_defaults(func=cmd_catalog)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, AxiomViolation, BadParams) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
