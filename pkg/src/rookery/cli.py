"""Command-line front end: builders, homology, degrees, and scenario runs.

Every subcommand emits a single JSON report on stdout (or ``--out``) with an
embedded run manifest (argv, seed, version, elapsed times).  Reports contain
only exact integers and "p/q" strings, never floating point.  Under
``--deterministic`` the elapsed fields are zeroed so that identical
invocations produce byte-identical reports.

Exit codes: 0 success / certificate found; 1 exhaustively refuted scenario;
2 inconclusive (stochastic budget exhausted); 3 input or usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from . import __version__
from .errors import MalformedInputError, ParameterError
from .simplicial import SimplicialComplex, boundary_matrix, join, simplex_skeleton
from .chessboard import (SimplicialMap, canonical_projection, chessboard_complex,
                         cyclic_row_action, cyclic_shift_action, join_actions,
                         join_maps, is_free_action, representation_sphere)
from .degree import (congruence_audit, degree_report, enumerate_equivariant_maps,
                     orient, pseudomanifold_check)
from .homology import homology
from .geometry import (make_scenario, parse_config, random_config, run_scenario,
                       run_trials, SCENARIO_NAMES)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(3)


def _common_flags(parser):
    parser.add_argument("--out", help="write the JSON report to this file")
    parser.add_argument("--deterministic", action="store_true",
                        help="zero elapsed times for byte-identical reruns")
    parser.add_argument("--json", action="store_true",
                        help="accepted for symmetry; reports are always JSON")


def build_parser() -> _Parser:
    parser = _Parser(prog="rookery",
                     description="Rook-placement complexes: homology, degrees, "
                                 "and colored common-point certificates.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_complex = sub.add_parser("complex", help="build a complex and emit its JSON")
    kind = p_complex.add_subparsers(dest="kind", required=True)
    p_cb = kind.add_parser("chessboard")
    p_cb.add_argument("--m", type=int, required=True)
    p_cb.add_argument("--n", type=int, required=True)
    _common_flags(p_cb)
    p_sk = kind.add_parser("skeleton")
    p_sk.add_argument("--m", type=int, required=True)
    p_sk.add_argument("--k", type=int, required=True)
    _common_flags(p_sk)
    p_join = kind.add_parser("join")
    p_join.add_argument("left")
    p_join.add_argument("right")
    _common_flags(p_join)

    p_hom = sub.add_parser("homology", help="integral homology via Smith normal form")
    _complex_source(p_hom)
    convention = p_hom.add_mutually_exclusive_group()
    convention.add_argument("--reduced", dest="reduced", action="store_true",
                            default=True, help="reduced homology (the default)")
    convention.add_argument("--unreduced", dest="reduced", action="store_false")
    p_hom.add_argument("--max-dim", type=int, default=None)
    _common_flags(p_hom)

    p_pseudo = sub.add_parser("pseudo", help="pseudomanifold flags")
    _complex_source(p_pseudo)
    _common_flags(p_pseudo)

    p_orient = sub.add_parser("orient", help="fundamental class by sign propagation")
    _complex_source(p_orient)
    _common_flags(p_orient)

    p_deg = sub.add_parser("degree", help="mapping degree of a simplicial map")
    p_deg.add_argument("--map", dest="map_file",
                       help='map JSON {"vertex_map": [...]}')
    p_deg.add_argument("--dom", help="domain complex JSON file")
    p_deg.add_argument("--cod", help="codomain complex JSON file")
    p_deg.add_argument("--projection", nargs=2, type=int, metavar=("R", "K"),
                       help="use the canonical row projection of the RxK board")
    p_deg.add_argument("--method", choices=("both", "homological", "preimage"),
                       default="both")
    p_deg.add_argument("--mod", type=int, default=None,
                       help="also report the degree residue mod this number")
    _common_flags(p_deg)

    p_maps = sub.add_parser("equimaps",
                            help="enumerate equivariant simplicial maps from the "
                                 "d-fold join of the (r x r-1) board to the sphere model")
    p_maps.add_argument("--r", type=int, required=True)
    p_maps.add_argument("--d", type=int, default=1)
    p_maps.add_argument("--orbit-cap", type=int, default=4)
    _common_flags(p_maps)

    p_audit = sub.add_parser("audit-congruence",
                             help="degrees of all equivariant maps must agree mod r")
    p_audit.add_argument("--r", type=int, required=True)
    p_audit.add_argument("--d", type=int, default=1)
    p_audit.add_argument("--orbit-cap", type=int, default=4)
    _common_flags(p_audit)

    p_scn = sub.add_parser("scenario", help="search for intersecting rainbow blocks")
    p_scn.add_argument("name", help=f"one of: {', '.join(SCENARIO_NAMES)}")
    p_scn.add_argument("--d", type=int)
    p_scn.add_argument("--r", type=int)
    p_scn.add_argument("--k", type=int)
    p_scn.add_argument("--l", type=int)
    p_scn.add_argument("--p", type=int)
    p_scn.add_argument("--config", help="colored config JSON file (default: seeded random)")
    p_scn.add_argument("--trials", type=int, default=1,
                       help="number of seeded random configs to run")
    p_scn.add_argument("--seed", type=int, default=0)
    mode = p_scn.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", dest="mode", action="store_const",
                      const="exhaustive", default="exhaustive")
    mode.add_argument("--stochastic", dest="mode", action="store_const",
                      const="stochastic")
    p_scn.add_argument("--budget", type=int, default=None,
                       help="LP call budget for stochastic mode")
    p_scn.add_argument("--threads", type=int, default=1)
    p_scn.add_argument("--verbose", action="store_true",
                       help="include every per-trial report, not just failures")
    _common_flags(p_scn)

    p_rc = sub.add_parser("random-config", help="emit a seeded random colored config")
    p_rc.add_argument("--dim", type=int, required=True)
    p_rc.add_argument("--class-sizes", required=True,
                      help="comma separated, e.g. 3,3,3")
    p_rc.add_argument("--seed", type=int, required=True)
    p_rc.add_argument("--coord-bound", type=int, default=1000)
    _common_flags(p_rc)
    return parser


def _complex_source(parser):
    parser.add_argument("--complex", dest="complex_file", help="complex JSON file")
    parser.add_argument("--chessboard", nargs=2, type=int, metavar=("M", "N"))
    parser.add_argument("--skeleton", nargs=2, type=int, metavar=("M", "K"))


def _load_complex(args) -> SimplicialComplex:
    sources = [s for s in (args.complex_file, args.chessboard, args.skeleton)
               if s is not None]
    if len(sources) != 1:
        raise ParameterError("pick exactly one of --complex, --chessboard, --skeleton")
    if args.complex_file:
        with open(args.complex_file) as fh:
            return SimplicialComplex.from_dict(json.load(fh))
    if args.chessboard:
        return chessboard_complex(*args.chessboard)
    return simplex_skeleton(*args.skeleton)


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise MalformedInputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise MalformedInputError(f"{path} is not valid JSON: {exc}") from exc


def _emit(args, argv, body, started, exit_code=0, seed=None):
    elapsed = 0 if args.deterministic else int((time.monotonic() - started) * 1000)
    skip = {"command", "kind", "out", "deterministic", "json"}
    params = {key: _jsonable(value) for key, value in sorted(vars(args).items())
              if key not in skip}
    body["manifest"] = {
        "argv": argv,
        "seed": seed,
        "params": params,
        "version": __version__,
        "elapsed_ms": {"total": elapsed},
    }
    text = json.dumps(body, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return exit_code


# -- subcommand bodies --------------------------------------------------------


def _cmd_complex(args, argv, started):
    if args.kind == "chessboard":
        K = chessboard_complex(args.m, args.n)
    elif args.kind == "skeleton":
        K = simplex_skeleton(args.m, args.k)
    else:
        left = SimplicialComplex.from_dict(_read_json(args.left))
        right = SimplicialComplex.from_dict(_read_json(args.right))
        K = join(left, right)
    body = K.to_dict()
    body["f_vector"] = list(K.f_vector())
    return _emit(args, argv, body, started)


def _cmd_homology(args, argv, started):
    K = _load_complex(args)
    profile = homology(K, reduced=args.reduced, max_dim=args.max_dim)
    body = {
        "complex": K.name,
        "reduced": profile.reduced,
        "betti": list(profile.betti),
        "torsion": [list(t) for t in profile.torsion],
    }
    return _emit(args, argv, body, started)


def _cmd_pseudo(args, argv, started):
    K = _load_complex(args)
    report = pseudomanifold_check(K)
    body = {
        "complex": K.name,
        "pure": report.pure,
        "ridge_regular": report.ridge_regular,
        "strongly_connected": report.strongly_connected,
        "orientable": report.orientable,
        "is_pseudomanifold": report.is_pseudomanifold,
        "witness": _jsonable(report.witness),
    }
    return _emit(args, argv, body, started)


def _cmd_orient(args, argv, started):
    K = _load_complex(args)
    fc = orient(K)
    chain = sorted(fc.chain.coefficients.items())
    body = {
        "complex": K.name,
        "dimension": fc.chain.dimension,
        "chain": [{"simplex": list(s), "coeff": c} for s, c in chain],
    }
    return _emit(args, argv, body, started)


def _cmd_degree(args, argv, started):
    if args.projection:
        r, k = args.projection
        if k != r - 1:
            raise ParameterError(
                "the projection degree needs the (r, r-1) board (k = r-1)")
        f = canonical_projection(r, k)
        modulus = args.mod if args.mod is not None else r
    else:
        if not (args.map_file and args.dom and args.cod):
            raise ParameterError("need --map/--dom/--cod or --projection R K")
        dom = SimplicialComplex.from_dict(_read_json(args.dom))
        cod = SimplicialComplex.from_dict(_read_json(args.cod))
        doc = _read_json(args.map_file)
        try:
            vm = tuple(int(v) for v in doc["vertex_map"])
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInputError(f"bad map document: {exc}") from exc
        f = SimplicialMap(dom, cod, vm)
        modulus = args.mod
    fc_dom = orient(f.domain)
    fc_cod = orient(f.codomain)
    rep = degree_report(f, fc_dom, fc_cod, method=args.method, modulus=modulus)
    body = {"degree": rep.value, "method": rep.method}
    if rep.residue_mod:
        body["mod"] = list(rep.residue_mod)
    return _emit(args, argv, body, started)


def _canonical_pair(r: int, d: int):
    """Domain join of d rook boards (r x r-1) with diagonal cyclic action,
    codomain sphere model, plus the joined canonical projection."""
    proj = canonical_projection(r, r - 1)
    dom_action = cyclic_row_action(r, r - 1)
    for _ in range(d - 1):
        proj = join_maps(proj, canonical_projection(r, r - 1))
        dom_action = join_actions(dom_action, cyclic_row_action(r, r - 1))
    sphere = representation_sphere(r, d)
    return proj, dom_action, sphere


def _cmd_equimaps(args, argv, started):
    proj, dom_action, sphere = _canonical_pair(args.r, args.d)
    maps = enumerate_equivariant_maps(proj.domain, sphere.complex,
                                      dom_action, sphere.action,
                                      orbit_cap=args.orbit_cap)
    fc_dom = orient(proj.domain)
    fc_cod = orient(sphere.complex)
    body = {
        "r": args.r,
        "d": args.d,
        "count": len(maps),
        "free_action": is_free_action(proj.domain, dom_action).free,
        "maps": [{"vertex_map": list(m.vertex_map),
                  "degree": degree_report(m, fc_dom, fc_cod).value}
                 for m in maps],
    }
    return _emit(args, argv, body, started)


def _cmd_audit(args, argv, started):
    proj, dom_action, sphere = _canonical_pair(args.r, args.d)
    maps = enumerate_equivariant_maps(proj.domain, sphere.complex,
                                      dom_action, sphere.action,
                                      orbit_cap=args.orbit_cap)
    fc_dom = orient(proj.domain)
    fc_cod = orient(sphere.complex)
    expected = math.factorial(args.r - 1) ** args.d
    report = congruence_audit(maps, fc_dom, fc_cod, args.r, expected)
    canonical = degree_report(proj, fc_dom, fc_cod, modulus=args.r)
    body = {
        "r": args.r,
        "d": args.d,
        "map_count": len(maps),
        "degrees": list(report.degrees),
        "residue": report.residue,
        "expected_residue": report.expected_residue % args.r,
        "matched_sign": report.matched_sign,
        "canonical_degree": canonical.value,
        "ok": report.ok,
        "violations": list(report.violations),
        "warnings": list(report.warnings),
    }
    return _emit(args, argv, body, started, exit_code=0 if report.ok else 1)


def _cmd_scenario(args, argv, started):
    params = {k: getattr(args, k) for k in ("r", "d", "k", "l", "p")
              if getattr(args, k) is not None}
    name = args.name.replace("-", "_")
    spec = make_scenario(name, mode=args.mode, budget=args.budget, **params)
    if args.config:
        config = parse_config(_read_json(args.config))
        reports = [run_scenario(spec, config=config, seed=args.seed)]
    elif args.threads > 1:
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            reports = run_trials(spec, args.seed, args.trials, pmap=pool.map)
    else:
        reports = run_trials(spec, args.seed, args.trials)
    found = sum(1 for rep in reports if rep.found is True)
    refuted = sum(1 for rep in reports if rep.found is False)
    inconclusive = sum(1 for rep in reports if rep.found is None)
    body = {
        "scenario": spec.name,
        "params": spec.params(),
        "mode": spec.mode,
        "trials": len(reports),
        "found": found,
        "refuted": refuted,
        "inconclusive": inconclusive,
        "lp_calls": sum(rep.lp_calls for rep in reports),
    }
    shown = [rep.to_dict() for rep in reports
             if args.verbose or len(reports) == 1 or rep.found is not True]
    if args.deterministic:
        for rep in shown:
            rep["elapsed_ms"] = 0
    body["reports"] = shown
    code = 1 if refuted else (2 if inconclusive else 0)
    return _emit(args, argv, body, started, exit_code=code, seed=args.seed)


def _cmd_random_config(args, argv, started):
    try:
        sizes = [int(x) for x in args.class_sizes.split(",") if x.strip()]
    except ValueError as exc:
        raise MalformedInputError(f"bad --class-sizes: {exc}") from exc
    config = random_config(args.dim, sizes, args.seed, coord_bound=args.coord_bound)
    return _emit(args, argv, config.to_dict(), started, seed=args.seed)


def _jsonable(value):
    if value is None or isinstance(value, (int, str, bool)):
        return value
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return repr(value)


_COMMANDS = {
    "complex": _cmd_complex,
    "homology": _cmd_homology,
    "pseudo": _cmd_pseudo,
    "orient": _cmd_orient,
    "degree": _cmd_degree,
    "equimaps": _cmd_equimaps,
    "audit-congruence": _cmd_audit,
    "scenario": _cmd_scenario,
    "random-config": _cmd_random_config,
}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        started = time.monotonic()
        return _COMMANDS[args.command](args, argv, started)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 3
    except (MalformedInputError, ParameterError) as exc:
        print(f"rookery: error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
