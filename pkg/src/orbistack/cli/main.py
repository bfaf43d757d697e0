"""Subcommand dispatch for the ``orbistack`` command.

Exit codes: 0 true or success, 1 false, 2 unknown (search bound
exhausted), 3 a factorization self-check failed, 64 usage error,
65 malformed or out-of-domain input data.
"""

from __future__ import annotations

import argparse
import sys
import time
import warnings

from orbistack.cli.expr import parse_matrix, parse_quadratic
from orbistack.cli.report import RunReport
from orbistack.errors import (
    InternalCheckFailed,
    NotConnected,
    NotMorita,
    OrbistackError,
)
from orbistack.groupoid import factor_morita, is_morita
from orbistack.groupoid.io import FormatError, action_from_dict, load_json, morphism_from_dict
from orbistack import lens, lifted, rotation, toral

EXIT_TRUE, EXIT_FALSE, EXIT_UNKNOWN, EXIT_CHECK = 0, 1, 2, 3
EXIT_USAGE, EXIT_DATA = 64, 65


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--timing", action="store_true", help="include wall-clock time")

    root = _Parser(prog="orbistack", description="Orbit-stack equivalence decisions.")
    areas = root.add_subparsers(dest="area", required=True, parser_class=_Parser)

    rot = areas.add_parser("rotation", help="circle rotations").add_subparsers(
        dest="action", required=True, parser_class=_Parser
    )
    p = rot.add_parser("equiv", parents=[common], help="homography equivalence of rotation numbers")
    p.add_argument("--tau", required=True)
    p.add_argument("--sigma", required=True)
    p.add_argument("--oracle-bound", type=_positive, default=None)
    p.set_defaults(run=_rotation_equiv)

    tor = areas.add_parser("toral", help="hyperbolic toral automorphisms").add_subparsers(
        dest="action", required=True, parser_class=_Parser
    )
    p = tor.add_parser("equiv", parents=[common], help="conjugacy up to inversion")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--method", choices=["lm", "search"], default="lm")
    p.add_argument("--bound", type=_positive, default=20)
    p.set_defaults(run=_toral_equiv)

    ln = areas.add_parser("lens", help="lens spaces").add_subparsers(
        dest="action", required=True, parser_class=_Parser
    )
    p = ln.add_parser("classify", parents=[common], help="all three partitions for one p")
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(run=_lens_classify)
    p = ln.add_parser("equiv", parents=[common], help="compare L(p,q) and L(p,q2)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--q2", type=int, required=True)
    p.add_argument("--level", choices=["stack", "homeo", "homotopy"], default="stack")
    p.set_defaults(run=_lens_equiv)

    gp = areas.add_parser("groupoid", help="finite action groupoids").add_subparsers(
        dest="action", required=True, parser_class=_Parser
    )
    for name, fn, text in (
        ("morita", _groupoid_morita, "is the morphism Morita"),
        ("factor", _groupoid_factor, "free quotient followed by an isomorphism"),
    ):
        p = gp.add_parser(name, parents=[common], help=text)
        p.add_argument("--domain", required=True, help="action JSON file")
        p.add_argument("--codomain", required=True, help="action JSON file")
        p.add_argument("--morphism", required=True, help="morphism JSON file")
        p.set_defaults(run=fn)

    lf = areas.add_parser("lifted", help="lifted groups").add_subparsers(
        dest="action", required=True, parser_class=_Parser
    )
    p = lf.add_parser("commutator-lattice", parents=[common], help="commutator sublattice")
    p.add_argument("--matrix", required=True)
    p.add_argument("--kmax", type=_positive, default=6)
    p.set_defaults(run=_commutator_lattice)
    return root


# -- subcommands -------------------------------------------------------------------


def _rotation_equiv(args, report: RunReport) -> int:
    tau, sigma = parse_quadratic(args.tau), parse_quadratic(args.sigma)
    eq = rotation.gl2z_equivalent(tau, sigma)
    ct, cs = rotation.cf_expand(tau), rotation.cf_expand(sigma)
    report.verdict = "equivalent" if eq.equivalent else "not equivalent"
    report.details = {
        "tau": str(tau),
        "sigma": str(sigma),
        "tau_cf": str(ct),
        "sigma_cf": str(cs),
        "reason": eq.reason,
        "witness": eq.witness.tolist() if eq.witness is not None else None,
    }
    report.lines = [
        f"reason: {eq.reason}",
        f"tau = {tau} = {ct}",
        f"sigma = {sigma} = {cs}",
    ]
    if eq.witness is not None:
        report.lines.append(f"witness [[a,c],[b,d]]: {eq.witness}")
    if args.oracle_bound is not None:
        o = rotation.brute_force_equiv_oracle(tau, sigma, args.oracle_bound)
        report.details["oracle"] = {
            "bound": o.bound,
            "found": o.found,
            "matrix": o.matrix.tolist() if o.found else None,
        }
        report.lines.append(
            f"oracle (bound {o.bound}): " + (f"found {o.matrix}" if o.found else "nothing found")
        )
    return EXIT_TRUE if eq.equivalent else EXIT_FALSE


def _toral_equiv(args, report: RunReport) -> int:
    a, b = parse_matrix(args.a), parse_matrix(args.b)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        v = toral.toral_stack_equiv(a, b, method=args.method, bound=args.bound)
    notes = list(v.notes) + [str(w.message) for w in caught if str(w.message) not in v.notes]
    report.verdict = v.status
    report.details = {
        "a": a.tolist(),
        "b": b.tolist(),
        "method": v.method,
        "branch": v.branch,
        "certificate": v.certificate.tolist() if v.certificate is not None else None,
        "obstruction": v.obstruction,
        "bound": v.bound,
        "notes": notes,
    }
    report.lines = [f"method: {v.method}", f"branch: {v.branch}"]
    if v.certificate is not None:
        target = "B" if v.branch == "direct" else "B^-1"
        report.lines.append(f"certificate P with P*A*P^-1 = {target}: {v.certificate}")
    if v.obstruction:
        report.lines.append(f"obstruction: {v.obstruction}")
    if v.status == toral.UNKNOWN:
        report.lines.append(f"search bound: {v.bound}")
    report.lines.extend(f"note: {n}" for n in notes)
    return {toral.YES: EXIT_TRUE, toral.NO: EXIT_FALSE}.get(v.status, EXIT_UNKNOWN)


def _fmt_classes(classes) -> str:
    return " ".join("{" + ",".join(map(str, c)) + "}" for c in classes)


def _lens_classify(args, report: RunReport) -> int:
    if args.p < 2:
        raise OrbistackError(f"p must be at least 2, got {args.p}")
    parts = lens.classify(args.p)
    report.verdict = "classified"
    report.details = {"p": args.p, "partitions": parts}
    report.lines = [f"p = {args.p}"] + [f"{lvl}: {_fmt_classes(parts[lvl])}" for lvl in lens.LEVELS]
    return EXIT_TRUE


_LENS_LEVEL = {"stack": "stack", "homeo": "homeomorphism", "homotopy": "homotopy"}


def _lens_equiv(args, report: RunReport) -> int:
    if args.p < 2:
        raise OrbistackError(f"p must be at least 2, got {args.p}")
    level = _LENS_LEVEL[args.level]
    ok = lens.PREDICATES[level](args.p, args.q, args.q2)
    report.verdict = "equivalent" if ok else "not equivalent"
    report.details = {"p": args.p, "q": args.q, "q2": args.q2, "level": level, "equivalent": ok}
    report.lines = [f"L({args.p},{args.q}) vs L({args.p},{args.q2}) at level {level}"]
    return EXIT_TRUE if ok else EXIT_FALSE


def _load_morphism(args):
    dom = action_from_dict(load_json(args.domain))
    cod = action_from_dict(load_json(args.codomain))
    return morphism_from_dict(load_json(args.morphism), dom, cod).validate()


def _groupoid_morita(args, report: RunReport) -> int:
    v = is_morita(_load_morphism(args))
    report.verdict = "morita" if v.morita else "not morita"
    report.details = v.as_dict()
    report.lines = [
        f"essentially surjective: {v.essentially_surjective}",
        f"fully faithful: {v.fully_faithful}",
    ]
    if v.witness:
        report.lines.append(f"witness: {v.witness}")
    return EXIT_TRUE if v.morita else EXIT_FALSE


def _groupoid_factor(args, report: RunReport) -> int:
    mor = _load_morphism(args)
    labels = mor.domain.labels
    try:
        f = factor_morita(mor)
    except NotMorita as exc:
        report.verdict = "not morita"
        report.details = {"verdict": exc.verdict.as_dict()}
        report.lines = [str(exc)]
        return EXIT_FALSE
    except InternalCheckFailed as exc:
        report.verdict = "check failed"
        report.details = {"error": str(exc), "witness": exc.witness}
        report.lines = [str(exc), f"witness: {exc.witness}"]
        return EXIT_CHECK
    q = f.quotient
    report.verdict = "factored"
    report.details = {
        "kernel": list(f.kernel),
        "kernel_free": q.free,
        "quotient_orbits": [[labels[x] for x in o] for o in q.orbits],
        "lambda_bar": list(f.iso.lam),
        "phi_bar": [mor.codomain.labels[y] for y in f.iso.phi],
    }
    report.lines = [
        f"kernel: {list(f.kernel)} (acts freely: {q.free})",
        f"quotient objects: {report.details['quotient_orbits']}",
        f"induced lambda: {list(f.iso.lam)}",
        f"induced phi: {report.details['phi_bar']}",
    ]
    return EXIT_TRUE


def _commutator_lattice(args, report: RunReport) -> int:
    a = parse_matrix(args.matrix)
    lat = lifted.commutator_lattice(a, args.kmax)
    index = lat.index
    shown = "infinite" if index == float("inf") else index
    report.verdict = "computed"
    report.details = {
        "matrix": a.tolist(),
        "k_max": args.kmax,
        "rank": lat.basis.rank,
        "basis": lat.basis.tolist(),
        "index": shown,
    }
    report.lines = [f"rank: {lat.basis.rank}", f"basis: {lat.basis.tolist()}", f"index: {shown}"]
    return EXIT_TRUE


# -- entry points --------------------------------------------------------------------


def dispatch(argv: list[str]) -> tuple[int, RunReport | None, str]:
    """Run one command; returns (exit code, report or None, error text)."""
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        return EXIT_USAGE, None, str(exc)
    report = RunReport(command=list(argv), verdict="")
    start = time.perf_counter()
    try:
        code = args.run(args, report)
    except (OrbistackError, FormatError, OSError, ValueError) as exc:
        return EXIT_DATA, None, f"orbistack: error: {exc}"
    if args.timing:
        report.timing = time.perf_counter() - start
    return code, report, ""


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        code, report, err = dispatch(argv)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    if report is None:
        print(err, file=sys.stderr)
        return code
    wants_json = "--json" in argv
    sys.stdout.write(report.to_json() if wants_json else report.to_text())
    return code
