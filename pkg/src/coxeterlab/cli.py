"""``coxeterlab`` command line: analyze one algebra, regenerate a table, or batch a directory.

Exit codes: 0 success, 1 table mismatch or batch failures, 2 invalid input,
3 computation error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import algebras as alg
from . import coxeter as cx
from . import spectral, tables
from .polyengine import PolyDomainError

OPS = ("factorize", "periodicity", "hform", "measures", "symmetry")
DEFAULT_OPS = ("factorize", "periodicity", "hform", "measures")
FAMILIES = ("dynkin", "extended-dynkin", "star", "canonical", "extended-canonical",
            "truncated", "tensor", "repetitive", "quotient")

EXIT_OK, EXIT_MISMATCH, EXIT_INVALID, EXIT_COMPUTE = 0, 1, 2, 3


class InputError(Exception):
    """Bad request: reported with exit code 2."""


def default_tol() -> float:
    raw = os.environ.get("COXETERLAB_TOL")
    if raw is None:
        return spectral.DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise InputError(f"COXETERLAB_TOL={raw!r} is not a number")
    if not tol > 0:
        raise InputError("COXETERLAB_TOL must be positive")
    return tol


def _int_list(text: str, what: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"{what} must be comma-separated integers, got {text!r}")


def _read_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise InputError(f"{path}: no such file")
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}")


def _load_structure(path: str):
    data = _read_json(path)
    try:
        return alg.parse_spec(data)
    except (KeyError, TypeError) as exc:
        raise InputError(f"{path}: missing or malformed field {exc}")
    except alg.ConstructionError as exc:
        raise InputError(f"{path}: {exc}")


def algebra_from_structure(kind: str, obj) -> alg.CartanAlgebra:
    if kind == "quiver":
        return alg.from_hereditary_quiver(obj)
    if kind == "poset":
        return alg.from_poset(obj)
    if kind == "cartan":
        return obj
    if kind == "weights":
        return alg.extended_canonical(obj)
    raise InputError(f"a {kind} spec does not describe an algebra")


def _named(kind: str) -> alg.CartanAlgebra:
    kind = kind.strip()
    if "~" in kind:
        return alg.from_hereditary_quiver(alg.extended_dynkin_quiver(kind))
    return alg.from_hereditary_quiver(alg.dynkin_quiver(kind))


def build_algebra(args) -> tuple[alg.CartanAlgebra, alg.GroupAction | None]:
    action = None
    if args.action:
        kind, action = _load_structure(args.action)
        if kind != "action":
            raise InputError(f"{args.action}: expected a group action with 'generators'")
    sources = [x for x in (args.family, args.quiver, args.poset, args.spec) if x]
    if len(sources) != 1:
        raise InputError("give exactly one of --family, --quiver, --poset, --spec")
    if args.quiver or args.poset or args.spec:
        path = args.quiver or args.poset or args.spec
        kind, obj = _load_structure(path)
        expected = "quiver" if args.quiver else "poset" if args.poset else None
        if expected and kind != expected:
            raise InputError(f"{path}: expected a {expected} spec, found {kind}")
        return algebra_from_structure(kind, obj), action

    fam = args.family
    weights = _int_list(args.weights, "--weights") if args.weights else None
    if fam in ("star", "canonical", "extended-canonical") and not weights:
        raise InputError(f"--family {fam} needs --weights")
    if fam in ("dynkin", "extended-dynkin", "repetitive") and not args.type:
        raise InputError(f"--family {fam} needs --type")
    if fam == "dynkin":
        return alg.from_hereditary_quiver(alg.dynkin_quiver(args.type)), action
    if fam == "extended-dynkin":
        t = args.type.upper().replace("~", "")
        if t.startswith("A"):
            if not weights or len(weights) != 2:
                raise InputError("extended A needs --weights p,q (arrow counts per direction)")
            p, q = weights
            return alg.from_hereditary_quiver(alg.affine_a_quiver([True] * p + [False] * q)), action
        return alg.from_hereditary_quiver(alg.extended_dynkin_quiver(t)), action
    if fam == "star":
        return alg.from_hereditary_quiver(alg.star_quiver(weights)), action
    if fam == "canonical":
        return alg.canonical(weights), action
    if fam == "extended-canonical":
        return alg.extended_canonical(weights), action
    if fam == "truncated":
        if args.n is None or args.r is None:
            raise InputError("--family truncated needs --n and --r")
        return alg.truncated_linear(args.n, args.r), action
    if fam == "tensor":
        if not args.factors:
            raise InputError("--family tensor needs --factors, e.g. A2,A3")
        parts = [_named(k) for k in args.factors.split(",")]
        out = parts[0]
        for p in parts[1:]:
            out = alg.tensor(out, p)
        return out, action
    if fam == "repetitive":
        return alg.double_repetitive(_named(args.type)), action
    if fam == "quotient":
        if action is None or not (args.base):
            raise InputError("--family quotient needs --base quiver.json and --action action.json")
        kind, obj = _load_structure(args.base)
        return alg.galois_quotient(algebra_from_structure(kind, obj), action), None
    raise InputError(f"unknown family {fam!r}")


def analyze(a: alg.CartanAlgebra, ops, tol: float, action: alg.GroupAction | None = None) -> dict:
    m = cx.coxeter_matrix(a)
    report: dict = {"n": a.n, "algebra": a.to_json(), "charpoly": m.charpoly.to_json(),
                    "charpoly_text": str(m.charpoly)}
    if "factorize" in ops:
        fac = m.factorization
        report.update({"factors": {str(k): e for k, e in fac.factors.items()},
                       "residual": fac.residual.to_json(), "factorization_text": str(fac),
                       "cyclotomic": fac.is_cyclotomic})
    if "periodicity" in ops:
        report.update(cx.periodicity(m).to_json())
    if "hform" in ops:
        report.update(cx.homological_form(a).to_json())
    if "measures" in ops:
        sr = spectral.measures(m, tol)
        cyc = m.factorization.is_cyclotomic
        report["measures"] = sr.to_json()
        report["inequality_chain"] = {
            norm: {"ok": c.ok, "failures": c.failures}
            for norm in ("frobenius", "eigen")
            for c in [spectral.verify_inequality_chain(sr, cyc, norm)]
        }
    if "symmetry" in ops:
        if action is None:
            raise InputError("--ops symmetry needs --action")
        restricted, cofactor = cx.symmetry_factor(a, action)
        report["symmetry"] = {"restricted": restricted.to_json(), "cofactor": cofactor.to_json(),
                              "restricted_text": str(restricted), "cofactor_text": str(cofactor)}
    return report


def to_markdown(report: dict) -> str:
    lines = [f"# Coxeter analysis (n = {report['n']})", ""]
    for key in ("charpoly_text", "factorization_text", "cyclotomic", "diagonalizable", "period", "coxeter_number",
                "hform", "radical_rank"):
        if key in report:
            lines.append(f"- **{key}**: {report[key]}")
    if "measures" in report:
        ms = report["measures"]
        for key in ("spectral_radius", "mahler", "energy", "frobenius", "eigen_norm", "certified"):
            lines.append(f"- **{key}**: {ms[key]}")
        for norm, c in report["inequality_chain"].items():
            lines.append(f"- **chain ({norm})**: {'ok' if c['ok'] else '; '.join(c['failures'])}")
    if "symmetry" in report:
        s = report["symmetry"]
        lines.append(f"- **symmetry factor**: {s['restricted_text']}  (cofactor {s['cofactor_text']})")
    return "\n".join(lines) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _parse_ops(text: str | None) -> tuple[str, ...]:
    if not text:
        return DEFAULT_OPS
    ops = tuple(x.strip() for x in text.split(",") if x.strip())
    bad = [o for o in ops if o not in OPS]
    if bad:
        raise InputError(f"unknown ops {bad}; choose from {', '.join(OPS)}")
    return ops


def cmd_analyze(args) -> int:
    tol = args.tol if args.tol is not None else default_tol()
    if tol <= 0:
        raise InputError("--tol must be positive")
    ops = _parse_ops(args.ops)
    a, action = build_algebra(args)
    report = analyze(a, ops, tol, action)
    if args.family == "dynkin" and report.get("period") not in (None, "infinity"):
        report["coxeter_number"] = report["period"]
    text = to_markdown(report) if args.format == "md" else json.dumps(report, indent=1) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_table(args) -> int:
    res = tables.build_table(args.name)
    text = res.to_markdown() + "\n" if args.format == "md" else json.dumps(res.to_json(), indent=1) + "\n"
    _emit(text, args.out)
    for d in res.unexpected:
        print(d, file=sys.stderr)
    return EXIT_OK if res.ok else EXIT_MISMATCH


def _batch_one(path: str, tol: float) -> tuple[str, dict | None, str | None]:
    try:
        data = _read_json(path)
        ops = _parse_ops(",".join(data.pop("ops", [])) if isinstance(data, dict) else None)
        kind, obj = alg.parse_spec(data)
        return path, analyze(algebra_from_structure(kind, obj), ops, tol), None
    except Exception as exc:  # collected, batch continues
        return path, None, f"{type(exc).__name__}: {exc}"


def cmd_batch(args) -> int:
    d = Path(args.dir)
    if not d.is_dir():
        raise InputError(f"{d}: not a directory")
    tol = args.tol if args.tol is not None else default_tol()
    files = sorted(str(p) for p in d.glob("*.json"))
    out_dir = Path(args.out) if args.out else d / "reports"
    if args.jobs > 1 and len(files) > 1:
        with ProcessPoolExecutor(args.jobs) as ex:
            results = list(ex.map(_batch_one, files, [tol] * len(files)))
    else:
        results = [_batch_one(f, tol) for f in files]
    summary = {"total": len(files), "ok": 0, "failed": 0, "cyclotomic": 0, "periodic": 0, "failures": {}}
    if files:
        out_dir.mkdir(parents=True, exist_ok=True)
    for path, report, err in results:
        name = Path(path).stem
        if err:
            summary["failed"] += 1
            summary["failures"][name] = err
            continue
        summary["ok"] += 1
        summary["cyclotomic"] += bool(report.get("cyclotomic"))
        summary["periodic"] += report.get("period", "infinity") != "infinity"
        (out_dir / f"{name}.report.json").write_text(json.dumps(report, indent=1) + "\n")
    text = json.dumps(summary, indent=1) + "\n"
    if files:
        (out_dir / "summary.json").write_text(text)
    sys.stdout.write(text)
    return EXIT_OK if summary["failed"] == 0 else EXIT_MISMATCH


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="coxeterlab", description="Coxeter polynomials of triangular algebras")
    sub = p.add_subparsers(dest="command", required=True)

    an = sub.add_parser("analyze", help="analyze one algebra")
    an.add_argument("--family", choices=FAMILIES)
    an.add_argument("--type", help="Dynkin label such as E6, D5, A~ or E~7")
    an.add_argument("--weights", help="comma-separated weights")
    an.add_argument("--factors", help="Dynkin labels for --family tensor, e.g. A2,A3")
    an.add_argument("--n", type=int, help="vertex count for --family truncated")
    an.add_argument("--r", type=int, help="nilpotency index for --family truncated")
    an.add_argument("--quiver", help="quiver JSON file")
    an.add_argument("--poset", help="poset JSON file")
    an.add_argument("--spec", help="any JSON spec (quiver, poset, cartan or weights)")
    an.add_argument("--base", help="cover spec for --family quotient")
    an.add_argument("--action", help="group action JSON file")
    an.add_argument("--ops", help=f"comma-separated subset of {','.join(OPS)}")
    an.add_argument("--out", help="write the report here instead of stdout")
    an.add_argument("--format", choices=("json", "md"), default="json")
    an.add_argument("--tol", type=float, default=None)
    an.set_defaults(func=cmd_analyze)

    tb = sub.add_parser("table", help="regenerate a classical table and diff it against the golden copy")
    tb.add_argument("name", choices=tables.TABLES)
    tb.add_argument("--format", choices=("json", "md"), default="md")
    tb.add_argument("--out")
    tb.set_defaults(func=cmd_table)

    bt = sub.add_parser("batch", help="analyze every *.json spec in a directory")
    bt.add_argument("dir")
    bt.add_argument("--out", help="report directory (default DIR/reports)")
    bt.add_argument("--jobs", type=int, default=1)
    bt.add_argument("--tol", type=float, default=None)
    bt.set_defaults(func=cmd_batch)
    return p


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, alg.ConstructionError, PolyDomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (ArithmeticError, spectral.RootFindingError) as exc:
        print(f"computation error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
