"""Command-line front end: exact analysis reports for point configurations and systems.

Exit codes: 0 on success, 1 when a verified inequality fails (the report is
still printed), 2 on malformed input or a violated precondition.  With a fixed
seed, repeated runs produce byte-identical output.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction

from .errors import DomainError, PreconditionError
from .heights import AffinePointQ, LaurentPolyQ
from .koushnirenko import (
    DeclaredSolution,
    KoushReport,
    LaurentSystem,
    bkgral_bounds,
    denso_check,
    koushnirenko_check,
    simplex_shift_check,
    sylvester_resultant_check,
)
from .lattice import lattice_index
from .nssbounds import NssInput, bk_afin_bound, nss_bounds, nss_support
from .numkernel import ExactLog
from .polytope import ExponentSet, normalized_volume
from .toric import SampleConfig, sample_verify_minima, toric_report

__all__ = ["main", "run"]


def _fail(message: str) -> "SystemExit":
    print(f"error: {message}", file=sys.stderr)
    return SystemExit(2)


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise _fail(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise _fail(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from exc


def _parse_pointset(doc: dict, path: str) -> ExponentSet:
    if not isinstance(doc, dict) or "points" not in doc:
        raise _fail(f"{path}: expected an object with a 'points' field")
    points = doc["points"]
    if not isinstance(points, list) or not points:
        raise _fail(f"{path}: points: must be nonempty")
    ambient = doc.get("ambient_dim", len(points[0]) if points[0] else 0)
    try:
        return ExponentSet(int(ambient), tuple(tuple(int(x) for x in p) for p in points))
    except (DomainError, TypeError, ValueError) as exc:
        raise _fail(f"{path}: points: {exc}") from exc


def _parse_fraction(text, where: str) -> Fraction:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise _fail(f"{where}: bad rational {text!r}") from exc


def _parse_system(doc: dict, path: str) -> LaurentSystem:
    if not isinstance(doc, dict) or "vars" not in doc or "polys" not in doc:
        raise _fail(f"{path}: expected an object with 'vars' and 'polys' fields")
    n = doc["vars"]
    if not isinstance(n, int) or n < 1:
        raise _fail(f"{path}: vars: must be a positive integer")
    polys = []
    for i, pdoc in enumerate(doc["polys"]):
        terms = {}
        for j, tdoc in enumerate(pdoc.get("terms", [])):
            where = f"{path}: polys[{i}].terms[{j}]"
            exp = tdoc.get("exp")
            if not isinstance(exp, list) or len(exp) != n:
                raise _fail(f"{where}: exp: expected a list of {n} integers")
            coeff = _parse_fraction(tdoc.get("coeff"), f"{where}.coeff")
            terms[tuple(int(e) for e in exp)] = coeff
        try:
            polys.append(LaurentPolyQ.from_dict(n, terms))
        except DomainError as exc:
            raise _fail(f"{path}: polys[{i}]: {exc}") from exc
    solutions = None
    if "solutions" in doc and doc["solutions"] is not None:
        solutions = []
        for k, sdoc in enumerate(doc["solutions"]):
            where = f"{path}: solutions[{k}]"
            point = sdoc.get("point")
            if not isinstance(point, list) or len(point) != n:
                raise _fail(f"{where}: point: expected a list of {n} rationals")
            coords = tuple(_parse_fraction(c, f"{where}.point") for c in point)
            mult = sdoc.get("multiplicity", 1)
            try:
                solutions.append(DeclaredSolution(AffinePointQ(coords), int(mult)))
            except (DomainError, ValueError) as exc:
                raise _fail(f"{where}: {exc}") from exc
        solutions = tuple(solutions)
    try:
        return LaurentSystem(n, tuple(polys), solutions)
    except DomainError as exc:
        raise _fail(f"{path}: {exc}") from exc


def _digest(payload) -> str:
    return hashlib.sha256(
        json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
    ).hexdigest()[:16]


def _exactlog_json(x: ExactLog, decimals: int) -> dict:
    return x.to_json(decimals)


def _render(x: ExactLog, decimals: int) -> str:
    return f"{x} ({x.to_decimal(decimals)})"


class _Report:
    def __init__(self, command: str, inputs, decimals: int):
        self.command = command
        self.inputs_digest = _digest(inputs)
        self.decimals = decimals
        self.payload: dict = {}
        self.lines: list[tuple[str, str]] = []

    def add(self, key: str, json_value, text_value: str | None = None) -> None:
        self.payload[key] = json_value
        self.lines.append((key, text_value if text_value is not None else str(json_value)))

    def add_exactlog(self, key: str, x: ExactLog) -> None:
        self.add(key, _exactlog_json(x, self.decimals), _render(x, self.decimals))

    def emit(self, as_json: bool) -> None:
        if as_json:
            doc = {
                "command": self.command,
                "inputs_digest": self.inputs_digest,
                "decimals": self.decimals,
                "payload": self.payload,
            }
            print(json.dumps(doc, sort_keys=True, separators=(",", ":")))
        else:
            width = max(len(k) for k, _ in self.lines)
            print(f"# {self.command} [{self.inputs_digest}]")
            for key, value in self.lines:
                print(f"{key.ljust(width)} : {value}")


def _emit_koush(report: KoushReport, rpt: _Report, as_json: bool) -> int:
    rpt.add_exactlog("lhs", report.lhs)
    rpt.add_exactlog("rhs", report.rhs)
    rpt.add("vol_term", report.vol_term)
    rpt.add("lhs_complete", report.lhs_complete)
    rpt.add(
        "contributions",
        [
            {"point": desc, "multiplicity": mult, "height": _exactlog_json(h, rpt.decimals)}
            for desc, mult, h in report.contributions
        ],
        "; ".join(f"{desc} x{mult}" for desc, mult, _ in report.contributions) or "(none)",
    )
    if report.flags:
        rpt.add("flags", list(report.flags), "; ".join(report.flags))
    rpt.add("ok", report.ok)
    rpt.emit(as_json)
    return 0 if report.ok else 1


def run(argv: list[str]) -> int:
    parser = argparse.ArgumentParser(
        prog="toricheights",
        description="Exact minima, degrees and height bounds of projective monomial varieties.",
    )
    parser.add_argument("--json", action="store_true", help="emit a JSON report")
    parser.add_argument("--decimals", type=int, default=6, help="decimal digits in renderings")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="lattice data, face counts, minima and height bracket")
    p.add_argument("pointset")

    p = sub.add_parser("verify", help="seeded sampling check of the minimum-height facts")
    p.add_argument("pointset")
    p.add_argument("--torsion", type=int, default=50)
    p.add_argument("--rational", type=int, default=50)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--max-order", type=int, default=12)
    p.add_argument("--coeff-bound", type=int, default=9)

    p = sub.add_parser("koush", help="Q-height Koushnirenko inequality check")
    p.add_argument("system")

    p = sub.add_parser("denso", help="dense (Weil height) variant of the check")
    p.add_argument("system")

    p = sub.add_parser("bkgral", help="set-theoretic degree/height bound values")
    p.add_argument("pointset")
    p.add_argument("system")

    p = sub.add_parser("nss", help="sparse Nullstellensatz and affine bound values")
    p.add_argument("system")

    p = sub.add_parser("resultant-oracle", help="expand a small Sylvester resultant and check its height")
    p.add_argument("--degree", type=int, required=True)

    args = parser.parse_args(argv)
    if args.decimals < 1:
        raise _fail("--decimals must be >= 1")

    try:
        return _dispatch(args)
    except PreconditionError as exc:
        raise _fail(str(exc))
    except DomainError as exc:
        raise _fail(str(exc))


def _dispatch(args) -> int:
    decimals = args.decimals
    as_json = args.json

    if args.command == "analyze":
        exponents = _parse_pointset(_load_json(args.pointset), args.pointset)
        report = toric_report(exponents)
        rpt = _Report("analyze", exponents.to_json(), decimals)
        rpt.add("ambient_dim", exponents.ambient_dim)
        rpt.add("cardinality", len(exponents))
        rpt.add("dimension", report.r)
        rpt.add("degree", report.degree)
        index = lattice_index(exponents.points)
        rpt.add("lattice_index", index if index is not None else "infinite")
        rpt.add("face_counts", list(report.counts.counts))
        rpt.add(
            "minima",
            [_exactlog_json(m, decimals) for m in report.minima],
            "; ".join(_render(m, decimals) for m in report.minima),
        )
        rpt.add("minima_labels", ["essential"] + ["-"] * (report.r - 1) + ["absolute"]
                if report.r >= 1 else ["essential=absolute"])
        rpt.add_exactlog("height_lower", report.height_lower)
        rpt.add_exactlog("height_upper", report.height_upper)
        if report.resultant_bound is not None:
            rpt.add_exactlog("resultant_bound", report.resultant_bound)
        else:
            rpt.add("resultant_bound", None, "n/a (requires L_A = Z^n)")
        rpt.emit(as_json)
        return 0

    if args.command == "verify":
        exponents = _parse_pointset(_load_json(args.pointset), args.pointset)
        config = SampleConfig(
            torsion_samples=args.torsion,
            rational_samples=args.rational,
            max_order=args.max_order,
            coeff_bound=args.coeff_bound,
            seed=args.seed,
        )
        result = sample_verify_minima(exponents, config)
        inputs = [exponents.to_json(), args.seed, args.torsion, args.rational, args.max_order, args.coeff_bound]
        rpt = _Report("verify", inputs, decimals)
        rpt.add_exactlog("expected", result.expected)
        rpt.add("torsion_all_equal", result.torsion_all_equal)
        if result.rational_min is not None:
            rpt.add_exactlog("rational_min", result.rational_min)
        rpt.add("face_checks_ok", result.face_checks_ok)
        rpt.add("violations", list(result.violations), str(len(result.violations)))
        rpt.emit(as_json)
        return 0 if not result.violations else 1

    if args.command == "koush":
        system = _parse_system(_load_json(args.system), args.system)
        rpt = _Report("koush", _system_json(system), decimals)
        return _emit_koush(koushnirenko_check(system), rpt, as_json)

    if args.command == "denso":
        system = _parse_system(_load_json(args.system), args.system)
        rpt = _Report("denso", _system_json(system), decimals)
        return _emit_koush(denso_check(system), rpt, as_json)

    if args.command == "bkgral":
        exponents = _parse_pointset(_load_json(args.pointset), args.pointset)
        system = _parse_system(_load_json(args.system), args.system)
        bounds = bkgral_bounds(exponents, system.polys)
        rpt = _Report("bkgral", [exponents.to_json(), _system_json(system)], decimals)
        rpt.add("deg_bound", bounds.deg_bound)
        rpt.add_exactlog("height_bound", bounds.height_bound)
        rpt.emit(as_json)
        return 0

    if args.command == "nss":
        system = _parse_system(_load_json(args.system), args.system)
        data = NssInput.from_system(system.n, system.polys)
        bounds = nss_bounds(data)
        support = nss_support(system.n, system.polys)
        rpt = _Report("nss", _system_json(system), decimals)
        rpt.add("n", data.n)
        rpt.add("s", data.s)
        rpt.add("d", data.d)
        rpt.add("vol", data.vol)
        rpt.add_exactlog("h", data.h)
        rpt.add("support_cardinality", len(support))
        rpt.add("deg_bound", bounds.deg_bound)
        rpt.add_exactlog("height_bound", bounds.height_bound)
        if data.n >= 2:
            rpt.add_exactlog("bk_afin_bound", bk_afin_bound(data.n, data.d, data.h, data.vol))
        else:
            rpt.add("bk_afin_bound", None, "n/a (requires n >= 2)")
        rpt.emit(as_json)
        return 0

    if args.command == "resultant-oracle":
        result = sylvester_resultant_check(args.degree)
        rpt = _Report("resultant-oracle", {"degree": args.degree}, decimals)
        rpt.add("degree", result.degree)
        rpt.add("num_terms", result.num_terms)
        rpt.add("max_abs_coeff", result.max_abs_coeff)
        rpt.add_exactlog("h_sup", result.h_sup)
        rpt.add_exactlog("bound", result.bound)
        rpt.add("extreme_ok", result.extreme_ok)
        rpt.add("ok", result.ok)
        rpt.emit(as_json)
        return 0 if (result.ok and result.extreme_ok) else 1

    raise _fail(f"unknown subcommand {args.command!r}")


def _system_json(system: LaurentSystem) -> dict:
    doc = {"vars": system.n, "polys": [f.to_json() for f in system.polys]}
    if system.declared_solutions is not None:
        doc["solutions"] = [
            {
                "point": [f"{c.numerator}/{c.denominator}" for c in s.point.coords],
                "multiplicity": s.multiplicity,
            }
            for s in system.declared_solutions
        ]
    return doc


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
