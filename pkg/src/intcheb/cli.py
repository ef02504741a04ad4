"""Command-line driver.

Exit codes: 0 success (uncertified entries are flagged inside the output),
1 a verification claim failed or a file could not be written, 2 malformed
input JSON, 3 a search guard refused the request (or the sample lattice is
degenerate), 4 a computation budget was exhausted.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import mpmath

from . import certify as C
from . import intsearch as S
from .fekete import DegreeDims, fekete_search, tdiam_estimate
from .lattice import DegenerateLattice
from .plot import emit_plot
from .polycore import Poly, exact_divide, format_rational, parse_rational, restrict_to_graph
from .regions import point_to_json, project, region_from_json, region_to_json
from .supnorm import DEFAULT_TOL, BudgetExceeded, supnorm_region

EXIT_OK, EXIT_CLAIM, EXIT_MALFORMED, EXIT_GUARD, EXIT_BUDGET = 0, 1, 2, 3, 4


class Malformed(ValueError):
    pass


def estimate_str(x) -> str:
    """30 significant digits for floating estimates."""
    if x == -mpmath.inf:
        return "-inf"
    s = mpmath.nstr(mpmath.mpf(x), 30)
    return s[:-2] if s.endswith(".0") else s


def _load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise Malformed(f"{path}: {exc}") from exc


def _parse(loader, obj, what):
    try:
        return loader(obj)
    except (KeyError, TypeError, ValueError, IndexError, ZeroDivisionError) as exc:
        raise Malformed(f"malformed {what}: {exc}") from exc


def load_region(path):
    return _parse(region_from_json, _load(path), "region")


def load_poly(path):
    return _parse(Poly.from_json_obj, _load(path), "polynomial")


def load_lattice(path):
    return _parse(C.AlgebraicLattice.from_json_obj, _load(path), "lattice")


def _dump(obj, path: Optional[str]):
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _write_csv(header: Sequence[str], rows: Sequence[Sequence], path: Optional[str]):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    if path in (None, "-"):
        sys.stdout.write(buf.getvalue())
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())


def _tol(s) -> Fraction:
    try:
        t = parse_rational(s) if "/" in s else Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc
    if t <= 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return t


def _flags(res: S.SearchResult) -> list[str]:
    out = []
    if not res.norm.certified:
        out.append("uncertified-upper")
    if not res.norm.converged:
        out.append("enclosure-not-converged")
    if res.bound_realized is False:
        out.append("bound-not-realized")
    return out


# ---------------------------------------------------------------------------
# bound report
# ---------------------------------------------------------------------------


@dataclass
class BoundRow:
    n: int
    upper: Optional[Fraction]
    upper_provenance: str
    lower: Optional[Fraction] = None
    lower_provenance: Optional[str] = None
    poly: Optional[Poly] = None

    def to_json_obj(self):
        return {
            "n": self.n,
            "upper": None if self.upper is None else format_rational(self.upper),
            "upper_provenance": self.upper_provenance,
            "lower": None if self.lower is None else format_rational(self.lower),
            "lower_provenance": self.lower_provenance,
            "poly": None if self.poly is None else self.poly.to_json_obj(),
        }


@dataclass
class BoundReport:
    region: dict
    rows: list = field(default_factory=list)
    tz_upper: Optional[object] = None
    tz_upper_provenance: str = ""
    tC_estimates: list = field(default_factory=list)
    hilbert_fekete: Optional[C.HFBound] = None
    projection: Optional[C.ProjectionBound] = None
    flags: list = field(default_factory=list)

    def check(self):
        for r in self.rows:
            if r.lower is not None and r.upper is not None:
                assert r.lower <= r.upper, f"certified lower exceeds upper at n={r.n}"

    def to_json_obj(self):
        self.check()
        return {
            "region": self.region,
            "table": [r.to_json_obj() for r in self.rows],
            "tz_upper": {"value": estimate_str(self.tz_upper), "estimate": True, "provenance": self.tz_upper_provenance}
            if self.tz_upper is not None
            else None,
            "tC_estimates": [{"n": n, "value": estimate_str(v), "estimate": True} for n, v in self.tC_estimates],
            "hilbert_fekete_bound": None
            if self.hilbert_fekete is None
            else dict(self.hilbert_fekete.to_json_obj(), provenance="tdiam estimate at largest n"),
            "projection_bound": None if self.projection is None else self.projection.to_json_obj(),
            "flags": self.flags,
        }


def build_report(E, nmax: int, lattices: Sequence[C.AlgebraicLattice] = (), tdiam_nmax: Optional[int] = None, tol=DEFAULT_TOL):
    rep = BoundReport(region_to_json(E))
    seq = S.tz_sequence(E, nmax, "auto", tol)
    for row in seq:
        res = row.result
        br = BoundRow(row.n, res.norm.upper, f"{res.strategy} search, {res.norm.method} enclosure", poly=res.poly)
        if res.certified_optimal:
            br.lower, br.lower_provenance = res.norm.lower, "exhaustive search (certified optimum)"
        for L in lattices:
            try:
                cert = C.finite_lower_bound(L, row.n, E)
            except C.Inapplicable:
                continue
            if br.lower is None or cert.lower > br.lower:
                br.lower, br.lower_provenance = cert.lower, f"n-certificate: {cert.claim}"
        if not res.norm.certified:
            rep.flags.append(f"n={row.n}: uncertified upper")
        rep.rows.append(br)
    if seq:
        rep.tz_upper = seq[-1].running_min
        rep.tz_upper_provenance = "min over n of certified ||P_n||^(1/n)"
    tn = tdiam_nmax or min(nmax, 8)
    rows = tdiam_estimate(E, tn, degrees=[tn])
    rep.tC_estimates = [(r.n, r.diam) for r in rows]
    rep.hilbert_fekete = C.hilbert_fekete_bound(rows[-1].diam, E.dim)
    per = None
    if E.dim > 1:
        per = []
        for j in range(1, E.dim + 1):
            P = project(E, j)
            try:
                r = S.search(P.region, min(nmax, 4), "auto", tol)
                per.append(r.root())
            except (S.SearchRefused, DegenerateLattice, TypeError):
                per.append(mpmath.mpf(1))
    rep.projection = C.projection_bound(E, per)
    return rep


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_search(a) -> int:
    E = load_region(a.region)
    res = S.search(E, a.degree, a.strategy, a.tol)
    out = res.to_json_obj()
    out["flags"] = _flags(res)
    _dump(out, a.out)
    if not res.norm.converged and res.norm.method == "bernstein":
        return EXIT_BUDGET
    return EXIT_OK


def cmd_sequence(a) -> int:
    E = load_region(a.region)
    seq = S.tz_sequence(E, a.nmax, a.strategy, a.tol)
    rows = []
    for r in seq:
        res = r.result
        norm = res.norm.upper if res.norm.upper is not None else res.norm.lower
        rows.append([r.n, format_rational(norm), estimate_str(r.root), res.strategy, "yes" if res.certified else "no"])
    _write_csv(["n", "norm", "root", "strategy", "certified"], rows, a.out)
    if a.plot:
        emit_plot([(r.n, float(r.root)) for r in seq], a.plot, "||P_n||^(1/n)", "norm^(1/n)")
    return EXIT_OK


def cmd_fekete(a) -> int:
    E = load_region(a.region)
    F = fekete_search(E, a.degree, iters=a.iters, seed=a.seed, density=a.density)
    dims = DegreeDims(F.d, F.n)
    _dump(
        {
            "d": F.d,
            "n": F.n,
            "h_n": dims.h,
            "l_n": dims.l,
            "points": [point_to_json(p) for p in F.points],
            "log_abs_V": {"value": estimate_str(F.log_abs_V), "estimate": True},
            "diam_estimate": {"value": estimate_str(F.diam_estimate), "estimate": True},
            "converged": F.converged,
            "seed": a.seed,
            "density": F.density,
        },
        a.out,
    )
    return EXIT_OK


def cmd_tdiam(a) -> int:
    E = load_region(a.region)
    rows = tdiam_estimate(E, a.nmax, seed=a.seed)
    _write_csv(
        ["n", "h_n", "l_n", "log_abs_V", "diam_estimate"],
        [[r.n, r.h, r.l, estimate_str(r.log_abs_V), estimate_str(r.diam)] for r in rows],
        a.out,
    )
    if a.plot:
        emit_plot([(r.n, float(r.diam)) for r in rows], a.plot, "|V|^(1/l_n)", "diameter estimate")
    return EXIT_OK


def cmd_bounds(a) -> int:
    E = load_region(a.region)
    lattices = [load_lattice(p) for p in a.lattice or []]
    rep = build_report(E, a.nmax, lattices, a.tdiam_n, a.tol)
    _dump(rep.to_json_obj(), a.out)
    return EXIT_OK


def cmd_certify(a) -> int:
    P = load_poly(a.poly)
    L = load_lattice(a.lattice)
    E = load_region(a.region) if a.region else None
    cert = C.n_certificate(P, L, a.degree)
    out = {"N": cert.to_json_obj(), "vanishing": [v.to_json_obj() for v in C.vanishing_check(P, L)]}
    n = a.degree if a.degree is not None else int(P.degree)
    try:
        out["finite_lower_bound"] = C.finite_lower_bound(L, n, E).to_json_obj()
    except C.Inapplicable as exc:
        out["finite_lower_bound"] = {"inapplicable": str(exc)}
    _dump(out, a.out)
    return EXIT_OK


def _check_claims(P: Poly, E, claims: dict, tol, budget: int = 100_000) -> tuple[list[dict], bool]:
    """Per-claim results, and whether every enclosure converged within ``budget``."""
    results = []
    converged = True

    def record(name, ok, detail=""):
        results.append({"claim": name, "pass": bool(ok), "detail": detail})

    if "norm" in claims:
        c = claims["norm"]
        enc = supnorm_region(P, E, tol, budget=budget)
        converged = enc.converged
        lo = parse_rational(c["lower"]) if c.get("lower") is not None else None
        up = parse_rational(c["upper"]) if c.get("upper") is not None else None
        # a claim passes only when the certified enclosure proves it
        ok = True
        if up is not None:
            ok &= enc.upper is not None and enc.upper <= up
        if lo is not None:
            ok &= enc.lower >= lo
        record("norm", ok, f"enclosure [{format_rational(enc.lower)}, {enc.upper and format_rational(enc.upper)}]")
        refuted = (up is not None and enc.lower > up) or (lo is not None and enc.upper is not None and enc.upper < lo)
        results[-1]["refuted"] = bool(refuted)
    for r in claims.get("restriction", []):
        line = [parse_rational(c) for c in r["line"]]
        want = Poly.from_json_obj(r["equals"])
        got = restrict_to_graph(P, line)
        record(f"restriction to y = {Poly.from_coeffs(line)}", got == want, str(got))
    for f in claims.get("divisible_by", []):
        F = Poly.from_json_obj(f)
        record(f"divisible by {F}", exact_divide(P, F) is not None)
    for f in claims.get("not_divisible_by", []):
        F = Poly.from_json_obj(f)
        record(f"not divisible by {F}", exact_divide(P, F) is None)
    if "vanishes_on" in claims:
        L = C.AlgebraicLattice.from_json_obj(claims["vanishes_on"])
        verdicts = C.vanishing_check(P, L)
        record("vanishes on lattice", all(v.verdict == "vanishes" for v in verdicts), f"{len(verdicts)} points")
    return results, converged


def cmd_verify(a) -> int:
    P = load_poly(a.poly)
    E = load_region(a.region)
    claims = _load(a.claims)
    if not isinstance(claims, dict):
        raise Malformed("claims must be a JSON object")
    try:
        results, converged = _check_claims(P, E, claims, a.tol, a.budget)
    except (KeyError, TypeError, ValueError) as exc:
        raise Malformed(f"malformed claims: {exc}") from exc
    ok = all(r["pass"] for r in results)
    _dump({"claims": results, "all_pass": ok, "converged": converged}, a.out)
    if not converged and not ok:
        # an unresolved norm claim is a budget problem, not a refutation
        refuted = [r for r in results if not r["pass"] and (r["claim"] != "norm" or r["refuted"])]
        return EXIT_CLAIM if refuted else EXIT_BUDGET
    return EXIT_OK if ok else EXIT_CLAIM


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="intcheb", description="Integer Chebyshev bounds and certificates.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, region=True):
        if region:
            sp.add_argument("--region", required=True, help="region JSON file")
        sp.add_argument("--out", default="-", help="output file (default stdout)")
        sp.add_argument("--tol", type=_tol, default=DEFAULT_TOL, help="enclosure tolerance (default 1e-9)")

    sp = sub.add_parser("search", help="search for a small integer polynomial of degree <= N")
    common(sp)
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument(
        "--strategy", default="auto", choices=["auto", "exhaustive", "lattice", "closed-form", "minkowski"]
    )
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser(
        "sequence",
        help="best norms for n = 1..NMAX",
        description="CSV columns: n, norm (certified upper as p/q), root (norm^(1/n), 30 digits), strategy, certified.",
    )
    common(sp)
    sp.add_argument("--nmax", type=int, required=True)
    sp.add_argument("--strategy", default="auto", choices=["auto", "exhaustive", "lattice", "closed-form"])
    sp.add_argument("--plot", help="SVG file for norm^(1/n) against n")
    sp.set_defaults(func=cmd_sequence)

    sp = sub.add_parser("fekete", help="approximate Fekete points")
    common(sp)
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--iters", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--density", type=int, default=None)
    sp.set_defaults(func=cmd_fekete)

    sp = sub.add_parser(
        "tdiam",
        help="transfinite diameter estimates",
        description="CSV columns: n, h_n, l_n, log_abs_V, diam_estimate (estimates with 30 digits).",
    )
    common(sp)
    sp.add_argument("--nmax", type=int, required=True)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--plot", help="SVG file for the estimates against n")
    sp.set_defaults(func=cmd_tdiam)

    sp = sub.add_parser("bounds", help="assemble upper/lower bounds into a report")
    common(sp)
    sp.add_argument("--lattice", action="append", help="minimal-polynomial JSON file (repeatable)")
    sp.add_argument("--nmax", type=int, default=4)
    sp.add_argument("--tdiam-n", type=int, default=None, help="degree of the transfinite diameter estimate")
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("certify", help="N-certificate, vanishing verdicts and finite lower bound")
    common(sp, region=False)
    sp.add_argument("--poly", required=True)
    sp.add_argument("--lattice", required=True)
    sp.add_argument("--region", help="region for the membership check of the finite bound")
    sp.add_argument("--degree", type=int, default=None)
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("verify", help="re-check claimed norms, restrictions and divisibility")
    common(sp)
    sp.add_argument("--poly", required=True)
    sp.add_argument("--claims", required=True)
    sp.add_argument("--budget", type=int, default=100_000, help="subdivision budget for norm claims")
    sp.set_defaults(func=cmd_verify)
    return p


def run_command(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except Malformed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except (S.SearchRefused, DegenerateLattice) as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except BudgetExceeded as exc:
        print(f"budget: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CLAIM


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
