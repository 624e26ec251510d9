"""hk-verify: run the verification suites and report.

Exit codes: 0 when every check passes, 1 on a failed check, 2 on usage errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from . import __version__
from . import diagrams as dg

SUITES = ("wheeling", "phi-check", "sl2-check", "lefschetz", "todd", "rr", "identities")

DEFAULTS = {
    "max_degree": 8,
    "lefschetz_max_n": 12,
    "identities_max_n": 40,
    "rr_max_n": 20,
    "phi_max_n": 3,
    "phi_trials": 50,
    "sl2_max_n": 3,
    "sl2_trials": 100,
    "todd_n": 8,
}


class UsageError(Exception):
    pass


@dataclass
class CheckRecord:
    id: str
    anchor: str
    status: str
    params: dict = field(default_factory=dict)
    detail: Any = None
    witness: Any = None

    def to_dict(self) -> dict:
        out = {"id": self.id, "anchor": self.anchor, "status": self.status, "params": self.params}
        if self.detail is not None:
            out["detail"] = self.detail
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class VerificationReport:
    suite: str
    parameters: dict
    seed: int
    checks: list[CheckRecord] = field(default_factory=list)
    elapsed_ms: float | None = None
    version: str = __version__
    rows: list = field(default_factory=list, repr=False)  # tabular data for CSV

    def add(self, id: str, anchor: str, ok: bool | None, params=None, detail=None, witness=None):
        if ok is None:
            status = "skipped"
        else:
            status = "pass" if ok else "fail"
        if status == "fail" and witness is None:
            witness = detail if detail is not None else {"params": params}
        self.checks.append(CheckRecord(id, anchor, status, params or {}, detail, witness))

    @property
    def passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def to_dict(self) -> dict:
        out = {
            "suite": self.suite,
            "parameters": self.parameters,
            "seed": self.seed,
            "version": self.version,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }
        if self.elapsed_ms is not None:
            out["elapsed_ms"] = self.elapsed_ms
        return out


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _pick(value, default):
    return default if value is None else value


# --- suites ------------------------------------------------------------------

def suite_wheeling(args) -> VerificationReport:
    from .graph_homology import wheeling_check

    max_degree = _pick(args.max_degree, DEFAULTS["max_degree"])
    if max_degree < 2 or max_degree % 2:
        raise UsageError("--max-degree must be even and >= 2")
    rep = VerificationReport("wheeling", {"max_degree": max_degree}, args.seed)
    for row in wheeling_check(max_degree):
        detail = {k: row[k] for k in ("degree", "bidegree", "basis_size", "relation_rank", "reduced_norm_zero")}
        if args.timings:
            detail["elapsed_ms"] = row["elapsed_ms"]
        rep.add(f"wheeling/degree={row['degree']}", "dOmega = (Theta/48) Omega, modulo AS and IHX",
                row["reduced_norm_zero"], {"degree": row["degree"]}, detail)
    return rep


def _phi_corpus() -> dict[str, dg.JacobiDiagram]:
    return {
        "w2": dg.wheel(1),
        "w4": dg.wheel(2),
        "theta-union": dg.disjoint_union(dg.theta(), dg.wheel(1)),
        "w2-union": dg.disjoint_union(dg.wheel(1), dg.wheel(1)),
        "tripod": dg.tripod(),
        "h": dg.h_diagram(),
    }


def suite_phi(args) -> VerificationReport:
    from .symplectic import SymplecticSpace, phi_evaluate, prop312_check

    corpus = _phi_corpus()
    names = list(corpus) if args.diagram in (None, "all") else [args.diagram]
    ns = [args.n] if args.n is not None else list(range(1, _pick(args.max_n, DEFAULTS["phi_max_n"]) + 1))
    trials = _pick(args.trials, DEFAULTS["phi_trials"])
    if trials < 1 or any(n < 1 for n in ns):
        raise UsageError("--trials and --n must be positive")
    rep = VerificationReport("phi-check", {"diagrams": names, "n": ns, "trials": trials, "gens": args.gens}, args.seed)
    for n in ns:
        sp = SymplecticSpace(n)
        strut_val = phi_evaluate(dg.strut(), [], sp)
        rep.add(f"phi/strut/n={n}", "strut evaluates to 2 sigma", strut_val == 2 * sp.sigma(), {"n": n})
        for name in names:
            d = corpus[name]
            g = max(_pick(args.gens, 2), d.bidegree[0])
            r = prop312_check(d, sp, g, trials, args.seed)
            nonzero = sum(x["nonzero"] for x in r["results"])
            rep.add(f"phi/boundary/{name}/n={n}", "Phi(dGamma) = delta(Phi(Gamma))", r["passed"],
                    {"diagram": name, "n": n, "gens": g, "trials": trials},
                    {"trials_nonzero": nonzero}, r.get("witness"))
    return rep


def suite_sl2(args) -> VerificationReport:
    from .symplectic import SymplecticSpace, sl2_check

    ns = [args.n] if args.n is not None else list(range(1, _pick(args.max_n, DEFAULTS["sl2_max_n"]) + 1))
    trials = _pick(args.trials, DEFAULTS["sl2_trials"])
    g = _pick(args.gens, 2)
    if trials < 1 or any(n < 1 for n in ns):
        raise UsageError("--trials and --n must be positive")
    rep = VerificationReport("sl2-check", {"n": ns, "trials": trials, "gens": g}, args.seed)
    for n in ns:
        r = sl2_check(SymplecticSpace(n), g, trials, args.seed)
        rep.add(f"sl2/local/n={n}", "[sigma,delta] = Pi, [Pi,sigma] = 2 sigma, [Pi,delta] = -2 delta",
                r["passed"], {"n": n, "gens": g, "trials": trials},
                None, r["failures"] or None)
    return rep


def suite_lefschetz(args) -> VerificationReport:
    from . import lefschetz as lf

    max_n = _pick(args.max_n, DEFAULTS["lefschetz_max_n"])
    if max_n < 1:
        raise UsageError("--max-n must be positive")
    rep = VerificationReport("lefschetz", {"max_n": max_n, "assume_p1_positive": args.assume_p1_positive}, args.seed)
    for n in range(1, max_n + 1):
        r = lf.sl2_consistency(n, 50, args.seed)
        rep.add(f"lefschetz/sl2/n={n}", "[L,Lambda] = Pi on td^(1/2)_{2i} sigma^a sigmabar^b", r["passed"],
                {"n": n}, None, r["failures"] or None)
        for k in range(n // 2 + 1):
            rep.add(f"lefschetz/primitive/n={n}/k={k}", "Lambda(tp_2k) = 0",
                    lf.primitivity_check(n, k), {"n": n, "k": k},
                    None, None if lf.primitivity_check(n, k) else {"Lambda_tp": str(lf.Lambda(lf.tp(n, k)))})
        for k in range(n + 1):
            r = lf.decomposition_check(n, k)
            rep.add(f"lefschetz/decomposition/n={n}/k={k}",
                    "td^(1/2)_2k = sum (n-k-i)!/(lambda^(k-i)(k-i)!(n-2i)!) tp_2i (sigma sigmabar)^(k-i)",
                    r["passed"], {"n": n, "k": k}, {"mode": r["mode"], "residual": r["residual"]})
        r = lf.theorem51_check(n, args.assume_p1_positive)
        rep.add(f"lefschetz/td-integral/n={n}",
                "int td_2m exp(sigma+sigmabar) >= binom(2n-m+1,m) lambda^(n-m) int td^(1/2)",
                r["passed"], {"n": n},
                {"rows": [{k: row[k] for k in ("m", "residual", "strict")} for row in r["rows"]],
                 "polynomial_coefficients": r["polynomial_coefficients"]})
        r = lf.eq51_check(n)
        rep.add(f"lefschetz/td-half-integral/n={n}",
                "int td^(1/2)_2k (sigma sigmabar)^(n-k) = (n-k)!/(lambda^k k! n!) int (sigma sigmabar)^n",
                r["passed"], {"n": n}, {"values": r["values"]})
        for k in range(n // 2 + 1):
            ok = lf.omega_primitive_check(n, k)
            rep.add(f"lefschetz/omega-primitive/n={n}/k={k}", "Lambda_omega of the omega-combination = 0",
                    ok, {"n": n, "k": k}, None,
                    None if ok else {"Lambda": str(lf.Lambda_omega(lf.omega_combination(n, k)))})
    return rep


def suite_todd(args) -> VerificationReport:
    from .char_classes import (GradedPolynomial, SeriesMismatch, classical_todd, modified_bernoulli,
                               rw_symbol_map, td, td_half)
    from .graph_homology import wheeling_element

    n = _pick(args.n, DEFAULTS["todd_n"])
    if n < 2:
        raise UsageError("--n must be >= 2")
    rep = VerificationReport("todd", {"n": n}, args.seed)
    b = modified_bernoulli(max(n, 2))
    rep.add("todd/b2", "b_2 = 1/48", b[1] == Fraction(1, 48), detail=str(b[1]))
    rep.add("todd/b4", "b_4 = -1/5760", b[2] == Fraction(-1, 5760), detail=str(b[2]))
    half = td_half(n)
    c2 = GradedPolynomial.variable(n, 1)
    c4 = GradedPolynomial.variable(n, 2)
    rep.add("todd/td-half-2", "td^(1/2)_2 = c_2/24", half.weight_part(1) == c2 * Fraction(1, 24),
            detail=str(half.weight_part(1)))
    rep.add("todd/td-half-4", "td^(1/2)_4 = (7c_2^2 - 4c_4)/5760",
            half.weight_part(2) == (c2 * c2 * 7 - c4 * 4) * Fraction(1, 5760), detail=str(half.weight_part(2)))
    try:
        full = td(n)
        two_ways = True
    except SeriesMismatch as exc:
        full, two_ways = None, False
        rep.add("todd/two-ways", "exp(-2 sum b_2k (2k)! ch_2k) = (td^(1/2))^2", False, witness=str(exc))
    if two_ways:
        rep.add("todd/two-ways", "exp(-2 sum b_2k (2k)! ch_2k) = (td^(1/2))^2", True)
        classical = classical_todd(n)
        rep.add("todd/classical", "(td^(1/2))^2 = Todd genus of x/(1-e^-x) with odd c = 0",
                full == classical, {"n": n}, None if full == classical else {"td": str(full), "classical": str(classical)})
    image = rw_symbol_map(wheeling_element(4 * n), n)
    ok = set(image.parts) <= {(0, 0, 0)} and image.part() == half
    rep.add("todd/rw-omega", "RW(Omega) = td^(1/2)", ok, {"n": n}, None if ok else {"image": repr(image)})
    rep.checks.append(CheckRecord("todd/td-half", "td^(1/2) components", "pass", {"n": n}, half.to_dict()))
    if full is not None:
        rep.checks.append(CheckRecord("todd/td", "td components", "pass", {"n": n}, full.to_dict()))
    return rep


def _rr_specs(args):
    from .rr_poly import FAMILIES, FamilySpec, InvalidFamilyDimension

    fams = FAMILIES if args.family in (None, "all") else (args.family,)
    specs = []
    for fam in fams:
        if args.n is not None:
            ns = [args.n]
        elif fam == "og6":
            ns = [3]
        elif fam == "og10":
            ns = [5]
        else:
            ns = range(1, _pick(args.max_n, DEFAULTS["rr_max_n"]) + 1)
        for n in ns:
            try:
                specs.append(FamilySpec(fam, n))
            except InvalidFamilyDimension as exc:
                raise UsageError(str(exc)) from exc
    return specs


def suite_rr(args) -> VerificationReport:
    from .rr_poly import family_report

    specs = _rr_specs(args)
    rep = VerificationReport("rr", {"family": args.family or "all", "n": args.n,
                                    "max_n": _pick(args.max_n, DEFAULTS["rr_max_n"])}, args.seed)
    anchors = {
        "coefficients_positive": "all coefficients of RR_X(q) are positive",
        "chi_O_is_n_plus_1": "RR_X(0) = chi(O_X) = n + 1",
        "td_half_matches_closed_form": "int td^(1/2) = B^n/((2n)^n A^(n-1))",
        "below_one": "int td^(1/2) < 1 for n >= 2",
        "k3_surface_value_one": "int td^(1/2)(K3) = 1",
        "monotone": "RR_X strictly increasing on q > 0 and RR_X(q) > n + 1",
        "bound_gap": "td exp minus the bound is a polynomial of degree n-2 with positive coefficients",
        "lambda_crosscheck": "lambda = 2nA/B, int (sigma sigmabar)^n = n!^2 A",
        "roots": "roots are negative even integers in arithmetic progression (exploratory)",
        "log_concave": "coefficients log-concave (exploratory)",
    }
    for spec in specs:
        r = family_report(spec)
        rep.rows.append(r)
        params = {"family": spec.family, "n": spec.n}
        for name, ok in list(r["checks"].items()) + list(r["exploratory"].items()):
            if ok is None:
                continue
            rep.add(f"rr/{spec.family}/n={spec.n}/{name}", anchors[name], ok, params,
                    None, None if ok else {"polynomial": r["polynomial"], "td_half_integral": r["td_half_integral"]})
        rep.checks.append(CheckRecord(f"rr/{spec.family}/n={spec.n}/values", "RR_X(q) and derived values", "pass",
                                      params, {k: r[k] for k in ("polynomial", "chi_O", "td_half_integral", "roots")}))
    return rep


def suite_identities(args) -> VerificationReport:
    from .identities import sweep

    max_n = _pick(args.max_n, DEFAULTS["identities_max_n"])
    if max_n < 0:
        raise UsageError("--max-n must be nonnegative")
    r = sweep(max_n)
    rep = VerificationReport("identities", {"max_n": max_n}, args.seed)
    a1 = [f for f in r["failures"] if f["lemma"] == "a1"]
    a2 = [f for f in r["failures"] if f["lemma"] == "a2"]
    rep.add("identities/a1", "sum (-1)^i (n-2k+2i+1)(n-2k+i)!/(i!(k-i-j)!(n-k+i-j+1)!) = [k = j]",
            not a1, {"max_n": max_n}, {"cases": r["a1_cases"]}, a1 or None)
    rep.add("identities/a2", "sum (n-k-i)!(n-m+k-i)!/((k-i)!(m-k-i)!) = (n-m)!^2 binom(2n-2i-m+1, m-2i)",
            not a2, {"max_n": max_n}, {"cases": r["a2_cases"]}, a2 or None)
    return rep


RUNNERS: dict[str, Callable] = {
    "wheeling": suite_wheeling,
    "phi-check": suite_phi,
    "sl2-check": suite_sl2,
    "lefschetz": suite_lefschetz,
    "todd": suite_todd,
    "rr": suite_rr,
    "identities": suite_identities,
}


# --- output ------------------------------------------------------------------

def _rr_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["family", "n", "coefficients", "chi_O", "td_half_integral", "roots", "log_concave"])
    for rep in reports:
        for r in getattr(rep, "rows", []):
            w.writerow([r["family"], r["n"], " ".join(r["coefficients"]), r["chi_O"],
                        r["td_half_integral"], " ".join(r["roots"]), r["log_concave"]])
    return buf.getvalue()


def _text(reports) -> str:
    lines = []
    for rep in reports:
        lines.append(f"== {rep.suite} ({'pass' if rep.passed else 'FAIL'})")
        for c in rep.checks:
            lines.append(f"{c.status.upper():7} {c.id}  [{c.anchor}]")
            if c.status == "fail":
                lines.append(f"        witness: {json.dumps(_jsonable(c.witness), sort_keys=True)}")
        if rep.elapsed_ms is not None:
            lines.append(f"        elapsed_ms: {rep.elapsed_ms}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--csv", action="store_true", help="emit CSV (rr only)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-degree", type=int, default=None, help="vertex bound for the wheeling check")
    common.add_argument("--max-n", type=int, default=None)
    common.add_argument("--trials", type=int, default=None)
    common.add_argument("--assume-p1-positive", action="store_true",
                        help="treat p_1 > 0 as given so strict inequalities are reported")
    common.add_argument("--timings", action="store_true", help="include wall-clock timings (reports stop being reproducible)")

    parser = argparse.ArgumentParser(prog="hk-verify", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in SUITES + ("all",):
        p = sub.add_parser(name, parents=[common])
        if name in ("phi-check", "sl2-check", "todd", "rr"):
            p.add_argument("--n", type=int, default=None)
        if name in ("phi-check", "sl2-check"):
            p.add_argument("--gens", type=int, default=None)
        if name == "phi-check":
            p.add_argument("--diagram", choices=sorted(_phi_corpus()) + ["all"], default=None)
        if name == "rr":
            p.add_argument("--family", choices=["k3n", "kummer", "og6", "og10", "all"], default=None)
    return parser


def _fill(args):
    for attr in ("n", "gens", "diagram", "family"):
        if not hasattr(args, attr):
            setattr(args, attr, None)
    return args


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = _fill(parser.parse_args(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.csv and args.command != "rr":
        print("hk-verify: --csv is only available for rr", file=sys.stderr)
        return 2
    names = SUITES if args.command == "all" else (args.command,)
    reports = []
    try:
        for name in sorted(names):
            t0 = time.perf_counter()
            rep = RUNNERS[name](args)
            if args.timings:
                rep.elapsed_ms = round(1000 * (time.perf_counter() - t0), 3)
            reports.append(rep)
    except UsageError as exc:
        print(f"hk-verify: {exc}", file=sys.stderr)
        return 2
    passed = all(r.passed for r in reports)
    if args.csv:
        out.write(_rr_csv(reports))
    elif args.json:
        if args.command == "all":
            doc = {"command": "all", "seed": args.seed, "version": __version__, "passed": passed,
                   "suites": [r.to_dict() for r in reports]}
        else:
            doc = reports[0].to_dict()
        out.write(json.dumps(_jsonable(doc), indent=2, sort_keys=True) + "\n")
    else:
        out.write(_text(reports))
    return 0 if passed else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
