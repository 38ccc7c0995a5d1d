"""Command-line interface.

Subcommands: ``catalog`` (the family table as JSON), ``c-eval`` (exact
overlap constants), ``limit-scan`` (chain scan plus convergence verdict),
``sphere-verify`` (zonal closed forms, ODE residual, Monte-Carlo identity),
``mc-check`` (standalone Monte-Carlo run).  ``sphelim --check`` runs the
built-in invariant suite and exits nonzero on any failure.

Output conventions: rationals always print as "numerator/denominator",
floats as format(x, '.17g'), JSON with sorted keys.  All randomness is
seed-driven, so identical invocations produce identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .cfunc import c_gamma, c_value
from .limits import (
    ClassifyConfig,
    DirectSystem,
    c_sequence,
    classify,
    classify_scan,
    default_max_workers,
    divergence_certificate,
)
from .rootdata import (
    FAMILIES,
    build_space,
    fundamental_weights,
    in_lambda_plus,
    lambda_alpha,
    rho,
    simple_roots,
    weight_from_xi,
)
from .sphere import (
    mc_functional_equation,
    ode_residual,
    planar_rotation,
    haar_rotation,
    zonal_eval,
)


def fmt_fraction(fr: Fraction) -> str:
    fr = Fraction(fr)
    return f"{fr.numerator}/{fr.denominator}"


def fmt_float(x: float) -> str:
    return format(float(x), ".17g")


def to_jsonable(obj):
    """Recursive JSON-safe view: Fractions become 'num/den' strings."""
    if isinstance(obj, Fraction):
        return fmt_fraction(obj)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    return obj


def emit_json(obj, stream=None) -> None:
    print(json.dumps(to_jsonable(obj), sort_keys=True), file=stream or sys.stdout)


def _parse_int_list(text: str) -> tuple[int, ...]:
    items = [piece.strip() for piece in text.split(",") if piece.strip()]
    if not items:
        raise argparse.ArgumentTypeError("expected a comma-separated integer list")
    try:
        return tuple(int(piece) for piece in items)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from None


def _space_from_args(args) -> object:
    kwargs = {}
    if args.p is not None:
        kwargs["p"] = args.p
    if args.q is not None:
        kwargs["q"] = args.q
    if args.n is not None:
        kwargs["n"] = args.n
    return build_space(args.family, **kwargs)


# --------------------------------------------------------------------------
# subcommand handlers


def cmd_catalog(args) -> int:
    rows = []
    for fam in FAMILIES.values():
        if fam.param_kind == "pq":
            p = fam.fixed_p or 1
            example = {"p": p, "q": p + 1}
            datum = build_space(fam.slug, **example)
        else:
            example = {"n": max(fam.min_n, 2)}
            datum = build_space(fam.slug, **example)
        rows.append({
            "family": fam.slug,
            "row": fam.row,
            "group": fam.group,
            "subgroup": fam.subgroup,
            "pattern": fam.psi_label,
            "parameters": fam.param_kind,
            "distance_degree": fam.d,
            "example": {
                **example,
                "rank": datum.rank,
                "mult_middle": datum.mult_middle,
                "mult_alpha1": datum.mult_alpha1,
                "mult_half": datum.mult_half,
                "rho": [fmt_fraction(c) for c in rho(datum)],
            },
        })
    emit_json(rows)
    return 0


def cmd_c_eval(args) -> int:
    try:
        datum = _space_from_args(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    failures = 0
    for coeffs in args.mu:
        line = {
            "family": datum.family,
            "params": dict(datum.params),
            "mu_xi": list(coeffs),
        }
        try:
            padded = coeffs if len(coeffs) == datum.rank else tuple(coeffs) + (0,) * (datum.rank - len(coeffs))
            value = c_value(datum, padded)
        except (ValueError, ArithmeticError) as exc:
            line["error"] = str(exc)
            failures += 1
        else:
            line["c_exact"] = fmt_fraction(value)
            line["c_float"] = fmt_float(value)
            if args.oracle:
                w = weight_from_xi(datum, padded)
                shifted_vec = tuple(a + b for a, b in zip(w.coeffs_f, rho(datum).coeffs_f))
                line["c_oracle_float"] = fmt_float(c_gamma(datum, shifted_vec))
        emit_json(line)
    return 1 if failures else 0


_SCAN_KEYS = {
    "family": str, "coeffs": _parse_int_list, "p": int, "max_level": int,
    "zero_floor": Fraction, "positive_floor": Fraction, "window": int,
    "rtol": float, "batch": int, "workers": int, "csv": str,
}


def _load_config(path: str) -> dict:
    opts = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _SCAN_KEYS:
            raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
        opts[key] = _SCAN_KEYS[key](value)
    return opts


def cmd_limit_scan(args) -> int:
    merged = {}
    if args.config:
        try:
            merged.update(_load_config(args.config))
        except (OSError, ValueError, ZeroDivisionError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    for key in _SCAN_KEYS:
        flag = getattr(args, key, None)
        if flag is not None:
            merged[key] = flag
    if "family" not in merged or "coeffs" not in merged:
        print("error: limit-scan needs family and coeffs (flags or config)", file=sys.stderr)
        return 2
    try:
        system = DirectSystem(merged["family"], merged["coeffs"], merged.get("p"))
        config = ClassifyConfig(
            zero_floor=merged.get("zero_floor", Fraction(1, 10 ** 6)),
            positive_floor=merged.get("positive_floor", Fraction(0)),
            window=merged.get("window", 5),
            rtol=merged.get("rtol", 1e-4),
        )
        workers = merged.get("workers", default_max_workers())
        seq, report = classify_scan(
            system,
            max_level=merged.get("max_level", 200),
            config=config,
            batch=merged.get("batch", 25),
            max_workers=workers,
        )
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    csv_lines = ["level,c_num,c_den,c_float"]
    for level, value in zip(seq.levels, seq.values):
        csv_lines.append(f"{level},{value.numerator},{value.denominator},{fmt_float(value)}")
    csv_text = "\n".join(csv_lines) + "\n"
    if merged.get("csv"):
        Path(merged["csv"]).write_text(csv_text)
    else:
        sys.stdout.write(csv_text)
    emit_json({
        "verdict": report.verdict,
        "limit_estimate": report.limit_estimate,
        "evidence": report.evidence,
    })
    return 0


def cmd_sphere_verify(args) -> int:
    n, k = args.n, args.k
    try:
        grid = np.linspace(-1.0, 1.0, args.grid)
        values = zonal_eval(n, k, grid)
        residual = ode_residual(n, k, grid)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    powers = grid ** k
    csv_lines = ["t,p,t_pow_k,residual"]
    for t, p, tk, res in zip(grid, values, powers, residual):
        csv_lines.append(f"{fmt_float(t)},{fmt_float(p)},{fmt_float(tk)},{fmt_float(res)}")
    csv_text = "\n".join(csv_lines) + "\n"
    if args.csv:
        Path(args.csv).write_text(csv_text)
    else:
        sys.stdout.write(csv_text)
    x = planar_rotation(n + 1, args.theta)
    y = planar_rotation(n + 1, args.theta_y)
    mc = mc_functional_equation(n, k, x, y, args.samples, args.seed)
    emit_json({
        "n": n,
        "k": k,
        "max_abs_ode_residual": float(np.max(np.abs(residual))),
        "max_abs_power_gap": float(np.max(np.abs(powers - values))),
        "mc": {
            "estimate": mc.estimate,
            "std_error": mc.std_error,
            "target": mc.target,
            "samples": mc.samples,
            "zscore": mc.zscore(),
        },
    })
    return 0


def cmd_mc_check(args) -> int:
    n, k = args.n, args.k
    if args.haar_xy:
        x = haar_rotation(n + 1, 1, args.seed + 101)[0]
        y = haar_rotation(n + 1, 1, args.seed + 202)[0]
    else:
        x = planar_rotation(n + 1, args.theta)
        y = planar_rotation(n + 1, args.theta_y)
    try:
        mc = mc_functional_equation(n, k, x, y, args.samples, args.seed)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    z = mc.zscore()
    ok = z <= args.max_z
    emit_json({
        "n": n, "k": k, "samples": mc.samples,
        "estimate": mc.estimate, "std_error": mc.std_error,
        "target": mc.target, "zscore": z,
        "max_z": args.max_z, "pass": ok,
    })
    return 0 if ok else 1


# --------------------------------------------------------------------------
# built-in invariant suite


def _self_checks():
    def rank_one_values():
        datum = build_space("rank1-real", q=2)
        assert c_value(datum, (1,)) == Fraction(3, 8)
        assert c_value(build_space("rank1-real", q=3), (1,)) == Fraction(1, 3)
        for q in range(2, 13):
            got = c_value(build_space("rank1-real", q=q), (1,))
            assert got == Fraction(q + 1, 4 * q), (q, got)

    def normalization():
        for family, kwargs in (("group-su", {"n": 4}), ("group-sp", {"n": 3}),
                               ("grass-complex", {"p": 2, "q": 5}),
                               ("grass-real", {"p": 2, "q": 4}),
                               ("sp-over-u", {"n": 4}),
                               ("group-spin-even", {"n": 4})):
            datum = build_space(family, **kwargs)
            assert c_value(datum, (0,) * datum.rank) == 1

    def duality():
        for family, kwargs in (("group-su", {"n": 5}), ("group-spin-odd", {"n": 3}),
                               ("group-sp", {"n": 4}), ("group-spin-even", {"n": 5}),
                               ("grass-real", {"p": 3, "q": 6})):
            datum = build_space(family, **kwargs)
            alphas = simple_roots(datum)
            xis = fundamental_weights(datum)
            for i, xi in enumerate(xis):
                for j, alpha in enumerate(alphas):
                    want = 1 if i == j else 0
                    assert lambda_alpha(xi, alpha) == want, (family, i, j)

    def a_chain():
        system = DirectSystem("group-su", (1,))
        seq = c_sequence(system, range(1, 11))
        assert list(seq.values) == [Fraction(1, r + 1) for r in range(1, 11)]
        report = classify(seq)
        assert report.verdict == "ZeroLimit"
        assert report.evidence["certificate"] is not None

    def rank_one_chain():
        _, report = classify_scan(DirectSystem("rank1-real", (1,)), max_level=150)
        assert report.verdict == "PositiveLimit"
        assert abs(report.limit_estimate - 0.25) < 1e-3

    def row_eleven():
        assert c_value(build_space("sp-over-u", n=4), (1, 0, 0, 0)) == Fraction(5, 128)

    def certificates():
        assert divergence_certificate([1] * 100, [0] * 100, 1, 100) == Fraction(1, 101)
        assert divergence_certificate([Fraction(1, 2)] * 2, [Fraction(1, 2)] * 2, 1, 2) == Fraction(5, 8)

    def gamma_oracle():
        for family, kwargs, coeffs in (("grass-complex", {"p": 2, "q": 5}, (1, 2)),
                                       ("group-sp", {"n": 3}, (0, 1, 1))):
            datum = build_space(family, **kwargs)
            exact = float(c_value(datum, coeffs))
            w = weight_from_xi(datum, coeffs)
            shifted_vec = tuple(a + b for a, b in zip(w.coeffs_f, rho(datum).coeffs_f))
            approx = c_gamma(datum, shifted_vec)
            assert abs(approx - exact) / exact < 1e-9, (family, exact, approx)

    def zonal_forms():
        grid = np.linspace(-1, 1, 101)
        n = 6
        want2 = ((n + 1) * grid ** 2 - 1) / n
        want3 = grid * ((n + 3) * grid ** 2 - 3) / n
        assert float(np.max(np.abs(zonal_eval(n, 2, grid) - want2))) < 1e-14
        assert float(np.max(np.abs(zonal_eval(n, 3, grid) - want3))) < 1e-14
        for k in range(9):
            assert float(np.max(np.abs(ode_residual(n, k, grid)))) < 1e-8
        gap = grid ** 2 - zonal_eval(n, 2, grid)
        assert float(np.max(np.abs(gap - (1 - grid ** 2) / n))) < 1e-14

    def haar_invariance():
        mats = haar_rotation(5, 64, seed=20240817)
        eye = np.eye(5)
        assert max(float(np.max(np.abs(m.T @ m - eye))) for m in mats) < 1e-12
        assert np.allclose(np.linalg.det(mats), 1.0, atol=1e-9)
        from .sphere import haar_sample_stabilizer
        stab = haar_sample_stabilizer(4, 8, seed=7)
        x = mats[0]
        for h in stab:
            assert (h @ x @ stab[3])[0, 0] == (x @ stab[3])[0, 0]

    def mc_exact_cases():
        mc = mc_functional_equation(3, 0, planar_rotation(4, 1.0), planar_rotation(4, 0.5), 256, 1)
        assert mc.estimate == 1.0 and mc.target == 1.0 and mc.zscore() == 0.0
        mc2 = mc_functional_equation(3, 2, planar_rotation(4, 0.9), planar_rotation(4, 0.4), 4096, 11)
        assert mc2.zscore() <= 4.0, mc2

    return [
        ("rank-one exact values", rank_one_values),
        ("normalization at the zero weight", normalization),
        ("simple-root / fundamental-weight duality", duality),
        ("type-A chain decays with certificate", a_chain),
        ("rank-one chain stabilizes near 1/4", rank_one_chain),
        ("row-11 value 5/128", row_eleven),
        ("divergence certificate products", certificates),
        ("log-gamma oracle agreement", gamma_oracle),
        ("zonal closed forms and ODE residual", zonal_forms),
        ("Haar orthogonality and exact bi-invariance", haar_invariance),
        ("Monte-Carlo exact cases", mc_exact_cases),
    ]


def run_self_check() -> int:
    failures = 0
    for name, fn in _self_checks():
        try:
            fn()
        except Exception as exc:  # report every failing invariant, keep going
            failures += 1
            print(f"FAIL - {name}: {exc!r}")
        else:
            print(f"ok - {name}")
    print(f"self-check: {'PASS' if not failures else 'FAIL'} ({failures} failures)")
    return 0 if failures == 0 else 1


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sphelim",
        description="Exact overlap constants on compact symmetric spaces, "
                    "rank dichotomy scans, and sphere zonal-limit checks.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--check", action="store_true",
                        help="run the built-in invariant suite and exit")
    sub = parser.add_subparsers(dest="command")

    p_cat = sub.add_parser("catalog", help="list the family table as JSON")
    p_cat.set_defaults(handler=cmd_catalog)

    p_eval = sub.add_parser("c-eval", help="exact overlap constants for one space")
    p_eval.add_argument("--family", required=True, choices=sorted(FAMILIES))
    p_eval.add_argument("--p", type=int)
    p_eval.add_argument("--q", type=int)
    p_eval.add_argument("--n", type=int)
    p_eval.add_argument("--mu", type=_parse_int_list, action="append", required=True,
                        help="fundamental-weight coefficients, e.g. 1,0,2 (repeatable)")
    p_eval.add_argument("--oracle", action="store_true",
                        help="also print the floating log-gamma evaluation")
    p_eval.set_defaults(handler=cmd_c_eval)

    p_scan = sub.add_parser("limit-scan", help="scan a chain and classify its limit")
    p_scan.add_argument("--config", help="key=value file; explicit flags win")
    p_scan.add_argument("--family", choices=sorted(FAMILIES))
    p_scan.add_argument("--coeffs", type=_parse_int_list,
                        help="base fundamental-weight coefficients, e.g. 1,0")
    p_scan.add_argument("--p", type=int, help="fixed p for Grassmannian chains")
    p_scan.add_argument("--max-level", type=int, dest="max_level")
    p_scan.add_argument("--zero-floor", type=Fraction, dest="zero_floor")
    p_scan.add_argument("--positive-floor", type=Fraction, dest="positive_floor")
    p_scan.add_argument("--window", type=int)
    p_scan.add_argument("--rtol", type=float)
    p_scan.add_argument("--batch", type=int)
    p_scan.add_argument("--workers", type=int,
                        help="process count (default: SPHELIM_THREADS or 1)")
    p_scan.add_argument("--csv", help="write the level/value table here instead of stdout")
    p_scan.set_defaults(handler=cmd_limit_scan)

    p_sph = sub.add_parser("sphere-verify", help="zonal recurrence, ODE residual, MC identity")
    p_sph.add_argument("--n", type=int, required=True)
    p_sph.add_argument("--k", type=int, required=True)
    p_sph.add_argument("--grid", type=int, default=101)
    p_sph.add_argument("--samples", type=int, default=20000)
    p_sph.add_argument("--seed", type=int, default=20240817)
    p_sph.add_argument("--theta", type=float, default=0.9)
    p_sph.add_argument("--theta-y", type=float, default=0.4, dest="theta_y")
    p_sph.add_argument("--csv", help="write the grid table here instead of stdout")
    p_sph.set_defaults(handler=cmd_sphere_verify)

    p_mc = sub.add_parser("mc-check", help="Monte-Carlo functional-equation check")
    p_mc.add_argument("--n", type=int, required=True)
    p_mc.add_argument("--k", type=int, required=True)
    p_mc.add_argument("--samples", type=int, default=100000)
    p_mc.add_argument("--seed", type=int, default=20240817)
    p_mc.add_argument("--theta", type=float, default=0.9)
    p_mc.add_argument("--theta-y", type=float, default=0.4, dest="theta_y")
    p_mc.add_argument("--haar-xy", action="store_true",
                      help="draw x and y from Haar measure instead of planar rotations")
    p_mc.add_argument("--max-z", type=float, default=4.0, dest="max_z")
    p_mc.set_defaults(handler=cmd_mc_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.check:
        return run_self_check()
    if getattr(args, "handler", None) is None:
        parser.print_help()
        return 2
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())
