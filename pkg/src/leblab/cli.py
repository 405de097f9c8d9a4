"""Command-line front end.

Exit codes: 0 success, 2 domain error, 3 numeric stall, 4 I/O error.
LEBLAB_TOL overrides the default tolerance of tolerance-taking
subcommands.
"""

import argparse
import json
import math
import os
import sys

import numpy as np

from . import norms, sequences, sweep, transform, zeros
from . import extremal as extremal_mod
from .approx import best_trig_approx
from .errors import NUMERIC_STALL_ERRORS, DomainError
from .kernel import eval_tail_kernel, eval_envelope_phase
from .params import DEFAULT_CEILING, threshold_n0, threshold_n1, threshold_nstar, validate_params
from .trigpoly import TrigPolynomial


def _emit(obj):
    print(json.dumps(obj, sort_keys=True, indent=1))


def _tol_default(fallback):
    env = os.environ.get("LEBLAB_TOL")
    return float(env) if env else fallback


def _params(args):
    return validate_params(args.alpha, args.r, getattr(args, "beta", 0.0))


def cmd_thresholds(args):
    p = _params(args)
    ceiling = args.ceiling or DEFAULT_CEILING
    n1 = threshold_n1(p, ceiling)
    ns = threshold_nstar(p, ceiling)
    ps = [args.p] if args.p is not None else [1.0, math.inf]
    n0 = {("inf" if q == math.inf else repr(float(q))): threshold_n0(p, q, ceiling) for q in ps}
    _emit({
        "n0": {k: {"n": s.n, "exact": s.exact} for k, s in n0.items()},
        "n1": {"n": n1.n, "exact": n1.exact},
        "n_star": {"n": ns.n, "exact": ns.exact},
    })


def cmd_kernel(args):
    p = _params(args)
    tol = _tol_default(1e-12)
    out = {"t": list(args.t), "values": [eval_tail_kernel(p, args.n, t, tol=tol) for t in args.t]}
    if args.envelope:
        env = [eval_envelope_phase(p, args.n, t, tol=tol) for t in args.t]
        out["envelope"] = [
            {"g": e.g, "h": e.h, "y": e.y, "y_prime_lower": e.y_prime_lower} for e in env
        ]
    _emit(out)


def cmd_zeros(args):
    p = _params(args)
    tol = _tol_default(1e-12)
    methods = ["brackets", "phase"] if args.method == "both" else [args.method]
    out = {}
    for meth in methods:
        zs = zeros.locate_zeros(p, args.n, tol=tol, method=meth)
        out[meth] = {
            "zeros": list(zs.zeros),
            "count": int(zs.zeros.shape[0]),
            "alternation_ok": bool(zs.alternation_ok),
            "residuals_ok": zs.residuals_ok,
            "tol": zs.tol,
        }
    _emit(out)


def cmd_norm(args):
    p = _params(args)
    rep = norms.l1_norm_tail_kernel(p, args.n, tol=_tol_default(args.tol))
    _emit({
        "n": rep.n, "l1_norm": rep.l1_norm, "l1_norm_scaled": rep.l1_norm_scaled,
        "principal": rep.principal, "gamma_star": rep.gamma_star,
        "theta": rep.theta, "theta_in_range": rep.theta_in_range,
        "quad_error_bound": rep.quad_error_bound, "n_ge_n1": rep.n_ge_n1,
    })


def cmd_lebesgue(args):
    print("n,lebesgue,defect")
    for n in range(1, args.nmax + 1):
        lc, d = norms.lebesgue_constant(n)
        print(f"{n},{lc!r},{d!r}")


def cmd_monotone(args):
    p = _params(args)
    cert = sequences.check_abs_monotone(p, args.mmax, args.kmax)
    _emit({
        "m_max": cert.m_max, "k_max": cert.k_max,
        "min_signed_difference": cert.min_signed_difference,
        "passed": cert.passed, "limit_zero_ok": cert.limit_zero_ok,
        "summable_ok": cert.summable_ok,
    })


def _read_samples(path):
    with open(path, encoding="utf-8") as fh:
        first = fh.readline().strip()
        if not first.startswith("#") or "interpolation" not in first:
            raise DomainError("samples file must declare an interpolation rule in its header")
        rule = first.split(":", 1)[1].strip()
        if rule != "linear":
            raise DomainError(f"unsupported interpolation rule {rule!r}")
        rows = [line.split(",") for line in fh if line.strip() and not line.startswith("t,")]
    ts = np.array([float(a) for a, _ in rows])
    fs = np.array([float(b) for _, b in rows])
    order = np.argsort(ts)
    ts, fs = ts[order], fs[order]
    text = np.concatenate([ts, [ts[0] + 2 * math.pi]])
    fext = np.concatenate([fs, [fs[0]]])

    def f(x):
        return np.interp(np.asarray(x, dtype=np.float64) % (2 * math.pi), text, fext)

    return f


def cmd_bestapprox(args):
    f = _read_samples(args.samples)
    p, e, cert = best_trig_approx(f, args.n, tol=_tol_default(args.tol))
    _emit({
        "a0": p.a0, "cos": list(p.cos_coeffs), "sin": list(p.sin_coeffs),
        "E": e,
        "certificate": {
            "points": list(cert.points), "signs": [int(s) for s in cert.signs],
            "leveled_error": cert.leveled_error, "max_error": cert.max_error,
        },
    })


def _read_phi(path):
    with open(path, encoding="utf-8") as fh:
        d = json.load(fh)
    return TrigPolynomial(d.get("a0", 0.0), d.get("cos", []), d.get("sin", []))


def cmd_rho(args):
    p = _params(args)
    phi = _read_phi(args.phi)
    if args.x:
        vals = [float(transform.deviation_rho(p, phi, args.n, x)) for x in args.x]
        _emit({"x": list(args.x), "rho": vals})
    else:
        grid = np.linspace(0.0, 2 * math.pi, args.supgrid, endpoint=False)
        vals = transform.deviation_rho(p, phi, args.n, grid)
        _emit({"supgrid": args.supgrid, "sup_abs_rho": float(np.max(np.abs(vals)))})


def cmd_extremal(args):
    p = _params(args)
    zs = zeros.locate_zeros(p, args.n, tol=1e-10)
    delta = args.delta if args.delta is not None else extremal_mod.choose_delta(p, args.n, zs)
    reports = []
    for j in range(args.sweep + 1):
        rep = extremal_mod.verify_equality_case(p, args.n, args.level, delta=delta / (2.0**j))
        reports.append({
            "delta": rep.delta, "A": rep.a_value, "B": rep.b_value,
            "R": rep.r_value, "bound": rep.r_bound, "ratio": rep.ratio,
            "identity_rel_err": rep.identity_rel_err,
        })
    _emit({"level": args.level, "reports": reports})


def cmd_sweep(args):
    with open(args.spec, encoding="utf-8") as fh:
        spec = sweep.SweepSpec.from_json(json.load(fh))
    _, text = sweep.run_sweep(spec)
    if not spec.output:
        sys.stdout.write(text)


def build_parser():
    ap = argparse.ArgumentParser(prog="leblab", description=__doc__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p, beta=True, n=True):
        p.add_argument("--alpha", type=float, required=True)
        p.add_argument("--r", type=float, required=True)
        if beta:
            p.add_argument("--beta", type=float, default=0.0)
        if n:
            p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("thresholds")
    common(p, n=False)
    p.add_argument("--p", type=float, default=None)
    p.add_argument("--ceiling", type=int, default=None)
    p.set_defaults(fn=cmd_thresholds)

    p = sub.add_parser("kernel")
    common(p)
    p.add_argument("--t", type=float, nargs="+", required=True)
    p.add_argument("--envelope", action="store_true")
    p.set_defaults(fn=cmd_kernel)

    p = sub.add_parser("zeros")
    common(p)
    p.add_argument("--method", choices=["brackets", "phase", "grid", "auto", "both"], default="auto")
    p.set_defaults(fn=cmd_zeros)

    p = sub.add_parser("norm")
    common(p)
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(fn=cmd_norm)

    p = sub.add_parser("lebesgue")
    p.add_argument("--nmax", type=int, required=True)
    p.set_defaults(fn=cmd_lebesgue)

    p = sub.add_parser("monotone")
    common(p, n=False)
    p.add_argument("--mmax", type=int, default=12)
    p.add_argument("--kmax", type=int, default=200)
    p.set_defaults(fn=cmd_monotone)

    p = sub.add_parser("bestapprox")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", required=True)
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(fn=cmd_bestapprox)

    p = sub.add_parser("rho")
    common(p)
    p.add_argument("--phi", required=True)
    p.add_argument("--x", type=float, nargs="*", default=None)
    p.add_argument("--supgrid", type=int, default=1024)
    p.set_defaults(fn=cmd_rho)

    p = sub.add_parser("extremal")
    common(p)
    p.add_argument("--level", type=float, default=1.0)
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--auto-delta", action="store_true")
    p.add_argument("--sweep", type=int, default=0)
    p.set_defaults(fn=cmd_extremal)

    p = sub.add_parser("sweep")
    p.add_argument("--spec", required=True)
    p.set_defaults(fn=cmd_sweep)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        args.fn(args)
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 2
    except NUMERIC_STALL_ERRORS as exc:
        print(f"numeric stall: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
