"""Parameter sweeps with deterministic, diff-stable report emission.

Grid points are evaluated concurrently; records are buffered and
written by a single writer in lexicographic spec order, with failures
captured per record so a bad grid point never aborts the sweep.
"""

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .errors import DomainError
from .params import KernelParams, threshold_set, validate_params

TASKS = ("thresholds", "zeros", "norm", "gamma-track", "lebesgue", "extremal", "monotone")


@dataclass
class SweepSpec:
    alphas: list
    rs: list
    betas: list
    ns: list
    tasks: list
    output: str | None = None
    fmt: str = "csv"
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        for t in self.tasks:
            if t not in TASKS:
                raise DomainError(f"unknown task {t!r}")
        if self.fmt not in ("csv", "json"):
            raise DomainError(f"format must be csv or json, got {self.fmt!r}")
        for a in self.alphas:
            for r in self.rs:
                for b in self.betas:
                    validate_params(a, r, b)
        for n in self.ns:
            if int(n) < 1:
                raise DomainError(f"n must be positive, got {n}")

    @classmethod
    def from_json(cls, d):
        return cls(
            alphas=list(d.get("alphas", [1.0])),
            rs=list(d.get("rs", [0.5])),
            betas=list(d.get("betas", [0.0])),
            ns=[int(n) for n in d.get("ns", [8])],
            tasks=list(d.get("tasks", ["norm"])),
            output=d.get("output"),
            fmt=d.get("format", "csv"),
            options=dict(d.get("options", {})),
        )

    def grid(self):
        for a in self.alphas:
            for r in self.rs:
                for b in self.betas:
                    for n in self.ns:
                        for t in self.tasks:
                            yield (float(a), float(r), float(b), int(n), t)


def _run_point(alpha, r, beta, n, task, options):
    from . import extremal as ext_mod
    from . import norms, sequences, zeros

    p = KernelParams(alpha, r, beta)
    if task == "thresholds":
        ts = threshold_set(p)
        return {"n1": ts.n1, "n_star": ts.n_star,
                "n0_p1": ts.n0_for_p[1.0], "n0_pinf": ts.n0_for_p[math.inf],
                "exact": ts.exact}
    if task == "zeros":
        zs = zeros.locate_zeros(p, n, tol=float(options.get("zero_tol", 1e-9)))
        return {"count": int(zs.zeros.shape[0]), "alternation_ok": zs.alternation_ok,
                "method": zs.method}
    if task in ("norm", "gamma-track"):
        rep = norms.l1_norm_tail_kernel(p, n)
        if task == "gamma-track":
            return {"gamma_star": rep.gamma_star, "theta": rep.theta}
        return {"l1_scaled": rep.l1_norm_scaled, "principal": rep.principal,
                "gamma_star": rep.gamma_star, "theta": rep.theta,
                "n_ge_n1": rep.n_ge_n1}
    if task == "lebesgue":
        lc, defect = norms.lebesgue_constant(n)
        return {"lebesgue": lc, "defect": defect}
    if task == "extremal":
        rep = ext_mod.verify_equality_case(p, n, float(options.get("level", 1.0)))
        return {"A": rep.a_value, "B": rep.b_value, "R": rep.r_value,
                "bound": rep.r_bound, "ratio": rep.ratio}
    if task == "monotone":
        cert = sequences.check_abs_monotone(
            p, int(options.get("mmax", 12)), int(options.get("kmax", 100)))
        return {"passed": cert.passed, "min_signed": cert.min_signed_difference}
    raise DomainError(f"unknown task {task!r}")


def run_sweep(spec: SweepSpec, max_workers=2):
    """Evaluate the grid and return the records; write the artifact if
    an output path is set.  Identical specs produce identical bytes."""
    points = list(spec.grid())

    def work(pt):
        a, r, b, n, task = pt
        base = {"alpha": a, "r": r, "beta": b, "n": n, "task": task}
        try:
            base.update(_run_point(a, r, b, n, task, spec.options))
            base["error"] = ""
        except Exception as exc:  # crash isolation is the contract
            base["error"] = f"{type(exc).__name__}: {exc}"
        return base

    if max_workers > 1 and len(points) > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            records = list(pool.map(work, points))
    else:
        records = [work(pt) for pt in points]
    text = render(records, spec.fmt)
    if spec.output:
        with open(spec.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return records, text


def _fmt_cell(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(float(v))  # shortest round-trip; strips numpy scalar repr
    return str(v)


def render(records, fmt):
    """Deterministic text artifact: sorted keys, shortest round-trip floats, LF."""
    if fmt == "json":
        return json.dumps(records, sort_keys=True, indent=1) + "\n"
    cols = sorted({k for rec in records for k in rec})
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(cols)
    for rec in records:
        writer.writerow([_fmt_cell(rec.get(c, "")) for c in cols])
    return buf.getvalue()
