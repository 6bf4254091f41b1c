#!/usr/bin/env python3
"""Timing comparison of the compiled and interpreted integration kernels.

The kernel backend is chosen at import time (SCHWINGER_NO_NUMBA=1 forces the
pure-Python path), so each backend is timed in its own subprocess.  The first
call per subprocess warms the JIT cache and is excluded from the timings.

Usage:  python3 benchmarks/bench_oracle.py  [--reps N]
"""
import argparse
import json
import os
import subprocess
import sys
import time

CASES = [
    ("boson sauter", "boson", "sauter",
     dict(m=1.0, q=1.0, k_perp=0.5, k_z=1.0), dict(E0=3.0, tau=0.8)),
    ("fermion sauter", "fermion", "sauter",
     dict(m=1.0, q=1.0, k_perp=0.5, k_z=1.0), dict(E0=3.0, tau=0.8)),
    ("boson constant", "boson", "constant",
     dict(m=1.0, q=1.0, k_perp=0.0, k_z=0.5), dict(E0=5.0)),
    ("fermion constant", "fermion", "constant",
     dict(m=1.0, q=1.0, k_perp=1.0, k_z=0.0), dict(E0=5.0)),
]


def _run_cases(reps: int) -> dict:
    from schwinger.fields import FieldProfile, ModeParams, Statistics
    from schwinger.oracle import KERNEL_BACKEND, mode_beta2

    out = {"backend": KERNEL_BACKEND, "cases": {}}
    for name, stat, kind, pk, fk in CASES:
        params = ModeParams(**pk)
        field = (FieldProfile.sauter(fk["E0"], fk["tau"]) if kind == "sauter"
                 else FieldProfile.constant(fk["E0"]))
        statistics = Statistics(stat)
        mode_beta2(params, field, statistics)  # warmup / JIT compile
        best = float("inf")
        for _ in range(reps):
            t0 = time.perf_counter()
            res = mode_beta2(params, field, statistics)
            best = min(best, time.perf_counter() - t0)
        out["cases"][name] = {"seconds": best, "beta2": res.beta2_numeric,
                              "steps": res.steps_used}
    return out


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--reps", type=int, default=5,
                    help="timed repetitions per case (best-of is reported)")
    ap.add_argument("--child", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()

    if args.child:
        json.dump(_run_cases(args.reps), sys.stdout)
        return 0

    results = {}
    for label, extra_env in (("numba", {}), ("python", {"SCHWINGER_NO_NUMBA": "1"})):
        env = dict(os.environ)
        env.pop("SCHWINGER_NO_NUMBA", None)
        env.update(extra_env)
        # interpreted loops are ~two orders slower; fewer reps suffice
        reps = args.reps if label == "numba" else max(1, args.reps // 3)
        proc = subprocess.run(
            [sys.executable, os.path.abspath(__file__), "--child",
             "--reps", str(reps)],
            env=env, capture_output=True, text=True, check=True)
        results[label] = json.loads(proc.stdout)
        if results[label]["backend"] != label:
            print(f"warning: requested {label} backend, got "
                  f"{results[label]['backend']}", file=sys.stderr)

    width = max(len(name) for name, *_ in CASES)
    print(f"{'case':<{width}}  {'numba':>10}  {'python':>10}  {'speedup':>8}")
    for name, *_ in CASES:
        tn = results["numba"]["cases"][name]["seconds"]
        tp = results["python"]["cases"][name]["seconds"]
        bn = results["numba"]["cases"][name]["beta2"]
        bp = results["python"]["cases"][name]["beta2"]
        rel = abs(bn - bp) / max(abs(bn), 1e-300)
        print(f"{name:<{width}}  {tn * 1e3:>8.2f}ms  {tp * 1e3:>8.2f}ms  "
              f"{tp / tn:>7.1f}x", end="")
        print(f"   (values agree to {rel:.1e})" if rel < 1e-9
              else f"   VALUE MISMATCH: {bn!r} vs {bp!r}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
