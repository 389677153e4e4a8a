#!/usr/bin/env python3
"""Time the compiled quadrature core against the numpy fallback.

Both backends are exercised in fresh subprocesses (the choice is made at
import time) on the same workload: single kernel evaluations across argument
scales plus one chamber sweep.  Usage: python benchmarks/compare_backends.py
"""

import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, time
import dunkl_a2 as d

def run():
    out = {}
    pts = [((1.0 + 0.1 * i, 0.2, -1.2 - 0.1 * i), (2.0, 0.5, -2.5), 0.8) for i in range(10)]
    pts += [((8.0, 1.0 + 0.1 * i, -9.0 - 0.1 * i), (7.0, 2.0, -9.0), 1.5) for i in range(10)]
    pts += [((20.0, 4.0, -24.0), (18.0 + i, 3.0, -21.0 - i), 2.0) for i in range(5)]
    for X, lam, k in pts:  # warm rule caches so timings measure the core
        d.ek(X, lam, k)
    d.ratio_sweep(d.Chamber.C231, 10.0, 8, 1.0)
    t0 = time.perf_counter()
    for _ in range(3):
        for X, lam, k in pts:
            d.ek(X, lam, k)
    out["eval_ms"] = (time.perf_counter() - t0) / (3 * len(pts)) * 1e3
    t0 = time.perf_counter()
    s = d.ratio_sweep(d.Chamber.C231, 10.0, 8, 1.0)
    out["sweep_s"] = time.perf_counter() - t0
    out["sweep_spread"] = s.spread
    out["backend"] = d.backend_name()
    print(json.dumps(out))

run()
"""


def run_one(force_numpy: bool) -> dict:
    env = dict(os.environ)
    env.pop("DUNKL_A2_FORCE_NUMPY", None)
    if force_numpy:
        env["DUNKL_A2_FORCE_NUMPY"] = "1"
    res = subprocess.run(
        [sys.executable, "-c", WORKLOAD], env=env, capture_output=True, text=True, check=True
    )
    return json.loads(res.stdout.strip().splitlines()[-1])


def main():
    rows = [run_one(force_numpy=False), run_one(force_numpy=True)]
    if rows[0]["backend"] == rows[1]["backend"]:
        print("compiled core unavailable; both runs used the numpy fallback")
    print(f"{'backend':>10} {'ms/eval':>10} {'sweep s':>10}")
    for r in rows:
        print(f"{r['backend']:>10} {r['eval_ms']:>10.2f} {r['sweep_s']:>10.2f}")
    if rows[0]["backend"] != rows[1]["backend"]:
        print(f"speedup: {rows[1]['eval_ms'] / rows[0]['eval_ms']:.2f}x per eval, "
              f"{rows[1]['sweep_s'] / rows[0]['sweep_s']:.2f}x per sweep")
    drift = abs(rows[0]["sweep_spread"] - rows[1]["sweep_spread"])
    print(f"sweep spread agreement across backends: |diff| = {drift:.3e}")


if __name__ == "__main__":
    main()
