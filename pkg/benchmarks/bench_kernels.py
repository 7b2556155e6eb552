"""Benchmark the compiled quadrature kernels against the numpy fallback.

The backend is chosen at import time, so each side runs in a fresh
subprocess: the child sets NHQUBIT_FORCE_PYTHON for the fallback and
times the bath integrals on the caption parameters.

Usage: python benchmarks/bench_kernels.py [--repeats N]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

CHILD = r"""
import json, time
import numpy as np
from nhqubit import bath
from nhqubit._backend import BACKEND

params = bath.BathParams(j0=1.0, omega_c=1.0, mu=-0.5, beta=0.5)
ts = np.linspace(0.0, 20.0, 201)[1:]

def sweep():
    bath.clear_cache()
    for t in ts:
        bath.gamma(float(t), params)
        bath.omega1(float(t), 0.86, params)
        bath.gamma_rate(float(t), params)

sweep()  # warm-up
best = float("inf")
for _ in range(REPEATS):
    start = time.perf_counter()
    sweep()
    best = min(best, time.perf_counter() - start)
print(json.dumps({"backend": BACKEND, "seconds": best}))
"""


def run_side(force_python: bool, repeats: int) -> dict:
    env = dict(os.environ)
    if force_python:
        env["NHQUBIT_FORCE_PYTHON"] = "1"
    else:
        env.pop("NHQUBIT_FORCE_PYTHON", None)
    code = CHILD.replace("REPEATS", str(repeats))
    out = subprocess.run(
        [sys.executable, "-c", code], env=env, capture_output=True, text=True
    )
    if out.returncode != 0:
        raise RuntimeError(out.stderr)
    return json.loads(out.stdout.strip().splitlines()[-1])


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=3,
                        help="timing repeats per backend (best is kept)")
    args = parser.parse_args()

    results = [run_side(False, args.repeats), run_side(True, args.repeats)]
    for r in results:
        print(f"{r['backend']:8s} {r['seconds'] * 1e3:9.1f} ms "
              "(200-point gamma/omega1/gamma_rate sweep)")
    if results[0]["backend"] != results[1]["backend"]:
        speedup = results[1]["seconds"] / results[0]["seconds"]
        print(f"speedup: {speedup:.2f}x ({results[0]['backend']} over "
              f"{results[1]['backend']})")
    else:
        print("compiled backend unavailable; both runs used the fallback")


if __name__ == "__main__":
    main()
