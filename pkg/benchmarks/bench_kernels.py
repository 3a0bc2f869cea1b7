#!/usr/bin/env python3
"""Timing comparison of the compiled and pure-numpy kernel backends.

The Monte-Carlo engine spends its time in four small-matrix kernels; this
script times each one on workload-shaped inputs for both backends, plus
one end-to-end trial pipeline under each backend via HYBRIDMIMO_KERNELS.

Usage: python benchmarks/bench_kernels.py [--repeats N]
"""

import argparse
import subprocess
import sys
import time

import numpy as np

from hybridmimo._kernels import _pykernels

try:
    from hybridmimo._kernels import _cykernels
except ImportError:
    _cykernels = None


def timeit(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_case(name, make_args, calls, repeats):
    args = make_args()
    rows = {}
    for label, impl in (("python", _pykernels), ("cython", _cykernels)):
        if impl is None:
            rows[label] = None
            continue
        fn = getattr(impl, name)

        def run():
            for a in args:
                fn(*a)

        run()  # warm up
        rows[label] = timeit(run, repeats) / (len(args) * calls)
    return rows


def pipeline_seconds(backend, trials=300):
    code = (
        "import time, hybridmimo as hm;"
        "sc = hm.ScenarioConfig(m=64, k=8, structure='sub', snr_db=(25.0,), b1=3, b2=8,"
        f" codebook='corr', trials={trials}, master_seed=3);"
        "t = time.perf_counter(); hm.run_scenario(sc);"
        "print(time.perf_counter() - t)"
    )
    out = subprocess.run(
        [sys.executable, "-c", code],
        env={"HYBRIDMIMO_KERNELS": backend, "PATH": "/usr/bin:/bin", "HOME": "/tmp"},
        capture_output=True,
        text=True,
        check=True,
    )
    return float(out.stdout.strip()) / trials


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()
    rng = np.random.default_rng(0)

    def phases_args():
        return [(rng.uniform(0, 2 * np.pi, 64 * 8), 3) for _ in range(64)]

    def gauss_args():
        out = []
        for _ in range(256):
            a = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
            out.append((a + 3 * np.eye(8),))
        return out

    def jacobi_args():
        out = []
        for _ in range(128):
            b = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
            out.append((b @ b.conj().T,))
        return out

    def match_args():
        out = []
        for _ in range(128):
            cb = rng.standard_normal((1024, 8)) + 1j * rng.standard_normal((1024, 8))
            g = rng.standard_normal(8) + 1j * rng.standard_normal(8)
            out.append((cb, g))
        return out

    cases = [
        ("quantize_phases", phases_args, 512, "512 angles"),
        ("gauss_inverse", gauss_args, 1, "8x8 inverse"),
        ("jacobi_eigh", jacobi_args, 1, "8x8 eigendecomposition"),
        ("best_match", match_args, 1, "1024x8 codebook scan"),
    ]
    print(f"{'kernel':<24} {'unit':<24} {'python':>12} {'cython':>12} {'speedup':>9}")
    for name, make_args, calls, unit in cases:
        rows = bench_case(name, make_args, calls, args.repeats)
        py = rows["python"]
        cy = rows["cython"]
        cy_txt = f"{cy * 1e6:9.2f} us" if cy is not None else "   missing"
        speed = f"{py / cy:8.1f}x" if cy else "      n/a"
        print(f"{name:<24} {unit:<24} {py * 1e6:9.2f} us {cy_txt:>12} {speed:>9}")

    print("\nend-to-end trial pipeline (sub, M=64, K=8, B1=3, corr B2=8):")
    for backend in ("py", "c"):
        if backend == "c" and _cykernels is None:
            continue
        label = "python" if backend == "py" else "cython"
        secs = pipeline_seconds(backend)
        print(f"  {label:<8} {secs * 1e3:8.3f} ms/trial")


if __name__ == "__main__":
    main()
