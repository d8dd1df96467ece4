"""Benchmark: compiled vs pure-Python double-double kernels.

Run from the repository root (after `pip install -e .`):

    python3 benchmarks/bench_kernels.py

Times the three kernel primitives at Gram/expansion-shaped sizes plus two
end-to-end workloads, for every importable backend.  The backends compute
bit-identical results; the benchmark asserts that while timing.
"""

from __future__ import annotations

import time

import numpy as np


def _backends():
    out = []
    from fpjacobi import _kernels_py

    out.append(_kernels_py)
    try:
        from fpjacobi import _kernels_c

        out.append(_kernels_c)
    except ImportError:
        print("note: compiled backend not built; timing pure only")
    return out


def _dd_random(rng, n):
    a = rng.standard_normal((4, n))
    a[1] *= 1e-17
    a[3] *= 1e-17
    return a


def _time(fn, *args, repeat=5, min_loops=3):
    # warm up + adaptive loop count
    fn(*args)
    loops = min_loops
    while True:
        t0 = time.perf_counter()
        for _ in range(loops):
            fn(*args)
        dt = time.perf_counter() - t0
        if dt > 0.05 or loops >= 4096:
            break
        loops *= 4
    best = dt / loops
    for _ in range(repeat - 1):
        t0 = time.perf_counter()
        for _ in range(loops):
            fn(*args)
        best = min(best, (time.perf_counter() - t0) / loops)
    return best


def bench_primitives():
    rng = np.random.default_rng(42)
    cases = [
        ("conv_dot 16x16", "conv_dot", (_dd_random(rng, 16), _dd_random(rng, 16), _dd_random(rng, 31))),
        ("conv_dot 41x41", "conv_dot", (_dd_random(rng, 41), _dd_random(rng, 41), _dd_random(rng, 81))),
        ("conv    26x59", "conv", (_dd_random(rng, 26), _dd_random(rng, 59))),
        ("horner  41x101", "horner_many", (_dd_random(rng, 41), np.linspace(0, 1, 101).astype(np.complex128))),
    ]
    backends = _backends()
    print(f"{'kernel':<16}" + "".join(f"{b.BACKEND:>14}" for b in backends)
          + ("       speedup" if len(backends) > 1 else ""))
    for label, fname, args in cases:
        results = []
        times = []
        for b in backends:
            fn = getattr(b, fname)
            results.append(fn(*args))
            times.append(_time(fn, *args))
        if len(results) > 1:
            r0, r1 = results[0], results[1]
            if fname == "conv_dot":
                assert r0 == r1, f"{label}: backends disagree"
            else:
                assert np.array_equal(np.asarray(r0), np.asarray(r1)), \
                    f"{label}: backends disagree"
        row = f"{label:<16}" + "".join(f"{t * 1e6:>12.1f}us" for t in times)
        if len(times) > 1:
            row += f"{times[0] / times[1]:>12.1f}x"
        print(row)


def bench_end_to_end():
    import os
    import subprocess
    import sys

    code = r"""
import time, cmath
import numpy as np
from fpjacobi import kernels
from fpjacobi.basis import JacobiParams, JacobiBasis
from fpjacobi.expansion import chebyshev_fit, expansion_coefficients

t0 = time.perf_counter()
for ab in [(-0.5, -0.5), (2.3, 1.7), (-1.5 + 0.3j, -2.4), (0.5, -1.7 + 0.2j)]:
    JacobiBasis(JacobiParams(*ab), 15).gram_matrix()
t_gram = time.perf_counter() - t0

t0 = time.perf_counter()
basis = JacobiBasis(JacobiParams(1.5 - 0.5j, -1.8), 25)
model = chebyshev_fit(lambda x: cmath.exp(x), 58)
expansion_coefficients(basis, model)
t_exp = time.perf_counter() - t0
print(f"{kernels.BACKEND:>10}: gram(4 sets, n<=15) {t_gram*1e3:8.1f} ms   "
      f"expansion(N=25, M=58) {t_exp*1e3:8.1f} ms")
"""
    print("\nend-to-end workloads:")
    sys.stdout.flush()
    for backend in ("pure", "compiled"):
        env = dict(os.environ, FPJACOBI_KERNELS=backend)
        try:
            subprocess.run([sys.executable, "-c", code], env=env, check=True)
        except subprocess.CalledProcessError:
            print(f"{backend:>10}: unavailable")


if __name__ == "__main__":
    bench_primitives()
    bench_end_to_end()
