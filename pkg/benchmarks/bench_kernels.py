"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--weights 40 60 80] [--repeat 3]

Times ``rref`` on the symmetry systems that ``solve_fm_space`` builds, the
two-variable ``convolve`` used by the Jacobi layer, and the end-to-end
``compute_siegel_space`` run (in a subprocess per backend, so each run starts
with cold caches). Both kernels must return identical results; the script
checks that before reporting any timing.
"""
import argparse
import os
import subprocess
import sys
import time

from siegelfj import _backend, _pykernels
from siegelfj.formal_fj import build_symmetry_system, precision_floor
from siegelfj.jacobi import jacobi_basis, weak_generators
from siegelfj.linalg import _encode, _positions


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - start)
    return min(times), result


def symmetry_rows(k):
    prec = precision_floor(k)
    system = build_symmetry_system(k, [jacobi_basis(k, m, prec) for m in range(prec)])
    pos = _positions(system.unknowns)
    return [_encode(r, pos) for r in system.rows], len(system.unknowns)


def pipeline_seconds(k, pure):
    env = dict(os.environ, SIEGELFJ_PURE_PYTHON="1" if pure else "")
    code = ("import time; from siegelfj.formal_fj import compute_siegel_space as c; "
            f"t = time.perf_counter(); c({k}); print(time.perf_counter() - t)")
    out = subprocess.run([sys.executable, "-c", code], env=env, check=True,
                         capture_output=True, text=True)
    return float(out.stdout)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--weights", type=int, nargs="+", default=[40, 60, 80])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    if not _backend.compiled_available():
        sys.exit("compiled kernels are not built; run `pip install -e . --no-build-isolation`")
    from siegelfj import _ckernels

    rows = []
    for k in args.weights:
        system, nunknowns = symmetry_rows(k)
        tp, rp = best_of(lambda: _pykernels.rref(system), args.repeat)
        tc, rc = best_of(lambda: _ckernels.rref(system), args.repeat)
        assert rp == rc, f"rref differs at k = {k}"
        rows.append((f"rref  k={k} ({len(system)}x{nunknowns})", tp, tc))

    prec = 12
    phi_m2, phi_0 = weak_generators(prec)
    f, g = list(phi_0.coeffs), list(phi_m2.coeffs)
    tp, _ = best_of(lambda: [_pykernels.convolve(f, g, prec) for _ in range(50)], args.repeat)
    tc, _ = best_of(lambda: [_ckernels.convolve(f, g, prec) for _ in range(50)], args.repeat)
    assert _pykernels.convolve(f, g, prec) == _ckernels.convolve(f, g, prec)
    rows.append((f"convolve x50 (B={prec})", tp, tc))

    for k in args.weights:
        rows.append((f"compute_siegel_space({k})", pipeline_seconds(k, True),
                     pipeline_seconds(k, False)))

    width = max(len(name) for name, _, _ in rows)
    print(f"{'kernel':<{width}}  {'python s':>9}  {'cython s':>9}  {'speedup':>7}")
    for name, tp, tc in rows:
        print(f"{name:<{width}}  {tp:9.3f}  {tc:9.3f}  {tp / tc:6.1f}x")


if __name__ == "__main__":
    main()
