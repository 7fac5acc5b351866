"""Measure the pure-Python product kernel against the compiled one.

Two views:

* micro: raw ``mul_terms`` calls on dense random inputs, both kernels
  loaded side by side in one process;
* pipeline: a full dual-route section-Hessian computation, run in a
  subprocess per backend because the kernel is bound at import time.

Run:  python3 benchmarks/bench_kernel.py [--repeat N]
"""

from __future__ import annotations

import argparse
import os
import random
import subprocess
import sys
import time
from fractions import Fraction


def random_terms(alphabet, rng, order, density=0.7):
    from crjets import GaussianRational

    out = {}
    width = len(alphabet.names)

    def fill(prefix, remaining):
        if len(prefix) == width:
            if rng.random() <= density:
                coeff = GaussianRational(
                    Fraction(rng.randint(-99, 99), rng.randint(1, 30)),
                    Fraction(rng.randint(-99, 99), rng.randint(1, 30)),
                )
                if not coeff.is_zero():
                    out[alphabet.encode(tuple(prefix))] = coeff
            return
        for e in range(remaining + 1):
            fill(prefix + [e], remaining - e)

    fill([], order)
    return out


def bench_micro(repeat: int) -> list[tuple[str, float]]:
    from crjets import Alphabet
    from crjets import _kernel_py

    kernels = [("python", _kernel_py.mul_terms)]
    try:
        from crjets import _speedups

        kernels.append(("cython", _speedups.mul_terms))
    except ImportError:
        pass

    abc = Alphabet(("x", "y", "z", "w"))
    rng = random.Random(1234)
    a = random_terms(abc, rng, 10)
    b = random_terms(abc, rng, 10)
    rows = []
    for name, mul in kernels:
        best = min(
            _timed(mul, a, b, abc.deg_shift, 10, abc.fits64) for _ in range(repeat)
        )
        rows.append((name, best))
    return rows


def _timed(mul, a, b, shift, cap, fits64) -> float:
    start = time.perf_counter()
    mul(a, b, shift, cap, fits64)
    return time.perf_counter() - start


def run_pipeline() -> float:
    """One dual-route section-Hessian computation on a fixed germ."""
    sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "tests"))
    from germ_corpus import random_central
    from crjets import complexify, phi_determinant, phi_elimination

    germ = random_central(random.Random(5151), nu=2, order=6, degmax=4)
    ch = complexify(germ)
    start = time.perf_counter()
    one = phi_determinant(ch)
    two = phi_elimination(ch)
    elapsed = time.perf_counter() - start
    assert one.entries == two.entries
    return elapsed


def bench_pipeline(repeat: int) -> list[tuple[str, float]]:
    rows = []
    for name, force in (("python", "python"), ("cython", "")):
        env = dict(os.environ)
        if force:
            env["CRJETS_BACKEND"] = force
        else:
            env.pop("CRJETS_BACKEND", None)
        best = None
        for _ in range(repeat):
            proc = subprocess.run(
                [sys.executable, os.path.abspath(__file__), "--pipeline-only"],
                env=env,
                capture_output=True,
                text=True,
                check=True,
            )
            backend, value = proc.stdout.split()
            if name == "cython" and backend != "cython":
                return rows  # compiled kernel not built; skip this row
            t = float(value)
            best = t if best is None else min(best, t)
        rows.append((name, best))
    return rows


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5, help="best-of repetitions")
    parser.add_argument(
        "--pipeline-only",
        action="store_true",
        help="internal: print backend name and one pipeline timing",
    )
    args = parser.parse_args()

    if args.pipeline_only:
        import crjets

        print(crjets.BACKEND, run_pipeline())
        return

    print(f"micro: mul_terms, dense degree-10 inputs in 4 variables, best of {args.repeat}")
    micro = bench_micro(args.repeat)
    _table(micro)

    print(f"\npipeline: dual-route section Hessian (nu=2, order 6), best of {args.repeat}")
    _table(bench_pipeline(args.repeat))


def _table(rows: list[tuple[str, float]]) -> None:
    if not rows:
        print("  (no rows)")
        return
    base = rows[0][1]
    for name, t in rows:
        speedup = "" if t == base else f"  ({base / t:.1f}x vs python)"
        print(f"  {name:<8} {t * 1000:9.3f} ms{speedup}")


if __name__ == "__main__":
    main()
