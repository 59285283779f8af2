"""Benchmark: compiled closure kernel vs the pure-Python fallback.

Runs the same closures through both kernels in-process and prints a
timing table.  Usage: python benchmarks/bench_closure.py [--repeat N]
"""

from __future__ import annotations

import argparse
import time

from polywythoff import _closure_py, kernels
from polywythoff.fixtureio import builtin_fixture
from polywythoff.modred import reduce_mod_p, rescale
from polywythoff.ttgroup import parse_diagram

try:
    from polywythoff import _closurekernel
except ImportError:
    _closurekernel = None


def perm_cases():
    for name in ("tomotope.tt", "m66_240a.tt", "d4.tt"):
        fx = builtin_fixture(name)
        yield name, [g.images for g in fx.gens]


def mat_cases():
    d = parse_diagram("tail=[3] triangle=(4,inf,2)")
    sys_ = rescale(d, (1, 1, 2, 4))
    for p in (2, 3, 5, 7):
        spec = reduce_mod_p(sys_, p)
        yield f"star mod {p}", [g.entries for g in spec.generators], spec.generators[0].dim, p


def _run(fn):
    t0 = time.perf_counter()
    out = fn()
    dt = time.perf_counter() - t0
    return dt, len(out[0])


def bench(name, pure_fn, fast_fn, repeat):
    dt_pure = min(_run(pure_fn)[0] for _ in range(repeat))
    order = _run(pure_fn)[1]
    line = f"{name:<18} order {order:>7}  pure {dt_pure * 1e3:9.2f} ms"
    if fast_fn is not None:
        dt_fast = min(_run(fast_fn)[0] for _ in range(repeat))
        line += f"  compiled {dt_fast * 1e3:9.2f} ms  speedup {dt_pure / dt_fast:6.1f}x"
    print(line)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    print(f"active kernel: {kernels.KERNEL}")
    cap = 10**7
    for name, gens in perm_cases():
        bench(
            name,
            lambda: _closure_py.close_perms(gens, cap),
            (lambda: _closurekernel.close_perms(gens, cap)) if _closurekernel else None,
            args.repeat,
        )
    for name, gens, dim, p in mat_cases():
        bench(
            name,
            lambda: _closure_py.close_mats(gens, dim, p, cap),
            (lambda: _closurekernel.close_mats(gens, dim, p, cap)) if _closurekernel else None,
            args.repeat,
        )


if __name__ == "__main__":
    main()
