"""Benchmark the compiled kernel against the pure-Python fallback.

Run as ``python -m tautclass.benchmark``.  Times the integer Bareiss
determinant and rank kernels on random matrices, plus one end-to-end
operation (alternating face-symbol sums in dimension 4) that funnels
through them.
"""

from __future__ import annotations

import random
import time

from . import _kernels
from ._kernels import pure


def _random_matrix(rng, n, bound=99):
    return [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)]


def _time(fn, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def run(sizes=(4, 6, 10), count=2000, seed=0) -> list[dict]:
    backends = [("pure", pure)]
    try:
        from ._kernels import _fast  # type: ignore[attr-defined]

        backends.append(("fast", _fast))
    except ImportError:
        pass
    rows = []
    for n in sizes:
        rng = random.Random(seed)
        mats = [_random_matrix(rng, n) for _ in range(count)]
        entry = {"op": f"det {n}x{n} x{count}"}
        for name, impl in backends:
            entry[name] = _time(lambda impl=impl: [impl.det_int(m) for m in mats])
        rows.append(entry)
        entry = {"op": f"rank {n}x{n} x{count}"}
        for name, impl in backends:
            entry[name] = _time(lambda impl=impl: [impl.rank_int(m, n) for m in mats])
        rows.append(entry)
    rows.append(_end_to_end(seed))
    return rows


def _end_to_end(seed) -> dict:
    import os
    import subprocess
    import sys

    entry = {"op": "euler-boundary n=4 x200 (subprocess)"}
    for name, env_val in (("pure", "1"), ("fast", "")):
        env = dict(os.environ)
        if env_val:
            env["TAUTCLASS_PURE"] = env_val
        else:
            env.pop("TAUTCLASS_PURE", None)
        t0 = time.perf_counter()
        subprocess.run(
            [
                sys.executable,
                "-m",
                "tautclass.cli",
                "verify",
                "euler-boundary",
                "--n",
                "4",
                "--samples",
                "200",
                "--seed",
                str(seed),
            ],
            check=True,
            env=env,
            stdout=subprocess.DEVNULL,
            stderr=subprocess.DEVNULL,
        )
        entry[name] = time.perf_counter() - t0
    return entry


def main() -> None:
    rows = run()
    width = max(len(r["op"]) for r in rows)
    have_fast = any("fast" in r for r in rows)
    print(f"kernel backend selected at import: {_kernels.BACKEND}")
    header = f"{'operation':<{width}}  {'pure (s)':>10}"
    if have_fast:
        header += f"  {'fast (s)':>10}  {'speedup':>8}"
    print(header)
    for r in rows:
        line = f"{r['op']:<{width}}  {r['pure']:>10.4f}"
        if "fast" in r:
            line += f"  {r['fast']:>10.4f}  {r['pure'] / r['fast']:>8.2f}"
        print(line)


if __name__ == "__main__":
    main()
