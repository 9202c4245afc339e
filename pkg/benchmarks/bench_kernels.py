"""Compare the compiled and pure-Python search kernels on the same boxes.

    python3 benchmarks/bench_kernels.py --dims 4 5 6 7 --l 1

Each row runs the full box once per backend, checks that both return the
same survivors and scan count, and reports wall time and speedup.
"""

from __future__ import annotations

import argparse
import time

from wcifano import kernel
from wcifano.enumerate import SearchCaps, run_search


def timed(caps, l, backend):
    start = time.perf_counter()
    res = run_search(caps, l, backend=backend)
    return time.perf_counter() - start, res


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--dims", type=int, nargs="+", default=[4, 5, 6, 7])
    p.add_argument("--max-weight", type=int, default=20)
    p.add_argument("--max-degree", type=int, default=40)
    p.add_argument("--l", type=int, default=1)
    args = p.parse_args(argv)

    if kernel.compiled_search_unit is None:
        raise SystemExit("compiled kernel not built; run `pip install -e . --no-build-isolation`")

    print(f"{'n':>3} {'l':>2} {'scanned':>10} {'survivors':>9} "
          f"{'python s':>9} {'compiled s':>10} {'speedup':>8}")
    for n in args.dims:
        caps = SearchCaps(n, args.max_weight, args.max_degree)
        t_py, py = timed(caps, args.l, "python")
        t_c, c = timed(caps, args.l, "compiled")
        same = (py.scanned == c.scanned
                and [s.cand for s in py.survivors] == [s.cand for s in c.survivors])
        if not same:
            raise SystemExit(f"backends disagree at n={n}")
        print(f"{n:>3} {args.l:>2} {c.scanned:>10} {len(c.survivors):>9} "
              f"{t_py:>9.3f} {t_c:>10.3f} {t_py / max(t_c, 1e-9):>7.1f}x")


if __name__ == "__main__":
    main()
