"""Compare the compiled and pure-Python firing kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--json]

Each case explores the full reachable state space of a generated net from a
fixed initial marking; both backends must return identical results.
"""

import argparse
import json
import statistics
import time

from netdecomp import kernels
from netdecomp.families import gen_family

CASES = [
    ("clique(6)", ["0", "1", "2"]),
    ("clique(8)", ["0", "2", "4", "6"]),
    ("subset(8)", ["S"]),
    ("grid(4)", ["g0_0", "g1_1", "g2_2"]),
    ("grid(5)", ["g0_0", "g0_2", "g2_0", "g4_4"]),
    ("tlambda(2,4)", ["v"]),
    ("tlambda(3,3)", ["v"]),
]


def timed(fn, repeat):
    samples = []
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples), result


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    if kernels.BACKEND != "cython":
        print(
            "compiled kernels are not available; build with `pip install -e . --no-build-isolation`"
        )
        return 1
    rows = []
    for spec, initial in CASES:
        net = gen_family(spec)
        masks = net.masks
        x0 = net.marking_mask(initial)
        t_py, r_py = timed(
            lambda m=masks, x=x0: kernels.explore(m, x, "python"), args.repeat
        )
        t_c, r_c = timed(lambda m=masks, x=x0: kernels.explore(m, x), args.repeat)
        if r_py != r_c:
            raise SystemExit(f"backends disagree on {spec}")
        rows.append(
            {
                "case": spec,
                "states": len(r_c[0]),
                "edges": len(r_c[1]),
                "python_s": t_py,
                "compiled_s": t_c,
                "speedup": t_py / t_c if t_c else float("inf"),
            }
        )
    if args.json:
        print(json.dumps(rows, indent=2))
        return 0
    print(
        f"{'case':<14}{'states':>8}{'edges':>10}{'python s':>12}{'compiled s':>12}{'speedup':>9}"
    )
    for r in rows:
        print(
            f"{r['case']:<14}{r['states']:>8}{r['edges']:>10}"
            f"{r['python_s']:>12.4f}{r['compiled_s']:>12.4f}{r['speedup']:>8.1f}x"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
