"""Time the compiled kernels against the pure-Python fallback.

Each configuration runs in a fresh interpreter so the environment flag takes
effect at import time.  Compilation (or cache loading) happens in a warm-up
call that is not timed.

    python benchmarks/bench_kernels.py --rows 6 --repeat 3
"""
import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
from shapewilf import _kernels
from shapewilf.core import pop_Pk, pop_Qk
from shapewilf.enumeration import shapes_with_transversals
from shapewilf.patterns import count_avoiders
from shapewilf.verify import verify_shape

rows, repeat = int(sys.argv[1]), int(sys.argv[2])
shapes = list(shapes_with_transversals(rows))
count_avoiders(shapes[0], pop_Pk(3))

def counts():
    return [count_avoiders(s, p(k)) for s in shapes for k in (3, 4) for p in (pop_Pk, pop_Qk)]

def sweep():
    return [verify_shape(s, 4, lemmas=False).count_P for s in shapes]

out = {"numba": _kernels.USE_NUMBA}
for name, fn in (("count_avoiders", counts), ("verify_shape", sweep)):
    best = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    out[name] = {"seconds": best, "checksum": sum(result)}
print(json.dumps(out))
"""


def run(rows, repeat, pure):
    env = dict(os.environ)
    env.pop("SHAPEWILF_NO_NUMBA", None)
    if pure:
        env["SHAPEWILF_NO_NUMBA"] = "1"
    res = subprocess.run(
        [sys.executable, "-c", WORKER, str(rows), str(repeat)],
        env=env, capture_output=True, text=True, check=True,
    )
    return json.loads(res.stdout)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--rows", type=int, default=6)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    compiled = run(args.rows, args.repeat, pure=False)
    pure = run(args.rows, args.repeat, pure=True)
    print(f"shapes with {args.rows} rows, best of {args.repeat}")
    print(f"{'task':16s} {'numba s':>10s} {'python s':>10s} {'speedup':>8s}")
    for task in ("count_avoiders", "verify_shape"):
        a, b = compiled[task], pure[task]
        if a["checksum"] != b["checksum"]:
            sys.exit(f"{task}: results differ between compiled and pure paths")
        print(f"{task:16s} {a['seconds']:10.4f} {b['seconds']:10.4f} {b['seconds'] / a['seconds']:7.1f}x")
    if not compiled["numba"]:
        print("note: numba was not active in the compiled run")


if __name__ == "__main__":
    main()
