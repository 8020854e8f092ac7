"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import timeit

from qtorus import _pykernels

try:
    from qtorus import _ckernels
except ImportError:
    _ckernels = None

MIXED = [[0, 2, 1, 3], [4, 0, 3, 5], [5, 3, 0, 1], [3, 1, 5, 0]]
PAIRS = [[0, 1, 0, 0], [6, 0, 0, 0], [0, 0, 0, 1], [0, 0, 6, 0]]


def workloads():
    rng = random.Random(0)
    vecs = [tuple(rng.randint(-20, 20) for _ in range(4)) for _ in range(120)]
    return {
        "image_count n=4 l=6": lambda k: k.image_count(MIXED, 6),
        "central_box_mask n=4 r=6": lambda k: k.central_box_mask(MIXED, 6, 6),
        # no nonzero central point in the box, so the whole box is scanned
        "first_central_in_box 7^4": lambda k: k.first_central_in_box(PAIRS, 7, [7, 7, 7, 7]),
        "ordering_table 120x120": lambda k: k.ordering_table(MIXED, 6, vecs, vecs),
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    backends = {"python": _pykernels}
    if _ckernels is not None:
        backends["cython"] = _ckernels
    else:
        print("compiled kernels not built; timing the fallback only")
    print(f"{'workload':28} " + " ".join(f"{name:>10}" for name in backends) + "   speedup")
    for label, job in workloads().items():
        if _ckernels is not None:
            assert job(_ckernels) == job(_pykernels), label
        best = {
            name: min(timeit.repeat(lambda k=k: job(k), number=1, repeat=args.repeat))
            for name, k in backends.items()
        }
        row = " ".join(f"{best[name] * 1e3:9.2f}ms" for name in backends)
        ratio = f"{best['python'] / best['cython']:8.1f}x" if "cython" in best else ""
        print(f"{label:28} {row} {ratio}")


if __name__ == "__main__":
    main()
