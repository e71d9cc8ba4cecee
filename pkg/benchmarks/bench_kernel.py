"""Compare the compiled and pure-Python feasibility search backends."""
import argparse
import time

from cyclodensity import kernel
from cyclodensity.engine import count_members, is_member, modulus_of


def _sweep(seq, limit, backend):
    start = time.perf_counter()
    # fast=False skips the triangular shortcut so every query reaches the search kernel
    l = modulus_of(seq)
    members = 0
    for n in range(l, limit + 1, l):
        members += is_member(n, seq, backend=backend, fast=False).member
    return members, time.perf_counter() - start


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--limit", type=int, default=10**4)
    args = parser.parse_args()

    backends = ["python"]
    if kernel.BACKEND == "compiled":
        backends.append("compiled")
    else:
        print("compiled backend unavailable; timing python only")

    for seq in ([1, 2, 3, 4, 5], [0, 0, 0, 0, 0, 1], [2, 1]):
        timings = {}
        counts = set()
        for backend in backends:
            members, elapsed = _sweep(seq, args.limit, backend)
            counts.add(members)
            timings[backend] = elapsed
        assert len(counts) == 1, f"backends disagree on {seq}"
        line = f"seq={seq} limit={args.limit} N={counts.pop()}"
        for backend, elapsed in timings.items():
            line += f" {backend}={elapsed:.3f}s"
        if len(timings) == 2:
            line += f" speedup={timings['python'] / timings['compiled']:.1f}x"
        print(line)

    # default path for reference
    start = time.perf_counter()
    count_members([0, 1], args.limit)
    print(f"count_members([0,1], {args.limit}) default path {time.perf_counter() - start:.3f}s")


if __name__ == "__main__":
    main()
