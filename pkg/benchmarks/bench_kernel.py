"""Compare the compiled and pure-Python kernels on Groebner workloads.

    python3 benchmarks/bench_kernel.py [--repeat N]
"""

import argparse
import time

from singcat import kernel
from singcat.groebner import Ideal, quotient_length
from singcat.poly import GF, QQ, PolyRing


def workloads():
    S = PolyRing(QQ, ["x", "y", "z"])
    x, y, z = S.gens()
    yield "cyclic-3 QQ", Ideal(S, [x + y + z, x * y + y * z + z * x, x * y * z - 1])
    yield "jacobian^3 QQ", Ideal(S, [3 * x ** 2 + y * z, 3 * y ** 2 + x * z, x * y]).power(3)
    T = PolyRing(GF(32003), ["a", "b", "c", "d"])
    a, b, c, d = T.gens()
    yield "cyclic-4 F32003", Ideal(T, [a + b + c + d, a * b + b * c + c * d + d * a,
                                       a * b * c + b * c * d + c * d * a + d * a * b,
                                       a * b * c * d - 1])
    yield "dense F32003", Ideal(T, [a ** 3 + b ** 3 + c ** 3 + a * b * c + d ** 2,
                                    a ** 2 * b - c ** 3 + d ** 3, b ** 4 - a * c ** 2 * d,
                                    d ** 4 - a * b * c])


def run(ideal_fn, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        I = ideal_fn()
        t = time.perf_counter()
        G = I.gb()
        L = quotient_length(I)
        best = min(best, time.perf_counter() - t)
        result = (tuple(map(str, G.basis)), str(L))
    return best, result


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = kernel.available_backends()
    print(f"backends: {', '.join(backends)}")
    print(f"{'workload':<18}" + "".join(f"{b:>12}" for b in backends) + "     speedup")
    for name, I in workloads():
        times, results = [], []
        for b in backends:
            kernel.set_backend(b)
            t, r = run(lambda: Ideal(I.ring, I.generators), args.repeat)
            times.append(t)
            results.append(r)
        assert all(r == results[0] for r in results), f"backends disagree on {name}"
        speed = f"{times[-1] / times[0]:10.2f}x" if len(times) > 1 else ""
        print(f"{name:<18}" + "".join(f"{t * 1000:10.1f}ms" for t in times) + speed)


if __name__ == "__main__":
    main()
