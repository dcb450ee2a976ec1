"""Time the compiled kernels against the pure-Python ones.

    python benchmarks/bench_kernels.py [--repeat N]

Kernel-level timings call both modules in-process on identical inputs.  The
end-to-end timing runs a Hashimoto-route computation on a randomly weighted
K4 in two child processes, one with QZETA_PURE_PYTHON=1.
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from qzeta import kernels, sampling
from qzeta.graph import complete_graph
from qzeta.quaternion import ONE, ZERO, Quaternion
from qzeta.series import GAUSSIAN
from qzeta.smatrix import psi_t
from qzeta.zeta import hashimoto_matrix

END_TO_END = """
import random, time
from qzeta import sampling
from qzeta.graph import complete_graph
from qzeta.zeta import zeta_hashimoto
G = sampling.arc_weights(complete_graph(4), random.Random(0))
start = time.perf_counter()
for _ in range({repeat}):
    zeta_hashimoto(G, {order})
print((time.perf_counter() - start) / {repeat})
"""


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def kernel_cases(order):
    rng = random.Random(1)
    a = [sampling.quaternion(rng) for _ in range(order + 1)]
    b = [sampling.quaternion(rng) for _ in range(order + 1)]
    a[0] = Quaternion.one()
    qzero = Quaternion.zero()

    G = sampling.arc_weights(complete_graph(4), rng)
    P = psi_t(hashimoto_matrix(G, 8)).astype(GAUSSIAN)
    n = P.rows
    re = [[[c.re for c in e.coeffs] for e in row] for row in P.entries]
    im = [[[c.im for c in e.coeffs] for e in row] for row in P.entries]

    def det(mod):
        return lambda: mod.det_complex([[list(x) for x in row] for row in re],
                                       [[list(x) for x in row] for row in im], n, 8, ZERO, ONE)

    return {
        f"mul_trunc quaternion, T={order}": lambda mod: (lambda: mod.mul_trunc(a, b, order, qzero)),
        f"inv_trunc quaternion, T={order}": lambda mod: (lambda: mod.inv_trunc(a, order, Quaternion.one(), qzero)),
        f"det_complex {n}x{n}, T=8": det,
    }


def end_to_end(order, repeat, pure):
    env = dict(os.environ)
    if pure:
        env["QZETA_PURE_PYTHON"] = "1"
    else:
        env.pop("QZETA_PURE_PYTHON", None)
    code = END_TO_END.format(repeat=repeat, order=order)
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--order", type=int, default=24, help="series length for the 1-D kernels")
    args = parser.parse_args()

    compiled = kernels.compiled()
    if compiled is None:
        print("compiled kernels are not built; reinstall with Cython available")
        return 1
    print(f"{'case':40} {'python':>10} {'cython':>10} {'speedup':>8}")
    for name, make in kernel_cases(args.order).items():
        py = best(make(kernels.pure), args.repeat)
        cy = best(make(compiled), args.repeat)
        print(f"{name:40} {py * 1e3:9.2f}ms {cy * 1e3:9.2f}ms {py / cy:7.2f}x")
    py = end_to_end(8, args.repeat, pure=True)
    cy = end_to_end(8, args.repeat, pure=False)
    print(f"{'hashimoto route, weighted K4, T=8':40} {py * 1e3:9.2f}ms {cy * 1e3:9.2f}ms {py / cy:7.2f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
