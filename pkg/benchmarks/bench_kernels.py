"""Compare the compiled GMP kernel with the pure-Python fallback.

Each backend runs in its own interpreter because the kernel is chosen at
import time. Usage: ``python benchmarks/bench_kernels.py [--repeat N]``.
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, random, time
from fractions import Fraction
from ezdcone.linalg import Mat, rank
from ezdcone.linalg._backend import BACKEND
from ezdcone.algebra import from_monomial_quotient
from ezdcone.cone import EzdContext, mth_verify
from ezdcone.modules import residue_field

def best(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)

rng = random.Random(0)
rows = [[Fraction(rng.randint(-9, 9), rng.randint(1, 5)) if rng.random() < 0.3 else 0
         for _ in range(60)] for _ in range(60)]
A = Mat.from_rows(rows)

def pipeline():
    Q = from_monomial_quotient(["x", "y"], ["x^2", "y^2"])
    ctx = EzdContext(Q, "x", "x", cap=8)
    k = residue_field(Q)
    mth_verify(ctx, k, k)

repeat = int(__import__("sys").argv[1])
print(json.dumps({"backend": BACKEND,
                  "rank_60x60": best(lambda: rank(A), repeat),
                  "product_60x60": best(lambda: A @ A, repeat),
                  "mth_k_k_cap8": best(pipeline, repeat)}))
"""


def run(pure, repeat):
    env = dict(os.environ)
    if pure:
        env["EZDCONE_PURE_PYTHON"] = "1"
    else:
        env.pop("EZDCONE_PURE_PYTHON", None)
    out = subprocess.run([sys.executable, "-c", WORKLOAD, str(repeat)], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args()
    fast, slow = run(False, args.repeat), run(True, args.repeat)
    if fast["backend"] != "compiled":
        print("compiled kernel not available; both runs use pure Python")
    print(f"{'workload':<18}{'compiled (s)':>14}{'python (s)':>14}{'speedup':>10}")
    for key in ("rank_60x60", "product_60x60", "mth_k_k_cap8"):
        a, b = fast[key], slow[key]
        print(f"{key:<18}{a:>14.4f}{b:>14.4f}{b / a:>9.1f}x")


if __name__ == "__main__":
    main()
