"""Dimension of the cointegral solution space of M_n^c across characteristics.

The solution space of the linear system for delta is affine; we print its dimension, or
'none' when the system is infeasible.  M_2^c has cointegrals in every characteristic,
including 2, because M_n(k) is separable for every field k.
"""
import argparse
from dataclasses import dataclass

from coringlab.comod_contramod import find_cointegral
from coringlab.exact_linalg import GF, QQ
from coringlab.ring_coring import matrix_coalgebra


@dataclass
class Config:
    sizes: tuple = (1, 2, 3)
    primes: tuple = (2, 3, 5)


def run(cfg: Config):
    fields = [QQ] + [GF(p) for p in cfg.primes]
    rows = []
    for n in cfg.sizes:
        for F in fields:
            r = find_cointegral(matrix_coalgebra(F, n))
            rows.append((n, repr(F), r.info["solution_space_dim"] if r.found else "none"))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=list(Config.sizes))
    ap.add_argument("--primes", type=int, nargs="+", default=list(Config.primes))
    a = ap.parse_args()
    print(f"{'n':>3} {'field':>6} {'dim':>5}")
    for n, f, d in run(Config(tuple(a.sizes), tuple(a.primes))):
        print(f"{n:>3} {f:>6} {d!s:>5}")


if __name__ == "__main__":
    main()
