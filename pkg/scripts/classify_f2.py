"""Exhaustive classification of abelian extensions over F2 for every small builtin shape.

    python scripts/classify_f2.py
"""
import time

from shukla import extensions as ext
from shukla.homology import shukla_cohomology
from shukla.library import (
    base_field,
    character_bimodule,
    dual_numbers,
    k_times_k,
    over_character,
    quotient_k,
    regular_algebra,
    regular_bimodule,
    trunc_poly,
)
from shukla.scalars import Fp


def shapes(f):
    K = base_field(f)
    for aname, A in (("K", K), ("K[e]", dual_numbers(f)), ("KxK", k_times_k(f))):
        Rs = [("K", quotient_k(A)), ("A", regular_algebra(A))]
        if aname == "K":
            Rs.append(("K[x]/x2", over_character(K, trunc_poly(f, 2, "x"))))
        for rname, R in Rs:
            for mname, M in (("K", character_bimodule(R)), ("R", regular_bimodule(R))):
                yield f"{aname:>4} {rname:>8} {mname:>2}", A, R, M


def main():
    f = Fp(2)
    print("   A        R  M   |Z2| |B2| classes dimH2")
    for label, A, R, M in shapes(f):
        t0 = time.perf_counter()
        c = ext.classify_bruteforce(ext.ExtContext(A, R, M))
        h2 = shukla_cohomology(A, R, M, N=3)[0].dim(2)
        flag = "" if c.classes == 2 ** h2 else "  MISMATCH"
        print(f"{label}  {c.z2:>5} {c.b2:>4} {c.classes:>7} {h2:>5}  ({time.perf_counter() - t0:.2f}s){flag}")


if __name__ == "__main__":
    main()
