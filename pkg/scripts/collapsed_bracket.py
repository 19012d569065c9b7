"""Compare the two readings of the bracket on A^{(x)p} (x) L.

The "tensor" bracket multiplies the A-factors slot by slot; the "collapsed"
one multiplies them all into a single scalar. Only the first gives a
bicomplex once A acts nontrivially on L.
"""
from shukla.library import aff2_k, dual_numbers, heisenberg_k, lie_extend, trivial_lie_module
from shukla.lie import LieData, assemble_lie, collapsed_bracket_failure
from shukla.bicomplex import check_identities
from shukla.scalars import QQ


def main():
    A = dual_numbers(QQ)
    for name, make in (("aff2", aff2_k), ("heisenberg", heisenberg_k)):
        br, labels = make(QQ)
        L = lie_extend(A, br, labels)
        M = trivial_lie_module(A, L)
        bad = collapsed_bracket_failure(A, L, M, N=3)
        res = check_identities(assemble_lie(LieData(A, L, M), N=3, check=False), raise_on_failure=False)
        ok = res["dd"] and res["vv"] and (res["commute"] or res["anticommute"])
        print(f"A = K[eps], L = A (x) {name}: collapsed fails at {bad or 'none'}; tensor bracket ok = {ok}")


if __name__ == "__main__":
    main()
