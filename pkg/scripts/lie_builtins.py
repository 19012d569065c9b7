"""Cohomology dimensions and lie-alpha verdicts for the Lie builtins."""
import sys

from shukla.library import BUILTINS, builtin
from shukla.lie import lie_cohomology, lie_compare
from shukla.scalars import FieldSpec


def main(field="Q"):
    f = FieldSpec.parse(field)
    for name in BUILTINS:
        b = builtin(name, f)
        if not b.is_lie:
            continue
        dims = lie_cohomology(b.A, b.L, b.M, N=4)[0].dims()
        verdicts = [e.verdict() for e in lie_compare(b.A, b.L, b.M, N=4).entries]
        print(f"{name:>15}  H = {dims}  alpha: {verdicts}")


if __name__ == "__main__":
    main(*sys.argv[1:])
