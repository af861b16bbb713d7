#!/usr/bin/env python3
"""Reproduce the two worked spherical-function examples end to end.

Prints the exact restriction tables for the quasi-split sl3 pair on the
vector representation and for the sl4 pair on the exterior square, together
with the shifted-pair tables and the relative Weyl invariance verdicts.
"""

from fractions import Fraction

from qspherical import Field, SatakeDatum, build_simple, root_datum
from qspherical.characters import find_dual_spherical, find_spherical_lines
from qspherical.qsp import Parameter, chi_shift_coideal, coideal_generators
from qspherical.rootdata import _solve_rational
from qspherical.spherical import MatrixCoefficient, is_weyl_invariant, \
    restrict_torus


def sl3_example():
    print("== quasi-split sl3, vector representation ==")
    field = Field(2)
    q = field.q
    datum = root_datum("A", 2)
    satake = SatakeDatum(datum, (), (1, 0))
    c1, c2 = field.one, q
    param = Parameter(satake, {0: c1, 1: c2})
    module = build_simple(datum, (1, 0), field)
    gens = coideal_generators(param, module)
    line = find_spherical_lines(module, gens, param)[0]
    dual = find_dual_spherical(line, gens).normalized_at(module.highest_index)
    table = restrict_torus(MatrixCoefficient(module, dual, line.vector), satake)
    print("spherical vector:", line.vector)
    for n in range(-4, 5):
        print(f"  value at n={n:+d}:", table.evaluate_coords([n]))
    print("invariant before the shift:", is_weyl_invariant(table, satake)[0])
    shifted = restrict_torus(
        MatrixCoefficient(module, line.vector.bar(), line.vector), satake)
    print("shifted-pair values:", shifted.describe()["values"])
    print("invariant after the shift:", is_weyl_invariant(shifted, satake)[0])
    print()


def sl4_example():
    print("== sl4, exterior square of the vector representation ==")
    field = Field(2)
    q = field.q
    datum = root_datum("A", 3)
    satake = SatakeDatum(datum, (), (2, 1, 0))
    param = Parameter(satake, {0: field.one, 1: q.inverse(), 2: field.one})
    module = build_simple(datum, (0, 1, 0), field)
    gens = coideal_generators(param, module)
    basis = satake.y_theta_basis()
    for line in find_spherical_lines(module, gens, param):
        print("labels:", {i + 1: l for i, l in line.character.labels.items()})
        shifted = chi_shift_coideal(param, line.character)
        print("  shifted parameter d:", {i + 1: str(v) for i, v in shifted.c.items()})
        print("  shifted parameter t:", {i + 1: str(v) for i, v in shifted.s.items()})
        table = restrict_torus(
            MatrixCoefficient(module, line.vector.bar(), line.vector), satake)
        print("  restriction:", table.describe()["values"])
        for n, m in [(1, 0), (0, 1), (2, 1)]:
            coords = _solve_rational(
                [[Fraction(b[r]) for b in basis] for r in range(3)],
                [Fraction(x) for x in (m, n, m)])
            print(f"  value at (n={n}, m={m}):", table.evaluate_coords(coords))
        print("  invariant:", is_weyl_invariant(table, satake)[0])
    print()


if __name__ == "__main__":
    sl3_example()
    sl4_example()
