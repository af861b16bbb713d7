#!/usr/bin/env python3
"""Character scans and invariance checks across the built-in diagram zoo.

For each diagram and parameter, scans a family of dominant weights, lists
every character found, and verifies braid invariance of the character plus
relative Weyl invariance of the shifted-pair restriction.
"""

import time

from qspherical import Field, SatakeDatum, build_simple, root_datum
from qspherical.characters import (akin_character, dual_spherical_vector,
                                   find_spherical_lines)
from qspherical.qsp import (Parameter, chi_shift_coideal, coideal_generators,
                            distinguished_parameter)
from qspherical.quasik import wz_character_check
from qspherical.scalars import parse_scalar
from qspherical.spherical import MatrixCoefficient, is_weyl_invariant, \
    restrict_torus

FIELD = Field(2)


def zoo():
    ai1 = SatakeDatum(root_datum("A", 1), (), (0,))
    aiii3 = SatakeDatum(root_datum("A", 2), (), (1, 0))
    aiii3_sl4 = SatakeDatum(root_datum("A", 3), (), (2, 1, 0))
    aii3 = SatakeDatum(root_datum("A", 3), (0, 2), (0, 1, 2))
    half = parse_scalar("q^(1/2)", FIELD)
    yield ("split rank one", ai1, distinguished_parameter(ai1, FIELD),
           [(n,) for n in range(5)])
    yield ("quasi-split sl3", aiii3, Parameter(aiii3, {0: half, 1: half}),
           [(1, 0), (0, 1), (1, 1)])
    yield ("sl4 outer involution", aiii3_sl4,
           Parameter(aiii3_sl4, {0: FIELD.one, 1: FIELD.q.inverse(), 2: FIELD.one}),
           [(0, 1, 0)])
    yield ("sl4 black outer nodes", aii3, Parameter(aii3, {1: FIELD.q}),
           [(0, 1, 0), (0, 2, 0)])


def main():
    for name, satake, param, weights in zoo():
        print(f"== {name} ==")
        for lam in weights:
            start = time.time()
            module = build_simple(satake.datum, lam, FIELD)
            gens = coideal_generators(param, module)
            lines = find_spherical_lines(module, gens, param)
            print(f"  L{lam}: {len(lines)} line(s), dim {module.dim}")
            for line in lines:
                braid_ok = all(
                    wz_character_check(line, i, param, gens)[0]
                    for i in satake.relative_orbit_representatives())
                shifted = chi_shift_coideal(param, line.character)
                akin = akin_character(line.character, param)
                dual = dual_spherical_vector(
                    module, coideal_generators(shifted, module),
                    akin.b_values, module.lam)
                table = restrict_torus(
                    MatrixCoefficient(module, dual, line.vector), satake)
                inv, _ = is_weyl_invariant(table, satake)
                labels = {i + 1: l for i, l in line.character.labels.items()}
                print(f"    labels {labels}: braid {braid_ok}, weyl {inv}"
                      f" ({time.time() - start:.2f}s)")


if __name__ == "__main__":
    main()
