"""One-dimensional submodules of the coideal subalgebra inside simple modules.

The candidate eigenvalues on nonsplit nodes come from the closed rank-one
formula with an integer label; all other coideal generators act by zero on
the white part, by the counit on the black part, and by a weight power on
the torus part.  Each candidate value system is solved exactly as a joint
nullspace; multiplicity one is enforced, never assumed.
"""

from __future__ import annotations

import itertools
import warnings
from fractions import Fraction

from . import linalg
from .modules import ModuleVector, SimpleModule
from .qsp import CoidealGenerators, Parameter, coideal_generators, chi_shift_coideal
from .rootdata import SatakeDatum
from .scalars import Field, FieldElem


class MultiplicityViolation(Exception):
    """A value system admitted a solution space of dimension two or more."""


class NoDualLine(Exception):
    """The transposed system has no solution line; complete reducibility of
    the module over the coideal is in doubt."""


class Character:
    """A character of the coideal subalgebra hosted by some simple module."""

    def __init__(self, satake: SatakeDatum, lam, b_values: dict, labels: dict,
                 field: Field):
        self.satake = satake
        self.lam = tuple(lam)
        self.b_values = dict(b_values)
        self.labels = dict(labels)
        self.field = field
        self._torus = {h: field.q_power(Fraction(sum(a * b for a, b in zip(h, self.lam))))
                       for h in satake.theta_fixed_torus_generators()}

    def torus_value(self, h) -> FieldElem:
        if h in self._torus:
            return self._torus[h]
        return self.field.q_power(Fraction(sum(Fraction(a) * b
                                               for a, b in zip(h, self.lam))))

    def value_key(self) -> tuple:
        bs = tuple((i, self.b_values[i]) for i in sorted(self.b_values))
        ts = tuple(sorted(self._torus.items()))
        return (bs, ts)

    def __eq__(self, other):
        return (isinstance(other, Character)
                and self.value_key() == other.value_key())

    def __hash__(self):
        return hash(self.value_key())

    def is_trivial(self) -> bool:
        one = self.field.one
        return (all(not v for v in self.b_values.values())
                and all(v == one for v in self._torus.values()))

    def describe(self) -> dict:
        return {
            "lambda": list(self.lam),
            "l": {str(i + 1): l for i, l in sorted(self.labels.items())},
            "values": {f"B_{i + 1}": str(v) for i, v in sorted(self.b_values.items())},
            "torus": {str(list(h)): str(v) for h, v in sorted(self._torus.items())},
        }


class SphericalLine:
    """A one-dimensional coideal submodule, normalized at the highest weight."""

    def __init__(self, module: SimpleModule, vector: ModuleVector,
                 character: Character):
        self.module = module
        self.vector = vector
        self.character = character


def eigenvalue(c: FieldElem, s: FieldElem, d_i: int, l: int,
               field: Field | None = None) -> FieldElem:
    """Closed rank-one eigenvalue with integer label l.

    (q_i^l - q_i^-l)/2 * sqrt(s^2 + 4 q_i c/(q_i - q_i^-1)^2)
    plus the s-part, which collapses to s (q_i^l + q_i^-l)/2.
    """
    field = field or c.field
    if l == 0:
        return s       # the root enters with coefficient zero
    qi = field.q_power(Fraction(d_i))
    qiinv = qi.inverse()
    disc = s * s + field.rational(4) * qi * c * ((qi - qiinv) ** 2).inverse()
    root = disc.field_sqrt()
    if root is None:
        return None
    half = field.rational(Fraction(1, 2))
    return ((qi ** l - qi ** (-l)) * half * root
            + s * (qi ** l + qi ** (-l)) * half)


def _candidate_values(param: Parameter, i: int, bound: int) -> list:
    """Distinct candidate eigenvalues at a nonsplit node, labels in [-bound, bound]."""
    out = []
    seen = set()
    for l in range(-bound, bound + 1):
        val = eigenvalue(param.c[i], param.s[i], param.satake.datum.d[i], l)
        if val is None:
            warnings.warn(
                f"skipping label {l} at node {i}: eigenvalue root is not a monomial")
            continue
        if val not in seen:
            seen.add(val)
            out.append((val, l))
    out.sort(key=lambda t: (abs(t[1]), -t[1]))
    return out


def find_spherical_lines(module: SimpleModule, gens: CoidealGenerators,
                         param: Parameter) -> list:
    """All one-dimensional coideal submodules of the module.

    Stacks the black annihilation conditions, the torus eigenconditions and
    the white eigenconditions for each candidate value tuple, and keeps the
    one-dimensional joint kernels.
    """
    satake = param.satake
    field = module.field
    lam = module.lam
    datum = satake.datum
    w0lam = datum.act_word_X(datum.w0_word(), lam)
    base_rows = []
    for j in sorted(satake.black):
        base_rows.extend(module.e_mats[j])
        base_rows.extend(module.f_mats[j])
    for h, op in gens.torus:
        target = field.q_power(Fraction(sum(a * b for a, b in zip(h, lam))))
        for r in range(module.dim):
            row = list(op.mat[r])
            row[r] = row[r] - target
            base_rows.append(row)
    node_candidates = []
    nodes = sorted(satake.I_circ)
    for i in nodes:
        if i in satake.I_ns:
            bound = int(lam[i] - w0lam[i])
            node_candidates.append(_candidate_values(param, i, bound))
        else:
            node_candidates.append([(field.zero, None)])
    lines = []
    seen_values = set()
    for combo in itertools.product(*node_candidates):
        values = {i: v for i, (v, _) in zip(nodes, combo)}
        key = tuple(values[i] for i in nodes)
        if key in seen_values:
            continue
        seen_values.add(key)
        rows = list(base_rows)
        for i in nodes:
            bmat = gens.B[i].mat
            for r in range(module.dim):
                row = list(bmat[r])
                row[r] = row[r] - values[i]
                rows.append(row)
        kernel = linalg.nullspace(rows, module.dim, field)
        if not kernel:
            continue
        if len(kernel) > 1:
            raise MultiplicityViolation(
                f"value system {values} on L{lam} has multiplicity {len(kernel)}")
        vec = ModuleVector(module, kernel[0])
        if not vec.coefficient(module.highest_index):
            raise MultiplicityViolation(
                f"solution on L{lam} misses the highest weight line")
        vec = vec.normalized_at(module.highest_index)
        labels = {i: l for i, (_, l) in zip(nodes, combo) if l is not None}
        chi = Character(satake, lam, values, labels, field)
        lines.append(SphericalLine(module, vec, chi))
    return lines


def dual_spherical_vector(module: SimpleModule, gens: CoidealGenerators,
                          b_values: dict, lam) -> ModuleVector:
    """The line in the transposed realization of the dual with given values.

    Right action through the transpose antiautomorphism: the conditions are
    rho(E_j) f = rho(F_j) f = 0, K_h f = q^<h,lam> f and rho(B_i) f = value f.
    """
    satake = gens.param.satake
    field = module.field
    rows = []
    for j in sorted(satake.black):
        rows.extend(module.rho_twist_matrix(module.e_mats[j]))
        rows.extend(module.rho_twist_matrix(module.f_mats[j]))
    for h, op in gens.torus:
        target = field.q_power(Fraction(sum(a * b for a, b in zip(h, lam))))
        for r in range(module.dim):
            row = list(op.mat[r])
            row[r] = row[r] - target
            rows.append(row)
    for i in sorted(satake.I_circ):
        mat = module.rho_twist_matrix(gens.B[i].mat)
        val = b_values[i]
        for r in range(module.dim):
            row = list(mat[r])
            row[r] = row[r] - val
            rows.append(row)
    kernel = linalg.nullspace(rows, module.dim, field)
    if not kernel:
        raise NoDualLine(f"no dual line with values {b_values} on L{tuple(lam)}")
    if len(kernel) > 1:
        raise MultiplicityViolation(
            f"dual value system {b_values} on L{tuple(lam)} has multiplicity {len(kernel)}")
    return ModuleVector(module, kernel[0])


def find_dual_spherical(line: SphericalLine, gens: CoidealGenerators) -> ModuleVector:
    """The dual spherical vector of the same type, paired to one against the line."""
    f = dual_spherical_vector(line.module, gens, line.character.b_values,
                              line.module.lam)
    pairing = line.module.shapovalov(f, line.vector)
    if not pairing:
        raise NoDualLine("dual line pairs to zero with the spherical vector")
    return f.scale(pairing.inverse())


def akin_character(chi: Character, param: Parameter) -> Character:
    """The character of the shifted coideal agreeing with chi on the torus and
    black part and vanishing on the shifted white generators."""
    satake = param.satake
    zeros = {i: chi.field.zero for i in satake.I_circ}
    return Character(satake, chi.lam, zeros, {}, chi.field)


def shifted_coideal(param: Parameter, chi: Character) -> Parameter:
    return chi_shift_coideal(param, chi)


class ScanReport:
    def __init__(self, satake, entries, characters):
        self.satake = satake
        self.entries = entries          # list of (lam, [Character, ...])
        self.characters = characters    # distinct characters across the scan

    def nontrivial(self) -> list:
        return [c for c in self.characters if not c.is_trivial()]

    def describe(self) -> dict:
        return {
            "per_weight": [{"lambda": list(lam),
                            "characters": [c.describe() for c in chars]}
                           for lam, chars in self.entries],
            "distinct": len(self.characters),
            "distinct_nontrivial": len(self.nontrivial()),
        }


def hermitian_scan(satake: SatakeDatum, param: Parameter, field: Field,
                   weights=None, bound: int | None = None,
                   dim_cap: int = 2000) -> ScanReport:
    """Collect the distinct characters found in a family of simple modules.

    Either an explicit list of dominant weights or a coordinate box bound
    must be given.
    """
    from .modules import build_simple
    datum = satake.datum
    if weights is None:
        if bound is None:
            raise ValueError("hermitian_scan needs weights or a bound")
        ranges = [range(bound + 1)] * datum.n
        weights = [w for w in itertools.product(*ranges)]
        weights.sort(key=lambda w: (sum(w), w))
    entries = []
    found = []
    for lam in weights:
        module = build_simple(datum, lam, field, dim_cap=dim_cap)
        gens = coideal_generators(param, module)
        lines = find_spherical_lines(module, gens, param)
        chars = [line.character for line in lines]
        entries.append((tuple(lam), chars))
        for c in chars:
            if c not in found:
                found.append(c)
    return ScanReport(satake, entries, found)


def line_character_values(line: SphericalLine, gens: CoidealGenerators) -> dict | None:
    """Recompute the named generator values on a vector, or None if not a line."""
    out = {}
    v = line if isinstance(line, ModuleVector) else line.vector
    for name, op in gens.all_named():
        image = op.apply(v)
        lead = next((k for k, c in enumerate(v.coeffs) if c), None)
        if lead is None:
            return None
        scal = image.coeffs[lead] / v.coeffs[lead]
        if not v.scale(scal) == image:
            return None
        out[name] = scal
    return out
