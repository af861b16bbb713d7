"""Rank-one quasi-K matrices and the relative braid operators built from them.

For a uniform rank-one restriction the intertwiner is solved exactly, per
module, from its defining linear system: generator-wise, (i-bar image of b)
composed with the unknown weight-raising operator equals the operator
composed with the bar conjugate of b, with identity constant term.  Balanced
non-uniform restrictions are handled by a positive monomial twist to their
uniform normal form; the twist direction is fixed by equivariance of the
relative operators under parameter rescaling.
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .braid import Operator, phi_diag, rescaled_T
from .modules import ModuleVector, SimpleModule
from .qsp import (CoidealGenerators, Parameter, ParameterError,
                  _uniform_exponent, _pair_rho_vee, _even_int,
                  coideal_generators)
from .characters import SphericalLine, line_character_values
from .scalars import UnrepresentableScalar


class IntertwinerError(Exception):
    pass


class QuasiKOnModule:
    """The rank-one intertwiner realized on one module."""

    def __init__(self, module, node, operator, mode, twist, residual_ok):
        self.module = module
        self.node = node
        self.operator = operator
        self.mode = mode              # "uniform" or "transported"
        self.twist = twist            # the monomial b with u = b c, or None
        self.residual_ok = residual_ok

    def zero_block_is_identity(self) -> bool:
        mat = self.operator.mat
        module = self.module
        for r in range(module.dim):
            for c in range(module.dim):
                same = module.weights[r] == module.weights[c]
                expect = module.field.one if r == c else module.field.zero
                if same and mat[r][c] != expect:
                    return False
        return True


def _rank_one_generators(i: int, param: Parameter, gens: CoidealGenerators):
    """Named generators of the rank-one coideal attached to a white node,
    as triples (name, i-bar image matrix, generator matrix).

    The i-bar involution fixes the white generators and the black Chevalley
    generators and inverts the torus generators.
    """
    satake = param.satake
    module = gens.module
    out = [("B_%d" % i, gens.B[i].mat, gens.B[i].mat)]
    ti = satake.tau[i]
    if ti != i:
        out.append(("B_%d" % ti, gens.B[ti].mat, gens.B[ti].mat))
    for j in sorted(satake.black):
        out.append(("E_%d" % j, gens.black_E[j].mat, gens.black_E[j].mat))
        out.append(("F_%d" % j, gens.black_F[j].mat, gens.black_F[j].mat))
    n = satake.datum.n
    torus = []
    if ti != i:
        h = tuple(satake.datum.d[i] * (1 if k == i else 0)
                  - satake.datum.d[ti] * (1 if k == ti else 0) for k in range(n))
        torus.append(h)
    for j in sorted(satake.black):
        torus.append(tuple(satake.datum.d[j] * (1 if k == j else 0) for k in range(n)))
    for h in torus:
        hneg = tuple(-x for x in h)
        out.append((f"K_{h}", module.k_matrix(hneg), module.k_matrix(h)))
    return out


def _raising_word_matrices(module, alphabet) -> list:
    """Linearly independent matrices of nonconstant raising words over the
    subdiagram alphabet, by breadth-first products of the raising generators."""
    field = module.field
    dim = module.dim
    span_rows = []

    def vectorize(mat):
        return [mat[r][c] for r in range(dim) for c in range(dim)]

    def extends_span(mat) -> bool:
        row = vectorize(mat)
        for lead, lval, srow in span_rows:
            if row[lead]:
                f = row[lead] / lval
                row = [x - f * y for x, y in zip(row, srow)]
        lead = next((k for k, x in enumerate(row) if x), None)
        if lead is None:
            return False
        span_rows.append((lead, row[lead], row))
        return True

    # closing over independent representatives only is complete: products of
    # dependent words stay inside the span of products of independent ones
    frontier = [linalg.identity(dim, field)]
    independent = []
    max_len = module.dim * 2 + 2
    length = 0
    while frontier and length < max_len:
        length += 1
        nxt = []
        for mat in frontier:
            for j in alphabet:
                prod = linalg.mat_mul(module.e_mats[j], mat)
                if linalg.is_zero_matrix(prod):
                    continue
                if extends_span(prod):
                    independent.append(prod)
                    nxt.append(prod)
        frontier = nxt
    return independent


def _solve_intertwiner(i: int, param: Parameter, module: SimpleModule) -> Operator:
    """Solve the defining system for a uniform rank-one restriction."""
    satake = param.satake
    field = module.field
    gens = coideal_generators(param, module)
    named = _rank_one_generators(i, param, gens)
    alphabet = sorted(set(satake.black) | {i, satake.tau[i]})
    words = _raising_word_matrices(module, alphabet)
    dim = module.dim
    nunk = len(words)
    rows = []
    rhs = []
    for _, gleft, g in named:
        gbar = linalg.bar_matrix(g)
        # gleft (I + sum x_w W) = (I + sum x_w W) gbar
        coeff_mats = [linalg.mat_sub(linalg.mat_mul(gleft, w), linalg.mat_mul(w, gbar))
                      for w in words]
        target = linalg.mat_sub(gbar, gleft)
        for r in range(dim):
            for c in range(dim):
                row = [cm[r][c] for cm in coeff_mats]
                if any(row) or target[r][c]:
                    rows.append(row)
                    rhs.append(target[r][c])
    if nunk == 0:
        if any(rhs):
            raise IntertwinerError("inconsistent intertwiner system with no unknowns")
        return Operator.identity(module)
    aug = [row + [b] for row, b in zip(rows, rhs)]
    pivots = linalg._echelonize(aug, nunk)
    for r in range(len(pivots), len(aug)):
        if aug[r][nunk]:
            raise IntertwinerError(
                f"intertwiner system is inconsistent at node {i}; "
                "the rank-one restriction is not uniform")
    if len(pivots) < nunk:
        raise IntertwinerError("intertwiner system is underdetermined")
    x = [field.zero] * nunk
    for r, pc in enumerate(pivots):
        x[pc] = aug[r][nunk]
    mat = linalg.identity(dim, field)
    for coeff, w in zip(x, words):
        if coeff:
            mat = linalg.mat_add(mat, linalg.mat_scale(w, coeff))
    return Operator(module, mat)


def _uniform_normal_form(i: int, param: Parameter):
    """(twisted parameter, twist tuple, monomial b) with u = b c uniform at i."""
    satake = param.satake
    field = param.field
    mono = param.c[i].as_monomial()
    if mono is None:
        raise UnrepresentableScalar(
            f"c_{i} = {param.c[i]} is not a monomial; no uniform normal form")
    _, m = mono
    sign = (-1) ** _even_int(2 * _pair_rho_vee(satake, i))
    if sign != 1:
        raise IntertwinerError(
            "no positive monomial twist to a uniform parameter at this node")
    e = _uniform_exponent(satake, i)
    # target u = gamma q^(-e/2): exponent in v units
    target_v = -Fraction(e, 2) * field.root_order
    if target_v.denominator != 1:
        raise UnrepresentableScalar("uniform normal form needs a finer root of q")
    b = field.v_power(int(target_v) - m)
    a = {j: field.one for j in satake.I_circ}
    a[i] = b
    a[satake.tau[i]] = b
    from .qsp import twist_parameter
    return twist_parameter(a, param), a, b


def _param_key(param: Parameter) -> tuple:
    return (tuple(sorted(param.c.items())), tuple(sorted(param.s.items())))


def quasi_k(i: int, param: Parameter, module: SimpleModule) -> QuasiKOnModule:
    """The rank-one intertwiner at a white node, on one module.

    Uniform restrictions are solved directly; balanced monomial restrictions
    are conjugated back from their uniform normal form by the diagonal twist.
    Results are cached on the module.
    """
    satake = param.satake
    if i not in satake.I_circ:
        raise ParameterError(f"{i} is not a white node")
    cache = getattr(module, "_quasi_k_cache", None)
    if cache is None:
        cache = module._quasi_k_cache = {}
    key = (i, _param_key(param))
    if key in cache:
        return cache[key]
    if any(param.s[j] for j in (i, satake.tau[i])):
        raise ParameterError("the intertwiner needs a standard rank-one restriction")
    if param.uniform_at(i):
        op = _solve_intertwiner(i, param, module)
        result = QuasiKOnModule(module, i, op, "uniform", None, False)
    else:
        if param.c[i] != param.c[satake.tau[i]]:
            raise ParameterError("non-uniform restrictions must be balanced")
        param_u, a, b = _uniform_normal_form(i, param)
        if not param_u.uniform_at(i):
            raise IntertwinerError("normal form failed to be uniform")
        op_u = _solve_intertwiner(i, param_u, module)
        d = phi_diag(a, module)
        op = d.conj(op_u)
        result = QuasiKOnModule(module, i, op, "transported", b, False)
    result.residual_ok = verify_intertwining(result, param)
    if not result.residual_ok:
        raise IntertwinerError(f"intertwining residual is nonzero at node {i}")
    cache[key] = result
    return result


def verify_intertwining(qk: QuasiKOnModule, param: Parameter) -> bool:
    """Exact check of the defining system satisfied by the stored operator.

    For a transported operator the system is the twisted one: the right-hand
    bar conjugate is taken for the parameter b^2 c.
    """
    module = qk.module
    satake = param.satake
    i = qk.node
    if qk.mode == "uniform":
        left_param = right_param = param
    else:
        b2 = qk.twist * qk.twist
        a = {j: param.field.one for j in satake.I_circ}
        a[i] = b2
        a[satake.tau[i]] = b2
        from .qsp import twist_parameter
        left_param = param
        right_param = twist_parameter(a, param)
    gl = coideal_generators(left_param, module)
    gr = coideal_generators(right_param, module)
    left = _rank_one_generators(i, left_param, gl)
    right = _rank_one_generators(i, right_param, gr)
    u = qk.operator.mat
    for (_, lbar, _), (_, _, rgen) in zip(left, right):
        lhs = linalg.mat_mul(lbar, u)
        rhs = linalg.mat_mul(u, linalg.bar_matrix(rgen))
        if not linalg.mat_eq(lhs, rhs):
            return False
    return True


def wz_operator(i: int, param: Parameter, module: SimpleModule) -> Operator:
    """The relative braid operator on a module: intertwiner after rescaling."""
    cache = getattr(module, "_wz_cache", None)
    if cache is None:
        cache = module._wz_cache = {}
    key = (i, _param_key(param))
    if key not in cache:
        qk = quasi_k(i, param, module)
        cache[key] = qk.operator @ rescaled_T(i, param, module)
    return cache[key]


def wz_on_vector(i: int, param: Parameter, v: ModuleVector) -> ModuleVector:
    return wz_operator(i, param, v.module).apply(v)


def wz_character_check(line: SphericalLine, i: int, param: Parameter,
                       gens: CoidealGenerators | None = None):
    """Does the inverse relative operator carry the line to a line of the same
    character?  Returns (bool, certificate)."""
    module = line.module
    gens = gens or coideal_generators(param, module)
    w = wz_operator(i, param, module).inverse().apply(line.vector)
    values = line_character_values(SphericalLine(module, w, line.character), gens)
    if values is None:
        return False, {"reason": "image is not a joint eigenvector", "node": i}
    expected = line_character_values(line, gens)
    for name, val in expected.items():
        if values[name] != val:
            return False, {"reason": "character value changed", "node": i,
                           "generator": name, "before": str(val),
                           "after": str(values[name])}
    return True, None


def wz_precompose(coeff, i: int, param: Parameter):
    """Precomposition of a matrix coefficient with the relative braid operator.

    The result is again a matrix coefficient on the same module: the dual
    vector moves by the transpose of the operator, the vector by its inverse.
    """
    from .spherical import MatrixCoefficient
    module = coeff.module
    w = wz_operator(i, param, module)
    f_new = ModuleVector(module,
                         linalg.mat_vec(module.rho_twist_matrix(w.mat), coeff.f.coeffs))
    v_new = w.inverse().apply(coeff.v)
    return MatrixCoefficient(module, f_new, v_new)
