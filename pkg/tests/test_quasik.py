import random

import pytest

from qspherical import Field
from qspherical.braid import Operator, rescaled_T
from qspherical.characters import find_spherical_lines
from qspherical.modules import act_matrix
from qspherical.qsp import Parameter, ParameterError, coideal_generators
from qspherical.quasik import (IntertwinerError, quasi_k, verify_intertwining,
                               wz_character_check, wz_on_vector, wz_operator,
                               wz_precompose)
import qspherical.linalg as la

F = Field(2)


def test_trivial_module_identity(modules, ai1, params):
    m = modules("A", 1, (0,))
    qk = quasi_k(0, params["ai1_uniform"], m)
    assert qk.operator.is_identity()


def test_uniform_rank_one_solution(modules, ai1, params):
    # hand-solved system on the three-dimensional module: only the weight-2
    # raising block survives and carries [2](c - bar c)
    m = modules("A", 1, (2,))
    c = params["ai1_uniform"].c[0]
    qk = quasi_k(0, params["ai1_uniform"], m)
    assert qk.mode == "uniform"
    assert qk.zero_block_is_identity()
    expected = F.qint(2, 1) * (c - c.bar())
    assert qk.operator.mat[0][2] == expected
    assert qk.operator.mat[0][1].is_zero()
    assert qk.operator.mat[1][2].is_zero()
    assert qk.operator.bar_conjugate() == qk.operator.inverse()


def test_two_dimensional_intertwiner_is_identity(modules, ai1, params):
    m = modules("A", 1, (1,))
    for key in ("ai1_uniform", "ai1_dist"):
        qk = quasi_k(0, params[key], m)
        assert qk.operator.is_identity()


def test_transported_solution(modules, ai1, params):
    # conjugate of the uniform solution by the positive monomial twist
    m = modules("A", 1, (2,))
    qk = quasi_k(0, params["ai1_dist"], m)
    assert qk.mode == "transported"
    assert qk.twist == F.q
    assert qk.zero_block_is_identity()
    # value pinned by line preservation: [2](1 - q^-2) on the corner block
    assert qk.operator.mat[0][2] == F.qint(2, 1) * (F.one - F.q ** (-2))
    assert qk.residual_ok


def test_nonuniform_plain_system_is_inconsistent(modules, ai1, params):
    # the counterexample that forces the transported construction
    from qspherical.quasik import _solve_intertwiner
    m = modules("A", 1, (1,))
    with pytest.raises(IntertwinerError):
        _solve_intertwiner(0, params["ai1_dist"], m)


def test_intertwining_residual_exactly_zero(modules, aiii_sl3, params):
    m = modules("A", 2, (1, 1))
    qk = quasi_k(0, params["aiii_sl3_uniform"], m)
    assert qk.mode == "uniform"
    assert verify_intertwining(qk, params["aiii_sl3_uniform"])
    assert qk.operator.bar_conjugate() == qk.operator.inverse()


def test_bar_inverse_fails_for_transported_plain_bar(modules, ai1, params):
    # documented: the plain bar-inverse property characterizes the uniform
    # normal form; the transported operator satisfies it only through that form
    m = modules("A", 1, (2,))
    qk = quasi_k(0, params["ai1_dist"], m)
    assert qk.operator.bar_conjugate() != qk.operator.inverse()
    par_u, a, b = _normal_form(params["ai1_dist"])
    qk_u = quasi_k(0, par_u, m)
    assert qk_u.operator.bar_conjugate() == qk_u.operator.inverse()


def _normal_form(param):
    from qspherical.quasik import _uniform_normal_form
    return _uniform_normal_form(0, param)


def test_factorized_identity_on_random_words(modules, ai1, params):
    m = modules("A", 1, (3,))
    rng = random.Random(11)
    par = params["ai1_dist"]
    qk = quasi_k(0, par, m)
    resc = rescaled_T(0, par, m)
    big = qk.operator @ resc
    pool = [m.e_mats[0], m.f_mats[0], m.k_i_matrix(0), m.k_i_matrix(0, -1)]
    for _ in range(20):
        word = la.identity(m.dim, F)
        for _ in range(rng.randrange(1, 5)):
            word = la.mat_mul(word, pool[rng.randrange(len(pool))])
        x = Operator(m, word)
        lhs = (big.conj(x)) @ qk.operator
        rhs = qk.operator @ resc.conj(x)
        assert lhs == rhs


def test_equivariance_on_vectors(modules, ai1, params):
    m = modules("A", 1, (2,))
    par = params["ai1_uniform"]
    big = wz_operator(0, par, m)
    rng = random.Random(3)
    pool = [m.e_mats[0], m.f_mats[0], m.k_i_matrix(0)]
    for _ in range(6):
        word = la.identity(m.dim, F)
        for _ in range(rng.randrange(1, 4)):
            word = la.mat_mul(word, pool[rng.randrange(3)])
        v = m.basis_vector(rng.randrange(m.dim))
        lhs = big.apply(act_matrix(word, v))
        rhs = act_matrix(big.conj(Operator(m, word)).mat, big.apply(v))
        assert lhs == rhs


def test_spherical_vector_maps_to_multiple(modules, ai1, params):
    m = modules("A", 1, (2,))
    par = params["ai1_dist"]
    gens = coideal_generators(par, m)
    for line in find_spherical_lines(m, gens, par):
        image = wz_on_vector(0, par, line.vector)
        assert image.proportional_to(line.vector)


def test_wz_character_checks(modules, ai1, aiii_sl3, aiii3_sl4, params):
    cases = [("A", 1, (4,), ai1, "ai1_dist"),
             ("A", 2, (1, 1), aiii_sl3, "aiii_sl3_uniform"),
             ("A", 3, (0, 1, 0), aiii3_sl4, "aiii3_sl4")]
    for family, rank, lam, satake, key in cases:
        m = modules(family, rank, lam)
        par = params[key]
        gens = coideal_generators(par, m)
        for line in find_spherical_lines(m, gens, par):
            for i in satake.relative_orbit_representatives():
                ok, cert = wz_character_check(line, i, par, gens)
                assert ok, cert


def test_iota_bar_fixes_lines_after_scaling(modules, ai1, params):
    # the intertwiner composed with bar fixes each spherical line once the
    # vector is scaled to have lowest coefficient one
    m = modules("A", 1, (2,))
    par = params["ai1_uniform"]
    qk = quasi_k(0, par, m)
    gens = coideal_generators(par, m)
    for line in find_spherical_lines(m, gens, par):
        v = line.vector.normalized_at(m.lowest_index)
        assert qk.operator.apply(v.bar()) == v


def test_wz_precompose(modules, ai1, params):
    from qspherical.spherical import MatrixCoefficient
    from qspherical.characters import find_dual_spherical
    m = modules("A", 1, (2,))
    par = params["ai1_dist"]
    gens = coideal_generators(par, m)
    line = find_spherical_lines(m, gens, par)[0]
    f = find_dual_spherical(line, gens)
    coeff = MatrixCoefficient(m, f, line.vector)
    moved = wz_precompose(coeff, 0, par)
    # a spherical coefficient is fixed by precomposition
    rng = random.Random(5)
    pool = [m.e_mats[0], m.f_mats[0], m.k_i_matrix(0)]
    for _ in range(8):
        word = la.identity(m.dim, F)
        for _ in range(rng.randrange(0, 4)):
            word = la.mat_mul(word, pool[rng.randrange(3)])
        assert coeff.evaluate(word) == moved.evaluate(word)


def test_relative_braid_relation_rank_two(modules, aiii3_sl4, params):
    # the relative Weyl group of the rank-two diagram has m = 4 between its
    # generators, and the module operators satisfy the corresponding braid
    # relation exactly
    m = modules("A", 3, (0, 1, 0))
    par = params["aiii3_sl4"]
    t0 = wz_operator(0, par, m)
    t1 = wz_operator(1, par, m)
    assert (t0 @ t1 @ t0 @ t1) == (t1 @ t0 @ t1 @ t0)
    assert not (t0 @ t1) == (t1 @ t0)


def test_rejects_nonstandard_rank_one(modules, ai1, field):
    m = modules("A", 1, (1,))
    par = Parameter(ai1, {0: -field.q.inverse()}, {0: field.one})
    with pytest.raises(ParameterError):
        quasi_k(0, par, m)
