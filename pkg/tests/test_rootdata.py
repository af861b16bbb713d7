import pytest

from qspherical.rootdata import (RANK_ONE_TYPES, RootDatum, RootDatumError,
                                 SatakeDatum, rank_one_satake, root_datum,
                                 satake_from_config, table1_constants)


def weyl_enumeration(datum, subset):
    """Brute-force oracle: all group elements of the parabolic as matrices on
    root coordinates, with shortest words."""
    gens = {i: datum.reflection_matrix_root(i) for i in subset}
    ident = tuple(tuple(1 if r == c else 0 for c in range(datum.n))
                  for r in range(datum.n))
    words = {ident: ()}
    frontier = [ident]
    while frontier:
        nxt = []
        for m in frontier:
            for i, g in gens.items():
                prod = tuple(tuple(sum(m[r][k] * g[k][c] for k in range(datum.n))
                                   for c in range(datum.n)) for r in range(datum.n))
                if prod not in words:
                    words[prod] = words[m] + (i,)
                    nxt.append(prod)
        frontier = nxt
    return words


def test_reflections():
    a2 = root_datum("A", 2)
    assert a2.reflect_root(0, (0, 1)) == (1, 1)          # s1(a2) = a1 + a2
    assert a2.reflect_root(0, (1, 0)) == (-1, 0)         # s_i(a_i) = -a_i
    b2 = root_datum("B", 2)
    assert b2.reflect_root(1, (1, 0)) == (1, 2)          # s2(a1) = a1 + 2a2


def test_longest_words_against_enumeration():
    a2 = root_datum("A", 2)
    assert a2.longest_word((0,)) == (0,)
    assert a2.longest_word((0, 1)) == (0, 1, 0)
    a3 = root_datum("A", 3)
    assert a3.longest_word((0, 2)) == (0, 2)
    for datum, subset in [(a2, (0, 1)), (a3, (0, 1, 2)), (root_datum("B", 2), (0, 1))]:
        words = weyl_enumeration(datum, subset)
        maxlen = max(len(w) for w in words.values())
        word = datum.longest_word(subset)
        assert len(word) == maxlen
        assert len(word) == len(datum.positive_roots(subset))
        # the word really evaluates to the unique longest element
        m = datum.word_matrix_root(word)
        longest = [mat for mat, w in words.items() if len(w) == maxlen]
        assert longest == [m]
        assert datum.word_from_matrix(m) == word


def test_satake_validation():
    a1 = SatakeDatum(root_datum("A", 1), (), (0,))
    assert a1.is_admissible()
    aiii = SatakeDatum(root_datum("A", 2), (), (1, 0))
    assert aiii.is_admissible()
    aii3 = SatakeDatum(root_datum("A", 3), (0, 2), (0, 1, 2))
    assert aii3.is_admissible()
    # breaking condition (ii): black A2 pair with identity tau
    bad = SatakeDatum(root_datum("A", 3), (0, 1), (0, 1, 2))
    labels = {c for c, _ in bad.validate()}
    assert "(ii)" in labels
    # breaking condition (iii): fixed white node paired half-integrally
    bad2 = SatakeDatum(root_datum("A", 2), (0,), (0, 1))
    labels2 = {c for c, _ in bad2.validate()}
    assert "(iii)" in labels2 or "(ii)" in labels2


def test_theta_involution(aiii3_sl4, aii3):
    for satake in (aiii3_sl4, aii3):
        n = satake.datum.n
        for k in range(n):
            h = tuple(1 if t == k else 0 for t in range(n))
            assert satake.theta_on_Y(satake.theta_on_Y(h)) == h
        for b in satake.y_theta_basis():
            assert satake.theta_on_Y(b) == tuple(-x for x in b)


def test_relative_generators(ai1, aiii_sl3, aiii3_sl4):
    assert ai1.relative_generator(0) == (0,)
    assert aiii_sl3.relative_generator(0) == (0, 1, 0)
    assert aiii3_sl4.relative_generator(1) == (1,)
    assert aiii3_sl4.relative_generator(0) == (0, 2)
    for satake in (ai1, aiii_sl3, aiii3_sl4):
        basis = satake.y_theta_basis()
        for i in satake.relative_orbit_representatives():
            word = satake.relative_generator(i)
            mat = satake.relative_weyl_matrix_on_y_theta(i)
            assert all(isinstance(x, int) for row in mat for x in row)
            for c, b in enumerate(basis):
                img = satake.datum.act_word_Y(word, b)
                recon = tuple(sum(mat[r][c] * basis[r][t] for r in range(len(basis)))
                              for t in range(satake.datum.n))
                assert recon == img


def test_tau0(aiii_sl3, aiii3_sl4, ai1):
    assert ai1.tau0() == (0,)
    assert aiii_sl3.tau0() == (1, 0)
    assert aiii3_sl4.tau0() == (2, 1, 0)
    for satake in (aiii_sl3, aiii3_sl4):
        w0 = satake.w0
        for i in range(satake.datum.n):
            a = tuple(1 if k == i else 0 for k in range(satake.datum.n))
            img = satake.datum.act_word_root(w0, a)
            assert img == tuple(-1 if k == satake.tau0()[i] else 0
                                for k in range(satake.datum.n))


def test_weyl_dimension_formula():
    a2 = root_datum("A", 2)
    assert a2.weyl_dim((1, 0)) == 3
    assert a2.weyl_dim((1, 1)) == 8
    a3 = root_datum("A", 3)
    assert a3.weyl_dim((0, 1, 0)) == 6
    assert a3.weyl_dim((0, 2, 0)) == 20
    assert root_datum("B", 2).weyl_dim((1, 0)) == 5


TABLE1 = {
    ("AI1", None): (2, 0, 0, 2),
    ("AII3", None): (2, -2, 2, 4),
    ("AIII11", None): (2, 0, 0, 2),
    ("AIV", 2): (2, 0, 0, 2),
    ("AIV", 3): (2, -1, 1, 3),
    ("BII", 2): (4, -2, 2, 6),
    ("BII", 3): (4, -4, 6, 10),
    ("CII", 3): (2, -2, 3, 5),
    ("CII", 4): (2, -4, 5, 7),
    ("DII", 4): (2, -4, 4, 6),
    ("DII", 5): (2, -6, 6, 8),
    ("FII", None): (2, -6, 9, 11),
}


@pytest.mark.parametrize("label,n", sorted(TABLE1, key=str))
def test_table_constants(label, n):
    satake, _ = rank_one_satake(label, n)
    assert satake.is_admissible(), (label, n)
    assert table1_constants(label, n) == TABLE1[(label, n)]


def test_rank_one_labels_all_buildable():
    for label in RANK_ONE_TYPES:
        n = {"AIV": 2, "BII": 2, "CII": 3, "DII": 4}.get(label)
        satake, white = rank_one_satake(label, n)
        assert white in satake.I_circ


def test_config_round_trip(tmp_path):
    cfg = {"cartan": [[2, -1], [-1, 2]], "symmetrizer": [1, 1],
           "black": [], "tau": [2, 1]}
    satake = satake_from_config(cfg)
    assert satake.tau == (1, 0)
    assert satake.is_admissible()
    with pytest.raises(RootDatumError):
        satake_from_config({"cartan": [[2]]})
