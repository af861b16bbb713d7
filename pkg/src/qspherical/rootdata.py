"""Root data, Weyl group combinatorics and Satake diagrams.

Conventions fixed once and for all: X is the weight lattice in the basis of
fundamental weights, Y is the coroot lattice in the basis of simple coroots,
so pairing a Y-vector with an X-vector is the plain dot product.  The
normalized symmetric form on the root lattice gives short roots length 2.
Weyl group elements are carried as integer matrices on root coordinates;
reduced words are always the lexicographically least ones, so every derived
word is reproducible.
"""

from __future__ import annotations

import json
from fractions import Fraction


class RootDatumError(Exception):
    pass


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _mat_mul_int(a, b):
    bt = list(zip(*b))
    return tuple(tuple(_dot(row, col) for col in bt) for row in a)


def _identity_int(n):
    return tuple(tuple(1 if r == c else 0 for c in range(n)) for r in range(n))


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


class RootDatum:
    """A Cartan matrix with symmetrizer and the simply-connected lattices."""

    def __init__(self, cartan, symmetrizer):
        c = tuple(tuple(int(x) for x in row) for row in cartan)
        d = tuple(int(x) for x in symmetrizer)
        n = len(c)
        if any(len(row) != n for row in c) or len(d) != n:
            raise RootDatumError("Cartan matrix and symmetrizer sizes disagree")
        for i in range(n):
            if c[i][i] != 2:
                raise RootDatumError("Cartan diagonal must be 2")
            for j in range(n):
                if i != j and c[i][j] > 0:
                    raise RootDatumError("off-diagonal Cartan entries must be <= 0")
                if (c[i][j] == 0) != (c[j][i] == 0):
                    raise RootDatumError("Cartan zero pattern must be symmetric")
                if d[i] * c[i][j] != d[j] * c[j][i]:
                    raise RootDatumError("DC must be symmetric")
        if any(x < 1 for x in d):
            raise RootDatumError("symmetrizer entries must be positive")
        g = 0
        for x in d:
            g = _gcd(g, x)
        if g != 1:
            raise RootDatumError("gcd of the symmetrizer must be 1")
        self.cartan = c
        self.d = d
        self.n = n

    # -- lattices ------------------------------------------------------------

    def alpha_in_X(self, i: int) -> tuple:
        """Simple root alpha_i in fundamental-weight coordinates."""
        return tuple(self.cartan[k][i] for k in range(self.n))

    def root_to_X(self, a) -> tuple:
        return tuple(sum(self.cartan[k][i] * a[i] for i in range(self.n))
                     for k in range(self.n))

    def X_to_root(self, x) -> tuple:
        """Inverse of root_to_X; entries are Fractions in general."""
        sol = _solve_rational([[Fraction(self.cartan[r][c]) for c in range(self.n)]
                               for r in range(self.n)],
                              [Fraction(v) for v in x])
        if sol is None:
            raise RootDatumError("Cartan matrix is singular")
        return tuple(sol)

    def pair(self, h, x):
        """Pairing of h in Y (coroot coordinates) with x in X."""
        return _dot(h, x)

    def form_roots(self, a, b):
        """Normalized symmetric form on root-lattice vectors."""
        return sum(a[i] * self.d[i] * self.cartan[i][j] * b[j]
                   for i in range(self.n) for j in range(self.n))

    def form_X_root(self, x, a):
        """(x, beta) for x in X and beta in the root lattice."""
        return sum(Fraction(a[i]) * self.d[i] * Fraction(x[i]) for i in range(self.n))

    # -- reflections ----------------------------------------------------------

    def _check_index(self, i):
        if not 0 <= i < self.n:
            raise RootDatumError(f"unknown index {i}")

    def reflect_X(self, i: int, x) -> tuple:
        self._check_index(i)
        alpha = self.alpha_in_X(i)
        return tuple(v - x[i] * a for v, a in zip(x, alpha))

    def reflect_Y(self, i: int, h) -> tuple:
        self._check_index(i)
        c = _dot(h, self.alpha_in_X(i))
        return tuple(v - (c if k == i else 0) for k, v in enumerate(h))

    def reflect_root(self, i: int, a) -> tuple:
        self._check_index(i)
        c = sum(self.cartan[i][j] * a[j] for j in range(self.n))
        return tuple(v - (c if k == i else 0) for k, v in enumerate(a))

    def reflection_matrix_root(self, i: int) -> tuple:
        cols = [self.reflect_root(i, tuple(1 if k == j else 0 for k in range(self.n)))
                for j in range(self.n)]
        return tuple(tuple(cols[c][r] for c in range(self.n)) for r in range(self.n))

    def word_matrix_root(self, word) -> tuple:
        m = _identity_int(self.n)
        for i in word:
            m = _mat_mul_int(m, self.reflection_matrix_root(i))
        return m

    def act_word_root(self, word, a) -> tuple:
        """Apply s_{i1}...s_{ik}, leftmost letter outermost."""
        for i in reversed(word):
            a = self.reflect_root(i, a)
        return a

    def act_word_X(self, word, x) -> tuple:
        for i in reversed(word):
            x = self.reflect_X(i, x)
        return x

    def act_word_Y(self, word, h) -> tuple:
        for i in reversed(word):
            h = self.reflect_Y(i, h)
        return h

    # -- roots and the Weyl group ----------------------------------------------

    def positive_roots(self, subset=None) -> list:
        idx = sorted(subset) if subset is not None else list(range(self.n))
        roots = {tuple(1 if k == i else 0 for k in range(self.n)) for i in idx}
        frontier = list(roots)
        while frontier:
            nxt = []
            for a in frontier:
                for i in idx:
                    b = self.reflect_root(i, a)
                    if all(v >= 0 for v in b) and b not in roots:
                        roots.add(b)
                        nxt.append(b)
            frontier = nxt
        return sorted(roots, key=lambda a: (sum(a), a))

    @staticmethod
    def _positive_vec(a) -> bool:
        return all(v >= 0 for v in a)

    def longest_word(self, subset) -> tuple:
        """Lexicographically least reduced word of the longest element of W_J."""
        idx = sorted(set(subset))
        if not idx:
            return ()
        m = _identity_int(self.n)
        while True:
            i = next((j for j in idx
                      if self._positive_vec(tuple(m[r][j] for r in range(self.n)))),
                     None)
            if i is None:
                break
            m = _mat_mul_int(m, self.reflection_matrix_root(i))
        return self.word_from_matrix(m)

    def word_from_matrix(self, m) -> tuple:
        """Lexicographically least reduced word, by peeling least left descents."""
        out = []
        ident = _identity_int(self.n)
        guard = len(self.positive_roots()) + 1
        while m != ident:
            minv = self._invert_int(m)
            i = next(j for j in range(self.n)
                     if not self._positive_vec(tuple(minv[r][j] for r in range(self.n))))
            out.append(i)
            m = _mat_mul_int(self.reflection_matrix_root(i), m)
            guard -= 1
            if guard < 0:
                raise RootDatumError("word extraction failed to terminate")
        return tuple(out)

    def normal_word(self, word) -> tuple:
        return self.word_from_matrix(self.word_matrix_root(word))

    @staticmethod
    def _invert_int(m) -> tuple:
        n = len(m)
        work = [[Fraction(m[r][c]) for c in range(n)]
                + [Fraction(int(r == c)) for c in range(n)] for r in range(n)]
        for col in range(n):
            piv = next(r for r in range(col, n) if work[r][col])
            work[col], work[piv] = work[piv], work[col]
            inv = 1 / work[col][col]
            work[col] = [x * inv for x in work[col]]
            for r in range(n):
                if r != col and work[r][col]:
                    f = work[r][col]
                    work[r] = [x - f * y for x, y in zip(work[r], work[col])]
        return tuple(tuple(int(work[r][n + c]) for c in range(n)) for r in range(n))

    # -- standard vectors -------------------------------------------------------

    def rho(self) -> tuple:
        return tuple(1 for _ in range(self.n))

    def rho_of(self, subset) -> tuple:
        """Half sum of the positive roots of a sub-system, as X Fractions."""
        total = [0] * self.n
        for a in self.positive_roots(subset):
            x = self.root_to_X(a)
            total = [t + v for t, v in zip(total, x)]
        return tuple(Fraction(t, 2) for t in total)

    def rho_vee_of(self, subset) -> tuple:
        """Half sum of the positive coroots of a sub-system, as Y Fractions."""
        total = [Fraction(0)] * self.n
        for a in self.positive_roots(subset):
            norm = self.form_roots(a, a)
            for i in range(self.n):
                total[i] += Fraction(2 * a[i] * self.d[i], norm)
        return tuple(t / 2 for t in total)

    def coweight_of_weight(self, x) -> tuple:
        """Image of an X-vector under nu(alpha_i) = d_i alpha_i^vee, in Y Fractions."""
        a = self.X_to_root(x)
        return tuple(a[i] * self.d[i] for i in range(self.n))

    def is_dominant(self, lam) -> bool:
        return all(v >= 0 for v in lam)

    def weyl_dim(self, lam) -> int:
        """Weyl dimension formula; independent of any module construction."""
        num = Fraction(1)
        rho = self.rho()
        for a in self.positive_roots():
            top = self.form_X_root(tuple(l + r for l, r in zip(lam, rho)), a)
            bot = self.form_X_root(rho, a)
            num *= Fraction(top, bot)
        if num.denominator != 1:
            raise RootDatumError("Weyl dimension did not come out integral")
        return int(num)

    def w0_word(self) -> tuple:
        return self.longest_word(range(self.n))


class SatakeDatum:
    """A root datum with a chosen admissible pair: black nodes and involution."""

    def __init__(self, datum: RootDatum, black, tau):
        self.datum = datum
        self.black = frozenset(int(j) for j in black)
        self.tau = tuple(int(t) for t in tau)
        n = datum.n
        if sorted(self.tau) != list(range(n)):
            raise RootDatumError("tau must be a permutation of the index set")
        if any(j < 0 or j >= n for j in self.black):
            raise RootDatumError("black subset out of range")
        self.I_circ = tuple(i for i in range(n) if i not in self.black)
        self.w_black = datum.longest_word(self.black)
        self.I_ns = tuple(i for i in self.I_circ
                          if self.tau[i] == i and
                          all(datum.cartan[i][j] == 0 for j in self.black))
        self.rho_black = datum.rho_of(self.black)
        self.rho_black_vee = datum.rho_vee_of(self.black)
        self.w0 = datum.w0_word()

    # -- the involution ---------------------------------------------------------

    def tau_perm(self, vec) -> tuple:
        out = [0] * self.datum.n
        for i, v in enumerate(vec):
            out[self.tau[i]] = v
        return tuple(out)

    def theta_on_X(self, x) -> tuple:
        y = self.datum.act_word_X(self.w_black, self.tau_perm(x))
        return tuple(-v for v in y)

    def theta_on_Y(self, h) -> tuple:
        y = self.datum.act_word_Y(self.w_black, self.tau_perm(h))
        return tuple(-v for v in y)

    def theta_on_root(self, a) -> tuple:
        y = self.datum.act_word_root(self.w_black, self.tau_perm(a))
        return tuple(-v for v in y)

    # -- admissibility ------------------------------------------------------------

    def validate(self) -> list:
        """Check the admissibility conditions; return a report of violations."""
        datum = self.datum
        problems = []
        for i in range(datum.n):
            for j in range(datum.n):
                if datum.cartan[i][j] != datum.cartan[self.tau[i]][self.tau[j]]:
                    problems.append(
                        ("(i)", f"tau does not preserve the Cartan matrix at ({i},{j})"))
        if any(self.tau[self.tau[i]] != i for i in range(datum.n)):
            problems.append(("(i)", "tau is not an involution"))
        if any(self.tau[j] not in self.black for j in self.black):
            problems.append(("(i)", "tau does not preserve the black subset"))
        for j in sorted(self.black):
            a = tuple(1 if k == j else 0 for k in range(datum.n))
            img = datum.act_word_root(self.w_black, a)
            want = tuple(-1 if k == self.tau[j] else 0 for k in range(datum.n))
            if img != want:
                problems.append(("(ii)", f"tau on black node {j} differs from -w_black"))
        for i in self.I_circ:
            if self.tau[i] == i:
                val = sum(Fraction(self.rho_black_vee[k]) * datum.alpha_in_X(i)[k]
                          for k in range(datum.n))
                if val.denominator != 1:
                    problems.append(
                        ("(iii)", f"<rho_black_vee, alpha_{i}> = {val} is not integral"))
        return problems

    def is_admissible(self) -> bool:
        return not self.validate()

    # -- derived combinatorics ------------------------------------------------------

    def y_theta_basis(self) -> tuple:
        """HNF basis of the lattice of coroot vectors with Theta(h) = -h."""
        from .linalg import integer_kernel_basis
        n = self.datum.n
        m = [[0] * n for _ in range(n)]
        for k in range(n):
            e = tuple(1 if t == k else 0 for t in range(n))
            img = self.theta_on_Y(e)
            for r in range(n):
                m[r][k] = img[r] + e[r]
        return tuple(integer_kernel_basis(m))

    def theta_fixed_torus_generators(self) -> tuple:
        """Y-vectors indexing the torus generators of the coideal: the
        K_i K_tau(i)^-1 family on white nodes and K_j on black nodes."""
        out = []
        n = self.datum.n
        seen = set()
        for i in self.I_circ:
            j = self.tau[i]
            if j == i or (j, i) in seen:
                continue
            seen.add((i, j))
            h = [0] * n
            h[i] = self.datum.d[i]
            h[j] = -self.datum.d[j]
            out.append(tuple(h))
        for j in sorted(self.black):
            h = [0] * n
            h[j] = self.datum.d[j]
            out.append(tuple(h))
        return tuple(out)

    def relative_generator(self, i: int) -> tuple:
        """Reduced word for the relative reflection attached to a white node."""
        if i not in self.I_circ:
            raise RootDatumError(f"index {i} is not a white node")
        sub = set(self.black) | {i, self.tau[i]}
        w_j = self.datum.word_matrix_root(self.datum.longest_word(sub))
        w_b = self.datum.word_matrix_root(self.w_black)
        m = _mat_mul_int(w_j, self.datum._invert_int(w_b))
        return self.datum.word_from_matrix(m)

    def relative_orbit_representatives(self) -> tuple:
        seen, out = set(), []
        for i in self.I_circ:
            if i in seen:
                continue
            seen.add(i)
            seen.add(self.tau[i])
            out.append(i)
        return tuple(out)

    def tau0(self) -> tuple:
        """Diagram involution induced by the longest Weyl element."""
        out = [0] * self.datum.n
        for i in range(self.datum.n):
            a = tuple(1 if k == i else 0 for k in range(self.datum.n))
            neg = tuple(-v for v in self.datum.act_word_root(self.w0, a))
            if sum(abs(v) for v in neg) != 1:
                raise RootDatumError("w0 does not act by a diagram involution")
            out[i] = next(k for k, v in enumerate(neg) if v == 1)
        return tuple(out)

    def relative_weyl_matrix_on_y_theta(self, i: int) -> tuple:
        """Matrix of the relative reflection on the fixed Y_Theta basis."""
        basis = self.y_theta_basis()
        word = self.relative_generator(i)
        rect = [[Fraction(b[r]) for b in basis] for r in range(self.datum.n)]
        cols = []
        for b in basis:
            img = self.datum.act_word_Y(word, b)
            sol = _solve_rational(rect, [Fraction(v) for v in img])
            if sol is None or any(s.denominator != 1 for s in sol):
                raise RootDatumError("relative reflection does not preserve Y_Theta")
            cols.append([int(s) for s in sol])
        k = len(basis)
        return tuple(tuple(cols[c][r] for c in range(k)) for r in range(k))


def _solve_rational(a, rhs):
    rows = [list(r) + [b] for r, b in zip(a, rhs)]
    n = len(rows)
    ncols = len(a[0]) if a else 0
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((k for k in range(r, n) if rows[k][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for k in range(n):
            if k != r and rows[k][col]:
                f = rows[k][col]
                rows[k] = [x - f * y for x, y in zip(rows[k], rows[r])]
        pivots.append(col)
        r += 1
    for k in range(r, n):
        if rows[k][ncols]:
            return None
    x = [Fraction(0)] * ncols
    for k, pc in enumerate(pivots):
        x[pc] = rows[k][ncols]
    return x


# -- standard constructions ------------------------------------------------------


def cartan_matrix(family: str, n: int) -> tuple:
    """Cartan matrix and symmetrizer for the classical families and F4."""
    family = family.upper()
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, cij, cji):
        c[i][j] = cij
        c[j][i] = cji

    if family == "A":
        for i in range(n - 1):
            link(i, i + 1, -1, -1)
        d = [1] * n
    elif family == "B":
        if n < 2:
            raise RootDatumError("B needs rank >= 2")
        for i in range(n - 2):
            link(i, i + 1, -1, -1)
        link(n - 2, n - 1, -1, -2)
        d = [2] * (n - 1) + [1]
    elif family == "C":
        if n < 2:
            raise RootDatumError("C needs rank >= 2")
        for i in range(n - 2):
            link(i, i + 1, -1, -1)
        link(n - 2, n - 1, -2, -1)
        d = [1] * (n - 1) + [2]
    elif family == "D":
        if n < 3:
            raise RootDatumError("D needs rank >= 3")
        for i in range(n - 3):
            link(i, i + 1, -1, -1)
        link(n - 3, n - 2, -1, -1)
        link(n - 3, n - 1, -1, -1)
        d = [1] * n
    elif family == "F":
        if n != 4:
            raise RootDatumError("F needs rank 4")
        link(0, 1, -1, -1)
        link(1, 2, -1, -2)
        link(2, 3, -1, -1)
        d = [2, 2, 1, 1]
    else:
        raise RootDatumError(f"unsupported family {family!r}")
    return tuple(tuple(row) for row in c), tuple(d)


def root_datum(family: str, n: int) -> RootDatum:
    c, d = cartan_matrix(family, n)
    return RootDatum(c, d)


def _tau_from_black(datum: RootDatum, black, white_tau=None):
    """The involution forced by condition (ii): -w_black on black nodes."""
    n = datum.n
    w_black = datum.longest_word(black)
    tau = [None] * n
    for j in sorted(black):
        a = tuple(1 if k == j else 0 for k in range(n))
        neg = tuple(-v for v in datum.act_word_root(w_black, a))
        tau[j] = next(k for k, v in enumerate(neg) if v == 1)
    for i in range(n):
        if tau[i] is None:
            tau[i] = white_tau[i] if white_tau else i
    return tuple(tau)


RANK_ONE_TYPES = ("AI1", "AII3", "AIII11", "AIV", "BII", "CII", "DII", "FII")


def rank_one_satake(label: str, n: int | None = None) -> tuple:
    """(SatakeDatum, white index) for the rank-one types of the parameter table."""
    label = label.upper()
    if label == "AI1":
        return SatakeDatum(root_datum("A", 1), (), (0,)), 0
    if label == "AII3":
        return SatakeDatum(root_datum("A", 3), (0, 2), (0, 1, 2)), 1
    if label == "AIII11":
        datum = RootDatum(((2, 0), (0, 2)), (1, 1))
        return SatakeDatum(datum, (), (1, 0)), 0
    if label == "AIV":
        if n is None or n < 2:
            raise RootDatumError("AIV needs n >= 2")
        datum = root_datum("A", n)
        black = tuple(range(1, n - 1))
        tau = _tau_from_black(datum, black, tuple(n - 1 - k for k in range(n)))
        return SatakeDatum(datum, black, tau), 0
    if label == "BII":
        if n is None or n < 2:
            raise RootDatumError("BII needs n >= 2")
        datum = root_datum("B", n)
        black = tuple(range(1, n))
        return SatakeDatum(datum, black, _tau_from_black(datum, black)), 0
    if label == "CII":
        if n is None or n < 3:
            raise RootDatumError("CII needs n >= 3")
        datum = root_datum("C", n)
        black = (0,) + tuple(range(2, n))
        return SatakeDatum(datum, black, _tau_from_black(datum, black)), 1
    if label == "DII":
        if n is None or n < 4:
            raise RootDatumError("DII needs n >= 4")
        datum = root_datum("D", n)
        black = tuple(range(1, n))
        return SatakeDatum(datum, black, _tau_from_black(datum, black)), 0
    if label == "FII":
        datum = root_datum("F", 4)
        black = (0, 1, 2)
        return SatakeDatum(datum, black, _tau_from_black(datum, black)), 3
    raise RootDatumError(f"unsupported rank-one type {label!r}")


def table1_constants(label: str, n: int | None = None) -> tuple:
    """The four root-datum constants attached to a rank-one type."""
    satake, i = rank_one_satake(label, n)
    datum = satake.datum
    alpha_i = datum.alpha_in_X(i)
    c1 = datum.d[i] * datum.cartan[i][i]
    c2 = sum(2 * Fraction(satake.rho_black_vee[k]) * alpha_i[k]
             for k in range(datum.n))
    c3 = -datum.d[i] * 2 * Fraction(satake.rho_black[i])
    ai_root = tuple(1 if k == i else 0 for k in range(datum.n))
    diff = tuple(a - t for a, t in zip(ai_root, satake.theta_on_root(ai_root)))
    c4 = datum.form_X_root(datum.rho(), diff)
    out = []
    for v in (c1, c2, c3, c4):
        f = Fraction(v)
        if f.denominator != 1:
            raise RootDatumError(f"table constant {v} is not integral")
        out.append(int(f))
    return tuple(out)


# -- configuration files -----------------------------------------------------------


def satake_from_config(cfg: dict) -> SatakeDatum:
    """Build a Satake datum from a JSON config; indices in the file are 1-based."""
    try:
        cartan = cfg["cartan"]
        sym = cfg["symmetrizer"]
        black = [int(j) - 1 for j in cfg.get("black", [])]
        tau_raw = cfg.get("tau")
    except (KeyError, TypeError) as exc:
        raise RootDatumError(f"bad Satake config: {exc}") from exc
    datum = RootDatum(cartan, sym)
    if tau_raw is None:
        tau = tuple(range(datum.n))
    else:
        tau = tuple(int(t) - 1 for t in tau_raw)
    return SatakeDatum(datum, black, tau)


def load_satake(path: str) -> SatakeDatum:
    with open(path, "r", encoding="utf-8") as fh:
        return satake_from_config(json.load(fh))
