"""Exact finite-dimensional weight modules.

Simple highest-weight modules are realized concretely: weight spaces are
spanned by lowering-operator words applied to the highest weight vector, a
maximal set with nondegenerate contravariant Gram minor is kept as basis,
and the generator actions are stored as dense matrices over the exact
coefficient field.  In this basis the module bar involution is plain
coefficient conjugation, and the lowest weight basis vector is bar-fixed.
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .rootdata import RootDatum
from .scalars import Field, FieldElem


class DimensionCapExceeded(Exception):
    pass


class ModuleError(Exception):
    pass


class WeightModule:
    """A weight module given by generator matrices.

    weights: ordered tuple of X-coordinate tuples, one per basis vector.
    e_mats / f_mats: one dense matrix per Chevalley index.
    """

    def __init__(self, datum: RootDatum, field: Field, weights, e_mats, f_mats):
        self.datum = datum
        self.field = field
        self.weights = tuple(tuple(w) for w in weights)
        self.dim = len(self.weights)
        self.e_mats = e_mats
        self.f_mats = f_mats
        self._k_cache = {}
        blocks = {}
        for idx, w in enumerate(self.weights):
            blocks.setdefault(w, []).append(idx)
        self.blocks = {w: tuple(ix) for w, ix in blocks.items()}

    def weight_set(self):
        return sorted(self.blocks, key=lambda w: (self.root_height(w), w))

    def root_height(self, mu) -> Fraction:
        return sum(self.datum.X_to_root(mu))

    def k_exponent(self, h, mu) -> Fraction:
        return sum(Fraction(a) * Fraction(b) for a, b in zip(h, mu))

    def k_matrix(self, h) -> list:
        """Matrix of K_h for h in Y or the half lattice (Fraction coordinates)."""
        key = tuple(Fraction(x) for x in h)
        if key not in self._k_cache:
            out = linalg.zeros(self.dim, self.dim, self.field)
            for idx, mu in enumerate(self.weights):
                out[idx][idx] = self.field.q_power(self.k_exponent(key, mu))
            self._k_cache[key] = out
        return self._k_cache[key]

    def k_i_matrix(self, i: int, power: int = 1) -> list:
        h = tuple(power * self.datum.d[i] if k == i else 0 for k in range(self.datum.n))
        return self.k_matrix(h)

    def zero_vector(self) -> "ModuleVector":
        return ModuleVector(self, [self.field.zero] * self.dim)

    def basis_vector(self, idx: int) -> "ModuleVector":
        coeffs = [self.field.zero] * self.dim
        coeffs[idx] = self.field.one
        return ModuleVector(self, coeffs)


class ModuleVector:
    """A vector in a weight module, stored densely."""

    __slots__ = ("module", "coeffs")

    def __init__(self, module: WeightModule, coeffs):
        self.module = module
        self.coeffs = list(coeffs)

    def __eq__(self, other):
        return (isinstance(other, ModuleVector) and other.module is self.module
                and other.coeffs == self.coeffs)

    def is_zero(self) -> bool:
        return all(not c for c in self.coeffs)

    def __add__(self, other):
        self._check(other)
        return ModuleVector(self.module,
                            [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check(other)
        return ModuleVector(self.module,
                            [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return ModuleVector(self.module, [-a for a in self.coeffs])

    def scale(self, s) -> "ModuleVector":
        s = self.module.field.coerce(s)
        return ModuleVector(self.module, [a * s for a in self.coeffs])

    def _check(self, other):
        if other.module is not self.module:
            raise ModuleError("vectors live in different modules")

    def bar(self) -> "ModuleVector":
        """The module bar involution: anti-linear, fixing the word basis."""
        return ModuleVector(self.module, [c.bar() for c in self.coeffs])

    def support_weights(self) -> tuple:
        seen = []
        for idx, c in enumerate(self.coeffs):
            if c and self.module.weights[idx] not in seen:
                seen.append(self.module.weights[idx])
        return tuple(seen)

    def coefficient(self, idx: int) -> FieldElem:
        return self.coeffs[idx]

    def normalized_at(self, idx: int) -> "ModuleVector":
        c = self.coeffs[idx]
        if not c:
            raise ModuleError("cannot normalize at a vanishing coefficient")
        return self.scale(c.inverse())

    def proportional_to(self, other: "ModuleVector") -> bool:
        self._check(other)
        lead = next((k for k, c in enumerate(self.coeffs) if c), None)
        if lead is None:
            return other.is_zero()
        if not other.coeffs[lead]:
            return False
        ratio = other.coeffs[lead] / self.coeffs[lead]
        return all(b == a * ratio for a, b in zip(self.coeffs, other.coeffs))

    def __repr__(self):
        terms = [f"({c})*b{idx}" for idx, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) if terms else "0"


class SimpleModule(WeightModule):
    """The simple highest-weight module of a dominant weight."""

    def __init__(self, datum, field, lam, weights, e_mats, f_mats, grams, words):
        super().__init__(datum, field, weights, e_mats, f_mats)
        self.lam = tuple(lam)
        self.grams = grams            # weight -> Gram matrix of the basis block
        self.words = tuple(words)     # lowering word that produced each basis vector
        self.highest_index = 0
        lowest_wt = min(self.blocks, key=lambda w: (self.root_height(w), w))
        block = self.blocks[lowest_wt]
        if len(block) != 1:
            raise ModuleError("lowest weight space is not a line")
        self.lowest_index = block[0]
        self._gram_global = None

    def highest_vector(self) -> ModuleVector:
        return self.basis_vector(self.highest_index)

    def lowest_vector(self) -> ModuleVector:
        return self.basis_vector(self.lowest_index)

    def gram_global(self) -> list:
        if self._gram_global is None:
            g = linalg.zeros(self.dim, self.dim, self.field)
            for w, idxs in self.blocks.items():
                gb = self.grams[w]
                for a, ia in enumerate(idxs):
                    for b, ib in enumerate(idxs):
                        g[ia][ib] = gb[a][b]
            self._gram_global = g
        return self._gram_global

    def shapovalov(self, v: ModuleVector, w: ModuleVector) -> FieldElem:
        if v.module is not self or w.module is not self:
            raise ModuleError("the contravariant pairing needs vectors of this module")
        g = self.gram_global()
        out = self.field.zero
        for r, cv in enumerate(v.coeffs):
            if not cv:
                continue
            row = g[r]
            for c, cw in enumerate(w.coeffs):
                if cw and row[c]:
                    out = out + cv * row[c] * cw
        return out

    def gram_inverse(self) -> list:
        if getattr(self, "_gram_inverse", None) is None:
            self._gram_inverse = linalg.invert(self.gram_global())
        return self._gram_inverse

    def rho_twist_matrix(self, mat: list) -> list:
        """Transpose antiautomorphism realized by the Gram form:
        (v, X w) = (rho_twist(X) v, w) for every operator matrix X."""
        return linalg.mat_mul(self.gram_inverse(),
                              linalg.mat_mul(linalg.transpose(mat),
                                             self.gram_global()))


def shapovalov(v: ModuleVector, w: ModuleVector) -> FieldElem:
    if not isinstance(v.module, SimpleModule):
        raise ModuleError("the contravariant form lives on simple modules")
    if v.module is not w.module:
        raise ModuleError("vectors live in different modules")
    return v.module.shapovalov(v, w)


def bar_vector(v: ModuleVector) -> ModuleVector:
    return v.bar()


def act_matrix(mat: list, v: ModuleVector) -> ModuleVector:
    return ModuleVector(v.module, linalg.mat_vec(mat, v.coeffs))


def act_Kh(h, v: ModuleVector) -> ModuleVector:
    """Action of K_h for h in the half coweight lattice (Fraction coordinates)."""
    field = v.module.field
    out = list(v.coeffs)
    for idx, c in enumerate(out):
        if c:
            exp = v.module.k_exponent(h, v.module.weights[idx])
            out[idx] = c * field.q_power(exp)
    return ModuleVector(v.module, out)


def dual_pairing(f: ModuleVector, v: ModuleVector, mat=None) -> FieldElem:
    """(f, X v) under the contravariant identification of the dual."""
    if mat is not None:
        v = act_matrix(mat, v)
    return shapovalov(f, v)


# -- construction of simple modules ----------------------------------------------


def build_simple(datum: RootDatum, lam, field: Field,
                 dim_cap: int = 2000) -> SimpleModule:
    """Construct the simple module of highest weight lam.

    Weight spaces are spanned by lowering words; the Gram matrix of the
    spanning candidates is computed by moving raising operators across the
    commutator relation, and a maximal nondegenerate principal minor picks
    the basis.  The radical is quotiented implicitly: rejected candidates
    are expanded in the kept basis through the Gram system.
    """
    lam = tuple(int(x) for x in lam)
    if not datum.is_dominant(lam):
        raise ModuleError(f"{lam} is not dominant")
    n = datum.n
    w0lam = datum.act_word_X(datum.w0_word(), lam)
    deficit = datum.X_to_root(tuple(l - w for l, w in zip(lam, w0lam)))
    if any(x.denominator != 1 or x < 0 for x in deficit):
        raise ModuleError("highest weight is not above its lowest weight")
    deficit = tuple(int(x) for x in deficit)

    def weight_of(k):
        shift = datum.root_to_X(k)
        return tuple(l - s for l, s in zip(lam, shift))

    def lower(k, i):
        return tuple(v - 1 if t == i else v for t, v in enumerate(k))

    origin = tuple(0 for _ in range(n))
    levels = [[origin]]
    total = {origin}
    for h in range(1, sum(deficit) + 1):
        cur = []
        for k in levels[h - 1]:
            for i in range(n):
                if k[i] + 1 > deficit[i]:
                    continue
                nk = tuple(v + 1 if t == i else v for t, v in enumerate(k))
                if nk not in total:
                    total.add(nk)
                    cur.append(nk)
        if not cur:
            break
        levels.append(sorted(cur))

    basis_dim = {origin: 1}
    gram = {origin: [[field.one]]}
    words = {origin: [()]}
    e_block = {}   # (j, k) -> matrix of E_j from block k into block k - e_j
    f_block = {}   # (i, k) -> matrix of F_i from block k into block k + e_i
    running_dim = 1

    def bdim(k):
        return basis_dim.get(k, 0)

    for level in levels[1:]:
        for k in level:
            cands = []
            for i in range(n):
                if k[i] == 0:
                    continue
                src = lower(k, i)
                for col in range(bdim(src)):
                    cands.append((i, src, col))
            if not cands:
                basis_dim[k] = 0
                continue
            # E_j of each candidate F_i b, written in the basis of block k - e_j
            e_of_cand = {}
            for ci, (i, src, col) in enumerate(cands):
                for j in range(n):
                    dst = lower(k, j)
                    if any(x < 0 for x in dst):
                        continue
                    vec = [field.zero] * bdim(dst)
                    up = lower(src, j)
                    if all(x >= 0 for x in up) and bdim(up) > 0:
                        eb = e_block.get((j, src))
                        fb = f_block.get((i, up))
                        if eb is not None and fb is not None:
                            for r in range(bdim(dst)):
                                acc = field.zero
                                for t in range(bdim(up)):
                                    if eb[t][col] and fb[r][t]:
                                        acc = acc + fb[r][t] * eb[t][col]
                                vec[r] = acc
                    if i == j:
                        scal = field.qint(int(weight_of(src)[i]), datum.d[i])
                        if scal:
                            vec[col] = vec[col] + scal
                    e_of_cand[(ci, j)] = vec
            # Gram matrix of the candidates via the block above
            m = len(cands)
            g = [[field.zero] * m for _ in range(m)]
            for a in range(m):
                ia, srca, cola = cands[a]
                grow = gram[srca][cola]
                for b in range(m):
                    vec = e_of_cand.get((b, ia))
                    if vec is None:
                        continue
                    acc = field.zero
                    for t, x in enumerate(vec):
                        if x and grow[t]:
                            acc = acc + grow[t] * x
                    g[a][b] = acc
            keep = linalg.symmetric_nondegenerate_subset(g)
            basis_dim[k] = len(keep)
            running_dim += len(keep)
            if running_dim > dim_cap:
                raise DimensionCapExceeded(
                    f"dimension cap {dim_cap} exceeded while building L{lam}")
            expansions = {}
            if keep:
                gram[k] = [[g[a][b] for b in keep] for a in keep]
                words[k] = [(cands[a][0],) + tuple(words[cands[a][1]][cands[a][2]])
                            for a in keep]
                gk = gram[k]
                for ci in range(m):
                    if ci in keep:
                        pos = keep.index(ci)
                        expansions[ci] = [field.one if t == pos else field.zero
                                          for t in range(len(keep))]
                    else:
                        sol = linalg.solve(gk, [g[a][ci] for a in keep], field)
                        if sol is None:
                            raise ModuleError("dependent candidate failed to resolve")
                        expansions[ci] = sol
            for i in range(n):
                src = lower(k, i)
                if any(x < 0 for x in src) or bdim(src) == 0:
                    continue
                fb = [[field.zero] * bdim(src) for _ in range(len(keep))]
                for ci, (ii, srcc, col) in enumerate(cands):
                    if ii != i or srcc != src:
                        continue
                    for r in range(len(keep)):
                        fb[r][col] = expansions[ci][r]
                f_block[(i, src)] = fb
            for j in range(n):
                dst = lower(k, j)
                if any(x < 0 for x in dst) or bdim(dst) == 0 or not keep:
                    continue
                eb = [[field.zero] * len(keep) for _ in range(bdim(dst))]
                for pos, ci in enumerate(keep):
                    vec = e_of_cand[(ci, j)]
                    for r in range(bdim(dst)):
                        eb[r][pos] = vec[r]
                e_block[(j, k)] = eb

    order = []
    for level in levels:
        for k in level:
            for col in range(bdim(k)):
                order.append((k, col))
    index_of = {kc: idx for idx, kc in enumerate(order)}
    dim = len(order)
    weights = [weight_of(k) for k, _ in order]
    e_mats = {i: linalg.zeros(dim, dim, field) for i in range(n)}
    f_mats = {i: linalg.zeros(dim, dim, field) for i in range(n)}
    for (i, src), fb in f_block.items():
        dst = tuple(v + 1 if t == i else v for t, v in enumerate(src))
        for r in range(len(fb)):
            for c in range(len(fb[r])):
                if fb[r][c]:
                    f_mats[i][index_of[(dst, r)]][index_of[(src, c)]] = fb[r][c]
    for (j, k), eb in e_block.items():
        dst = lower(k, j)
        for r in range(len(eb)):
            for c in range(len(eb[r])):
                if eb[r][c]:
                    e_mats[j][index_of[(dst, r)]][index_of[(k, c)]] = eb[r][c]
    grams_by_weight = {}
    word_list = []
    for k, col in order:
        grams_by_weight[weight_of(k)] = gram[k]
        word_list.append(words[k][col])
    return SimpleModule(datum, field, lam, weights, e_mats, f_mats,
                        grams_by_weight, word_list)


def tensor(m1: WeightModule, m2: WeightModule) -> WeightModule:
    """Tensor product module through the coproduct on the generators."""
    if m1.datum.cartan != m2.datum.cartan or m1.datum.d != m2.datum.d:
        raise ModuleError("tensor factors live over different root data")
    if m1.field != m2.field:
        raise ModuleError("tensor factors live over different fields")
    field = m1.field
    weights = [tuple(a + b for a, b in zip(w1, w2))
               for w1 in m1.weights for w2 in m2.weights]
    id1 = linalg.identity(m1.dim, field)
    id2 = linalg.identity(m2.dim, field)
    e_mats, f_mats = {}, {}
    for i in range(m1.datum.n):
        e_mats[i] = linalg.mat_add(
            linalg.kron(m1.e_mats[i], id2, field),
            linalg.kron(m1.k_i_matrix(i), m2.e_mats[i], field))
        f_mats[i] = linalg.mat_add(
            linalg.kron(id1, m2.f_mats[i], field),
            linalg.kron(m1.f_mats[i], m2.k_i_matrix(i, -1), field))
    return WeightModule(m1.datum, field, weights, e_mats, f_mats)


def tensor_vector(v1: ModuleVector, v2: ModuleVector, t: WeightModule) -> ModuleVector:
    field = v1.module.field
    coeffs = [field.zero] * t.dim
    d2 = v2.module.dim
    for a, ca in enumerate(v1.coeffs):
        if not ca:
            continue
        for b, cb in enumerate(v2.coeffs):
            if cb:
                coeffs[a * d2 + b] = ca * cb
    return ModuleVector(t, coeffs)


# -- relation verification --------------------------------------------------------


def matrix_power(mat: list, k: int, field: Field) -> list:
    out = linalg.identity(len(mat), field)
    for _ in range(k):
        out = linalg.mat_mul(out, mat)
    return out


def check_defining_relations(m: WeightModule) -> list:
    """Exact matrix verification of all defining relations; returns violations."""
    field = m.field
    datum = m.datum
    problems = []
    n = datum.n
    for i in range(n):
        for j in range(n):
            lhs = linalg.mat_sub(linalg.mat_mul(m.e_mats[i], m.f_mats[j]),
                                 linalg.mat_mul(m.f_mats[j], m.e_mats[i]))
            if i == j:
                expect = linalg.zeros(m.dim, m.dim, field)
                for idx, mu in enumerate(m.weights):
                    expect[idx][idx] = field.qint(int(mu[i]), datum.d[i])
                if not linalg.mat_eq(lhs, expect):
                    problems.append(f"[E_{i}, F_{i}] differs from the torus term")
            elif not linalg.is_zero_matrix(lhs):
                problems.append(f"[E_{i}, F_{j}] is nonzero")
    for i in range(n):
        k = m.k_i_matrix(i)
        kinv = m.k_i_matrix(i, -1)
        for j in range(n):
            scal = field.q_power(Fraction(datum.d[i] * datum.cartan[i][j]))
            lhs = linalg.mat_mul(k, linalg.mat_mul(m.e_mats[j], kinv))
            if not linalg.mat_eq(lhs, linalg.mat_scale(m.e_mats[j], scal)):
                problems.append(f"K_{i} E_{j} K_{i}^-1 has the wrong scalar")
            lhs = linalg.mat_mul(k, linalg.mat_mul(m.f_mats[j], kinv))
            if not linalg.mat_eq(lhs, linalg.mat_scale(m.f_mats[j], scal.inverse())):
                problems.append(f"K_{i} F_{j} K_{i}^-1 has the wrong scalar")
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            nij = 1 - datum.cartan[i][j]
            for mats, name in ((m.e_mats, "E"), (m.f_mats, "F")):
                acc = linalg.zeros(m.dim, m.dim, field)
                for s in range(nij + 1):
                    r = nij - s
                    coeff = (field.qfact(r, datum.d[i])
                             * field.qfact(s, datum.d[i])).inverse()
                    if s % 2:
                        coeff = -coeff
                    term = linalg.mat_mul(
                        matrix_power(mats[i], r, field),
                        linalg.mat_mul(mats[j], matrix_power(mats[i], s, field)))
                    acc = linalg.mat_add(acc, linalg.mat_scale(term, coeff))
                if not linalg.is_zero_matrix(acc):
                    problems.append(f"Serre relation fails for {name}_{i}, {name}_{j}")
    return problems


def check_contravariance(m: SimpleModule) -> list:
    """(v, E_i w) = (F_i v, w) and (v, F_i w) = (E_i v, w) on the Gram data."""
    g = m.gram_global()
    problems = []
    for i in range(m.datum.n):
        if not linalg.mat_eq(linalg.mat_mul(g, m.e_mats[i]),
                             linalg.mat_mul(linalg.transpose(m.f_mats[i]), g)):
            problems.append(f"contravariance fails for E_{i}")
        if not linalg.mat_eq(linalg.mat_mul(g, m.f_mats[i]),
                             linalg.mat_mul(linalg.transpose(m.e_mats[i]), g)):
            problems.append(f"contravariance fails for F_{i}")
    return problems
