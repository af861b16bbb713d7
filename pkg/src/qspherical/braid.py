"""Braid group operators on weight modules.

The rank-one operators are evaluated by the divided-power triple sum on each
weight vector; composites follow reduced words.  Conjugation by a composite
realizes the corresponding algebra automorphism on any operator matrix.
Diagonal twists rescale the Chevalley generators and implement the rescaled
operators attached to a parameter.
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .modules import ModuleVector, SimpleModule, WeightModule, act_matrix
from .scalars import UnrepresentableScalar


class OperatorError(Exception):
    pass


class Operator:
    """A linear operator on a weight module, with exact matrix."""

    __slots__ = ("module", "mat", "_inv")

    def __init__(self, module: WeightModule, mat):
        self.module = module
        self.mat = mat
        self._inv = None

    @classmethod
    def identity(cls, module: WeightModule) -> "Operator":
        return cls(module, linalg.identity(module.dim, module.field))

    def __matmul__(self, other: "Operator") -> "Operator":
        self._check(other)
        return Operator(self.module, linalg.mat_mul(self.mat, other.mat))

    def _check(self, other):
        if other.module is not self.module:
            raise OperatorError("operators act on different modules")

    def inverse(self) -> "Operator":
        if self._inv is None:
            self._inv = Operator(self.module, linalg.invert(self.mat))
            self._inv._inv = self
        return self._inv

    def apply(self, v: ModuleVector) -> ModuleVector:
        if v.module is not self.module:
            raise OperatorError("vector lives on a different module")
        return act_matrix(self.mat, v)

    def conj(self, x) -> "Operator":
        """The automorphism realized by this operator: x -> T x T^-1."""
        xm = x.mat if isinstance(x, Operator) else x
        return Operator(self.module,
                        linalg.mat_mul(self.mat,
                                       linalg.mat_mul(xm, self.inverse().mat)))

    def bar_conjugate(self) -> "Operator":
        """The operator bar . self . bar, entrywise bar in a bar-fixed basis."""
        return Operator(self.module, linalg.bar_matrix(self.mat))

    def __eq__(self, other):
        return (isinstance(other, Operator) and other.module is self.module
                and linalg.mat_eq(self.mat, other.mat))

    def is_identity(self) -> bool:
        return linalg.mat_eq(self.mat, linalg.identity(self.module.dim,
                                                       self.module.field))

    def weight_shifts(self) -> set:
        """Root-lattice shifts connecting nonzero blocks, for bookkeeping."""
        out = set()
        w = self.module.weights
        datum = self.module.datum
        for r in range(self.module.dim):
            for c in range(self.module.dim):
                if self.mat[r][c]:
                    diff = tuple(a - b for a, b in zip(w[r], w[c]))
                    out.add(tuple(datum.X_to_root(diff)))
        return out


def generator_operator(module: WeightModule, kind: str, i: int) -> Operator:
    if kind == "E":
        return Operator(module, module.e_mats[i])
    if kind == "F":
        return Operator(module, module.f_mats[i])
    raise OperatorError(f"unknown generator kind {kind!r}")


def _divided_powers(module: WeightModule, mat, i: int, limit: int) -> list:
    """[X^(0), X^(1), ..., X^(k)] up to the nilpotency degree."""
    field = module.field
    out = [linalg.identity(module.dim, field)]
    cur = linalg.identity(module.dim, field)
    k = 1
    while k <= limit:
        cur = linalg.mat_mul(cur, mat)
        if linalg.is_zero_matrix(cur):
            break
        out.append(linalg.mat_scale(cur, module.field.qfact(k, module.datum.d[i]).inverse()))
        k += 1
    return out


def lusztig_T(i: int, e: int, kind: str, module: WeightModule) -> Operator:
    """Rank-one braid operator, 'prime' or 'doubleprime', sign e = +-1.

    On a weight vector of pairing value p with the coroot, the sum runs over
    triples (a, b, c) with a - b + c = p for the prime kind (lowering words
    outside) and a - b + c = -p for the double-prime kind (raising words
    outside); each term carries (-1)^b q_i^(e(b - ac)).
    """
    if e not in (1, -1):
        raise OperatorError("sign must be +1 or -1")
    if kind not in ("prime", "doubleprime"):
        raise OperatorError(f"unknown kind {kind!r}")
    field = module.field
    datum = module.datum
    dim = module.dim
    heights = [int(Fraction(module.root_height(w))) for w in module.weights] if dim else []
    span = (max(heights) - min(heights)) if dim else 0
    fpow = _divided_powers(module, module.f_mats[i], i, span + 1)
    epow = _divided_powers(module, module.e_mats[i], i, span + 1)
    out = linalg.zeros(dim, dim, field)
    outer, inner = (fpow, epow) if kind == "prime" else (epow, fpow)
    for col in range(dim):
        p = int(module.weights[col][i])
        target = p if kind == "prime" else -p
        vec = [field.zero] * dim
        vec[col] = field.one
        for c in range(len(outer)):
            first = linalg.mat_vec(outer[c], vec)
            if all(not x for x in first):
                continue
            for b in range(len(inner)):
                second = linalg.mat_vec(inner[b], first)
                if all(not x for x in second):
                    continue
                a = target + b - c
                if a < 0 or a >= len(outer):
                    continue
                third = linalg.mat_vec(outer[a], second)
                if all(not x for x in third):
                    continue
                scal = field.q_power(Fraction(e * (b - a * c) * datum.d[i]))
                if b % 2:
                    scal = -scal
                for r in range(dim):
                    if third[r]:
                        out[r][col] = out[r][col] + scal * third[r]
    return Operator(module, out)


def lusztig_T_word(word, e: int, kind: str, module: WeightModule) -> Operator:
    """Composite braid operator along a reduced word, leftmost factor first."""
    out = Operator.identity(module)
    for i in word:
        out = out @ lusztig_T(i, e, kind, module)
    return out


def conjugate_element(word, e: int, kind: str, x: Operator) -> Operator:
    """Image of an operator under the braid automorphism along the word."""
    t = lusztig_T_word(word, e, kind, x.module)
    return t.conj(x)


def phi_diag(a: dict, module: SimpleModule) -> Operator:
    """Diagonal twist v_mu -> prod_i a_i^(t_i/2) v_mu where lam - mu = sum t_i alpha_i.

    Needs every square root a_i^(1/2) to exist as a monomial.
    """
    if not isinstance(module, SimpleModule):
        raise OperatorError("diagonal twists need a designated highest weight")
    field = module.field
    roots = {}
    for i, val in a.items():
        val = field.coerce(val)
        root = val.monomial_sqrt()
        if root is None:
            raise UnrepresentableScalar(f"square root of {val} is unavailable")
        roots[i] = root
    out = linalg.zeros(module.dim, module.dim, field)
    for idx, mu in enumerate(module.weights):
        t = module.datum.X_to_root(tuple(l - m for l, m in zip(module.lam, mu)))
        scal = field.one
        for i, root in roots.items():
            ti = t[i]
            if ti.denominator != 1:
                raise OperatorError("weight is not in the root cone above the lowest weight")
            scal = scal * root ** int(ti)
        out[idx][idx] = scal
    return Operator(module, out)


def twist_conjugator(a: dict, module: SimpleModule) -> Operator:
    """The diagonal W with W X W^-1 = (twist by a)(X): E_i -> a_i^(1/2) E_i,
    F_i -> a_i^(-1/2) F_i, K fixed.  Inverse of the phi_diag normalization."""
    return phi_diag(a, module).inverse()


def twist_operator(a: dict, x: Operator) -> Operator:
    """Apply the rescaling automorphism E_i -> a_i^(1/2) E_i to an operator."""
    w = twist_conjugator(a, x.module)
    return w.conj(x)


def rescaled_T(i: int, param, module: SimpleModule) -> Operator:
    """Rescaled braid operator attached to a balanced parameter: the twist by
    bar(c_distinguished) * c applied to the composite operator of the relative
    reflection."""
    from .qsp import distinguished_parameter
    satake = param.satake
    if not param.is_balanced():
        raise OperatorError("rescaled operators need a balanced parameter")
    cdist = distinguished_parameter(satake, module.field)
    a = {}
    for j in satake.I_circ:
        a[j] = cdist.c[j].bar() * param.c[j]
    word = satake.relative_generator(i)
    t = lusztig_T_word(word, -1, "prime", module)
    w = twist_conjugator(a, module)
    return w.conj(t)
