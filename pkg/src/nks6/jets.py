"""Truncated multivariate Taylor arithmetic.

A :class:`Jet` stores the Taylor coefficients of a (possibly array-valued)
quantity in ``nvars`` local variables, up to total degree ``order``.  The
coefficient of the multi-index ``alpha`` is ``d^alpha f / alpha!``.
Coefficients live on the last axis, in graded lexicographic order, so the
first ``ncoef(nvars, m)`` entries of an order ``order`` jet are exactly its
truncation to order ``m``.

Everything is exact polynomial algebra modulo terms of degree > order; the
only rounding is floating point.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb, factorial, prod

import numpy as np

MAX_VARS = 3
MAX_ORDER = 4


def ncoef(nvars, order):
    return comb(nvars + order, order)


@lru_cache(maxsize=None)
def multi_indices(nvars, order):
    """Multi-indices of total degree <= order, graded then lexicographic (descending)."""
    out = []
    for deg in range(order + 1):
        out.extend(_compositions(deg, nvars))
    return tuple(out)


def _compositions(deg, nvars):
    if nvars == 1:
        return [(deg,)]
    res = []
    for first in range(deg, -1, -1):
        for rest in _compositions(deg - first, nvars - 1):
            res.append((first,) + rest)
    return res


@lru_cache(maxsize=None)
def _index(nvars, order):
    return {a: i for i, a in enumerate(multi_indices(nvars, order))}


@lru_cache(maxsize=None)
def _product_table(nvars, order):
    """Unordered pairs ``i <= j`` with deg(a_i)+deg(a_j) <= order plus a scatter matrix.

    Each pair contributes ``a_i b_j + a_j b_i`` (or ``a_i b_i``), so the
    product is commutative bit for bit.
    """
    idx = multi_indices(nvars, order)
    pos = _index(nvars, order)
    ia, ib, ic = [], [], []
    for i, a in enumerate(idx):
        for j in range(i, len(idx)):
            c = tuple(x + y for x, y in zip(a, idx[j]))
            k = pos.get(c)
            if k is not None:
                ia.append(i)
                ib.append(j)
                ic.append(k)
    scatter = np.zeros((len(ia), len(idx)))
    scatter[np.arange(len(ia)), ic] = 1.0
    ia, ib = np.array(ia), np.array(ib)
    return ia, ib, ia != ib, scatter


@lru_cache(maxsize=None)
def _derivative_table(nvars, order, var):
    """For d/du_var: source positions and integer factors, one per target coefficient."""
    src_pos = _index(nvars, order)
    src, fac = [], []
    for a in multi_indices(nvars, order - 1):
        b = list(a)
        b[var] += 1
        src.append(src_pos[tuple(b)])
        fac.append(float(b[var]))
    return np.array(src, dtype=np.intp), np.array(fac)


class Jet:
    """Array-valued truncated Taylor polynomial.

    ``coef`` has shape ``(*shape, ncoef(nvars, order))``.
    """

    __slots__ = ("coef", "nvars", "order")
    __array_ufunc__ = None

    def __init__(self, coef, nvars, order):
        if not 1 <= nvars <= MAX_VARS:
            raise ValueError(f"nvars must be in 1..{MAX_VARS}")
        if not 0 <= order <= MAX_ORDER:
            raise ValueError(f"order must be in 0..{MAX_ORDER}")
        coef = np.asarray(coef, dtype=float)
        if coef.shape[-1:] != (ncoef(nvars, order),):
            raise ValueError(
                f"expected {ncoef(nvars, order)} coefficients, got shape {coef.shape}"
            )
        self.coef = coef
        self.nvars = nvars
        self.order = order

    # construction -----------------------------------------------------
    @classmethod
    def constant(cls, value, nvars, order):
        value = np.asarray(value, dtype=float)
        coef = np.zeros(value.shape + (ncoef(nvars, order),))
        coef[..., 0] = value
        return cls(coef, nvars, order)

    @classmethod
    def variable(cls, k, at, nvars, order):
        """The jet of the k-th coordinate expanded around ``at``."""
        coef = np.zeros(ncoef(nvars, order))
        coef[0] = at
        if order >= 1:
            unit = [0] * nvars
            unit[k] = 1
            coef[_index(nvars, order)[tuple(unit)]] = 1.0
        return cls(coef, nvars, order)

    # array-like surface ---------------------------------------------
    @property
    def shape(self):
        return self.coef.shape[:-1]

    @property
    def ndim(self):
        return self.coef.ndim - 1

    @property
    def value(self):
        return self.coef[..., 0]

    def __len__(self):
        return self.coef.shape[0]

    def __getitem__(self, key):
        if not isinstance(key, tuple):
            key = (key,)
        if any(k is Ellipsis or k is None for k in key):
            raise IndexError("jets support only basic indexing of leading axes")
        return Jet(self.coef[key], self.nvars, self.order)

    def __iter__(self):
        for i in range(len(self)):
            yield self[i]

    def reshape(self, *shape):
        if len(shape) == 1 and isinstance(shape[0], tuple):
            shape = shape[0]
        return Jet(self.coef.reshape(shape + (self.coef.shape[-1],)), self.nvars, self.order)

    def transpose(self, *axes):
        if not axes:
            axes = tuple(range(self.ndim))[::-1]
        return Jet(np.transpose(self.coef, tuple(axes) + (self.ndim,)), self.nvars, self.order)

    @property
    def T(self):
        return self.transpose()

    def sum(self, axis=None):
        if axis is None:
            axis = tuple(range(self.ndim))
        axis = _normalize_axis(axis, self.ndim)
        return Jet(self.coef.sum(axis=axis), self.nvars, self.order)

    def truncate(self, order):
        if order > self.order:
            raise ValueError("cannot raise the order of a jet")
        return Jet(self.coef[..., : ncoef(self.nvars, order)], self.nvars, order)

    def __repr__(self):
        return f"Jet(shape={self.shape}, nvars={self.nvars}, order={self.order})"

    # arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Jet):
            if other.nvars != self.nvars:
                raise ValueError("jets have different numbers of variables")
            m = min(self.order, other.order)
            return self.truncate(m), other.truncate(m)
        return self, other

    def __add__(self, other):
        a, b = self._coerce(other)
        if isinstance(b, Jet):
            return Jet(a.coef + b.coef, a.nvars, a.order)
        b = np.asarray(b, dtype=float)
        coef = a.coef + np.zeros(b.shape + (1,))
        coef[..., 0] = coef[..., 0] + b
        return Jet(coef, a.nvars, a.order)

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.coef, self.nvars, self.order)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._coerce(other)
        if isinstance(b, Jet):
            return mul(a, b)
        b = np.asarray(b, dtype=float)
        return Jet(a.coef * b[..., None], a.nvars, a.order)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return self * reciprocal(other)
        return self * (1.0 / np.asarray(other, dtype=float))

    def __rtruediv__(self, other):
        return reciprocal(self) * other

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return power(self, n)
        out = Jet.constant(np.ones(self.shape), self.nvars, self.order)
        for _ in range(n):
            out = out * self
        return out

    def __matmul__(self, other):
        return matmul(self, other)

    def __rmatmul__(self, other):
        return matmul(other, self)


def _normalize_axis(axis, ndim):
    if isinstance(axis, int):
        axis = (axis,)
    return tuple(a % ndim for a in axis)


def _as_jet(x, like):
    if isinstance(x, Jet):
        return x
    return Jet.constant(x, like.nvars, like.order)


def mul(a, b):
    """Truncated (broadcasting, elementwise) product of two jets."""
    a, b = a._coerce(b)
    ia, ib, off, scatter = _product_table(a.nvars, a.order)
    terms = a.coef[..., ia] * b.coef[..., ib] + np.where(off, a.coef[..., ib] * b.coef[..., ia], 0.0)
    return Jet(terms @ scatter, a.nvars, a.order)


def jet_mul(a, b):
    """Product of two jets with identical shape, variables and order."""
    if not (isinstance(a, Jet) and isinstance(b, Jet)):
        raise TypeError("jet_mul expects two jets")
    if a.shape != b.shape or a.nvars != b.nvars or a.order != b.order:
        raise ValueError("jet shapes, variable counts and orders must match")
    return mul(a, b)


def einsum(subscripts, a, b):
    """Two-operand ``numpy.einsum`` on jets (or a jet and a constant array)."""
    inputs, out = subscripts.replace(" ", "").split("->")
    sa, sb = inputs.split(",")
    if not isinstance(a, Jet) and not isinstance(b, Jet):
        return np.einsum(subscripts, a, b)
    if not isinstance(a, Jet):
        return Jet(np.einsum(f"{sa},{sb}Z->{out}Z", a, b.coef), b.nvars, b.order)
    if not isinstance(b, Jet):
        return Jet(np.einsum(f"{sa}Z,{sb}->{out}Z", a.coef, b), a.nvars, a.order)
    a, b = a._coerce(b)
    ia, ib, off, scatter = _product_table(a.nvars, a.order)
    pairs = np.einsum(f"{sa}Z,{sb}Z->{out}Z", a.coef[..., ia], b.coef[..., ib])
    swapped = np.einsum(f"{sa}Z,{sb}Z->{out}Z", a.coef[..., ib[off]], b.coef[..., ia[off]])
    pairs[..., off] += swapped
    return Jet(pairs @ scatter, a.nvars, a.order)


def matmul(a, b):
    if not isinstance(a, Jet) and not isinstance(b, Jet):
        return np.asarray(a) @ np.asarray(b)
    na = a.ndim if isinstance(a, Jet) else np.ndim(a)
    nb = b.ndim if isinstance(b, Jet) else np.ndim(b)
    if na == 2 and nb == 2:
        return einsum("ij,jk->ik", a, b)
    if na == 2 and nb == 1:
        return einsum("ij,j->i", a, b)
    if na == 1 and nb == 2:
        return einsum("j,jk->k", a, b)
    if na == 1 and nb == 1:
        return einsum("j,j->", a, b)
    raise ValueError("matmul supports 1-d and 2-d operands only")


def dot(a, b):
    """Inner product over the last axis."""
    return sum_last(a * b)


def sum_last(a):
    if isinstance(a, Jet):
        return a.sum(axis=-1)
    return np.sum(a, axis=-1)


def stack(items, axis=0):
    """Stack jets (and constants) along a new leading axis."""
    items = list(items)
    ref = next((x for x in items if isinstance(x, Jet)), None)
    if ref is None:
        return np.stack([np.asarray(x, dtype=float) for x in items], axis=axis)
    m = min(x.order for x in items if isinstance(x, Jet))
    jets = [_as_jet(x, ref).truncate(m) if isinstance(x, Jet) else
            Jet.constant(x, ref.nvars, m) for x in items]
    coef = np.stack([j.coef for j in jets], axis=axis if axis >= 0 else axis - 1)
    return Jet(coef, ref.nvars, m)


def partial(a, var):
    """d/du_var of a jet; the result has order one less."""
    if a.order == 0:
        raise ValueError("cannot differentiate an order-0 jet")
    if not 0 <= var < a.nvars:
        raise ValueError("variable index out of range")
    src, fac = _derivative_table(a.nvars, a.order, var)
    return Jet(a.coef[..., src] * fac, a.nvars, a.order - 1)


def gradient(a):
    """Stack of all first partials, new leading axis indexing the variable."""
    return stack([partial(a, k) for k in range(a.nvars)])


def extract_partial(a, multi_index):
    """Partial derivative at the expansion point for ``multi_index``."""
    multi_index = tuple(int(k) for k in multi_index)
    if len(multi_index) != a.nvars:
        raise ValueError(f"multi-index must have {a.nvars} entries")
    if sum(multi_index) > a.order:
        raise ValueError(
            f"multi-index of degree {sum(multi_index)} exceeds jet order {a.order}"
        )
    pos = _index(a.nvars, a.order)[multi_index]
    return a.coef[..., pos] * prod(factorial(k) for k in multi_index)


# analytic composition -------------------------------------------------------

def _compose(a, derivs):
    """sum_k derivs[k](a0) / k! * (a - a0)^k with derivs evaluated by the caller."""
    a0 = a.value
    delta = Jet(a.coef.copy(), a.nvars, a.order)
    delta.coef[..., 0] = 0.0
    out = Jet.constant(derivs[0], a.nvars, a.order)
    power_k = Jet.constant(np.ones(a.shape), a.nvars, a.order)
    for k in range(1, a.order + 1):
        power_k = power_k * delta
        out = out + power_k * (derivs[k] / factorial(k))
    return out


def _cyc(a0, order, table):
    return [table[k % 4](a0) for k in range(order + 1)]


def sin(a):
    if not isinstance(a, Jet):
        return np.sin(a)
    return _compose(a, _cyc(a.value, a.order,
                            (np.sin, np.cos, lambda x: -np.sin(x), lambda x: -np.cos(x))))


def cos(a):
    if not isinstance(a, Jet):
        return np.cos(a)
    return _compose(a, _cyc(a.value, a.order,
                            (np.cos, lambda x: -np.sin(x), lambda x: -np.cos(x), np.sin)))


def exp(a):
    if not isinstance(a, Jet):
        return np.exp(a)
    e = np.exp(a.value)
    return _compose(a, [e] * (a.order + 1))


def power(a, p):
    """``a**p`` for real p; the constant term must be positive unless p is a natural number."""
    if not isinstance(a, Jet):
        return np.power(a, p)
    a0 = a.value
    if np.any(a0 <= 0):
        raise ValueError("power of a jet requires a positive constant term")
    derivs = []
    c = np.ones_like(a0)
    for k in range(a.order + 1):
        derivs.append(c * a0 ** (p - k))
        c = c * (p - k)
    return _compose(a, derivs)


def sqrt(a):
    if not isinstance(a, Jet):
        return np.sqrt(a)
    if np.any(a.value < 0):
        raise ValueError("sqrt of a jet with negative constant term")
    return power(a, 0.5)


def reciprocal(a):
    if not isinstance(a, Jet):
        return 1.0 / np.asarray(a, dtype=float)
    a0 = a.value
    if np.any(a0 == 0):
        raise ValueError("reciprocal of a jet with zero constant term")
    derivs = []
    c = np.ones_like(a0)
    for k in range(a.order + 1):
        derivs.append(c / a0 ** (k + 1))
        c = -c * (k + 1)
    return _compose(a, derivs)


ANALYTIC = {"sin": sin, "cos": cos, "exp": exp, "sqrt": sqrt, "reciprocal": reciprocal}


def jet_compose_analytic(fn, a):
    """Compose a named analytic primitive with a jet."""
    try:
        return ANALYTIC[fn](a)
    except KeyError:
        raise ValueError(f"unknown primitive {fn!r}; choose from {sorted(ANALYTIC)}") from None


def inv(a):
    """Inverse of a square jet matrix (Neumann series around the constant part)."""
    if not isinstance(a, Jet):
        return np.linalg.inv(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("inv expects a square matrix jet")
    a0inv = np.linalg.inv(a.value)
    e = Jet(a.coef.copy(), a.nvars, a.order)
    e.coef[..., 0] = 0.0
    step = -(a0inv @ e)          # nilpotent: step^(order+1) = 0
    term = Jet.constant(np.eye(a.shape[0]), a.nvars, a.order)
    total = term
    for _ in range(a.order):
        term = term @ step
        total = total + term
    return total @ a0inv


def seed(point, order):
    """Coordinate jets of all variables expanded around ``point``."""
    point = np.asarray(point, dtype=float)
    n = point.shape[0]
    return [Jet.variable(k, point[k], n, order) for k in range(n)]


def value(x):
    """Constant term of a jet, or the array itself."""
    return x.value if isinstance(x, Jet) else np.asarray(x, dtype=float)
