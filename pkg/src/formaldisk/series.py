"""Exact truncated power series over the rationals.

Everything here is plain fractions.Fraction arithmetic.  A multivariate
series carries an explicit validity cap N: coefficients of total degree
<= N are meaningful, higher ones are silently dropped.  Products take
the minimum of the caps of the factors, differentiation lowers the cap
by one.  Univariate series (used for Bernoulli-type generating
functions and Todd series) are dense coefficient lists with the same
exact arithmetic.
"""

from __future__ import annotations

import json
from fractions import Fraction
from itertools import product as _cartesian

DEFAULT_CAP = 8

Q0 = Fraction(0)
Q1 = Fraction(1)


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError("exact coefficient expected, got %r" % (x,))


class TruncatedSeries:
    """Sparse multivariate power series, exponent tuple -> Fraction.

    Exponent tuples have length dim and non-negative entries; terms of
    total degree > cap are never stored.  A cap of -1 marks a series
    with no trustworthy coefficients at all (it arises from
    differentiating a cap-0 series) and behaves as zero.
    """

    __slots__ = ("dim", "cap", "terms")

    def __init__(self, dim, cap, terms=None):
        if dim < 1:
            raise ValueError("dim must be >= 1")
        if cap < -1:
            raise ValueError("cap must be >= -1")
        self.dim = dim
        self.cap = cap
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != dim or any(e < 0 for e in exp):
                raise ValueError("bad exponent %r for dim %d" % (exp, dim))
            if sum(exp) > cap:
                continue
            c = _as_fraction(c)
            if c != 0:
                clean[exp] = c
        self.terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, dim, cap=DEFAULT_CAP):
        return cls(dim, cap)

    @classmethod
    def const(cls, dim, value, cap=DEFAULT_CAP):
        value = _as_fraction(value)
        return cls(dim, cap, {tuple([0] * dim): value})

    @classmethod
    def variable(cls, dim, i, cap=DEFAULT_CAP):
        """The coordinate t_i, axes numbered 1..dim."""
        if not 1 <= i <= dim:
            raise ValueError("axis %d out of range 1..%d" % (i, dim))
        exp = [0] * dim
        exp[i - 1] = 1
        return cls(dim, cap, {tuple(exp): Q1})

    @classmethod
    def monomial(cls, dim, exp, coeff=Q1, cap=DEFAULT_CAP):
        return cls(dim, cap, {tuple(exp): _as_fraction(coeff)})

    def zero_like(self):
        return TruncatedSeries(self.dim, self.cap)

    def one_like(self):
        return TruncatedSeries.const(self.dim, 1, self.cap)

    # -- basic queries ------------------------------------------------

    def is_zero(self):
        return not self.terms

    def coefficient(self, exp):
        return self.terms.get(tuple(exp), Q0)

    def constant_term(self):
        return self.terms.get(tuple([0] * self.dim), Q0)

    def has_even_grade(self):
        # series in the coordinates sit in cohomological degree zero
        return True

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.dim == other.dim and self.cap == other.cap
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.dim, self.cap, frozenset(self.terms.items())))

    def agrees_with(self, other, through=None):
        """Coefficientwise equality through min(cap) (or `through`)."""
        if self.dim != other.dim:
            return False
        lim = min(self.cap, other.cap)
        if through is not None:
            lim = min(lim, through)
        keys = set(self.terms) | set(other.terms)
        return all(self.terms.get(k, Q0) == other.terms.get(k, Q0)
                   for k in keys if sum(k) <= lim)

    # -- arithmetic ---------------------------------------------------

    def _check_dim(self, other):
        if self.dim != other.dim:
            raise ValueError("dimension mismatch %d vs %d" % (self.dim, other.dim))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncatedSeries.const(self.dim, other, self.cap)
        self._check_dim(other)
        cap = min(self.cap, other.cap)
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            terms[exp] = terms.get(exp, Q0) + c
        return TruncatedSeries(self.dim, cap, terms)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.dim, self.cap,
                               {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncatedSeries.const(self.dim, other, self.cap)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check_dim(other)
        cap = min(self.cap, other.cap)
        terms = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in other.terms.items():
                if d1 + sum(e2) > cap:
                    continue
                exp = tuple(a + b for a, b in zip(e1, e2))
                terms[exp] = terms.get(exp, Q0) + c1 * c2
        return TruncatedSeries(self.dim, cap, terms)

    __rmul__ = __mul__

    def scale(self, c):
        c = _as_fraction(c)
        if c == 0:
            return self.zero_like()
        return TruncatedSeries(self.dim, self.cap,
                               {e: c * v for e, v in self.terms.items()})

    def partial(self, i):
        """d/dt_i; the result cap drops by one."""
        if not 1 <= i <= self.dim:
            raise ValueError("axis %d out of range 1..%d" % (i, self.dim))
        terms = {}
        for exp, c in self.terms.items():
            k = exp[i - 1]
            if k == 0:
                continue
            e = list(exp)
            e[i - 1] = k - 1
            terms[tuple(e)] = c * k
        return TruncatedSeries(self.dim, max(self.cap - 1, -1), terms)

    def partial_multi(self, multi):
        """Iterated partial for a multi-index (k_1, ..., k_dim)."""
        out = self
        for axis, k in enumerate(multi, start=1):
            for _ in range(k):
                out = out.partial(axis)
        return out

    # -- serialization ------------------------------------------------

    def to_json(self):
        rows = []
        for exp in sorted(self.terms):
            c = self.terms[exp]
            rows.append({"exp": list(exp), "num": str(c.numerator),
                         "den": str(c.denominator)})
        return {"d": self.dim, "cap": self.cap, "terms": rows}

    @classmethod
    def from_json(cls, obj):
        terms = {}
        for row in obj["terms"]:
            exp = tuple(row["exp"])
            terms[exp] = Fraction(int(row["num"]), int(row["den"]))
        return cls(obj["d"], obj["cap"], terms)

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)

    def __repr__(self):
        if not self.terms:
            return "TruncatedSeries(dim=%d, cap=%d, 0)" % (self.dim, self.cap)
        bits = []
        for exp in sorted(self.terms):
            bits.append("%s*t^%s" % (self.terms[exp], list(exp)))
        return "TruncatedSeries(dim=%d, cap=%d, %s)" % (
            self.dim, self.cap, " + ".join(bits))


# ---------------------------------------------------------------------
# univariate series calculus
# ---------------------------------------------------------------------

class UnivariateSeries:
    """Dense univariate series: coeffs[k] is the coefficient of x^k."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = [_as_fraction(c) for c in coeffs]
        if not self.coeffs:
            self.coeffs = [Q0]

    @classmethod
    def zero(cls, order):
        return cls([Q0] * (order + 1))

    @property
    def order(self):
        return len(self.coeffs) - 1

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k <= self.order else Q0

    def __eq__(self, other):
        if not isinstance(other, UnivariateSeries):
            return NotImplemented
        n = max(self.order, other.order)
        return all(self[k] == other[k] for k in range(n + 1))

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def truncate(self, order):
        c = self.coeffs[:order + 1]
        c += [Q0] * (order + 1 - len(c))
        return UnivariateSeries(c)

    def __add__(self, other):
        n = min(self.order, other.order)
        return UnivariateSeries([self[k] + other[k] for k in range(n + 1)])

    def __sub__(self, other):
        n = min(self.order, other.order)
        return UnivariateSeries([self[k] - other[k] for k in range(n + 1)])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            return UnivariateSeries([v * c for v in self.coeffs])
        n = min(self.order, other.order)
        out = [Q0] * (n + 1)
        for i, a in enumerate(self.coeffs[:n + 1]):
            if a == 0:
                continue
            for j in range(n + 1 - i):
                b = other[j]
                if b != 0:
                    out[i + j] += a * b
        return UnivariateSeries(out)

    __rmul__ = __mul__

    def derivative(self):
        if self.order == 0:
            return UnivariateSeries([Q0])
        return UnivariateSeries([self.coeffs[k] * k
                                 for k in range(1, self.order + 1)])

    def integrate(self):
        """Antiderivative with zero constant term; gains one order."""
        out = [Q0] * (self.order + 2)
        for k, c in enumerate(self.coeffs):
            out[k + 1] = c / (k + 1)
        return UnivariateSeries(out)

    def __repr__(self):
        return "UnivariateSeries(%s)" % (self.coeffs,)


def useries_div(num, den):
    """num/den with den having nonzero constant term."""
    if den[0] == 0:
        raise ValueError("division requires an invertible constant term")
    n = min(num.order, den.order)
    out = [Q0] * (n + 1)
    for k in range(n + 1):
        acc = num[k]
        for j in range(1, k + 1):
            acc -= den[j] * out[k - j]
        out[k] = acc / den[0]
    return UnivariateSeries(out)


def useries_exp(f):
    """exp(f) for f with zero constant term, via g' = f' g."""
    if f[0] != 0:
        raise ValueError("exp requires zero constant term")
    n = f.order
    out = [Q0] * (n + 1)
    out[0] = Q1
    for k in range(1, n + 1):
        acc = Q0
        for j in range(1, k + 1):
            acc += j * f[j] * out[k - j]
        out[k] = acc / k
    return UnivariateSeries(out)


def useries_log(f):
    """log(f) for f with constant term 1, by composing log(1+u)."""
    if f[0] != 1:
        raise ValueError("log requires constant term 1")
    n = f.order
    u = UnivariateSeries([f[k] if k else Q0 for k in range(n + 1)])
    out = UnivariateSeries.zero(n)
    power = UnivariateSeries([Q1] + [Q0] * n)
    for k in range(1, n + 1):
        power = (power * u).truncate(n)
        sign = Q1 if k % 2 == 1 else -Q1
        out = out + power * (sign / k)
    return out


def useries_sqrt(f):
    """Square root with constant term 1."""
    if f[0] != 1:
        raise ValueError("sqrt requires constant term 1")
    n = f.order
    out = [Q0] * (n + 1)
    out[0] = Q1
    for k in range(1, n + 1):
        acc = f[k]
        for j in range(1, k):
            acc -= out[j] * out[k - j]
        out[k] = acc / 2
    return UnivariateSeries(out)


def useries_compose(f, g):
    """f(g(x)) for g with zero constant term."""
    if g[0] != 0:
        raise ValueError("composition requires zero constant term inside")
    n = min(f.order, g.order)
    out = UnivariateSeries([f[n]] + [Q0] * n).truncate(n)
    for k in range(n - 1, -1, -1):
        out = (out * g).truncate(n)
        out = out + UnivariateSeries([f[k]] + [Q0] * n)
    return out.truncate(n)


# ---------------------------------------------------------------------
# matrices with series entries
# ---------------------------------------------------------------------

class SeriesMatrix:
    """Square matrix over an exact coefficient ring.

    Entries are TruncatedSeries or any object with the same arithmetic
    protocol (add, mul, zero_like, one_like, is_zero, has_even_grade).
    Trace powers require every entry to sit in even total grade, which
    keeps the entry ring commutative.
    """

    __slots__ = ("size", "entries")

    def __init__(self, entries):
        size = len(entries)
        if size == 0 or any(len(row) != size for row in entries):
            raise ValueError("square nonempty entry grid required")
        self.size = size
        self.entries = [list(row) for row in entries]

    def _zero(self):
        return self.entries[0][0].zero_like()

    def _one(self):
        return self.entries[0][0].one_like()

    @classmethod
    def identity_like(cls, mat):
        z, o = mat._zero(), mat._one()
        return cls([[o if i == j else z for j in range(mat.size)]
                    for i in range(mat.size)])

    def is_zero(self):
        return all(e.is_zero() for row in self.entries for e in row)

    def __add__(self, other):
        if self.size != other.size:
            raise ValueError("size mismatch")
        return SeriesMatrix([[a + b for a, b in zip(r1, r2)]
                             for r1, r2 in zip(self.entries, other.entries)])

    def __mul__(self, other):
        if isinstance(other, SeriesMatrix):
            if self.size != other.size:
                raise ValueError("size mismatch")
            n = self.size
            out = []
            for i in range(n):
                row = []
                for j in range(n):
                    acc = self._zero()
                    for k in range(n):
                        acc = acc + self.entries[i][k] * other.entries[k][j]
                    row.append(acc)
                out.append(row)
            return SeriesMatrix(out)
        return SeriesMatrix([[e * other for e in row] for row in self.entries])

    __rmul__ = __mul__

    def scale(self, c):
        return SeriesMatrix([[e.scale(c) if hasattr(e, "scale") else e * c
                              for e in row] for row in self.entries])

    def power(self, l):
        if l < 0:
            raise ValueError("negative power")
        out = SeriesMatrix.identity_like(self)
        for _ in range(l):
            out = out * self
        return out

    def trace(self):
        acc = self._zero()
        for i in range(self.size):
            acc = acc + self.entries[i][i]
        return acc

    def all_even_grade(self):
        return all(e.has_even_grade() for row in self.entries for e in row)

    def __eq__(self, other):
        if not isinstance(other, SeriesMatrix):
            return NotImplemented
        return self.size == other.size and self.entries == other.entries


def matrix_trace_power(mat, l):
    """Tr(M^l), defined for matrices with even-grade entries."""
    if not mat.all_even_grade():
        raise ValueError("trace powers need entries of even total grade")
    return mat.power(l).trace()


def series_at_matrix(f, mat, kmax=None):
    """Evaluate a univariate series on a nilpotent matrix argument.

    Sums f_k M^k until the running power of M vanishes (entries with
    positive valuation die under the cap) or kmax is exceeded.
    """
    if kmax is None:
        kmax = f.order
    out = SeriesMatrix.identity_like(mat).scale(f[0])
    power = SeriesMatrix.identity_like(mat)
    for k in range(1, kmax + 1):
        power = power * mat
        if power.is_zero():
            break
        if f[k] != 0:
            out = out + power.scale(f[k])
    else:
        if not (power * mat).is_zero():
            raise ValueError("matrix argument is not nilpotent within kmax")
    return out


def matrix_exp(mat, kmax=64):
    """exp of a nilpotent matrix, Sum M^k / k!."""
    out = SeriesMatrix.identity_like(mat)
    power = SeriesMatrix.identity_like(mat)
    fact = Q1
    for k in range(1, kmax + 1):
        power = power * mat
        if power.is_zero():
            break
        fact = fact * k
        out = out + power.scale(Q1 / fact)
    else:
        raise ValueError("matrix is not nilpotent within kmax")
    return out


# ---------------------------------------------------------------------
# named generating series
# ---------------------------------------------------------------------

def sinh_quotient_series(order):
    """(e^{x/2} - e^{-x/2})/x = sum_k x^{2k} / (4^k (2k+1)!)."""
    coeffs = [Q0] * (order + 1)
    for k in range(0, order // 2 + 1):
        fact = Q1
        for i in range(2, 2 * k + 2):
            fact *= i
        coeffs[2 * k] = Q1 / (Fraction(4) ** k * fact)
    return UnivariateSeries(coeffs)
