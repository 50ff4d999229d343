"""Polydifferential operators on the formal disk.

An operator of (shifted) degree n acts on n+1 function arguments; it is
stored as a sum of terms, each a global series coefficient together
with an (n+1)-tuple of derivative multi-indices (one multi-index per
argument slot).  Degree -1 elements take no arguments and are just
functions.

The insertion product ("bullet") distributes the derivatives of the
receiving slot over the inserted operator and its coefficient by the
Leibniz rule; this is the coproduct-based composition

    D1 * D2 = sum_i (-1)^{i |D2|} D1 circ_i D2,

whose commutator is the Gerstenhaber bracket.  The Hochschild
differential is bracketing with the two-slot multiplication operator
m = 1 tensor 1, and the antisymmetrized one-slot-per-factor operator
attached to a poly-vector field is the signed HKR map

    hkr(e_{i_1} ^ ... ^ e_{i_k}) =
        (-1)^{k(k-1)/2} (1/k!) sum_{sigma} sgn(sigma)
            e_{i_sigma(1)} tensor ... tensor e_{i_sigma(k)}.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product as _cartesian

from .series import DEFAULT_CAP, Q0, Q1, TruncatedSeries, _as_fraction
from .polyvector import PolyVectorField


def _zero_multi(dim):
    return tuple([0] * dim)


def _unit_multi(dim, axis):
    m = [0] * dim
    m[axis - 1] = 1
    return tuple(m)


def _add_multi(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _axis_compositions(total, parts):
    """All ways to split `total` into `parts` ordered non-negative parts."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _axis_compositions(total - first, parts - 1):
            yield (first,) + rest


def _multi_splits(multi, parts):
    """Split a multi-index into `parts` ordered multi-indices.

    Yields (split_tuple, multinomial_coefficient); the coefficient is
    the product over axes of the multinomials, i.e. the number of ways
    to distribute the individual derivatives.
    """
    per_axis = []
    for total in multi:
        per_axis.append(list(_axis_compositions(total, parts)))
    for combo in _cartesian(*per_axis):
        split = tuple(tuple(combo[ax][p] for ax in range(len(multi)))
                      for p in range(parts))
        coeff = 1
        for ax, total in enumerate(multi):
            c = _factorial(total)
            for p in range(parts):
                c //= _factorial(combo[ax][p])
            coeff *= c
        yield split, Fraction(coeff)


def _factorial(n):
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


class PolyDiffOp:
    """Sum of (coefficient series, slot multi-indices) terms."""

    __slots__ = ("dim", "degree", "terms")

    def __init__(self, dim, degree, terms=None):
        if degree < -1 and terms:
            raise ValueError("degree must be >= -1 for nonzero operators")
        self.dim = dim
        self.degree = degree
        clean = {}
        for slots, c in (terms or {}).items():
            slots = tuple(tuple(m) for m in slots)
            if len(slots) != degree + 1:
                raise ValueError("term has %d slots, degree %d needs %d"
                                 % (len(slots), degree, degree + 1))
            for m in slots:
                if len(m) != dim or any(e < 0 for e in m):
                    raise ValueError("bad multi-index %r" % (m,))
            if not c.is_zero():
                clean[slots] = (clean[slots] + c) if slots in clean else c
        self.terms = {s: c for s, c in clean.items() if not c.is_zero()}

    @classmethod
    def zero(cls, dim, degree=-1):
        return cls(dim, degree)

    @classmethod
    def function(cls, series):
        return cls(series.dim, -1, {(): series})

    @classmethod
    def single(cls, coeff, slots):
        return cls(coeff.dim, len(slots) - 1, {tuple(slots): coeff})

    @classmethod
    def multiplication(cls, dim, cap=DEFAULT_CAP):
        """m = 1 tensor 1, the two-argument product operator."""
        one = TruncatedSeries.const(dim, 1, cap)
        z = _zero_multi(dim)
        return cls(dim, 1, {(z, z): one})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, PolyDiffOp):
            return NotImplemented
        if self.dim != other.dim or self.terms != other.terms:
            return False
        if self.terms:
            return self.degree == other.degree
        return True

    def __hash__(self):
        return hash((self.dim, self.degree, frozenset(self.terms.items())))

    def agrees_with(self, other, through):
        """Termwise coefficient agreement through a total series order.

        Unlike __eq__ this ignores validity caps, so results computed
        along routes with different truncation depths can be compared.
        """
        if self.dim != other.dim:
            return False
        if self.terms and other.terms and self.degree != other.degree:
            return False
        zero = TruncatedSeries.zero(self.dim, through)
        for slots in set(self.terms) | set(other.terms):
            a = self.terms.get(slots, zero)
            b = other.terms.get(slots, zero)
            if not a.agrees_with(b, through):
                return False
        return True

    def __add__(self, other):
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        if self.degree != other.degree and self.terms and other.terms:
            raise ValueError("degree mismatch")
        degree = self.degree if self.terms or not other.terms else other.degree
        terms = dict(self.terms)
        for s, c in other.terms.items():
            terms[s] = terms[s] + c if s in terms else c
        return PolyDiffOp(self.dim, degree, terms)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        if isinstance(c, TruncatedSeries):
            return PolyDiffOp(self.dim, self.degree,
                              {s: c * v for s, v in self.terms.items()})
        c = _as_fraction(c)
        if c == 0:
            return PolyDiffOp(self.dim, self.degree)
        return PolyDiffOp(self.dim, self.degree,
                          {s: v.scale(c) for s, v in self.terms.items()})

    def apply(self, args):
        """Evaluate on a tuple of series; needs degree+1 arguments."""
        if len(args) != self.degree + 1:
            raise ValueError("expected %d arguments, got %d"
                             % (self.degree + 1, len(args)))
        out = None
        for slots, c in self.terms.items():
            val = c
            for m, f in zip(slots, args):
                val = val * f.partial_multi(m)
            out = val if out is None else out + val
        if out is None:
            caps = [a.cap for a in args]
            cap = min(caps) if caps else DEFAULT_CAP
            out = TruncatedSeries.zero(self.dim, cap)
        return out

    def to_json(self):
        rows = []
        for slots in sorted(self.terms):
            rows.append({"coeff": self.terms[slots].to_json(),
                         "slots": [list(m) for m in slots]})
        return {"d": self.dim, "degree": self.degree, "terms": rows}

    @classmethod
    def from_json(cls, obj):
        terms = {}
        for row in obj["terms"]:
            slots = tuple(tuple(m) for m in row["slots"])
            terms[slots] = TruncatedSeries.from_json(row["coeff"])
        return cls(obj["d"], obj["degree"], terms)

    def __repr__(self):
        return "PolyDiffOp(dim=%d, degree=%d, %d terms)" % (
            self.dim, self.degree, len(self.terms))


def cup(d1, d2):
    """Cup product: signed slot concatenation."""
    if d1.dim != d2.dim:
        raise ValueError("dimension mismatch")
    sign = (-1) ** ((d1.degree * d2.degree) % 2)
    terms = {}
    for s1, c1 in d1.terms.items():
        for s2, c2 in d2.terms.items():
            key = s1 + s2
            val = (c1 * c2).scale(sign)
            terms[key] = terms[key] + val if key in terms else val
    return PolyDiffOp(d1.dim, d1.degree + d2.degree + 1, terms)


def _insert_term(c1, slots1, i, d2):
    """Insert operator d2 into slot i of the term (c1, slots1).

    The receiving multi-index is distributed by the Leibniz rule over
    d2's coefficient and each of d2's slots.  For a degree -1 insert
    (a function) the whole multi-index lands on the function and the
    slot disappears.
    """
    alpha = slots1[i]
    out_terms = {}
    if d2.degree == -1:
        c2 = d2.terms.get(())
        if c2 is not None:
            c = c1 * c2.partial_multi(alpha)
            key = slots1[:i] + slots1[i + 1:]
            if not c.is_zero():
                out_terms[key] = out_terms[key] + c if key in out_terms else c
        return out_terms
    parts = d2.degree + 2  # one share for the coefficient, rest for slots
    for s2, c2 in d2.terms.items():
        for split, mult in _multi_splits(alpha, parts):
            nu, betas = split[0], split[1:]
            c = c1 * c2.partial_multi(nu)
            if c.is_zero():
                continue
            c = c.scale(mult)
            block = tuple(_add_multi(b, m) for b, m in zip(betas, s2))
            key = slots1[:i] + block + slots1[i + 1:]
            out_terms[key] = out_terms[key] + c if key in out_terms else c
    return out_terms


def bullet(d1, d2):
    """Insertion product sum_i (-1)^{i |d2|} (d1 with d2 in slot i)."""
    if d1.dim != d2.dim:
        raise ValueError("dimension mismatch")
    degree = d1.degree + d2.degree
    acc = PolyDiffOp(d1.dim, degree)
    for slots1, c1 in d1.terms.items():
        for i in range(d1.degree + 1):
            sign = (-1) ** ((i * d2.degree) % 2)
            piece = _insert_term(c1, slots1, i, d2)
            if not piece:
                continue
            term = PolyDiffOp(d1.dim, degree,
                              {k: v.scale(sign) for k, v in piece.items()})
            acc = acc + term
    return acc


def gerstenhaber_bracket(d1, d2):
    sign = (-1) ** ((d1.degree * d2.degree) % 2)
    return bullet(d1, d2) - bullet(d2, d1).scale(sign)


def hochschild_differential(d, cap=None):
    """d = [m, -] with m the multiplication operator."""
    if cap is None:
        caps = [c.cap for c in d.terms.values()]
        cap = min(caps) if caps else DEFAULT_CAP
    m = PolyDiffOp.multiplication(d.dim, cap)
    return gerstenhaber_bracket(m, d)


def hkr(field):
    """Signed antisymmetrized HKR quantization of a poly-vector field."""
    dim = field.dim
    k = field.degree + 1
    if k == 0:
        f = field.as_function()
        if f is None:
            return PolyDiffOp.zero(dim, -1)
        return PolyDiffOp.function(f)
    pref = Fraction((-1) ** ((k * (k - 1) // 2) % 2), _factorial(k))
    terms = {}
    for idx, s in field.comps.items():
        for sigma in permutations(range(k)):
            sgn = _perm_sign(sigma)
            slots = tuple(_unit_multi(dim, idx[sigma[p]]) for p in range(k))
            c = s.scale(pref * sgn)
            terms[slots] = terms[slots] + c if slots in terms else c
    return PolyDiffOp(dim, k - 1, terms)


def _perm_sign(sigma):
    sign = 1
    for i in range(len(sigma)):
        for j in range(i + 1, len(sigma)):
            if sigma[i] > sigma[j]:
                sign = -sign
    return sign
