"""Poly-vector fields and differential forms on the formal disk.

A poly-vector field of (shifted) degree p is a wedge of p+1 coordinate
vector fields with series coefficients; degree -1 elements are plain
functions.  The wedge product therefore has degree +1 and the Schouten
bracket degree 0, which is the grading in which the bracket is a graded
Lie bracket and a graded derivation of the wedge in its second slot:

    [a, b ^ c] = [a, b] ^ c + (-1)^{|a| (|b| + 1)} b ^ [a, c].

The bracket is implemented recursively from exactly these axioms
(functions commute, vector fields act by Lie derivative, extension by
the derivation rule and graded antisymmetry), so every sign is forced.

Interior products follow the convention

    dt_i ^ (l_1 ^ ... ^ l_n) = sum_i (-1)^{i-1} dt_i(l_i) l_1 ^ ... ^ l_n
                                                 (l_i omitted),

iterated left to right for higher forms.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations

from .series import Q0, Q1, TruncatedSeries, _as_fraction


def sort_with_sign(idx):
    """Sort an index tuple, returning (sign, sorted tuple); sign 0 on repeats."""
    idx = tuple(idx)
    if len(set(idx)) != len(idx):
        return 0, idx
    sign = 1
    lst = list(idx)
    # insertion sort, counting transpositions
    for i in range(1, len(lst)):
        j = i
        while j > 0 and lst[j - 1] > lst[j]:
            lst[j - 1], lst[j] = lst[j], lst[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(lst)


def merge_with_sign(left, right):
    """Concatenate two strictly increasing tuples with the shuffle sign."""
    sign, merged = sort_with_sign(tuple(left) + tuple(right))
    return sign, merged


class _Alternating:
    """Shared storage for alternating tensors: increasing tuple -> series."""

    __slots__ = ("dim", "degree", "comps")

    def __init__(self, dim, degree, comps=None):
        self.dim = dim
        self.degree = degree
        clean = {}
        for idx, s in (comps or {}).items():
            idx = tuple(idx)
            if len(idx) != self._arity():
                raise ValueError("index tuple %r has wrong length" % (idx,))
            if any(not 1 <= i <= dim for i in idx):
                raise ValueError("axis out of range in %r" % (idx,))
            if list(idx) != sorted(set(idx)):
                raise ValueError("index tuples must be strictly increasing")
            if isinstance(s, (int, Fraction)):
                s = TruncatedSeries.const(dim, s)
            if not s.is_zero():
                clean[idx] = s
        self.comps = clean

    def _arity(self):
        raise NotImplementedError

    def is_zero(self):
        return not self.comps

    def cap(self):
        if not self.comps:
            return None
        return min(s.cap for s in self.comps.values())

    def component(self, idx):
        """Signed component at an arbitrary (possibly unsorted) tuple."""
        sign, key = sort_with_sign(idx)
        if sign == 0:
            return None
        s = self.comps.get(key)
        if s is None:
            return None
        return s if sign == 1 else -s

    def _binary(self, other, fn):
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        if self.degree != other.degree and self.comps and other.comps:
            raise ValueError("degree mismatch %d vs %d" % (self.degree, other.degree))
        comps = dict(self.comps)
        for idx, s in other.comps.items():
            comps[idx] = fn(comps[idx], s) if idx in comps else fn(None, s)
        degree = self.degree if self.comps or not other.comps else other.degree
        return type(self)(self.dim, degree, comps)

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b if a is not None else b)

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b if a is not None else -b)

    def __neg__(self):
        return type(self)(self.dim, self.degree,
                          {i: -s for i, s in self.comps.items()})

    def scale(self, c):
        if isinstance(c, TruncatedSeries):
            return type(self)(self.dim, self.degree,
                              {i: c * s for i, s in self.comps.items()})
        c = _as_fraction(c)
        return type(self)(self.dim, self.degree,
                          {i: s.scale(c) for i, s in self.comps.items()})

    def __eq__(self, other):
        if not isinstance(other, type(self)):
            return NotImplemented
        if self.dim != other.dim or self.comps != other.comps:
            return False
        if self.comps:  # nonzero: degrees must agree
            return self.degree == other.degree
        return True

    def __hash__(self):
        return hash((self.dim, self.degree, frozenset(self.comps.items())))

    def agrees_with(self, other, through):
        """Componentwise coefficient agreement through a total order."""
        if self.dim != other.dim:
            return False
        if self.comps and other.comps and self.degree != other.degree:
            return False
        zero = TruncatedSeries.zero(self.dim, through)
        for idx in set(self.comps) | set(other.comps):
            a = self.comps.get(idx, zero)
            b = other.comps.get(idx, zero)
            if not a.agrees_with(b, through):
                return False
        return True

    def to_json(self):
        rows = [{"tuple": list(i), "series": s.to_json()}
                for i, s in sorted(self.comps.items())]
        return {"d": self.dim, "degree": self.degree, "components": rows}

    @classmethod
    def from_json(cls, obj):
        comps = {tuple(r["tuple"]): TruncatedSeries.from_json(r["series"])
                 for r in obj["components"]}
        return cls(obj["d"], obj["degree"], comps)


class PolyVectorField(_Alternating):
    """Shifted-degree p field: components on increasing (p+1)-tuples.

    Degree -1 is a function, stored at the empty tuple.
    """

    def _arity(self):
        return self.degree + 1

    @classmethod
    def zero(cls, dim, degree=-1):
        return cls(dim, degree)

    @classmethod
    def function(cls, series):
        return cls(series.dim, -1, {(): series})

    @classmethod
    def from_wedge(cls, dim, axes, coeff=1):
        """coeff * d/dt_{axes[0]} ^ ... with sorting sign."""
        if isinstance(coeff, (int, Fraction)):
            coeff = TruncatedSeries.const(dim, coeff)
        sign, key = sort_with_sign(axes)
        if sign == 0:
            return cls(dim, len(axes) - 1)
        c = coeff if sign == 1 else -coeff
        return cls(dim, len(axes) - 1, {key: c})

    def as_function(self):
        if self.degree != -1 and self.comps:
            raise ValueError("not a degree -1 element")
        return self.comps.get((), None)

    def __repr__(self):
        return "PolyVectorField(dim=%d, degree=%d, %r)" % (
            self.dim, self.degree, self.comps)


class DifferentialForm(_Alternating):
    """Exterior form with series coefficients, degree q >= 0."""

    def _arity(self):
        return self.degree

    @classmethod
    def zero(cls, dim, degree=0):
        return cls(dim, degree)

    @classmethod
    def from_basis(cls, dim, axes, coeff):
        if isinstance(coeff, (int, Fraction)):
            coeff = TruncatedSeries.const(dim, coeff)
        sign, key = sort_with_sign(axes)
        if sign == 0:
            return cls(dim, len(axes))
        return cls(dim, len(axes), {key: coeff if sign == 1 else -coeff})

    def __repr__(self):
        return "DifferentialForm(dim=%d, degree=%d, %r)" % (
            self.dim, self.degree, self.comps)


def exterior_derivative(series):
    """d of a function: the 1-form sum_i (d/dt_i f) dt_i."""
    comps = {}
    for i in range(1, series.dim + 1):
        s = series.partial(i)
        if not s.is_zero():
            comps[(i,)] = s
    return DifferentialForm(series.dim, 1, comps)


def wedge_forms(a, b):
    if a.dim != b.dim:
        raise ValueError("dimension mismatch")
    out = DifferentialForm(a.dim, a.degree + b.degree)
    comps = {}
    for i1, s1 in a.comps.items():
        for i2, s2 in b.comps.items():
            sign, key = merge_with_sign(i1, i2)
            if sign == 0:
                continue
            term = (s1 * s2).scale(sign)
            comps[key] = comps.get(key, term.zero_like()) + term
    return DifferentialForm(a.dim, a.degree + b.degree, comps) + out


def wedge_fields(a, b):
    """Exterior product of poly-vector fields (degree adds plus one)."""
    if a.dim != b.dim:
        raise ValueError("dimension mismatch")
    degree = a.degree + b.degree + 1
    comps = {}
    for i1, s1 in a.comps.items():
        for i2, s2 in b.comps.items():
            sign, key = merge_with_sign(i1, i2)
            if sign == 0:
                continue
            term = (s1 * s2).scale(sign)
            comps[key] = comps.get(key, term.zero_like()) + term
    return PolyVectorField(a.dim, degree, comps)


def pairing(form, field):
    """<form, field> for matching arity: the determinant pairing.

    On basis elements <dt_{i_1} ^ .. ^ dt_{i_q}, e_{j_1} ^ .. ^ e_{j_q}>
    is det(dt_{i_a}(e_{j_b})); with both stored on increasing tuples it
    reduces to a diagonal sum of coefficient products.
    """
    if form.dim != field.dim:
        raise ValueError("dimension mismatch")
    if form.degree != field.degree + 1 and form.comps and field.comps:
        raise ValueError("arity mismatch: form degree %d, field needs %d"
                         % (form.degree, field.degree + 1))
    out = None
    for idx, s in form.comps.items():
        t = field.comps.get(idx)
        if t is not None:
            out = s * t if out is None else out + s * t
    if out is None:
        caps = [s.cap for s in form.comps.values()]
        caps += [s.cap for s in field.comps.values()]
        from .series import DEFAULT_CAP
        out = TruncatedSeries.zero(form.dim, min(caps) if caps else DEFAULT_CAP)
    return out


def _contract_one(axis, field):
    """dt_axis ^ field, the alternating-sum interior product."""
    comps = {}
    for idx, s in field.comps.items():
        for pos, j in enumerate(idx):
            if j != axis:
                continue
            rest = idx[:pos] + idx[pos + 1:]
            sign = 1 if pos % 2 == 0 else -1
            term = s.scale(sign)
            comps[rest] = comps.get(rest, term.zero_like()) + term
            break
    return PolyVectorField(field.dim, field.degree - 1, comps)


def contract(form, field):
    """Iterated interior product: (s_1 ^ ... ^ s_q) acts as s_1(s_2(...)).

    Vanishes when the form degree exceeds the number of wedge factors.
    """
    if form.dim != field.dim:
        raise ValueError("dimension mismatch")
    if form.degree > field.degree + 1:
        return PolyVectorField.zero(field.dim, field.degree - form.degree)
    out = PolyVectorField.zero(field.dim, field.degree - form.degree)
    for idx, s in form.comps.items():
        part = field
        for axis in reversed(idx):
            part = _contract_one(axis, part)
        if part.is_zero():
            continue
        out = out + part.scale(s)
    return out


# ---------------------------------------------------------------------
# Schouten bracket
# ---------------------------------------------------------------------

def _lie_monomial(coeff, axis, target):
    """Lie derivative of `target` along the vector field coeff*d/dt_axis."""
    dim = target.dim
    out = PolyVectorField.zero(dim, target.degree)
    for idx, s in target.comps.items():
        # action on the coefficient
        ds = coeff * s.partial(axis)
        if not ds.is_zero():
            out = out + PolyVectorField(dim, target.degree, {idx: ds})
        # action on each wedge factor: [c e_a, e_j] = -(d_j c) e_a
        for pos, j in enumerate(idx):
            dc = coeff.partial(j)
            if dc.is_zero():
                continue
            replaced = idx[:pos] + (axis,) + idx[pos + 1:]
            sign, key = sort_with_sign(replaced)
            if sign == 0:
                continue
            term = (s * dc).scale(-sign)
            out = out + PolyVectorField(dim, target.degree, {key: term})
    return out


def _bracket_monomial(c1, idx1, b):
    """[c1 * e_{idx1}, b] via the forced recursion.

    idx1 empty: a function f; use [f, b] = -(-1)^{(-1)|b|} [b, f].
    idx1 singleton: Lie derivative.
    Otherwise split off the first factor Y = c1 e_{i}:
        [Y ^ c, b] = (-1)^{(|c| + 1)|b|} [Y, b] ^ c + Y ^ [c, b].
    """
    dim = b.dim
    if len(idx1) == 0:
        # [f, b]: flip, then peel b
        pb = b.degree
        inner = _bracket_with_function(b, c1)
        sign = -((-1) ** (pb % 2))  # -(-1)^{(-1) pb} = -(-1)^{pb}
        return inner.scale(sign)
    if len(idx1) == 1:
        return _lie_monomial(c1, idx1[0], b)
    y_axis = idx1[0]
    rest = idx1[1:]
    p_c = len(rest) - 1
    p_b = b.degree
    y = PolyVectorField(dim, 0, {(y_axis,): c1})
    sign = (-1) ** (((p_c + 1) * p_b) % 2)
    term1 = wedge_fields(_lie_monomial(c1, y_axis, b),
                         PolyVectorField(dim, p_c, {rest: c1.one_like()}))
    # note: [Y, b] with Y = c1 e_axis already carries c1, so the wedge
    # partner is the bare monomial e_rest
    term1 = term1.scale(sign)
    term2 = wedge_fields(y, _bracket_monomial(c1.one_like(), rest, b))
    return term1 + term2


def _bracket_with_function(b, f):
    """[b, f] for a function f, by peeling wedge factors of b."""
    dim = b.dim
    out = PolyVectorField.zero(dim, b.degree - 1)
    for idx, s in b.comps.items():
        if len(idx) == 0:
            continue  # [g, f] = 0
        out = out + _bracket_monomial(s, idx, PolyVectorField.function(f))
    return out


def schouten_bracket(a, b):
    """Graded Lie bracket of poly-vector fields in the shifted grading."""
    if a.dim != b.dim:
        raise ValueError("dimension mismatch")
    out = PolyVectorField.zero(a.dim, a.degree + b.degree)
    for idx, s in a.comps.items():
        out = out + _bracket_monomial(s, idx, b)
    return out


def hkr_components(field):
    """Signed components over all (not just increasing) index tuples.

    Helper for Einstein-sum style evaluations; yields (tuple, series).
    """
    k = field.degree + 1
    for idx in permutations(range(1, field.dim + 1), k):
        s = field.component(idx)
        if s is not None:
            yield idx, s
