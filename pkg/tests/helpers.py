"""Independent reference implementations used as test oracles.

Nothing here reuses the structural code paths under test: Bernoulli
numbers come from the defining recurrence instead of series logs, the
Lie bracket is spelled out in coordinates, and the Hochschild/insertion
oracles work purely through operator *evaluation* on explicit function
arguments, never through term manipulation.
"""

from fractions import Fraction
from math import comb, factorial


# -- Bernoulli numbers from the defining recurrence -------------------
#
#   sum_{j=0}^{n} C(n+1, j) B_j = 0  (n >= 1),  B_0 = 1
#
# (first kind, B_1 = -1/2).

_BERN = [Fraction(1)]


def bernoulli(n):
    while len(_BERN) <= n:
        k = len(_BERN)
        acc = sum(Fraction(comb(k + 1, j)) * _BERN[j] for j in range(k))
        _BERN.append(-acc / (k + 1))
    return _BERN[n]


def wheel_weight_from_bernoulli(l):
    """Closed wheel weight, derived by hand from the generating series.

    With s(x) = (1/2) log((e^{x/2}-e^{-x/2})/x) one has
    s'(x) = (1/2)(coth(x/2) - 2/x) = sum_{k>=1} B_{2k} x^{2k-1}/(2k)!,
    so the x^{2k} coefficient of s is B_{2k}/(2k (2k)!) and

        W_{2k} = -(-1)^{k(2k+1)} 2k * s_{2k} = -(-1)^k B_{2k}/(2 (2k)!),

    while every odd weight vanishes (s is even).
    """
    if l % 2:
        return Fraction(0)
    k = l // 2
    return -Fraction((-1) ** k) * bernoulli(l) / (2 * factorial(l))


# -- coordinate Lie bracket of two vector fields ----------------------

def lie_bracket_vf(x, y):
    """[x, y]^i = sum_j (x^j d_j y^i - y^j d_j x^i), direct coordinates."""
    from formaldisk import PolyVectorField
    assert x.degree == 0 and y.degree == 0
    dim = x.dim
    comps = {}
    for i in range(1, dim + 1):
        acc = None
        for j in range(1, dim + 1):
            xj = x.comps.get((j,))
            yj = y.comps.get((j,))
            yi = y.comps.get((i,))
            xi = x.comps.get((i,))
            if xj is not None and yi is not None:
                t = xj * yi.partial(j)
                acc = t if acc is None else acc + t
            if yj is not None and xi is not None:
                t = yj * xi.partial(j)
                acc = acc - t if acc is not None else -t
        if acc is not None and not acc.is_zero():
            comps[(i,)] = acc
    return PolyVectorField(dim, 0, comps)


# -- Hochschild differential via face maps ----------------------------
#
# For the commutator convention d = [m, -] with insertion signs
# (-1)^{i |arg|}, expanding on p+2 functions gives
#
#   (dD)(f_1..f_{p+2}) = D(f_1..f_{p+1}) f_{p+2}
#                      + (-1)^p f_1 D(f_2..f_{p+2})
#                      - (-1)^p sum_{i=0}^{p} (-1)^i
#                            D(f_1,..,f_{i+1} f_{i+2},..,f_{p+2})
#
# which only ever calls the operator on explicit arguments.

def hochschild_face(op, args):
    p = op.degree
    assert len(args) == p + 2
    out = op.apply(args[: p + 1]) * args[p + 1]
    sgn = (-1) ** (p % 2)
    out = out + (args[0] * op.apply(args[1:])).scale(sgn)
    for i in range(p + 1):
        merged = args[:i] + [args[i] * args[i + 1]] + args[i + 2:]
        out = out - op.apply(merged).scale(sgn * (-1) ** (i % 2))
    return out


# -- insertion product via evaluation ----------------------------------

def bullet_eval(d1, d2, args):
    """(d1 . d2)(args) computed slot by slot through plain evaluation."""
    k2 = d2.degree + 1
    out = None
    for i in range(d1.degree + 1):
        inner = d2.apply(args[i:i + k2])
        val = d1.apply(args[:i] + [inner] + args[i + k2:])
        if (i * d2.degree) % 2:
            val = -val
        out = val if out is None else out + val
    if out is None:
        raise ValueError("d1 has no slots to insert into")
    return out


# -- bivector action on a pair of functions ---------------------------

def biv_action(pi, f, g):
    """sum_{i<j} pi^{ij} (d_i f d_j g - d_j f d_i g)."""
    acc = None
    for (i, j), c in pi.comps.items():
        t = c * (f.partial(i) * g.partial(j) - f.partial(j) * g.partial(i))
        acc = t if acc is None else acc + t
    if acc is None:
        from formaldisk import TruncatedSeries
        return TruncatedSeries.zero(pi.dim, f.cap)
    return acc
