"""First Taylor coefficient, graph evaluation, and the wheel identity.

A graph with n aerial and m ground vertices, together with one
poly-vector field per aerial vertex, determines a polydifferential
operator in m arguments: sum over all assignments of a coordinate axis
to every edge of the product over aerial vertices of the (incoming
edges)-derivative of the (outgoing edges)-component, with ground
vertices collecting their incoming derivatives into argument slots.
The operator vanishes unless every aerial out-degree matches the
number of wedge factors sitting there.

The first Taylor coefficient acts on a field with m wedge factors as

    u_one(gamma)(f_1, .., f_m)
        = (-1)^{m(m-1)/2} (1/m!) <df_1 ^ .. ^ df_m, gamma>,

which is a full Einstein sum over signed components and therefore an
independent construction of the signed HKR operator.

For twisting data given by odd-coefficient vector fields, the degree
shift makes all but finitely many terms vanish and the twisted first
coefficient becomes a finite sum over surviving graphs, which are
exactly the wheel families: disjoint cycles of one-edge vertices fed
by a central vertex.  The per-graph weight in that regime is

    W = (-1)^{sum_{a<b} l_a l_b} (-1)^{(m+2j)(m+2j-1)/2} (-1)^j
        (1/m!) W_{l_1} ... W_{l_r}

for cycle type (l_1, .., l_r).  The closed form of the same sum is
built from the curvature-style matrix Xi with entries
sum_alpha eta_alpha d(d_j omega^i_alpha): the element

    det(exp Theta),  Theta = sum_l (-1)^{l(l-1)/2} (1/l) W_l Xi^l
                           = -(1/2) log((e^{Xi/2} - e^{-Xi/2}) / Xi),

is contracted into gamma and quantized with the signed HKR map.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as _cartesian

from .series import (DEFAULT_CAP, Q0, Q1, TruncatedSeries, SeriesMatrix,
                     UnivariateSeries, useries_div)
from .polyvector import (DifferentialForm, PolyVectorField, contract,
                         exterior_derivative, hkr_components, pairing)
from .polydiff import PolyDiffOp, hkr, _unit_multi, _factorial
from .graphs import (AdmissibleGraph, cycle_type_of_wheelish, gamma0,
                     graphs_with_profile, vanishing_tag)
from .weights import wheel_weight_closed, theta_series, inverse_sqrt_sinh_quotient
from .etalgebra import (EtaField, EtaFormScalar, EtaOperator,
                        contract_scalar_into_field, eta_word_sign, hkr_eta)


# ---------------------------------------------------------------------
# graph evaluation
# ---------------------------------------------------------------------

def graph_operator(graph, fields):
    """The polydifferential operator attached to (graph, aerial fields).

    fields[i] decorates aerial vertex i+1.  Returns an operator with
    one argument slot per ground vertex; the zero operator whenever
    some aerial out-degree differs from that vertex's factor count.
    """
    n, m = graph.n, graph.m
    if len(fields) != n:
        raise ValueError("need %d aerial fields, got %d" % (n, len(fields)))
    dim = fields[0].dim if fields else 1
    for v in range(1, n + 1):
        if graph.out_degree(v) != fields[v - 1].degree + 1:
            return PolyDiffOp.zero(dim, m - 1)
    edges = graph.edges
    out_lists = [graph.out_edges(v) for v in range(1, n + 1)]
    in_lists = [graph.in_edges(v) for v in range(1, n + m + 1)]
    acc = PolyDiffOp.zero(dim, m - 1)
    for assign in _cartesian(range(1, dim + 1), repeat=len(edges)):
        axis = {e: a for e, a in zip(edges, assign)}
        coeff = None
        dead = False
        for v in range(1, n + 1):
            comp = fields[v - 1].component(tuple(axis[e] for e in out_lists[v - 1]))
            if comp is None:
                dead = True
                break
            for e in in_lists[v - 1]:
                comp = comp.partial(axis[e])
                if comp.is_zero():
                    break
            if comp.is_zero():
                dead = True
                break
            coeff = comp if coeff is None else coeff * comp
            if coeff.is_zero():
                dead = True
                break
        if dead or coeff is None:
            if dead:
                continue
            coeff = TruncatedSeries.const(dim, 1)
        slots = []
        for g in range(n + 1, n + m + 1):
            multi = [0] * dim
            for e in in_lists[g - 1]:
                multi[axis[e] - 1] += 1
            slots.append(tuple(multi))
        acc = acc + PolyDiffOp.single(coeff, tuple(slots))
    return acc


def evaluate_graph(graph, fields, ground_functions):
    """Value of the graph operator on explicit ground functions."""
    op = graph_operator(graph, fields)
    return op.apply(list(ground_functions))


def u_one(field):
    """First Taylor coefficient on a single field, built by Einstein sum."""
    dim = field.dim
    k = field.degree + 1
    if k == 0:
        f = field.as_function()
        return PolyDiffOp.function(f) if f is not None else PolyDiffOp.zero(dim, -1)
    pref = Fraction((-1) ** ((k * (k - 1) // 2) % 2), _factorial(k))
    acc = PolyDiffOp.zero(dim, k - 1)
    for idx, comp in hkr_components(field):
        slots = tuple(_unit_multi(dim, i) for i in idx)
        acc = acc + PolyDiffOp.single(comp.scale(pref), slots)
    return acc


# ---------------------------------------------------------------------
# twisting data
# ---------------------------------------------------------------------

class MaurerCartanData:
    """A tuple of vector fields omega_alpha paired with eta_alpha."""

    def __init__(self, fields):
        fields = list(fields)
        if not fields:
            raise ValueError("need at least one twisting field")
        dim = fields[0].dim
        for f in fields:
            if f.dim != dim:
                raise ValueError("dimension mismatch")
            if f.degree != 0 and not f.is_zero():
                raise ValueError("twisting data must be vector fields")
        self.dim = dim
        self.fields = fields
        self.s = len(fields)

    def component(self, alpha, i):
        """Series coefficient of d/dt_i in omega_alpha (1-based both)."""
        f = self.fields[alpha - 1]
        s = f.comps.get((i,))
        if s is None:
            return None
        return s


def xi_matrix(mc, cap=None):
    """Matrix with entries sum_alpha eta_alpha d(d_j omega^i_alpha)."""
    dim = mc.dim
    if cap is None:
        caps = [s.cap for f in mc.fields for s in f.comps.values()]
        cap = min(caps) if caps else DEFAULT_CAP
    entries = []
    for i in range(1, dim + 1):
        row = []
        for j in range(1, dim + 1):
            terms = {}
            for alpha in range(1, mc.s + 1):
                comp = mc.component(alpha, i)
                if comp is None:
                    continue
                dcomp = comp.partial(j)
                for k in range(1, dim + 1):
                    c = dcomp.partial(k)
                    if c.is_zero():
                        continue
                    key = ((alpha,), (k,))
                    terms[key] = terms[key] + c if key in terms else c
            row.append(EtaFormScalar(dim, cap, terms))
        entries.append(row)
    return SeriesMatrix(entries)


def theta_and_det(xi, max_length=None):
    """Theta = sum_l (-1)^{l(l-1)/2} (W_l / l) Xi^l and det(exp Theta).

    Only even l contribute (odd wheel weights vanish); the eta grading
    cuts the sum off at l <= number of generators.
    """
    if not xi.all_even_grade():
        raise ValueError("Xi entries must have even total grade")
    dim = xi.entries[0][0].dim
    cap = xi.entries[0][0].cap
    if max_length is None:
        max_length = 2 * xi.size + 2  # eta nilpotence cuts off earlier
    theta = None
    trace_theta = EtaFormScalar.zero(dim, cap)
    power = SeriesMatrix.identity_like(xi)
    for l in range(1, max_length + 1):
        power = power * xi
        if power.is_zero():
            break
        w = wheel_weight_closed(l)
        if w == 0:
            continue
        sign = (-1) ** ((l * (l - 1) // 2) % 2)
        coeff = Fraction(sign) * w / l
        term = power.scale(coeff)
        theta = term if theta is None else theta + term
        trace_theta = trace_theta + power.trace().scale(coeff)
    if theta is None:
        theta = SeriesMatrix.identity_like(xi).scale(Fraction(0))
    return theta, trace_theta.exp()


def closed_form_map(mc, field, cap=None):
    """hkr(det(exp Theta) ^ field): the closed form of the twisted map."""
    xi = xi_matrix(mc, cap=cap)
    _, det = theta_and_det(xi)
    contracted = contract_scalar_into_field(det, field)
    return hkr_eta(contracted)


# ---------------------------------------------------------------------
# graph side of the twisted first coefficient
# ---------------------------------------------------------------------

def wheel_graph_weight(partition, m):
    """Exact weight of one labeled wheel-family graph of given cycle type."""
    j = sum(partition)
    cross = sum(partition[a] * partition[b]
                for a in range(len(partition))
                for b in range(a + 1, len(partition)))
    internal = sum(l * (l - 1) // 2 for l in partition)
    # the two bookkeeping identities behind the closed form
    assert j * (j - 1) // 2 == cross + internal
    assert ((m + 2 * j) * (m + 2 * j - 1) // 2) % 2 == (m * (m - 1) // 2 + j) % 2
    sign = (-1) ** (cross % 2)
    sign *= (-1) ** (((m + 2 * j) * (m + 2 * j - 1) // 2) % 2)
    sign *= (-1) ** (j % 2)
    w = Fraction(sign, _factorial(m))
    for l in partition:
        w *= wheel_weight_closed(l)
    return w


def twisted_first_taylor(mc, field, j_max=None):
    """Twisted first Taylor coefficient as an eta-graded operator.

    Sums (1/j!) eta_{alpha_j} .. eta_{alpha_1} W_Gamma
    U_Gamma(omega_{alpha_1}, .., omega_{alpha_j}, gamma) over all
    ordered index tuples and all surviving labeled graphs (everything
    outside the wheel families is dropped by the vanishing patterns).
    """
    dim = field.dim
    factors = field.degree + 1
    if j_max is None:
        j_max = mc.s
    total = EtaOperator(dim, {})
    for j in range(0, j_max + 1):
        m = factors - j
        if m < 0:
            continue
        profile = [1] * j + [factors]
        survivors = []
        for g in graphs_with_profile(j + 1, m, profile):
            if vanishing_tag(g) is not None:
                continue
            ctype = cycle_type_of_wheelish(g, j)
            if ctype is None:
                raise AssertionError(
                    "untagged non-wheel graph slipped through: %r" % (g,))
            survivors.append((g, ctype))
        if not survivors:
            continue
        jfact = Fraction(1, _factorial(j))
        for g, ctype in survivors:
            w = wheel_graph_weight(ctype, m)
            if w == 0:
                continue
            for alphas in _cartesian(range(1, mc.s + 1), repeat=j):
                sign, key = eta_word_sign(tuple(reversed(alphas)))
                if sign == 0:
                    continue
                op = graph_operator(g, [mc.fields[a - 1] for a in alphas]
                                    + [field])
                if op.is_zero():
                    continue
                scaled = op.scale(jfact * w * sign)
                total = total + EtaOperator(dim, {key: scaled})
    return total


# ---------------------------------------------------------------------
# Todd series
# ---------------------------------------------------------------------

def todd_series(order):
    """q(x) = x / (1 - e^{-x})."""
    denom = [Q0] * (order + 1)
    fact = 1
    for k in range(1, order + 2):
        fact *= k
        if k - 1 <= order:
            # coefficient of x^{k-1} in (1 - e^{-x})/x
            denom[k - 1] = Fraction((-1) ** (k + 1), fact)
    one = UnivariateSeries([Q1] + [Q0] * order)
    return useries_div(one, UnivariateSeries(denom))


def tilde_todd_series(order):
    """q~(x) = x / (e^{x/2} - e^{-x/2}), the symmetrized Todd series."""
    from .series import sinh_quotient_series
    one = UnivariateSeries([Q1] + [Q0] * order)
    return useries_div(one, sinh_quotient_series(order))


def exp_half_series(order, sign=1):
    """e^{sign x/2}."""
    coeffs = []
    fact = 1
    for k in range(order + 1):
        if k:
            fact *= k
        coeffs.append(Fraction(sign, 2) ** k / fact)
    return UnivariateSeries(coeffs)
