"""Graph weights: closed-form wheel values and Monte Carlo integration.

The closed-form side expands the modified Bernoulli generating series

    sum_l  s_hat_l x^l = (1/2) log((e^{x/2} - e^{-x/2}) / x)

and sets  W_l = -(-1)^{l(l+1)/2} l s_hat_l,  so W_1 = 0, W_2 = 1/24,
W_3 = 0, W_4 = 1/1440.  Two independent derivations of s_hat are kept
(series-log composition versus logarithmic-derivative division) so the
values can be cross-checked without shared code paths.

The Monte Carlo side integrates the wedge of hyperbolic angle forms

    phi(p, q) = arg((q - p)/(q - conj p)) / (2 pi)

over the quotient of the configuration space of n points in the upper
half-plane and m ordered points on the real line by z -> a z + b
(a > 0).  The gauge puts the first aerial point at i; the remaining
aerial points are sampled through the unit-disk chart w = (z-i)/(z+i)
(polar coordinates radius in (0,1), angle in (0,2pi)) and ground points
through their boundary angle in (0,2pi), which is an orientation
preserving change of variables, so the integrand is simply the
determinant of the Jacobian of the edge angles with respect to the
sample coordinates.  Edge rows follow the canonical edge order of the
graph; columns are (radius_2, angle_2, ..., radius_n, angle_n,
ground_1, ..., ground_m).

Plain uniform sampling has log-divergent variance: the Jacobian
determinant grows like 1/dist near a collision of two vertices joined
by an edge, and like 1/|1-w| when a sampled vertex escapes to the
boundary point w = 1 (the point at infinity of the half-plane).  Pairs
joined by a 2-cycle are harmless (their two angle rows share the
singular angular differential, which cancels in the determinant), and
so are collisions with the gauge point, whose polar chart absorbs the
angular blow-up.  The sampler therefore mixes the uniform draw with
log-radial proposal kernels (area density proportional to 1/dist^2 in
the disk chart) centered at every singular locus: the partner's w for
sampled pairs joined by an edge, exp(i alpha) for aerial-ground edges,
and w = 1 for each sampled vertex.  Each sample is weighted by the
reciprocal mixture density, which keeps the estimator unbiased, makes
the variance finite, and leaves graphs without sampled aerial vertices
(the corollas) untouched.

The reported weight carries the orientation prefactor
(-1)^{E(E-1)/2} on top of the raw integral.
"""

from __future__ import annotations

import cmath
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, asdict
from fractions import Fraction

import numpy as np

from .series import (Q0, Q1, UnivariateSeries, sinh_quotient_series,
                     useries_div, useries_log)

TWO_PI = 2.0 * math.pi
COLLISION_MARGIN = 1e-9
CHUNK = 250_000
KERNEL_RMIN = 1e-4
KERNEL_RMAX = 2.0
KERNEL_LOG = math.log(KERNEL_RMAX / KERNEL_RMIN)
BASE_WEIGHT = 0.5


# ---------------------------------------------------------------------
# closed-form wheel weights
# ---------------------------------------------------------------------

def modified_bernoulli_series(order):
    """s_hat coefficients via (1/2) log of the sinh quotient."""
    return useries_log(sinh_quotient_series(order)) * Fraction(1, 2)

def modified_bernoulli_series_by_division(order):
    """Independent route: integrate g'/g termwise instead of composing log.

    With g the sinh quotient, (log g)' = g'/g is computed by series
    division and integrated; the half factor is applied at the end.
    """
    g = sinh_quotient_series(order)
    ratio = useries_div(g.derivative(), g.truncate(order - 1))
    return ratio.integrate().truncate(order) * Fraction(1, 2)

def modified_bernoulli(l, route="log"):
    if l < 0:
        raise ValueError("negative index")
    series = (modified_bernoulli_series(l + 2) if route == "log"
              else modified_bernoulli_series_by_division(l + 2))
    return series[l]

def wheel_weight_closed(l, route="log"):
    """W_l = -(-1)^{l(l+1)/2} l s_hat_l; zero for odd l."""
    if l < 1:
        raise ValueError("wheel length must be >= 1")
    sign = (-1) ** (((l + 1) * l // 2) % 2)
    return -sign * l * modified_bernoulli(l, route=route)

def theta_series(order):
    """-(1/2) log((e^{x/2} - e^{-x/2})/x), the matrix-logarithm series."""
    return modified_bernoulli_series(order) * Fraction(-1)

def inverse_sqrt_sinh_quotient(order):
    """sqrt(x / (e^{x/2} - e^{-x/2})) as a series, constant term 1."""
    from .series import useries_sqrt
    one = UnivariateSeries([Q1] + [Q0] * order)
    return useries_sqrt(useries_div(one, sinh_quotient_series(order)))


# ---------------------------------------------------------------------
# hyperbolic angle
# ---------------------------------------------------------------------

def angle(p, q):
    """Angle coordinate in turns, in [0, 1), of the edge p -> q.

    p must be interior (positive imaginary part); q may be interior or
    a boundary (real) point.
    """
    p = complex(p)
    q = complex(q)
    if p.imag <= 0:
        raise ValueError("edge source must lie in the upper half-plane")
    num = q - p
    den = q - p.conjugate()
    if num == 0 or den == 0:
        raise ValueError("coincident points have no angle")
    val = cmath.phase(num / den) / TWO_PI
    return val % 1.0


# ---------------------------------------------------------------------
# Monte Carlo weight estimation
# ---------------------------------------------------------------------

@dataclass
class WeightEstimate:
    value: float          # signed weight, orientation prefactor included
    stderr: float
    integral: float       # raw integral of the angle-form wedge
    prefactor: int
    samples: int
    discarded: int
    seed: int
    workers: int
    digest: str

    def to_json(self):
        return asdict(self)


def _kernel_components(graph):
    """Importance-sampling components for the singular loci of a graph.

    Returns tuples ("pair", j, k) — redraw sampled vertex k near sampled
    vertex j's disk image; ("ground", j, l) — redraw sampled vertex j
    near the boundary image of ground point l; ("inf", j) — redraw j
    near w = 1.  Vertex 1 is the gauge point and never participates.
    """
    n = graph.n
    pair_edges = {}
    for s, t in graph.edges:
        key = (min(s, t), max(s, t))
        pair_edges[key] = pair_edges.get(key, 0) + 1
    comps = []
    for (a, b) in sorted(pair_edges):
        if 2 <= a and b <= n:
            comps.append(("pair", a, b))
        elif 2 <= a <= n < b:
            comps.append(("ground", a, b - n))
    for j in range(2, n + 1):
        comps.append(("inf", j))
    return comps


def _chunk_sums(args):
    """One deterministic chunk: returns (sum, sumsq, kept, discarded)."""
    graph_json, chunk_index, chunk_size, seed = args
    from .graphs import AdmissibleGraph
    graph = AdmissibleGraph.from_json(graph_json)
    n, m = graph.n, graph.m
    edges = graph.edges
    e_count = len(edges)
    dim = 2 * (n - 1) + m
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed,
                                                       spawn_key=(chunk_index,)))
    # base sample coordinates
    if n > 1:
        r = rng.random((chunk_size, n - 1))
        ang = rng.random((chunk_size, n - 1)) * TWO_PI
    if m > 0:
        alpha = np.sort(rng.random((chunk_size, m)) * TWO_PI, axis=1)

    # mixture of importance kernels over the singular loci
    comps = _kernel_components(graph)
    denom = np.full(chunk_size, 1.0)
    if comps:
        p_comp = (1.0 - BASE_WEIGHT) / len(comps)
        coin = rng.random(chunk_size)
        rho = KERNEL_RMIN * np.exp(rng.random(chunk_size) * KERNEL_LOG)
        offset = rho * np.exp(1j * rng.random(chunk_size) * TWO_PI)

        def center_of(comp):
            kind = comp[0]
            if kind == "pair":
                j = comp[1]
                return r[:, j - 2] * np.exp(1j * ang[:, j - 2])
            if kind == "ground":
                return np.exp(1j * alpha[:, comp[2] - 1])
            return np.full(chunk_size, 1.0 + 0j)

        for ci, comp in enumerate(comps):
            lo = BASE_WEIGHT + ci * p_comp
            mask = (coin >= lo) & (coin < lo + p_comp)
            if not mask.any():
                continue
            v = comp[2] if comp[0] == "pair" else comp[1]
            w_new = center_of(comp)[mask] + offset[mask]
            r[mask, v - 2] = np.abs(w_new)
            ang[mask, v - 2] = np.mod(np.angle(w_new), TWO_PI)
        denom[:] = BASE_WEIGHT
        for comp in comps:
            v = comp[2] if comp[0] == "pair" else comp[1]
            w_v = r[:, v - 2] * np.exp(1j * ang[:, v - 2])
            d = np.abs(w_v - center_of(comp))
            k = np.where((d >= KERNEL_RMIN) & (d <= KERNEL_RMAX),
                         r[:, v - 2]
                         / (TWO_PI * KERNEL_LOG
                            * np.maximum(d, KERNEL_RMIN) ** 2),
                         0.0)
            denom += TWO_PI * p_comp * k

    z = np.empty((chunk_size, n), dtype=np.complex128)
    z[:, 0] = 1j
    dz_dr = np.zeros((chunk_size, n), dtype=np.complex128)
    dz_da = np.zeros((chunk_size, n), dtype=np.complex128)
    inbox = np.full(chunk_size, True)
    if n > 1:
        inbox &= np.all((r > 0.0) & (r < 1.0), axis=1)
        r = np.clip(r, 1e-12, 1.0 - 1e-12)
        w = r * np.exp(1j * ang)
        base = 2j / (1.0 - w) ** 2
        z[:, 1:] = 1j * (1.0 + w) / (1.0 - w)
        dz_dr[:, 1:] = base * np.exp(1j * ang)
        dz_da[:, 1:] = base * 1j * w
    if m > 0:
        q = -1.0 / np.tan(alpha / 2.0)
        dq = 0.5 / np.sin(alpha / 2.0) ** 2
    # positions of all vertices (grounds are real)
    def pos(v):
        if v <= n:
            return z[:, v - 1]
        return q[:, v - n - 1].astype(np.complex128)

    jac = np.zeros((chunk_size, e_count, dim), dtype=np.float64)
    for row, (s, t) in enumerate(edges):
        zp = z[:, s - 1]
        zq = pos(t)
        nvec = zq - zp
        dvec = zq - np.conj(zp)
        inv_n = 1.0 / nvec
        inv_d = 1.0 / dvec
        # columns of the source point (never the gauge point for cols)
        if s >= 2:
            c0 = 2 * (s - 2)
            jac[:, row, c0] += (-dz_dr[:, s - 1] * inv_n
                                + np.conj(dz_dr[:, s - 1]) * inv_d).imag / TWO_PI
            jac[:, row, c0 + 1] += (-dz_da[:, s - 1] * inv_n
                                    + np.conj(dz_da[:, s - 1]) * inv_d).imag / TWO_PI
        if t <= n:
            if t >= 2:
                c0 = 2 * (t - 2)
                jac[:, row, c0] += (dz_dr[:, t - 1] * (inv_n - inv_d)).imag / TWO_PI
                jac[:, row, c0 + 1] += (dz_da[:, t - 1] * (inv_n - inv_d)).imag / TWO_PI
        else:
            col = 2 * (n - 1) + (t - n - 1)
            jac[:, row, col] += (dq[:, t - n - 1] * (inv_n - inv_d)).imag / TWO_PI

    dets = np.linalg.det(jac) if e_count else np.ones(chunk_size)

    # collision margin: drop samples with near-coincident points
    drop = ~np.isfinite(dets) | ~inbox
    pts = [pos(v) for v in range(1, n + m + 1)]
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            drop |= np.abs(pts[i] - pts[j]) < COLLISION_MARGIN
    g = np.where(drop, 0.0, dets / denom)
    discarded = int(drop.sum())
    return float(g.sum()), float((g * g).sum()), chunk_size, discarded


def mc_weight(graph, samples, seed=0, workers=1, chunk_size=CHUNK):
    """Monte Carlo estimate of the weight of an admissible graph.

    Deterministic for fixed (graph, samples, seed, chunk_size): chunks
    draw from counter-indexed generators and are reduced in index
    order, so the worker count never changes the result.
    """
    n, m = graph.n, graph.m
    e_count = len(graph.edges)
    dim = 2 * (n - 1) + m if n >= 1 else m - 2
    if n < 1:
        raise ValueError("need at least one aerial vertex to gauge-fix")
    if e_count != dim:
        raise ValueError("form degree %d does not match moduli %d"
                         % (e_count, dim))
    if samples < 1:
        raise ValueError("need a positive sample count")
    volume = (TWO_PI ** (n - 1 + m)) / math.factorial(m)
    prefactor = (-1) ** ((e_count * (e_count - 1) // 2) % 2)
    if dim == 0:
        # zero-dimensional fiber: the integral of the empty wedge is 1
        return WeightEstimate(float(prefactor), 0.0, 1.0, prefactor,
                              samples, 0, seed, workers,
                              graph.canonical_hash())

    tasks = []
    left = samples
    idx = 0
    gj = graph.to_json()
    while left > 0:
        size = min(chunk_size, left)
        tasks.append((gj, idx, size, seed))
        left -= size
        idx += 1

    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_chunk_sums, tasks))
    else:
        results = [_chunk_sums(t) for t in tasks]

    total = sum(r[2] for r in results)
    discarded = sum(r[3] for r in results)
    s1 = sum(r[0] for r in results)
    s2 = sum(r[1] for r in results)
    mean = s1 / total
    var = max(s2 / total - mean * mean, 0.0)
    integral = mean * volume
    stderr = math.sqrt(var / total) * volume
    return WeightEstimate(prefactor * integral, stderr, integral, prefactor,
                          total, discarded, seed, workers,
                          graph.canonical_hash())


# ---------------------------------------------------------------------
# persistent cache (JSON lines)
# ---------------------------------------------------------------------

def cache_lookup(path, digest, samples, seed, workers=None):
    """Find a cached estimate; tolerates missing or corrupt files."""
    if not os.path.exists(path):
        return None
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                try:
                    row = json.loads(line)
                except json.JSONDecodeError:
                    continue
                if (row.get("digest") == digest
                        and row.get("samples") == samples
                        and row.get("seed") == seed):
                    return WeightEstimate(**{k: row[k] for k in (
                        "value", "stderr", "integral", "prefactor",
                        "samples", "discarded", "seed", "workers", "digest")})
    except OSError:
        return None
    return None


def cache_store(path, estimate):
    with open(path, "a", encoding="utf-8") as fh:
        fh.write(json.dumps(estimate.to_json(), sort_keys=True) + "\n")


def mc_weight_cached(graph, samples, seed=0, workers=1, cache_path="weights.jsonl"):
    digest = graph.canonical_hash()
    hit = cache_lookup(cache_path, digest, samples, seed)
    if hit is not None:
        return hit, True
    est = mc_weight(graph, samples, seed=seed, workers=workers)
    cache_store(cache_path, est)
    return est, False
