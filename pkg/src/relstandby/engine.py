"""Numerical integration machinery.

* ``integrate_1d``: global adaptive Gauss-Kronrod (7/15) quadrature with an
  embedded error estimate; ``b = inf`` is mapped to ``[0, 1)`` by
  ``x = a + u / (1 - u)``.
* ``factored_integral_standby`` / ``factored_gap_integral``: the
  (n+1)-fold standby integrals collapsed to one outer integral by integrating
  each multilinear density factor in closed form.
* ``mc_integral_standby``: the same standby integral as an importance-weighted
  Monte Carlo mean over independent marginal draws.
"""

from __future__ import annotations

import enum
import heapq
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, replace
from math import comb

import numpy as np

from .errors import DomainError, IntegrandNaNError, QuadratureError, UnsupportedOperationError
from .system import SystemSpec, validate_system

__all__ = [
    "EvalConfig",
    "Estimate",
    "Path",
    "integrate_1d",
    "beta_constant",
    "factored_integral_standby",
    "factored_gap_integral",
    "mc_integral_standby",
    "substream_generators",
    "split_counts",
    "run_substreams",
]


class Path(enum.Enum):
    CLOSED_FORM = "ClosedForm"
    QUADRATURE = "Quadrature"
    FACTORED_QUADRATURE = "FactoredQuadrature"
    MONTE_CARLO = "MonteCarlo"


@dataclass(frozen=True)
class EvalConfig:
    quad_rel_tol: float = 1e-8
    quad_abs_tol: float = 1e-10
    quad_max_depth: int = 50
    mc_samples: int = 1_000_000
    seed: int = 20240101
    tail_cut: float = 1e-10
    substreams: int = 16

    def __post_init__(self):
        if not (self.quad_rel_tol > 0 and self.quad_abs_tol > 0):
            raise DomainError("quadrature tolerances must be positive")
        if self.quad_max_depth < 1:
            raise DomainError("quad_max_depth must be at least 1")
        if self.mc_samples < 1000:
            raise DomainError("mc_samples must be at least 1000")
        if not 0 <= self.seed < 2**64:
            raise DomainError("seed must be a 64-bit unsigned integer")
        if not 0 < self.tail_cut <= 1e-4:
            raise DomainError("tail_cut must lie in (0, 1e-4]")
        if self.substreams < 1:
            raise DomainError("substreams must be positive")

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict):
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(d) - known
        if unknown:
            raise DomainError(f"unknown eval fields: {sorted(unknown)}")
        return cls(**d)

    def with_(self, **kw):
        return replace(self, **kw)


@dataclass(frozen=True)
class Estimate:
    value: float
    error_bound: float
    path: Path

    def __post_init__(self):
        if not self.error_bound >= 0:
            raise DomainError("error bound must be nonnegative")

    def __float__(self):
        return float(self.value)

    def clamped(self, lo=0.0, hi=1.0) -> float:
        """Value clipped to ``[lo, hi]``, for reporting probabilities only."""
        return min(max(self.value, lo), hi)


# QUADPACK qk15 abscissae and weights
_XGK = np.array([
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0,
])
_WGK = np.array([
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
])
_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])  # 15 nodes, ascending
_WK = np.concatenate([_WGK[:-1], _WGK[::-1]])
_WG15 = np.zeros(15)
_WG15[[1, 3, 5]] = _WG[:3]
_WG15[[13, 11, 9]] = _WG[:3]
_WG15[7] = _WG[3]
_EPS = np.finfo(float).eps
_MAX_INTERVALS = 5000


def _gk15(g, lefts, rights):
    """Kronrod estimates and QUADPACK-style error estimates for many panels."""
    half = 0.5 * (rights - lefts)
    mid = 0.5 * (rights + lefts)
    x = mid[:, None] + half[:, None] * _NODES[None, :]
    y = g(x.ravel()).reshape(x.shape)
    if not np.all(np.isfinite(y)):
        bad = np.argwhere(~np.isfinite(y))[0]
        raise IntegrandNaNError(float(x[tuple(bad)]))
    k = y @ _WK
    gs = y @ _WG15
    mean = 0.5 * k
    resasc = np.abs(y - mean[:, None]) @ _WK
    resabs = np.abs(y) @ _WK
    err = np.abs(k - gs)
    scale = np.where(resasc > 0, np.minimum(1.0, (200.0 * err / np.where(resasc > 0, resasc, 1.0)) ** 1.5), 1.0)
    err = np.where(resasc > 0, resasc * scale, err)
    floor = 50.0 * _EPS * resabs
    err = np.where((resabs > np.finfo(float).tiny / (50 * _EPS)) & (err < floor), floor, err)
    return k * half, err * np.abs(half)


def integrate_1d(f, a, b, cfg: EvalConfig | None = None, *, vectorized=True) -> Estimate:
    """Adaptive quadrature of ``f`` over ``[a, b]``; ``b`` may be ``inf``.

    ``f`` must accept a 1-d array of abscissae unless ``vectorized=False``.
    Raises ``QuadratureError`` (carrying the best estimate) when the requested
    tolerance is not met before an interval has been halved ``quad_max_depth``
    times.
    """
    cfg = cfg or EvalConfig()
    a = float(a)
    b = float(b)
    if not np.isfinite(a):
        raise DomainError("lower limit must be finite")
    if not b > a:
        if b == a:
            return Estimate(0.0, 0.0, Path.QUADRATURE)
        raise DomainError("integration requires a < b")
    fv = f if vectorized else np.vectorize(f, otypes=[float])

    if np.isinf(b):
        def g(u):
            x = a + u / (1.0 - u)
            return np.asarray(fv(x), dtype=float) / (1.0 - u) ** 2
        lo, hi = 0.0, 1.0
    else:
        def g(x):
            return np.asarray(fv(x), dtype=float)
        lo, hi = a, b

    vals, errs = _gk15(g, np.array([lo]), np.array([hi]))
    heap = [(-errs[0], lo, hi, vals[0], errs[0], 0)]
    total, total_err = vals[0], errs[0]
    while True:
        tol = max(cfg.quad_abs_tol, cfg.quad_rel_tol * abs(total))
        if total_err <= tol:
            break
        _, l, r, v, e, depth = heapq.heappop(heap)
        if depth >= cfg.quad_max_depth or len(heap) >= _MAX_INTERVALS:
            raise QuadratureError("adaptive quadrature did not converge", float(total), float(total_err))
        m = 0.5 * (l + r)
        cv, ce = _gk15(g, np.array([l, m]), np.array([m, r]))
        for i, (cl, cr) in enumerate(((l, m), (m, r))):
            heapq.heappush(heap, (-ce[i], cl, cr, cv[i], ce[i], depth + 1))
        # rebuild sums from the heap to avoid drift from repeated subtraction
        total = sum(item[3] for item in heap)
        total_err = sum(item[4] for item in heap)
    return Estimate(float(total), float(total_err), Path.QUADRATURE)


def beta_constant(n: int, k: int) -> int:
    """``1 / B(n-k+1, k)`` as the exact integer ``n * C(n-1, n-k)``."""
    return n * comb(n - 1, n - k)


def _grouped_terms(spec: SystemSpec):
    """Collapse density terms to ``(coef, #survivor OM, #failed OM, pivot OM, standby OM)``.

    Component slots are assigned roles by index: ``0..k-2`` survive beyond
    the threshold, ``k-1..n-2`` fail before the pivot and ``n-1`` is the pivot.
    """
    n, k = spec.n, spec.k
    dec = spec.copula.decompose()
    groups = {}
    for c, row, sb in zip(dec.coefficients, dec.component_mask, dec.standby_mask):
        key = (int(row[: k - 1].sum()), int(row[k - 1 : n - 1].sum()), bool(row[n - 1]), bool(sb))
        groups[key] = groups.get(key, 0.0) + float(c)
    return [(c,) + key for key, c in groups.items() if c != 0.0]


def _combine(groups, n, k, surv, fail, pivot_om, standby):
    """Sum the grouped terms given ``(one, om)`` primitive pairs per slot class."""
    surv_one, surv_om = surv
    fail_one, fail_om = fail
    sb_one, sb_om = standby
    total = 0.0
    for c, a, b, p, q in groups:
        term = c * surv_om**a * surv_one ** (k - 1 - a) * fail_om**b * fail_one ** (n - k - b)
        if p:
            term = term * pivot_om
        total = total + term * (sb_om if q else sb_one)
    return total


def _require_decomposable(spec):
    if not hasattr(spec.copula, "decompose"):
        raise UnsupportedOperationError(f"{type(spec.copula).__name__} cannot use the factored path")


_PIVOT_PROBS = np.array([0.5, 0.9, 0.99, 0.999, 0.9999, 1 - 1e-6, 1 - 1e-8])


def _pivot_integral(spec, inner, lo, hi, cfg):
    """Integrate ``inner(z) f(z)`` over ``z`` in ``(lo, hi)``.

    Without a component density the integral runs in probability space,
    ``u = F(z)``, so tabulated marginals work as well.
    """
    F = spec.component
    if F.has_pdf:
        # break at component quantiles so a heavy tail cannot hide the bulk
        knots = [lo] + [float(q) for q in F.quantile(_PIVOT_PROBS) if lo < q < hi] + [hi]
        value = err = 0.0
        for a, b in zip(knots[:-1], knots[1:]):
            part = integrate_1d(lambda z: inner(z) * F.pdf(z), a, b, cfg)
            value += part.value
            err += part.error_bound
        return Estimate(value, err, Path.QUADRATURE)
    ulo = F.cdf(lo)
    uhi = 1.0 if np.isinf(hi) else F.cdf(hi)
    return integrate_1d(lambda u: inner(np.minimum(F.quantile(np.minimum(u, 1 - 1e-16)), hi)), ulo, uhi, cfg)


def factored_integral_standby(spec: SystemSpec, s: float, cfg: EvalConfig | None = None, lower: float = 0.0) -> Estimate:
    """``P(T > s, lower < Z_{n-k+1:n} <= s)``, the standby's share of survival.

    With ``lower = 0`` this is the term added to the k-out-of-n survival; a
    positive ``lower`` gives the window integral used for the MRL given that
    the principal system is still working at ``lower``.
    """
    cfg = cfg or EvalConfig()
    _require_decomposable(spec)
    s = float(s)
    if s < 0 or lower < 0:
        raise DomainError("times must be nonnegative")
    if s <= lower:
        return Estimate(0.0, 0.0, Path.FACTORED_QUADRATURE)
    n, k = spec.n, spec.k
    F, G = spec.component, spec.standby
    groups = _grouped_terms(spec)
    Fs = F.cdf(s)
    surv = (1.0 - Fs, -Fs * (1.0 - Fs))

    def inner(z):
        Fz = F.cdf(z)
        Gw = G.cdf(np.maximum(s - z, 0.0))
        return _combine(groups, n, k, surv, (Fz, Fz * (1.0 - Fz)), 1.0 - 2.0 * Fz, (1.0 - Gw, -Gw * (1.0 - Gw)))

    # a short-lived standby confines the integrand to z near s; split there
    # so the first Kronrod panel cannot step over it
    width = float(G.quantile(1.0 - cfg.tail_cut))
    if lower < s - width:
        head = _pivot_integral(spec, inner, lower, s - width, cfg)
        tail = _pivot_integral(spec, inner, s - width, s, cfg)
        est = Estimate(head.value + tail.value, head.error_bound + tail.error_bound, Path.QUADRATURE)
    else:
        est = _pivot_integral(spec, inner, lower, s, cfg)
    const = beta_constant(n, k)
    return Estimate(const * est.value, const * est.error_bound, Path.FACTORED_QUADRATURE)


def factored_gap_integral(spec: SystemSpec, t: float, x: float, cfg: EvalConfig | None = None) -> Estimate:
    """``P(min(Z_{n-k+2:n} - Z_{n-k+1:n}, Z) > x, Z_{1:n} > t)``.

    Pivot over ``(t, inf)``, failed slots over ``(t, z)``, survivors beyond
    ``z + x`` and the standby beyond ``x``.  For ``k = 1`` there are no
    survivors and the event reduces to ``Z > x``.
    """
    cfg = cfg or EvalConfig()
    _require_decomposable(spec)
    t, x = float(t), float(x)
    if t < 0 or x < 0:
        raise DomainError("times must be nonnegative")
    n, k = spec.n, spec.k
    F, G = spec.component, spec.standby
    groups = _grouped_terms(spec)
    Ft = F.cdf(t)
    Gx = G.cdf(x)
    standby = (1.0 - Gx, -Gx * (1.0 - Gx))
    if standby[0] == 0.0:
        return Estimate(0.0, 0.0, Path.FACTORED_QUADRATURE)

    def inner(z):
        Fz = F.cdf(z)
        Fzx = F.cdf(z + x)
        fail = (Fz - Ft, (Fz - Ft) - (Fz * Fz - Ft * Ft))
        surv = (1.0 - Fzx, -Fzx * (1.0 - Fzx))
        return _combine(groups, n, k, surv, fail, 1.0 - 2.0 * Fz, standby)

    upper = F.quantile(1.0 - cfg.tail_cut)
    est = _pivot_integral(spec, inner, t, max(upper, t), cfg)
    const = beta_constant(n, k)
    return Estimate(const * est.value, const * est.error_bound, Path.FACTORED_QUADRATURE)


# --- Monte Carlo -----------------------------------------------------------


def split_counts(total: int, parts: int):
    base, extra = divmod(int(total), int(parts))
    return [base + (1 if i < extra else 0) for i in range(parts)]


def substream_generators(seed: int, parts: int):
    """Independent counter-based generators, one per substream index."""
    return [np.random.Generator(np.random.Philox(np.random.SeedSequence(int(seed), spawn_key=(i,)))) for i in range(parts)]


def worker_count(parts: int) -> int:
    env = os.environ.get("RELSTANDBY_THREADS")
    cap = int(env) if env and env.isdigit() and int(env) > 0 else (os.cpu_count() or 1)
    return max(1, min(cap, parts))


def run_substreams(fn, args):
    """Apply ``fn`` to each argument; results come back in substream order."""
    args = list(args)
    workers = worker_count(len(args))
    if workers == 1:
        return [fn(a) for a in args]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, args))


_CHUNK = 1 << 16


def standby_event(spec: SystemSpec, z: np.ndarray, standby: np.ndarray, s: float) -> np.ndarray:
    """Indicator of ``Z_{n-k+1:n} <= s < T`` for draws ``z`` of shape ``(m, n)``."""
    n, k = spec.n, spec.k
    zs = np.sort(z, axis=1)
    pivot = zs[:, n - k]
    ok = (pivot <= s) & (pivot > 0) & (standby > s - pivot)
    if k >= 2:
        ok &= zs[:, n - k + 1] > s
    return ok


def mc_integral_standby(spec: SystemSpec, s: float, cfg: EvalConfig | None = None) -> Estimate:
    """Monte Carlo estimate of the standby contribution at ``s``.

    Draws are independent from the marginals and weighted by the copula
    density.  The event is evaluated on sorted draws, so no combinatorial role
    factor is needed.  Result is deterministic for fixed
    ``(seed, mc_samples, substreams)``.
    """
    cfg = cfg or EvalConfig()
    validate_system(spec, raise_on_error=True)
    s = float(s)
    if s < 0:
        raise DomainError("s must be nonnegative")
    if s == 0:
        return Estimate(0.0, 0.0, Path.MONTE_CARLO)
    n = spec.n
    counts = split_counts(cfg.mc_samples, cfg.substreams)
    gens = substream_generators(cfg.seed, cfg.substreams)

    def work(arg):
        rng, m = arg
        acc, acc2 = 0.0, 0.0
        left = m
        while left > 0:
            size = min(left, _CHUNK)
            u = rng.random((size, n + 1))
            z = spec.component.quantile(u[:, :n])
            sb = spec.standby.quantile(u[:, n])
            w = spec.copula.density(u) * standby_event(spec, z, sb, s)
            acc += float(w.sum())
            acc2 += float((w * w).sum())
            left -= size
        return acc, acc2

    parts = run_substreams(work, zip(gens, counts))
    total = sum(p[0] for p in parts)
    total2 = sum(p[1] for p in parts)
    N = cfg.mc_samples
    mean = total / N
    var = max(total2 / N - mean * mean, 0.0) * N / (N - 1)
    return Estimate(mean, float(np.sqrt(var / N)), Path.MONTE_CARLO)
