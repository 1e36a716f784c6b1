"""Copulas whose densities are multilinear in ``1 - 2u``.

Every family here (independence, the four-dimensional FGM copula and the
pairwise FGM generalisation) is represented internally as a list of terms

    c(u) = sum_m coef_m * prod_{i in S_m} (1 - 2 u_i)

where the last coordinate is the standby slot.  Integrating each factor gives
the CDF, since the antiderivative of ``1 - 2x`` on ``[0, u]`` is ``u (1 - u)``.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from math import comb

import numpy as np

from .errors import DimensionError, DomainError, UnsupportedOperationError

__all__ = [
    "FactorKind",
    "MultilinearDecomposition",
    "ValidityReport",
    "Copula",
    "Independence",
    "FGM4",
    "FgmPairwise",
    "copula_cdf",
    "copula_density",
    "validate_copula",
    "decompose_density",
    "copula_from_dict",
    "MAX_DIMENSION",
]

MAX_DIMENSION = 20


class FactorKind(enum.Enum):
    ONE = "One"
    ONE_MINUS_2U = "OneMinus2U"


@dataclass(frozen=True)
class MultilinearDecomposition:
    """Density as a sum of products of ``1`` / ``1 - 2u`` factors.

    ``component_mask[m, i]`` is True when term ``m`` carries ``1 - 2u_i`` for
    component slot ``i``; ``standby_mask[m]`` likewise for the standby slot.
    """

    coefficients: np.ndarray
    component_mask: np.ndarray
    standby_mask: np.ndarray

    @property
    def n_terms(self) -> int:
        return self.coefficients.size

    @property
    def terms(self):
        """List of ``(coefficient, component_kinds, standby_kind)`` tuples."""
        out = []
        for c, comp, sb in zip(self.coefficients, self.component_mask, self.standby_mask):
            kinds = [FactorKind.ONE_MINUS_2U if b else FactorKind.ONE for b in comp]
            out.append((float(c), kinds, FactorKind.ONE_MINUS_2U if sb else FactorKind.ONE))
        return out

    def evaluate(self, u) -> np.ndarray:
        """Reconstruct the density at points ``u`` of shape ``(..., d)``."""
        a = 1.0 - 2.0 * np.asarray(u, dtype=float)
        mask = np.concatenate([self.component_mask, self.standby_mask[:, None]], axis=1)
        out = np.zeros(a.shape[:-1])
        for c, row in zip(self.coefficients, mask):
            out = out + c * np.prod(a[..., row], axis=-1)
        return out


@dataclass(frozen=True)
class ValidityReport:
    min_corner_density: float
    max_corner_density: float
    argmin_corner: tuple

    @property
    def is_proper_density(self) -> bool:
        # corner sums of many terms carry round-off; allow it relative to the peak
        return self.min_corner_density >= -1e-12 * max(1.0, abs(self.max_corner_density))

    def to_dict(self):
        return {
            "min_corner_density": self.min_corner_density,
            "max_corner_density": self.max_corner_density,
            "argmin_corner": list(self.argmin_corner),
            "is_proper_density": self.is_proper_density,
        }


class Copula:
    """Base class: subclasses provide ``dim`` and ``_terms()``."""

    family = ""
    dim: int

    def _terms(self):
        """Yield ``(coefficient, component_index_tuple, has_standby_factor)``."""
        raise NotImplementedError

    def decompose(self) -> MultilinearDecomposition:
        coefs, comp, sb = [], [], []
        for c, idx, has_sb in self._terms():
            if c == 0:
                continue
            row = np.zeros(self.dim - 1, dtype=bool)
            row[list(idx)] = True
            coefs.append(float(c))
            comp.append(row)
            sb.append(bool(has_sb))
        return MultilinearDecomposition(
            np.array(coefs, dtype=float),
            np.array(comp, dtype=bool).reshape(len(coefs), self.dim - 1),
            np.array(sb, dtype=bool),
        )

    def _check(self, u):
        u = np.asarray(u, dtype=float)
        if u.shape[-1:] != (self.dim,):
            raise DimensionError(f"expected points of dimension {self.dim}, got shape {u.shape}")
        if np.any(np.isnan(u)) or np.any(u < 0) or np.any(u > 1):
            raise DomainError("copula arguments must lie in [0, 1]")
        return u

    def cdf(self, u):
        u = self._check(u)
        dec = self._decomposition
        base = np.prod(u, axis=-1)
        g = 1.0 - u
        mask = np.concatenate([dec.component_mask, dec.standby_mask[:, None]], axis=1)
        bracket = np.zeros(u.shape[:-1])
        for c, row in zip(dec.coefficients, mask):
            bracket = bracket + c * np.prod(g[..., row], axis=-1)
        out = base * bracket
        return out.item() if np.ndim(out) == 0 else out

    def density(self, u):
        u = self._check(u)
        out = self._decomposition.evaluate(u)
        return out.item() if np.ndim(out) == 0 else out

    @property
    def _decomposition(self):
        dec = self.__dict__.get("_dec_cache")
        if dec is None:
            dec = self.decompose()
            object.__setattr__(self, "_dec_cache", dec)
        return dec

    def validity(self) -> ValidityReport:
        """Exact density extrema over the unit cube by corner enumeration."""
        d = self.dim
        best_min, best_max, argmin = np.inf, -np.inf, None
        # chunks of corners keep memory bounded for d up to MAX_DIMENSION
        n_corners = 1 << d
        chunk = 1 << min(d, 16)
        bits = np.arange(d)
        for start in range(0, n_corners, chunk):
            idx = np.arange(start, min(start + chunk, n_corners))
            corners = ((idx[:, None] >> bits) & 1).astype(float)
            vals = self._decomposition.evaluate(corners)
            i = int(np.argmin(vals))
            if vals[i] < best_min:
                best_min, argmin = float(vals[i]), tuple(corners[i].tolist())
            best_max = max(best_max, float(vals.max()))
        return ValidityReport(best_min, best_max, argmin)

    def params(self) -> dict:
        raise NotImplementedError

    def to_dict(self) -> dict:
        return {"family": self.family, "params": self.params()}


def _check_theta(*thetas):
    for t in thetas:
        if not -1.0 <= t <= 1.0:
            raise DomainError(f"FGM parameters must lie in [-1, 1], got {t}")


@dataclass(frozen=True)
class Independence(Copula):
    dim: int
    family = "independence"

    def __post_init__(self):
        if not 2 <= self.dim <= MAX_DIMENSION:
            raise DimensionError(f"copula dimension must be in [2, {MAX_DIMENSION}]")

    def _terms(self):
        yield 1.0, (), False

    def params(self):
        return {"dim": self.dim}


@dataclass(frozen=True)
class FGM4(Copula):
    """Four-dimensional FGM copula of three exchangeable components and a standby.

    ``theta11`` couples component pairs, ``theta12`` a component with the
    standby, ``theta21`` all three components, ``theta22`` a component pair
    with the standby and ``theta31`` all four variables.
    """

    theta11: float = 0.0
    theta12: float = 0.0
    theta21: float = 0.0
    theta22: float = 0.0
    theta31: float = 0.0
    family = "fgm4"

    def __post_init__(self):
        _check_theta(self.theta11, self.theta12, self.theta21, self.theta22, self.theta31)

    @property
    def dim(self):
        return 4

    @property
    def thetas(self):
        return (self.theta11, self.theta12, self.theta21, self.theta22, self.theta31)

    def _terms(self):
        yield 1.0, (), False
        for pair in itertools.combinations(range(3), 2):
            yield self.theta11, pair, False
        for i in range(3):
            yield self.theta12, (i,), True
        yield self.theta21, (0, 1, 2), False
        for pair in itertools.combinations(range(3), 2):
            yield self.theta22, pair, True
        yield self.theta31, (0, 1, 2), True

    def params(self):
        return dict(zip(("theta11", "theta12", "theta21", "theta22", "theta31"), self.thetas))


@dataclass(frozen=True)
class FgmPairwise(Copula):
    """FGM copula with only pairwise perturbations.

    ``theta_cc`` multiplies every component-component pair and ``theta_cs``
    every component-standby pair, which keeps the components exchangeable for
    any dimension.
    """

    dim: int
    theta_cc: float = 0.0
    theta_cs: float = 0.0
    family = "fgm_pairwise"

    def __post_init__(self):
        if not 2 <= self.dim <= MAX_DIMENSION:
            raise DimensionError(f"copula dimension must be in [2, {MAX_DIMENSION}]")
        _check_theta(self.theta_cc, self.theta_cs)

    def _terms(self):
        n = self.dim - 1
        yield 1.0, (), False
        for pair in itertools.combinations(range(n), 2):
            yield self.theta_cc, pair, False
        for i in range(n):
            yield self.theta_cs, (i,), True

    def params(self):
        return {"dim": self.dim, "theta_cc": self.theta_cc, "theta_cs": self.theta_cs}


def copula_cdf(c: Copula, u):
    return c.cdf(u)


def copula_density(c: Copula, u):
    return c.density(u)


def validate_copula(c: Copula) -> ValidityReport:
    return c.validity()


def decompose_density(c: Copula) -> MultilinearDecomposition:
    if not isinstance(c, Copula):
        raise UnsupportedOperationError(f"{type(c).__name__} has no multilinear decomposition")
    return c.decompose()


def diagonal_blocks_cdf(c: Copula, blocks):
    """``C(b_1 x j_1, b_2 x j_2, ..., 1, ..., 1)`` over component slots.

    ``blocks`` is a sequence of ``(value, count)``; values may be arrays of a
    common shape.  Remaining component slots and the standby slot are 1.
    """
    values = [np.asarray(v, dtype=float) for v, _ in blocks]
    shape = np.broadcast_shapes(*(v.shape for v in values)) if values else ()
    u = np.ones(shape + (c.dim,))
    pos = 0
    for v, count in zip(values, (cnt for _, cnt in blocks)):
        if count:
            u[..., pos:pos + count] = np.broadcast_to(v, shape)[..., None]
        pos += count
    if pos > c.dim - 1:
        raise DimensionError("more block entries than component slots")
    return c.cdf(u)


def all_components_survive(c: Copula, F_t):
    """``P(Z_{1:n} > t)`` from the diagonal of the copula via inclusion-exclusion."""
    n = c.dim - 1
    total = 0.0
    for j in range(n + 1):
        total = total + (-1) ** j * comb(n, j) * diagonal_blocks_cdf(c, [(F_t, j)])
    return total


_COPULAS = {
    "independence": lambda p, d: Independence(int(p.get("dim", d))),
    "fgm4": lambda p, d: FGM4(**{k: float(p.get(k, 0.0)) for k in ("theta11", "theta12", "theta21", "theta22", "theta31")}),
    "fgm_pairwise": lambda p, d: FgmPairwise(int(p.get("dim", d)), float(p.get("theta_cc", 0.0)), float(p.get("theta_cs", 0.0))),
}


def copula_from_dict(d: dict, default_dim: int | None = None) -> Copula:
    family = str(d.get("family", "")).lower()
    if family not in _COPULAS:
        raise DomainError(f"unknown copula family {d.get('family')!r}")
    params = d.get("params", {})
    if family != "fgm4" and "dim" not in params and default_dim is None:
        raise DomainError(f"{family} copula needs a dimension")
    return _COPULAS[family](params, default_dim)
