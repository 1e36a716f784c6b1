"""Univariate lifetime distributions on [0, inf).

All models accept scalars or numpy arrays and return the same shape.  Negative
times are rejected rather than clamped.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, UnsupportedOperationError

__all__ = [
    "Marginal",
    "Exponential",
    "Lomax",
    "Weibull",
    "Tabulated",
    "eval_marginal",
    "quantile",
    "marginal_from_dict",
]


def _times(z):
    z = np.asarray(z, dtype=float)
    if np.any(np.isnan(z)) or np.any(z < 0):
        raise DomainError("lifetime distributions are supported on [0, inf); got a negative or NaN time")
    return z


def _probs(p):
    p = np.asarray(p, dtype=float)
    if np.any(np.isnan(p)) or np.any(p < 0) or np.any(p >= 1):
        raise DomainError("quantile needs probabilities in [0, 1)")
    return p


def _out(x):
    return x.item() if np.ndim(x) == 0 else x


class Marginal:
    """Common interface of the lifetime families."""

    family: str = ""

    def _cdf(self, z):
        raise NotImplementedError

    def _pdf(self, z):
        raise UnsupportedOperationError(f"{self.family} marginal has no density")

    def _quantile(self, p):
        raise NotImplementedError

    def cdf(self, z):
        return _out(self._cdf(_times(z)))

    def sf(self, z):
        return _out(1.0 - self._cdf(_times(z)))

    def pdf(self, z):
        return _out(self._pdf(_times(z)))

    def quantile(self, p):
        return _out(self._quantile(_probs(p)))

    @property
    def has_pdf(self) -> bool:
        return True

    def params(self) -> dict:
        raise NotImplementedError

    def to_dict(self) -> dict:
        return {"family": self.family, "params": self.params()}


@dataclass(frozen=True)
class Exponential(Marginal):
    rate: float
    family = "exponential"

    def __post_init__(self):
        if not self.rate > 0:
            raise DomainError("exponential rate must be positive")

    def _cdf(self, z):
        return -np.expm1(-self.rate * z)

    def _pdf(self, z):
        return self.rate * np.exp(-self.rate * z)

    def _quantile(self, p):
        return -np.log1p(-p) / self.rate

    def params(self):
        return {"rate": self.rate}


@dataclass(frozen=True)
class Lomax(Marginal):
    """Pareto type II law with survival ``(1 + z/scale)**(-shape)``."""

    shape: float
    scale: float = 1.0
    family = "lomax"

    def __post_init__(self):
        if not (self.shape > 0 and self.scale > 0):
            raise DomainError("Lomax shape and scale must be positive")

    def _cdf(self, z):
        return -np.expm1(-self.shape * np.log1p(z / self.scale))

    def _pdf(self, z):
        return self.shape / self.scale * (1.0 + z / self.scale) ** (-self.shape - 1.0)

    def _quantile(self, p):
        return self.scale * np.expm1(-np.log1p(-p) / self.shape)

    def params(self):
        return {"shape": self.shape, "scale": self.scale}


@dataclass(frozen=True)
class Weibull(Marginal):
    shape: float
    scale: float = 1.0
    family = "weibull"

    def __post_init__(self):
        if not (self.shape > 0 and self.scale > 0):
            raise DomainError("Weibull shape and scale must be positive")

    def _cdf(self, z):
        return -np.expm1(-((z / self.scale) ** self.shape))

    def _pdf(self, z):
        x = z / self.scale
        with np.errstate(divide="ignore"):
            return self.shape / self.scale * x ** (self.shape - 1.0) * np.exp(-(x**self.shape))

    def _quantile(self, p):
        return self.scale * (-np.log1p(-p)) ** (1.0 / self.shape)

    def params(self):
        return {"shape": self.shape, "scale": self.scale}


@dataclass(frozen=True)
class Tabulated(Marginal):
    """Piecewise-linear CDF through ``(z, F(z))`` knots.

    The grid must start at ``(0, 0)``, be nondecreasing in both coordinates and
    end at ``F = 1``.  There is deliberately no density.
    """

    z: tuple
    F: tuple
    family = "tabulated"
    _zs: np.ndarray = field(init=False, repr=False, compare=False)
    _Fs: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        zs = np.asarray(self.z, dtype=float)
        Fs = np.asarray(self.F, dtype=float)
        if zs.ndim != 1 or zs.shape != Fs.shape or zs.size < 2:
            raise DomainError("tabulated marginal needs matching 1-d grids with at least two knots")
        if zs[0] != 0 or Fs[0] != 0 or Fs[-1] != 1:
            raise DomainError("tabulated CDF must start at (0, 0) and reach 1")
        if np.any(np.diff(zs) <= 0) or np.any(np.diff(Fs) < 0):
            raise DomainError("tabulated grid must be strictly increasing in z and nondecreasing in F")
        object.__setattr__(self, "z", tuple(zs.tolist()))
        object.__setattr__(self, "F", tuple(Fs.tolist()))
        object.__setattr__(self, "_zs", zs)
        object.__setattr__(self, "_Fs", Fs)

    @property
    def has_pdf(self):
        return False

    def _cdf(self, z):
        return np.interp(z, self._zs, self._Fs, right=1.0)

    def _quantile(self, p):
        # leftmost knot segment reaching p, so flat stretches map to their left end
        p = np.asarray(p)
        j = np.clip(np.searchsorted(self._Fs, p, side="left"), 1, self._Fs.size - 1)
        F0, F1 = self._Fs[j - 1], self._Fs[j]
        z0, z1 = self._zs[j - 1], self._zs[j]
        with np.errstate(invalid="ignore", divide="ignore"):
            w = np.where(F1 > F0, (p - F0) / (F1 - F0), 0.0)
        return np.where(p <= 0, 0.0, z0 + w * (z1 - z0))

    def params(self):
        return {"z": list(self.z), "F": list(self.F)}


def eval_marginal(m: Marginal, z: float):
    """Return ``(cdf, pdf, survival)`` at ``z``; survival is exactly ``1 - cdf``."""
    F = m.cdf(z)
    return F, m.pdf(z), 1.0 - F


def quantile(m: Marginal, p: float):
    return m.quantile(p)


_FAMILIES = {
    "exponential": lambda p: Exponential(rate=float(p["rate"])),
    "lomax": lambda p: Lomax(shape=float(p["shape"]), scale=float(p.get("scale", 1.0))),
    "weibull": lambda p: Weibull(shape=float(p["shape"]), scale=float(p.get("scale", 1.0))),
    "tabulated": lambda p: Tabulated(z=tuple(p["z"]), F=tuple(p["F"])),
}


def marginal_from_dict(d: dict) -> Marginal:
    family = str(d.get("family", "")).lower()
    if family not in _FAMILIES:
        raise DomainError(f"unknown marginal family {d.get('family')!r}")
    try:
        return _FAMILIES[family](d.get("params", {}))
    except KeyError as exc:
        raise DomainError(f"{family} marginal is missing parameter {exc.args[0]!r}") from None
