"""k-out-of-n system with one cold standby: specification and lifetime rule."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .copulas import Copula, ValidityReport, copula_from_dict
from .errors import DomainError, ValidationError
from .marginals import Marginal, marginal_from_dict

__all__ = ["SystemSpec", "ValidationReport", "validate_system", "lifetime_from_draws"]

_SYMMETRY_POINTS = 20
_SYMMETRY_TOL = 1e-12


@dataclass(frozen=True)
class SystemSpec:
    """``n`` exchangeable components sharing marginal ``component``, of which
    ``k`` must work, plus a cold standby with marginal ``standby``.

    ``copula`` couples the n components (first n coordinates) and the standby
    (last coordinate).
    """

    n: int
    k: int
    component: Marginal
    standby: Marginal
    copula: Copula

    @property
    def dim(self):
        return self.n + 1

    def to_dict(self):
        return {
            "n": self.n,
            "k": self.k,
            "marginal": self.component.to_dict(),
            "standby_marginal": self.standby.to_dict(),
            "copula": self.copula.to_dict(),
        }

    @classmethod
    def from_dict(cls, d: dict):
        try:
            n, k = d["n"], d["k"]
            component = marginal_from_dict(d["marginal"])
            standby = marginal_from_dict(d.get("standby_marginal", d["marginal"]))
            copula = copula_from_dict(d["copula"], default_dim=int(n) + 1)
        except KeyError as exc:
            raise DomainError(f"system is missing field {exc.args[0]!r}") from None
        if not isinstance(n, int) or not isinstance(k, int) or isinstance(n, bool) or isinstance(k, bool):
            raise DomainError("n and k must be integers")
        return cls(n, k, component, standby, copula)


@dataclass(frozen=True)
class ValidationReport:
    failures: tuple
    copula_validity: ValidityReport | None

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self):
        return {
            "ok": self.ok,
            "failures": list(self.failures),
            "copula": None if self.copula_validity is None else self.copula_validity.to_dict(),
        }


def _symmetry_failures(copula, n, rng):
    u = rng.random((_SYMMETRY_POINTS, n + 1))
    ref = np.asarray(copula.density(u))
    # n! grows fast; a handful of random permutations is enough for a spot check
    if math.factorial(n) <= 24:
        perms = list(itertools.permutations(range(n)))
    else:
        perms = [tuple(int(i) for i in rng.permutation(n)) for _ in range(24)]
    for p in perms:
        v = u.copy()
        v[:, :n] = u[:, list(p)]
        if np.max(np.abs(np.asarray(copula.density(v)) - ref)) > _SYMMETRY_TOL:
            return [f"copula density is not symmetric in the component arguments (permutation {p})"]
    return []


def validate_system(spec: SystemSpec, raise_on_error: bool = False) -> ValidationReport:
    """Structural checks plus the copula corner report.

    An improper copula density is reported but is not a structural failure.
    """
    failures = []
    if not isinstance(spec.n, int) or spec.n < 2:
        failures.append(f"n must be an integer >= 2 (got {spec.n!r})")
    if not isinstance(spec.k, int) or not 1 <= spec.k <= max(spec.n, 1):
        failures.append(f"k must satisfy 1 <= k <= n (got k={spec.k!r}, n={spec.n!r})")
    if spec.copula.dim != spec.n + 1:
        failures.append(f"copula dimension {spec.copula.dim} does not match n + 1 = {spec.n + 1}")
    validity = None
    if not failures:
        failures += _symmetry_failures(spec.copula, spec.n, np.random.default_rng(0))
        validity = spec.copula.validity()
    report = ValidationReport(tuple(failures), validity)
    if raise_on_error and failures:
        raise ValidationError(failures)
    return report


def lifetime_from_draws(spec: SystemSpec, z, standby):
    """System lifetime for component lifetimes ``z`` and standby lifetime.

    Returns ``(T, k_out_of_n_failure, first_failure)``.  Works on a single
    draw (``z`` of length n) or a batch (``z`` of shape ``(m, n)``).
    """
    z = np.asarray(z, dtype=float)
    standby = np.asarray(standby, dtype=float)
    if np.any(z < 0) or np.any(standby < 0) or np.any(np.isnan(z)) or np.any(np.isnan(standby)):
        raise DomainError("lifetimes must be nonnegative")
    if z.shape[-1] != spec.n:
        raise DomainError(f"expected {spec.n} component lifetimes")
    zs = np.sort(z, axis=-1)
    n, k = spec.n, spec.k
    failure = zs[..., n - k]
    if k == 1:
        T = failure + standby
    else:
        T = failure + np.minimum(zs[..., n - k + 1] - failure, standby)
    first = zs[..., 0]
    if T.ndim == 0:
        return float(T), float(failure), float(first)
    return T, failure, first
