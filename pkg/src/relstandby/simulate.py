"""Exact sampling of the joint lifetime model and Monte Carlo estimates.

This module is the independent oracle for the analytic code: it only uses the
copula density, the marginal quantiles and the lifetime rule.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .engine import run_substreams, split_counts, substream_generators
from .errors import DomainError, EfficiencyError, InsufficientConditioningError, ValidityError
from .system import SystemSpec, lifetime_from_draws, validate_system

__all__ = ["JointSample", "Targets", "SimulationResult", "sample_joint", "simulate_metrics"]

MIN_ACCEPTANCE = 1e-3
MIN_CONDITIONING_DRAWS = 100
DEFAULT_SUBSTREAMS = 16


@dataclass(frozen=True)
class JointSample:
    z: np.ndarray  # (count, n) component lifetimes
    standby: np.ndarray  # (count,)
    proposals: int
    bound: float

    @property
    def acceptance_rate(self) -> float:
        return len(self.standby) / self.proposals


def _rejection_stream(spec, rng, need, M):
    d = spec.n + 1
    kept, proposals = [], 0
    got = 0
    while got < need:
        batch = max(1024, int(1.2 * (need - got) * M))
        u = rng.random((batch, d))
        r = rng.random(batch)
        acc = np.flatnonzero(r * M < spec.copula.density(u))
        if got + acc.size >= need:
            acc = acc[: need - got]
            proposals += int(acc[-1]) + 1 if acc.size else batch
        else:
            proposals += batch
        kept.append(u[acc])
        got += acc.size
    return np.concatenate(kept) if kept else np.empty((0, d)), proposals


def sample_joint(spec: SystemSpec, count: int, seed: int, substreams: int = DEFAULT_SUBSTREAMS) -> JointSample:
    """Draw ``count`` lifetime vectors by rejection on the copula scale.

    Proposals are uniform on the unit cube and accepted with probability
    ``c(u) / M`` where ``M`` is the largest corner density.
    """
    if count < 1:
        raise DomainError("count must be positive")
    validate_system(spec, raise_on_error=True)
    report = spec.copula.validity()
    if not report.is_proper_density:
        raise ValidityError(
            f"copula density is negative at a corner (min {report.min_corner_density:.6g} at {report.argmin_corner}); cannot sample"
        )
    M = report.max_corner_density
    if 1.0 / M < MIN_ACCEPTANCE:
        raise EfficiencyError(f"density bound {M:.4g} gives acceptance below {MIN_ACCEPTANCE}")
    gens = substream_generators(seed, substreams)
    parts = run_substreams(lambda a: _rejection_stream(spec, a[0], a[1], M), zip(gens, split_counts(count, substreams)))
    u = np.concatenate([p[0] for p in parts])
    proposals = sum(p[1] for p in parts)
    n = spec.n
    return JointSample(spec.component.quantile(u[:, :n]), spec.standby.quantile(u[:, n]), proposals, M)


@dataclass(frozen=True)
class Targets:
    survival: tuple = ()
    psi1: tuple = ()
    psi2: tuple = ()
    psi3: tuple = ()
    mttf: bool = False

    @classmethod
    def from_dict(cls, d: dict):
        return cls(
            tuple(float(x) for x in d.get("survival", ())),
            tuple(float(x) for x in d.get("psi1", ())),
            tuple(float(x) for x in d.get("psi2", ())),
            tuple(float(x) for x in d.get("psi3", ())),
            bool(d.get("mttf", False)),
        )


@dataclass(frozen=True)
class SimulationResult:
    sample_count: int
    seed: int
    acceptance_rate: float
    proposals: int
    estimates: dict = field(default_factory=dict)  # name -> (value, standard_error)

    def __getitem__(self, key):
        return self.estimates[key]

    def to_dict(self):
        return {
            "sample_count": self.sample_count,
            "seed": self.seed,
            "acceptance_rate": self.acceptance_rate,
            "proposals": self.proposals,
            "estimates": {k: {"value": v, "standard_error": se} for k, (v, se) in self.estimates.items()},
        }


def _mean_se(x):
    m = x.size
    if m < 2:
        return float(x.mean()) if m else float("nan"), 0.0
    return float(x.mean()), float(x.std(ddof=1) / np.sqrt(m))


def _conditional(T, cond, t, label):
    m = int(cond.sum())
    if m < MIN_CONDITIONING_DRAWS:
        raise InsufficientConditioningError(f"only {m} draws satisfy the event for {label}")
    return _mean_se(T[cond] - t)


def simulate_metrics(
    spec: SystemSpec, targets: Targets, count: int, seed: int, substreams: int = DEFAULT_SUBSTREAMS
) -> SimulationResult:
    """Monte Carlo estimates of survival, the three MRLs and the MTTF of T."""
    sample = sample_joint(spec, count, seed, substreams)
    T, fail, first = lifetime_from_draws(spec, sample.z, sample.standby)
    est = {}
    for s in targets.survival:
        p = float(np.mean(T > s))
        est[f"survival@{s:g}"] = (p, float(np.sqrt(p * (1 - p) / count)))
    for t in targets.psi1:
        est[f"psi1@{t:g}"] = _conditional(T, T > t, t, f"psi1({t:g})")
    for t in targets.psi2:
        est[f"psi2@{t:g}"] = _conditional(T, fail > t, t, f"psi2({t:g})")
    for t in targets.psi3:
        est[f"psi3@{t:g}"] = _conditional(T, first > t, t, f"psi3({t:g})")
    if targets.mttf:
        est["mttf"] = _mean_se(T)
    return SimulationResult(count, int(seed), sample.acceptance_rate, sample.proposals, est)
