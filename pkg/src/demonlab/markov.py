"""Continuous-time master-equation engine on a finite set of microstates.

A symmetric matrix of transition rates r_ij defines the linear generator L
with L_ij = r_ij for j != i and L_ii = -sum_{j != i} L_ji, so that
probability vectors evolve as dp/dt = L p and p(t) = exp(L t) p(0).
Symmetry of the rates is required: it is what makes the entropy-production
rate

    (k/2) * sum_ij r_ij (ln p_j - ln p_i)(p_j - p_i)

manifestly nonnegative, i.e. what makes Shannon entropy -k sum p ln p a
Lyapunov function of the relaxation (the discrete H-theorem). Asymmetric
input is rejected rather than silently accepted.

All types are immutable after construction and all operations are pure,
so concurrent use needs no locking.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import eigh, expm
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .errors import (
    DivergenceError,
    InvalidInputError,
    NonUniqueEquilibriumError,
    NumericError,
)
from .reporting import write_csv, write_json
from .units import NATURAL_UNITS, UnitSystem

#: States with probability at or below this floor make the entropy-production
#: formula diverge; callers must clamp to >= this value first.
PROB_FLOOR = 1e-15

#: Largest state count handled by the dense matrix exponential; above this,
#: evolve() switches to adaptive ODE stepping. A performance knob only.
EXPM_MAX_STATES = 64

_PROB_SUM_TOL = 1e-12


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class RateMatrix:
    """Symmetric nonnegative transition rates r_ij (1/time); diagonal ignored."""

    rates: np.ndarray

    def __post_init__(self) -> None:
        r = np.array(self.rates, dtype=float)
        if r.ndim != 2 or r.shape[0] != r.shape[1]:
            raise InvalidInputError(f"rate matrix must be square, got shape {r.shape}")
        if r.shape[0] < 2:
            raise InvalidInputError("need at least 2 states")
        if not np.all(np.isfinite(r)):
            raise InvalidInputError("rate matrix contains non-finite entries")
        np.fill_diagonal(r, 0.0)
        if np.any(r < 0.0):
            raise InvalidInputError("off-diagonal rates must be nonnegative")
        if not np.array_equal(r, r.T):
            raise InvalidInputError(
                "rate matrix must be symmetric (r_ij == r_ji); symmetrize explicitly"
            )
        object.__setattr__(self, "rates", _freeze(r))

    @property
    def n(self) -> int:
        return self.rates.shape[0]

    def is_connected(self) -> bool:
        """True if the graph of nonzero rates has a single component."""
        adjacency = csr_matrix(self.rates > 0.0)
        n_comp, _ = connected_components(adjacency, directed=False)
        return n_comp == 1


@dataclass(frozen=True)
class MasterOperator:
    """Generator L of the relaxation semigroup: dp/dt = L p."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = np.array(self.matrix, dtype=float)
        object.__setattr__(self, "matrix", _freeze(m))

    @property
    def n(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class ProbDist:
    """Probability vector over microstates: entries >= 0, sums to 1."""

    p: np.ndarray

    def __post_init__(self) -> None:
        v = np.array(self.p, dtype=float)
        if v.ndim != 1 or v.size < 1:
            raise InvalidInputError("probability vector must be one-dimensional")
        if not np.all(np.isfinite(v)):
            raise NumericError("probability vector contains non-finite entries")
        if np.any(v < 0.0):
            raise InvalidInputError("probabilities must be nonnegative")
        if abs(v.sum() - 1.0) > _PROB_SUM_TOL:
            raise InvalidInputError(f"probabilities must sum to 1, got {v.sum()!r}")
        object.__setattr__(self, "p", _freeze(v))

    @property
    def n(self) -> int:
        return self.p.size

    @classmethod
    def uniform(cls, n: int) -> "ProbDist":
        return cls(np.full(n, 1.0 / n))

    def is_interior(self, floor: float = PROB_FLOOR) -> bool:
        return bool(np.all(self.p > floor))


def build_master_operator(rates: RateMatrix) -> MasterOperator:
    """Assemble L from the rates; each diagonal entry is minus its column sum."""
    r = rates.rates
    m = r.copy()
    np.fill_diagonal(m, -(r.sum(axis=0)))
    return MasterOperator(m)


def _clamped_dist(raw: np.ndarray) -> ProbDist:
    # Integrator output may carry O(1e-15) negatives; anything worse is a bug.
    if raw.min() < -1e-12:
        raise NumericError(f"evolution produced entry {raw.min()!r} below -1e-12")
    clipped = np.clip(raw, 0.0, None)
    return ProbDist(clipped / clipped.sum())


def evolve(p0: ProbDist, op: MasterOperator, t: float, method: str = "auto") -> ProbDist:
    """Propagate p0 for time t >= 0 under dp/dt = L p.

    Uses the dense matrix exponential (Pade scaling-and-squaring) for
    n <= EXPM_MAX_STATES and adaptive high-order explicit stepping above;
    both reproduce the two-state closed form p1(t) = 1/2 + (p1(0)-1/2)e^{-2rt}
    well inside 1e-10.
    """
    if not math.isfinite(t):
        raise NumericError(f"time must be finite, got {t}")
    if t < 0:
        raise InvalidInputError(f"time must be nonnegative, got {t}")
    if p0.n != op.n:
        raise InvalidInputError(f"dimension mismatch: p0 has {p0.n} states, operator {op.n}")
    if t == 0.0:
        return p0
    if method == "auto":
        method = "expm" if op.n <= EXPM_MAX_STATES else "ode"
    if method == "expm":
        raw = expm(op.matrix * t) @ p0.p
    elif method == "ode":
        sol = solve_ivp(
            lambda _t, y: op.matrix @ y,
            (0.0, t),
            p0.p,
            method="DOP853",
            rtol=1e-12,
            atol=1e-14,
        )
        if not sol.success:
            raise NumericError(f"ODE integration failed: {sol.message}")
        raw = sol.y[:, -1]
    else:
        raise InvalidInputError(f"unknown method {method!r}")
    if not np.all(np.isfinite(raw)):
        raise NumericError("evolution produced non-finite entries")
    return _clamped_dist(raw)


def trajectory(p0: ProbDist, op: MasterOperator, ts: Sequence[float]) -> list[ProbDist]:
    """Evaluate the evolution at many times via one symmetric eigendecomposition.

    Exact for symmetric generators (which is all build_master_operator makes),
    and much cheaper than one matrix exponential per sample.
    """
    ts = np.asarray(ts, dtype=float)
    if np.any(ts < 0) or not np.all(np.isfinite(ts)):
        raise InvalidInputError("times must be finite and nonnegative")
    w, v = eigh(op.matrix)
    coeffs = v.T @ p0.p
    out = []
    for t in ts:
        raw = v @ (np.exp(w * t) * coeffs)
        out.append(_clamped_dist(raw))
    return out


def shannon_entropy(p: ProbDist, units: UnitSystem = NATURAL_UNITS) -> float:
    """-k sum_i p_i ln p_i, with the convention 0 ln 0 = 0. Units of k."""
    v = p.p
    nz = v[v > 0.0]
    return float(-units.k * np.sum(nz * np.log(nz)))


def max_entropy(n: int, units: UnitSystem = NATURAL_UNITS) -> float:
    """k ln n, the uniform-distribution ceiling on n states."""
    return units.k * math.log(n)


def entropy_production_rate(
    p: ProbDist, rates: RateMatrix, units: UnitSystem = NATURAL_UNITS
) -> float:
    """dS/dt along the relaxation: (k/2) sum_ij r_ij (ln p_j - ln p_i)(p_j - p_i).

    Both factors always share a sign, so the result is nonnegative. States
    with p_i = 0 that have a nonzero rate attached make the sum diverge;
    that is a real singularity of the formula, so it raises DivergenceError
    instead of returning a clamped value.
    """
    if p.n != rates.n:
        raise InvalidInputError("dimension mismatch between distribution and rates")
    v = p.p
    r = rates.rates
    zero = v <= 0.0
    if np.any(zero):
        touched = r[zero, :].sum(axis=1) > 0.0
        if np.any(touched):
            raise DivergenceError(
                "entropy-production rate diverges: zero-probability state has "
                f"nonzero rates attached (clamp probabilities to >= {PROB_FLOOR})"
            )
    # Log of zero-probability *untouched* states is multiplied by r = 0; give
    # it a harmless finite value so the product is 0 rather than nan.
    logs = np.log(np.where(zero, 1.0, v))
    dlog = logs[None, :] - logs[:, None]
    dp = v[None, :] - v[:, None]
    return float(0.5 * units.k * np.sum(r * dlog * dp))


def equilibrium_distribution(rates: RateMatrix) -> ProbDist:
    """Stationary distribution: the null vector of L, normalized.

    For symmetric rates on a connected graph this is the uniform
    distribution, and it satisfies detailed balance r_ij p_j = r_ji p_i
    entrywise. A disconnected graph has no unique equilibrium.
    """
    if not rates.is_connected():
        raise NonUniqueEquilibriumError(
            "transition graph is disconnected; equilibrium is not unique"
        )
    op = build_master_operator(rates)
    w, v = eigh(op.matrix)
    vec = v[:, np.argmax(w)]  # eigenvalues are <= 0; the largest is 0
    if vec.sum() < 0:
        vec = -vec
    vec = np.clip(vec, 0.0, None)
    return ProbDist(vec / vec.sum())


def detailed_balance_residual(rates: RateMatrix, p: ProbDist) -> float:
    """max_ij |r_ij p_j - r_ji p_i|; zero at equilibrium."""
    r = rates.rates
    flow = r * p.p[None, :]
    return float(np.max(np.abs(flow - flow.T)))


@dataclass(frozen=True)
class HTheoremReport:
    """Entropy trajectory samples plus the monotonicity verdict."""

    times: np.ndarray
    entropy: np.ndarray
    production_rate: np.ndarray
    dist_to_eq: np.ndarray
    monotone: bool
    min_production: float
    terminal_dist: float
    equilibrium: np.ndarray = field(repr=False)

    def to_rows(self) -> list[tuple[float, float, float, float]]:
        return list(
            zip(
                self.times.tolist(),
                self.entropy.tolist(),
                self.production_rate.tolist(),
                self.dist_to_eq.tolist(),
            )
        )

    def to_csv(self, path: str | Path) -> None:
        write_csv(path, ("t", "S", "dSdt", "dist_to_eq"), self.to_rows())

    def to_dict(self) -> dict:
        return {
            "t": self.times.tolist(),
            "S": self.entropy.tolist(),
            "dSdt": self.production_rate.tolist(),
            "dist_to_eq": self.dist_to_eq.tolist(),
            "monotone": self.monotone,
            "min_production": self.min_production,
            "terminal_dist": self.terminal_dist,
        }

    def to_json(self, path: str | Path) -> None:
        write_json(path, self.to_dict())


def verify_h_theorem(
    rates: RateMatrix,
    p0: ProbDist,
    t_grid: Sequence[float],
    units: UnitSystem = NATURAL_UNITS,
) -> HTheoremReport:
    """Sample S(t), its production rate, and the distance to equilibrium.

    The verdict is monotone=True iff the sampled entropy never decreases by
    more than 1e-12 between consecutive samples. p0 must be interior
    (all entries > PROB_FLOOR); samples are floored there before the
    production rate is evaluated, per the documented regularization.
    """
    ts = np.asarray(list(t_grid), dtype=float)
    if ts.size < 1:
        raise InvalidInputError("t_grid must contain at least one time")
    if np.any(np.diff(ts) < 0):
        raise InvalidInputError("t_grid must be nondecreasing")
    if not p0.is_interior():
        raise InvalidInputError(
            f"p0 must be interior (all entries > {PROB_FLOOR}) for the H-theorem check"
        )
    op = build_master_operator(rates)
    p_eq = equilibrium_distribution(rates)
    samples = trajectory(p0, op, ts)

    entropy = np.empty(ts.size)
    production = np.empty(ts.size)
    dist = np.empty(ts.size)
    for i, dist_i in enumerate(samples):
        entropy[i] = shannon_entropy(dist_i, units)
        floored = np.clip(dist_i.p, PROB_FLOOR, None)
        production[i] = entropy_production_rate(
            ProbDist(floored / floored.sum()), rates, units
        )
        dist[i] = np.max(np.abs(dist_i.p - p_eq.p))

    monotone = bool(np.all(np.diff(entropy) >= -1e-12))
    return HTheoremReport(
        times=_freeze(ts),
        entropy=_freeze(entropy),
        production_rate=_freeze(production),
        dist_to_eq=_freeze(dist),
        monotone=monotone,
        min_production=float(production.min()),
        terminal_dist=float(dist[-1]),
        equilibrium=p_eq.p,
    )


def random_symmetric_rates(
    n: int,
    rng: np.random.Generator,
    low: float = 0.5,
    high: float = 2.0,
    extra_edge_prob: float = 0.3,
) -> RateMatrix:
    """Random connected symmetric rates: spanning tree plus optional extra edges."""
    if n < 2:
        raise InvalidInputError("need at least 2 states")
    r = np.zeros((n, n))
    order = rng.permutation(n)
    for idx in range(1, n):
        a = order[idx]
        b = order[rng.integers(0, idx)]
        w = rng.uniform(low, high)
        r[a, b] = r[b, a] = w
    for i in range(n):
        for j in range(i + 1, n):
            if r[i, j] == 0.0 and rng.random() < extra_edge_prob:
                w = rng.uniform(low, high)
                r[i, j] = r[j, i] = w
    return RateMatrix(r)


def rate_matrix_from_text(path: str | Path) -> RateMatrix:
    """Read whitespace-separated rows of rates from a plain-text file."""
    try:
        r = np.loadtxt(path, ndmin=2)
    except (OSError, ValueError) as exc:
        raise InvalidInputError(f"cannot parse rate matrix from {path}: {exc}") from exc
    return RateMatrix(r)


def rate_matrix_from_json(path: str | Path) -> RateMatrix:
    """Read rates from a JSON file with field "rates": array of arrays."""
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInputError(f"cannot parse JSON from {path}: {exc}") from exc
    if not isinstance(doc, dict) or "rates" not in doc:
        raise InvalidInputError('JSON rate file must contain a "rates" field')
    return RateMatrix(np.asarray(doc["rates"], dtype=float))
