"""Landmark parameterization and piecewise-linear shape reconstruction."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .curves import (
    CLOSED,
    OPEN,
    EvaluationGrid,
    PlanarCurve,
    Srvf,
    compute_srvf,
    evaluate_at,
    srvf_values,
)


class LandmarkError(ValueError):
    """Raised for landmark vectors violating ordering or support."""


def theta_is_valid(theta: np.ndarray, topology: str) -> bool:
    """Fast validity predicate used on sampler proposals."""
    k = theta.size
    if topology == OPEN:
        if k < 1 or theta[0] <= 0.0 or theta[-1] >= 1.0:
            return False
    else:
        if k < 3 or theta[0] < 0.0 or theta[-1] >= 1.0:
            return False
    return bool(np.all(np.diff(theta) > 0.0))


@dataclass(frozen=True)
class LandmarkConfig:
    """Ordered landmark locations theta on the curve domain.

    Open curves require 0 < theta_1 < ... < theta_k < 1 with k >= 1.
    Closed curves store distinct values in [0, 1) sorted ascending, with the
    cyclic ordering implied, and require k >= 3.
    """

    theta: np.ndarray
    topology: str = OPEN

    def __post_init__(self):
        th = np.asarray(self.theta, dtype=float).ravel()
        if not theta_is_valid(th, self.topology):
            raise LandmarkError(
                f"invalid landmark vector for {self.topology} curve: {th}"
            )
        object.__setattr__(self, "theta", th)

    @property
    def k(self) -> int:
        return self.theta.size


@dataclass(frozen=True)
class SpacingVector:
    """Consecutive landmark spacings; lives on the probability simplex."""

    s: np.ndarray
    topology: str = OPEN

    def __post_init__(self):
        s = np.asarray(self.s, dtype=float).ravel()
        if np.any(s <= 0.0):
            raise LandmarkError("spacing components must be positive")
        if abs(s.sum() - 1.0) > 1e-9:
            raise LandmarkError("spacing components must sum to 1")
        object.__setattr__(self, "s", s)


def spacing_from_theta(theta: np.ndarray, topology: str) -> np.ndarray:
    """Consecutive differences of a sorted landmark vector (array level)."""
    if topology == OPEN:
        return np.diff(np.concatenate([[0.0], theta, [1.0]]))
    return np.concatenate([np.diff(theta), [np.mod(theta[0] - theta[-1], 1.0)]])


def theta_to_spacing(cfg: LandmarkConfig) -> SpacingVector:
    return SpacingVector(spacing_from_theta(cfg.theta, cfg.topology), cfg.topology)


def spacing_to_theta(s: SpacingVector, start: float = 0.0) -> LandmarkConfig:
    """Recover landmarks from spacings.

    ``start`` anchors the first landmark on closed curves and is ignored for
    open ones (implicitly 0).
    """
    if s.topology == OPEN:
        theta = np.cumsum(s.s)[:-1]
    else:
        theta = np.sort(
            np.mod(start + np.concatenate([[0.0], np.cumsum(s.s[:-1])]), 1.0)
        )
    return LandmarkConfig(theta, s.topology)


def reconstruction_values(
    curve: PlanarCurve, theta: np.ndarray, grid: EvaluationGrid
) -> np.ndarray:
    """Piecewise-linear reconstruction through the landmark images,
    evaluated at the grid nodes.

    Open curves get the two extra segments tying the reconstruction to the
    curve endpoints; closed curves get the wrap segment from the last
    landmark back to the first.
    """
    nodes = grid.nodes
    if curve.closed:
        anchors = evaluate_at(curve, theta)
        knot_t = np.concatenate([[theta[-1] - 1.0], theta, [theta[0] + 1.0]])
        knot_xy = np.vstack([anchors[-1:], anchors, anchors[:1]])
    else:
        knot_t = np.concatenate([[0.0], theta, [1.0]])
        knot_xy = evaluate_at(curve, knot_t)
    x = np.interp(nodes, knot_t, knot_xy[:, 0])
    y = np.interp(nodes, knot_t, knot_xy[:, 1])
    return np.column_stack([x, y])


def linear_reconstruction(
    curve: PlanarCurve, cfg: LandmarkConfig, grid: EvaluationGrid
) -> PlanarCurve:
    return PlanarCurve(reconstruction_values(curve, cfg.theta, grid), curve.topology)


def reconstruction_error_sq_values(
    curve: PlanarCurve,
    theta: np.ndarray,
    grid: EvaluationGrid,
    q_values: np.ndarray,
) -> float:
    """Squared SRVF distance to the reconstruction, given the cached curve
    SRVF: the grid-spacing-weighted sum of squared pointwise differences,
    i.e. the discrete squared L2 distance between the two velocity fields.

    The reconstruction's SRVF goes through the same finite-difference
    pipeline as the data curves so both sides share discretization bias.
    """
    rec = reconstruction_values(curve, theta, grid)
    diff = q_values - srvf_values(rec, grid)
    return float(np.sum(diff * diff) * grid.dt)


def reconstruction_error_sq(
    curve: PlanarCurve,
    cfg: LandmarkConfig,
    grid: EvaluationGrid,
    q_curve: Srvf | None = None,
) -> float:
    """Squared reconstruction error d^2 between a curve and its
    landmark-based linear reconstruction, measured as the discrete squared
    L2 distance between their square-root velocity fields."""
    q = q_curve if q_curve is not None else compute_srvf(curve, grid)
    return reconstruction_error_sq_values(curve, cfg.theta, grid, q.values)
