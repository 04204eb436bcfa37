"""Identifiability machinery for closed curves.

A closed domain has no natural start point, so inference anchors t=0 at the
maximal-curvature node of the first curve, shifts the remaining curves to
the cyclic offset closest to the first in SRVF distance, and relabels
posterior samples by the cyclic permutation closest to the first sample
under a circular metric.
"""

from __future__ import annotations

from dataclasses import replace

import numpy as np

from .curves import CLOSED, CurveError, PlanarCurve, compute_srvf, discrete_curvature, evaluate_at
from .model import CurveSample
from .rwm import PosteriorSampleSet


def select_reference_point(curve: PlanarCurve) -> int:
    """Index of the node maximizing discrete curvature (ties: lowest index)."""
    return int(np.argmax(discrete_curvature(curve)))


def _shift_start(curve: PlanarCurve, t0: float) -> PlanarCurve:
    """Re-sample a closed curve so its parameter origin sits at t0."""
    n = curve.n_points
    ts = np.mod(t0 + np.arange(n) / n, 1.0)
    return PlanarCurve(evaluate_at(curve, ts), CLOSED)


def align_sample_starts(sample: CurveSample) -> CurveSample:
    """Anchor the sample's start points.

    The first curve is shifted so t=0 is its maximal-curvature node; every
    other curve is shifted by the integer grid offset minimizing the squared
    SRVF distance to the first, searched exhaustively over all N shifts.
    """
    if sample.grid.topology != CLOSED:
        raise CurveError("start alignment applies to closed curves only")
    grid = sample.grid
    first = sample.curves[0]
    i0 = select_reference_point(first)
    aligned = [_shift_start(first, i0 / first.n_points)]
    q_ref = compute_srvf(aligned[0], grid).values
    for curve in sample.curves[1:]:
        q = compute_srvf(curve, grid).values
        costs = [
            float(np.sum((np.roll(q, -m, axis=0) - q_ref) ** 2))
            for m in range(grid.n_eval)
        ]
        m_best = int(np.argmin(costs))
        aligned.append(_shift_start(curve, m_best / grid.n_eval))
    return CurveSample.build(aligned, grid)


def circular_component_distance(a: float, b: float) -> float:
    """min{|a-b|, |a-1-b|, |a+1-b|} for a, b in [0, 1)."""
    return min(abs(a - b), abs(a - 1.0 - b), abs(a + 1.0 - b))


def _circular_distance_vec(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    d = np.abs(a - b)
    return np.minimum(d, 1.0 - d)


def align_posterior_samples(samples: PosteriorSampleSet) -> PosteriorSampleSet:
    """Relabel each sample by the cyclic permutation minimizing its summed
    circular distance to the first sample.

    Only the k cyclic rotations are searched; landmark order around a closed
    curve is cyclic by construction.  Ties break toward the smallest
    rotation offset, which makes the operation idempotent.
    """
    if samples.topology != CLOSED:
        raise ValueError("posterior alignment applies to closed-curve samples")
    if samples.n == 0:
        return samples
    k_values = np.unique(samples.ks)
    if k_values.size != 1:
        raise ValueError("posterior alignment requires a fixed landmark count")
    ref = samples.thetas[0]
    k = ref.size
    out = [ref.copy()]
    for th in samples.thetas[1:]:
        best = th
        best_cost = np.inf
        for r in range(k):
            cand = np.roll(th, -r)
            cost = float(_circular_distance_vec(cand, ref).sum())
            if cost < best_cost:
                best, best_cost = cand, cost
        out.append(best.copy())
    return replace(samples, thetas=out)
