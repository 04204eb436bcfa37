"""Analytic test curves used in the experiments.

Generators sample the curves exactly; unit-length rescaling happens later in
the normal preprocessing path.
"""

from __future__ import annotations

import numpy as np

from .curves import CLOSED, OPEN, PlanarCurve


def sine_curve(n: int = 200, amplitude: float = 1.0) -> PlanarCurve:
    """Open curve [t, amplitude * sin(4 pi t)]: two peaks, two valleys."""
    t = np.linspace(0.0, 1.0, n)
    return PlanarCurve(np.column_stack([t, amplitude * np.sin(4.0 * np.pi * t)]), OPEN)


def scaled_sine_family(amplitudes=(1, 2, 3, 4, 5), n: int = 200) -> list[PlanarCurve]:
    """Sine curves of growing amplitude; peaks and valleys stay at the same
    domain locations across the family."""
    return [sine_curve(n, float(m)) for m in amplitudes]


def half_circle(n: int = 120, radius: float = 1.0) -> PlanarCurve:
    """Closed half-disc outline: diameter base plus the upper arc."""
    n_arc = max(3, int(round(n * np.pi / (np.pi + 2.0))))
    n_base = max(3, n - n_arc)
    base_x = np.linspace(-radius, radius, n_base, endpoint=False)
    base = np.column_stack([base_x, np.zeros(n_base)])
    ang = np.linspace(0.0, np.pi, n_arc, endpoint=False)
    arc = radius * np.column_stack([np.cos(ang), np.sin(ang)])
    return PlanarCurve(np.vstack([base, arc]), CLOSED)


def cut_half_circle(n: int = 120, radius: float = 1.0, cut: float = 0.4) -> PlanarCurve:
    """Half-disc outline with the rightmost ``cut`` fraction of the arc
    replaced by a straight chord from the base up to the remaining arc."""
    if not 0.0 < cut < 1.0:
        raise ValueError("cut must lie in (0, 1)")
    a0 = cut * np.pi
    arc_len = (np.pi - a0) * radius
    chord = np.array([np.cos(a0), np.sin(a0)]) * radius
    chord_len = float(np.linalg.norm(chord - np.array([radius, 0.0])))
    total = 2.0 * radius + chord_len + arc_len
    n_base = max(3, int(round(n * 2.0 * radius / total)))
    n_chord = max(2, int(round(n * chord_len / total)))
    n_arc = max(3, n - n_base - n_chord)
    base_x = np.linspace(-radius, radius, n_base, endpoint=False)
    base = np.column_stack([base_x, np.zeros(n_base)])
    seg = np.linspace(0.0, 1.0, n_chord, endpoint=False)
    chord_pts = np.array([radius, 0.0]) + seg[:, None] * (chord - np.array([radius, 0.0]))
    ang = np.linspace(a0, np.pi, n_arc, endpoint=False)
    arc = radius * np.column_stack([np.cos(ang), np.sin(ang)])
    return PlanarCurve(np.vstack([base, chord_pts, arc]), CLOSED)


def generate(name: str, **params) -> list[PlanarCurve]:
    """Dispatch by generator name; always returns a list of curves."""
    if name == "sine":
        return [sine_curve(**params)]
    if name == "scaled-sine-family":
        return scaled_sine_family(**params)
    if name == "half-circle":
        return [half_circle(**params)]
    if name == "cut-half-circle":
        return [cut_half_circle(**params)]
    raise ValueError(f"unknown synthetic curve {name!r}")
