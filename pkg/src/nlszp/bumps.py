"""Smooth radial cutoff functions used by every frequency decomposition.

All bumps are built from the standard ``exp(-1/t)`` mollifier, so they are
genuinely C-infinity and the dyadic family ``phi(2^-j t)`` telescopes to an
exact partition of unity for t > 0:

    phi(t) = zeta(t) - zeta(2 t),    sum_j phi(2^-j t) = 1.
"""

from __future__ import annotations

import numpy as np


def _mollifier(t: np.ndarray) -> np.ndarray:
    """exp(-1/t) for t > 0, 0 otherwise; smooth across t = 0."""
    t = np.asarray(t, dtype=np.float64)
    out = np.zeros_like(t)
    pos = t > 0
    out[pos] = np.exp(-1.0 / t[pos])
    return out


def smooth_transition(t: np.ndarray, lo: float, hi: float) -> np.ndarray:
    """C-infinity step: 1 for t <= lo, 0 for t >= hi, monotone between."""
    if not lo < hi:
        raise ValueError(f"need lo < hi, got {lo} >= {hi}")
    t = np.asarray(t, dtype=np.float64)
    u = (t - lo) / (hi - lo)
    a = _mollifier(1.0 - u)
    b = _mollifier(u)
    with np.errstate(invalid="ignore"):
        out = a / (a + b)
    out[u <= 0.0] = 1.0
    out[u >= 1.0] = 0.0
    return out


def cutoff_zeta(t: np.ndarray) -> np.ndarray:
    """The reference cutoff: 1 on [0, 1], 0 on [2, infinity)."""
    return smooth_transition(t, 1.0, 2.0)


def dyadic_bump(t: np.ndarray) -> np.ndarray:
    """phi(t) = zeta(t) - zeta(2t), supported in [1/2, 2]."""
    return cutoff_zeta(t) - cutoff_zeta(2.0 * np.asarray(t, dtype=np.float64))


def ball_bump(t: np.ndarray) -> np.ndarray:
    """Unit-ball bump: 1 on [0, 1/2], 0 on [1, infinity)."""
    return smooth_transition(t, 0.5, 1.0)


def sharp_ball(t: np.ndarray) -> np.ndarray:
    """Indicator of [0, 1); the non-smooth cross-check variant."""
    return (np.asarray(t, dtype=np.float64) < 1.0).astype(np.float64)
