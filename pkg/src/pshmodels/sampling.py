"""Deterministic counter-based random streams.

Sample k of a sweep is drawn from its own Philox stream keyed by
(seed, k), so results are a pure function of the pair and independent
of evaluation order or parallel scheduling.
"""
from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1


def substream(seed: int, index: int) -> np.random.Generator:
    """Generator for sample `index` of the sweep identified by `seed`."""
    key = np.array([seed & _MASK64, index & _MASK64], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def unit_vector(rng: np.random.Generator, dim: int) -> np.ndarray:
    v = rng.normal(size=dim)
    n = np.linalg.norm(v)
    while n < 1e-12:
        v = rng.normal(size=dim)
        n = np.linalg.norm(v)
    return v / n


def unit_disc_point(rng: np.random.Generator) -> complex:
    """Uniform draw from the open unit disc of the complex plane."""
    r = np.sqrt(rng.uniform(0.0, 1.0))
    theta = rng.uniform(0.0, 2.0 * np.pi)
    return complex(r * np.cos(theta), r * np.sin(theta))
