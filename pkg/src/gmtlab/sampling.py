"""Seeded random elements of PSL(2,C) for property checks."""

from __future__ import annotations

import numpy as np

from .algebra import ProjectiveMatrix, inverse, multiply, normalize_det


def random_complex(rng: np.random.Generator, radius: float = 2.0) -> complex:
    # uniform in the disk |z| <= radius
    r = radius * np.sqrt(rng.random())
    theta = 2 * np.pi * rng.random()
    return complex(r * np.cos(theta), r * np.sin(theta))


def random_sl2(rng: np.random.Generator, radius: float = 2.0, min_det: float = 0.25) -> ProjectiveMatrix:
    """Entries drawn from the disk of given radius, then scaled to det 1.

    Draws with |det| < min_det are rejected so the scaled entries stay moderate.
    """
    while True:
        entries = [random_complex(rng, radius) for _ in range(4)]
        a, b, c, d = entries
        if abs(a * d - b * c) >= min_det:
            return normalize_det(entries)


def random_conjugate(rng: np.random.Generator, m: ProjectiveMatrix, radius: float = 2.0) -> ProjectiveMatrix:
    c = random_sl2(rng, radius)
    return multiply(multiply(c, m), inverse(c))
