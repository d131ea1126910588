"""Seeded random generators for algebra elements, unitaries and ball points.

All draws go through an explicit numpy Generator so that sweeps are
reproducible; :func:`rng_for` derives an independent stream per named check
from one run seed, so adding a check never perturbs earlier draws.
"""

from __future__ import annotations

import zlib

import numpy as np

from .algebra import AlgebraShape, AlgElem, MatElem

__all__ = [
    "rng_for",
    "complex_ginibre",
    "random_alg_elem",
    "random_mat_elem",
    "random_unitary",
    "random_selfadjoint",
    "random_strictly_positive",
    "random_halfplane_elem",
    "random_ball_point",
    "random_boundary_point",
]


def rng_for(seed: int, label: str) -> np.random.Generator:
    """Independent deterministic stream for one named check of a seeded run."""
    return np.random.default_rng([int(seed), zlib.crc32(label.encode("utf-8"))])


def complex_ginibre(rng: np.random.Generator, n: int) -> np.ndarray:
    return (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)


def random_alg_elem(shape: AlgebraShape, rng: np.random.Generator, scale: float = 1.0) -> AlgElem:
    return AlgElem(shape, tuple(scale * complex_ginibre(rng, n) for n in shape.block_dims))


def random_mat_elem(
    shape: AlgebraShape, level: int, rng: np.random.Generator, scale: float = 1.0
) -> MatElem:
    return MatElem(
        shape, level, tuple(scale * complex_ginibre(rng, level * n) for n in shape.block_dims)
    )


def random_unitary(shape: AlgebraShape, rng: np.random.Generator) -> AlgElem:
    """Haar-distributed unitary, blockwise QR with phase fix."""
    blocks = []
    for n in shape.block_dims:
        q, r = np.linalg.qr(complex_ginibre(rng, n))
        d = np.diagonal(r)
        blocks.append(q * (d / np.abs(d)))
    return AlgElem(shape, tuple(blocks))


def random_selfadjoint(shape: AlgebraShape, rng: np.random.Generator, scale: float = 1.0) -> AlgElem:
    a = random_alg_elem(shape, rng, scale)
    return a.re_part()


def random_strictly_positive(
    shape: AlgebraShape, rng: np.random.Generator, floor: float = 0.1
) -> AlgElem:
    a = random_alg_elem(shape, rng)
    return a.adjoint() * a + floor * a.one()


def random_halfplane_elem(shape: AlgebraShape, rng: np.random.Generator) -> AlgElem:
    """Element with strictly positive real part: c*c + floor + i(selfadjoint)."""
    x = random_strictly_positive(shape, rng)
    y = random_selfadjoint(shape, rng)
    return x + 1j * y


def random_ball_point(
    shape: AlgebraShape,
    level: int,
    rng: np.random.Generator,
    max_norm: float = 0.9,
    min_norm: float = 0.0,
) -> MatElem:
    """Point of the open matrix ball with C*-norm uniform in [min_norm, max_norm]."""
    g = random_mat_elem(shape, level, rng)
    target = rng.uniform(min_norm, max_norm)
    n = g.norm()
    if n == 0.0:
        return shape.zero_mat(level)
    return g * (target / n)


def random_boundary_point(
    shape: AlgebraShape, level: int, rng: np.random.Generator, radius: float
) -> MatElem:
    """Random direction scaled to exact C*-norm radius."""
    g = random_mat_elem(shape, level, rng)
    return g * (radius / g.norm())
