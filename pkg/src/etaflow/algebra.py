"""Finite-dimensional C*-algebras as direct sums of complex matrix blocks.

An algebra B = C^{n1 x n1} (+) ... (+) C^{nq x nq} is described by an
:class:`AlgebraShape`.  An :class:`AlgElem` stores one dense complex matrix
per block.  An m x m matrix over B (:class:`MatElem`, "level" m) is stored
flattened: block i is a single (m*ni) x (m*ni) complex matrix whose (j, k)
sub-block of size ni is the i-th block of the (j, k) entry.  Under this
identification B^{m x m} is again a direct sum of full matrix blocks, so
products, adjoints, inverses and spectral tests are plain dense linear
algebra, and the C*-norm is the maximum blockwise spectral norm.
"""

from __future__ import annotations

import numbers
from dataclasses import dataclass

import numpy as np

__all__ = [
    "POSITIVITY_TOL",
    "INVERSION_RCOND_MIN",
    "ShapeMismatchError",
    "SingularElementError",
    "DomainError",
    "AlgebraShape",
    "AlgElem",
    "MatElem",
    "SCALAR_SHAPE",
    "from_scalar",
    "to_scalar",
    "mat_from_array",
    "mat_to_array",
    "scalar_embed",
    "direct_sum",
    "operator_norm",
    "solve_right",
    "solve_left",
    "cayley_halfplane_to_ball",
    "cayley_ball_to_halfplane",
]

# Default tolerance for positivity / unitarity decisions: "strictly positive"
# means every eigenvalue of the hermitian part is >= POSITIVITY_TOL.
POSITIVITY_TOL = 1e-10

# Inversion is refused when the reciprocal condition number of any block
# falls below this threshold.
INVERSION_RCOND_MIN = 1e-13


class ShapeMismatchError(ValueError):
    """Operands live over different algebra shapes or matrix levels."""


class SingularElementError(ValueError):
    """Inversion refused: a block is singular to working tolerance."""


class DomainError(ValueError):
    """Input lies outside the domain of the operation (ball, half-space)."""


@dataclass(frozen=True)
class AlgebraShape:
    """Direct-sum decomposition [n1, ..., nq] of a finite-dimensional C*-algebra."""

    block_dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(n) for n in self.block_dims)
        if not dims:
            raise ValueError("algebra shape needs at least one block")
        if any(n < 1 for n in dims):
            raise ValueError(f"block dimensions must be >= 1, got {dims}")
        object.__setattr__(self, "block_dims", dims)

    @property
    def nblocks(self) -> int:
        return len(self.block_dims)

    def unit(self) -> AlgElem:
        return AlgElem._wrap(self, tuple(np.eye(n, dtype=complex) for n in self.block_dims))

    def zero(self) -> AlgElem:
        return AlgElem._wrap(self, tuple(np.zeros((n, n), dtype=complex) for n in self.block_dims))

    def unit_mat(self, level: int) -> MatElem:
        return MatElem._wrap(
            self, level, tuple(np.eye(level * n, dtype=complex) for n in self.block_dims)
        )

    def zero_mat(self, level: int) -> MatElem:
        return MatElem._wrap(
            self, level, tuple(np.zeros((level * n, level * n), dtype=complex) for n in self.block_dims)
        )

    def __str__(self) -> str:
        return "[" + ",".join(str(n) for n in self.block_dims) + "]"


SCALAR_SHAPE = AlgebraShape((1,))


def _validated_blocks(blocks, sizes) -> tuple[np.ndarray, ...]:
    out = []
    for size, b in zip(sizes, blocks):
        arr = np.array(b, dtype=complex)
        if arr.shape != (size, size):
            raise ValueError(f"block of shape {arr.shape} where ({size},{size}) expected")
        if not np.isfinite(arr.view(float)).all():
            raise ValueError("non-finite entry in block")
        arr.setflags(write=False)
        out.append(arr)
    return tuple(out)


class _Blocked:
    """Blockwise arithmetic shared by AlgElem and MatElem."""

    __slots__ = ()

    shape: AlgebraShape
    blocks: tuple[np.ndarray, ...]

    def _like(self, blocks) -> "_Blocked":
        raise NotImplementedError

    def _compat(self, other) -> None:
        if type(other) is not type(self) or other.shape != self.shape:
            raise ShapeMismatchError(f"incompatible operands: {self!r} vs {other!r}")
        if getattr(self, "level", 1) != getattr(other, "level", 1):
            raise ShapeMismatchError(
                f"level mismatch: {getattr(self, 'level', 1)} vs {getattr(other, 'level', 1)}"
            )

    # arithmetic ------------------------------------------------------------

    def __add__(self, other):
        self._compat(other)
        return self._like(tuple(a + b for a, b in zip(self.blocks, other.blocks)))

    def __sub__(self, other):
        self._compat(other)
        return self._like(tuple(a - b for a, b in zip(self.blocks, other.blocks)))

    def __neg__(self):
        return self._like(tuple(-a for a in self.blocks))

    def __mul__(self, other):
        if isinstance(other, numbers.Number):
            c = complex(other)
            return self._like(tuple(c * a for a in self.blocks))
        if type(other) is type(self):
            self._compat(other)
            return self._like(tuple(a @ b for a, b in zip(self.blocks, other.blocks)))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, numbers.Number):
            c = complex(other)
            return self._like(tuple(c * a for a in self.blocks))
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, numbers.Number):
            return self * (1.0 / complex(other))
        return NotImplemented

    def scale(self, c: complex):
        return self * c

    def adjoint(self):
        return self._like(tuple(a.conj().T for a in self.blocks))

    def one(self):
        return self._like(tuple(np.eye(a.shape[0], dtype=complex) for a in self.blocks))

    def zero_like(self):
        return self._like(tuple(np.zeros_like(a) for a in self.blocks))

    # metric / spectral -----------------------------------------------------

    def norm(self) -> float:
        """C*-norm: maximum blockwise spectral norm."""
        return max(float(np.linalg.norm(a, 2)) for a in self.blocks)

    def re_part(self):
        return self._like(tuple((a + a.conj().T) / 2.0 for a in self.blocks))

    def im_part(self):
        return self._like(tuple((a - a.conj().T) / (2.0j) for a in self.blocks))

    def min_real_eigenvalue(self) -> float:
        """Smallest eigenvalue of the hermitian part, over all blocks."""
        return min(float(np.linalg.eigvalsh((a + a.conj().T) / 2.0).min()) for a in self.blocks)

    def is_selfadjoint(self, tol: float = POSITIVITY_TOL) -> bool:
        return (self - self.adjoint()).norm() <= tol

    def is_unitary(self, tol: float = POSITIVITY_TOL) -> bool:
        one = self.one()
        adj = self.adjoint()
        return (self * adj - one).norm() <= tol and (adj * self - one).norm() <= tol

    def is_positive(self, tol: float = POSITIVITY_TOL) -> bool:
        return self.is_selfadjoint(tol) and self.min_real_eigenvalue() >= -tol

    def is_strictly_positive(self, tol: float = POSITIVITY_TOL) -> bool:
        return self.is_selfadjoint(tol) and self.min_real_eigenvalue() >= tol

    def inverse(self, rcond_min: float = INVERSION_RCOND_MIN):
        """Blockwise inverse; refuses inputs singular to tolerance."""
        out = []
        for a in self.blocks:
            sv = np.linalg.svd(a, compute_uv=False)
            if sv[0] == 0.0 or sv[-1] / sv[0] < rcond_min:
                raise SingularElementError(
                    f"block with reciprocal condition {0.0 if sv[0] == 0.0 else sv[-1] / sv[0]:.3e} "
                    f"below threshold {rcond_min:.3e}"
                )
            out.append(np.linalg.solve(a, np.eye(a.shape[0], dtype=complex)))
        return self._like(tuple(out))

    # packing ---------------------------------------------------------------

    def to_vector(self) -> np.ndarray:
        return np.concatenate([a.ravel() for a in self.blocks])

    @property
    def dim(self) -> int:
        return sum(a.shape[0] * a.shape[1] for a in self.blocks)


@dataclass(frozen=True, eq=False)
class AlgElem(_Blocked):
    """Element of a finite-dimensional C*-algebra, one matrix per block."""

    shape: AlgebraShape
    blocks: tuple[np.ndarray, ...]

    def __post_init__(self):
        if len(self.blocks) != self.shape.nblocks:
            raise ValueError(
                f"{len(self.blocks)} blocks given for shape {self.shape}"
            )
        object.__setattr__(self, "blocks", _validated_blocks(self.blocks, self.shape.block_dims))

    @classmethod
    def _wrap(cls, shape: AlgebraShape, blocks: tuple[np.ndarray, ...]) -> "AlgElem":
        # Trusted fast path: arrays are freshly computed, skip copy/validation.
        obj = object.__new__(cls)
        object.__setattr__(obj, "shape", shape)
        for b in blocks:
            b.setflags(write=False)
        object.__setattr__(obj, "blocks", blocks)
        return obj

    def _like(self, blocks) -> "AlgElem":
        return AlgElem._wrap(self.shape, blocks)

    @classmethod
    def from_vector(cls, shape: AlgebraShape, vec: np.ndarray) -> "AlgElem":
        blocks, pos = [], 0
        for n in shape.block_dims:
            blocks.append(np.array(vec[pos : pos + n * n], dtype=complex).reshape(n, n))
            pos += n * n
        return cls._wrap(shape, tuple(blocks))

    def power(self, n: int) -> "AlgElem":
        return self._like(tuple(np.linalg.matrix_power(a, n) for a in self.blocks))

    def __repr__(self) -> str:
        return f"AlgElem(shape={self.shape}, norm={self.norm():.4g})"


@dataclass(frozen=True, eq=False)
class MatElem(_Blocked):
    """m x m matrix over the algebra, stored as flattened per-block matrices."""

    shape: AlgebraShape
    level: int
    blocks: tuple[np.ndarray, ...]

    def __post_init__(self):
        if self.level < 1:
            raise ValueError(f"level must be >= 1, got {self.level}")
        if len(self.blocks) != self.shape.nblocks:
            raise ValueError(f"{len(self.blocks)} blocks given for shape {self.shape}")
        sizes = [self.level * n for n in self.shape.block_dims]
        object.__setattr__(self, "blocks", _validated_blocks(self.blocks, sizes))

    @classmethod
    def _wrap(cls, shape: AlgebraShape, level: int, blocks: tuple[np.ndarray, ...]) -> "MatElem":
        obj = object.__new__(cls)
        object.__setattr__(obj, "shape", shape)
        object.__setattr__(obj, "level", level)
        for b in blocks:
            b.setflags(write=False)
        object.__setattr__(obj, "blocks", blocks)
        return obj

    def _like(self, blocks) -> "MatElem":
        return MatElem._wrap(self.shape, self.level, blocks)

    @classmethod
    def from_entries(cls, entries) -> "MatElem":
        """Build from an m x m nested sequence of AlgElem sharing one shape."""
        rows = [list(r) for r in entries]
        m = len(rows)
        if m < 1 or any(len(r) != m for r in rows):
            raise ValueError("entries must form a non-empty square grid")
        shape = rows[0][0].shape
        for r in rows:
            for e in r:
                if not isinstance(e, AlgElem) or e.shape != shape:
                    raise ShapeMismatchError("all entries must be AlgElem of one shape")
        blocks = []
        for i, n in enumerate(shape.block_dims):
            arr = np.zeros((m * n, m * n), dtype=complex)
            for j in range(m):
                for k in range(m):
                    arr[j * n : (j + 1) * n, k * n : (k + 1) * n] = rows[j][k].blocks[i]
            blocks.append(arr)
        return cls._wrap(shape, m, tuple(blocks))

    def entry(self, j: int, k: int) -> AlgElem:
        m = self.level
        if not (0 <= j < m and 0 <= k < m):
            raise IndexError(f"entry ({j},{k}) outside level {m}")
        blocks = tuple(
            np.array(blk[j * n : (j + 1) * n, k * n : (k + 1) * n])
            for n, blk in zip(self.shape.block_dims, self.blocks)
        )
        return AlgElem._wrap(self.shape, blocks)

    @classmethod
    def from_vector(cls, shape: AlgebraShape, level: int, vec: np.ndarray) -> "MatElem":
        blocks, pos = [], 0
        for n in shape.block_dims:
            d = level * n
            blocks.append(np.array(vec[pos : pos + d * d], dtype=complex).reshape(d, d))
            pos += d * d
        return cls._wrap(shape, level, tuple(blocks))

    def power(self, n: int) -> "MatElem":
        return self._like(tuple(np.linalg.matrix_power(a, n) for a in self.blocks))

    def __repr__(self) -> str:
        return f"MatElem(shape={self.shape}, level={self.level}, norm={self.norm():.4g})"


# scalar-base conveniences ---------------------------------------------------


def from_scalar(c: complex) -> AlgElem:
    """Element of the one-dimensional algebra B = C."""
    return AlgElem(SCALAR_SHAPE, (np.array([[c]], dtype=complex),))


def to_scalar(a: AlgElem) -> complex:
    if a.shape != SCALAR_SHAPE:
        raise ShapeMismatchError(f"expected scalar base shape [1], got {a.shape}")
    return complex(a.blocks[0][0, 0])


def mat_from_array(arr) -> MatElem:
    """Level-m point of the matrix ball over B = C from an m x m array."""
    a = np.atleast_2d(np.array(arr, dtype=complex))
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"square array expected, got {a.shape}")
    return MatElem(SCALAR_SHAPE, a.shape[0], (a,))


def mat_to_array(z: MatElem) -> np.ndarray:
    if z.shape != SCALAR_SHAPE:
        raise ShapeMismatchError(f"expected scalar base shape [1], got {z.shape}")
    return np.array(z.blocks[0])


# structural maps -------------------------------------------------------------


def scalar_embed(b: AlgElem, level: int) -> MatElem:
    """Embed b as the scalar-diagonal matrix diag(b, ..., b) at the given level."""
    if level == 1:
        return MatElem._wrap(b.shape, 1, tuple(np.array(blk) for blk in b.blocks))
    eye = np.eye(level)
    return MatElem._wrap(b.shape, level, tuple(np.kron(eye, blk) for blk in b.blocks))


def direct_sum(x: MatElem, y: MatElem) -> MatElem:
    """Block-diagonal join diag(x, y) at level x.level + y.level."""
    if x.shape != y.shape:
        raise ShapeMismatchError("direct sum needs matching algebra shapes")
    m1, m2 = x.level, y.level
    blocks = []
    for n, bx, by in zip(x.shape.block_dims, x.blocks, y.blocks):
        arr = np.zeros(((m1 + m2) * n, (m1 + m2) * n), dtype=complex)
        arr[: m1 * n, : m1 * n] = bx
        arr[m1 * n :, m1 * n :] = by
        blocks.append(arr)
    return MatElem._wrap(x.shape, m1 + m2, tuple(blocks))


def operator_norm(a: _Blocked) -> float:
    return a.norm()


def solve_right(a: _Blocked, b: _Blocked):
    """a * b^{-1} without forming the inverse (one solve per block)."""
    a._compat(b)
    try:
        blocks = tuple(
            np.linalg.solve(bb.T, ba.T).T for ba, bb in zip(a.blocks, b.blocks)
        )
    except np.linalg.LinAlgError as exc:
        raise SingularElementError(f"singular right divisor: {exc}") from exc
    return a._like(blocks)


def solve_left(b: _Blocked, a: _Blocked):
    """b^{-1} * a without forming the inverse."""
    b._compat(a)
    try:
        blocks = tuple(np.linalg.solve(bb, ba) for bb, ba in zip(b.blocks, a.blocks))
    except np.linalg.LinAlgError as exc:
        raise SingularElementError(f"singular left divisor: {exc}") from exc
    return b._like(blocks)


# Cayley-type transforms ------------------------------------------------------


def cayley_halfplane_to_ball(a: _Blocked, tol: float = POSITIVITY_TOL):
    """w = (1-a)(1+a)^{-1}; maps {Re(a) > 0} into the open unit ball."""
    if not a.re_part().is_strictly_positive(tol):
        raise DomainError("real part is not strictly positive")
    one = a.one()
    return solve_right(one - a, one + a)


def cayley_ball_to_halfplane(w: _Blocked, tol: float = POSITIVITY_TOL):
    """a = (1-w)(1+w)^{-1}; maps the open unit ball into {Re(a) > 0}."""
    if not w.norm() < 1.0:
        raise DomainError(f"norm {w.norm():.6g} is not < 1")
    one = w.one()
    return solve_right(one - w, one + w)
