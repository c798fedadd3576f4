"""Correlation tensors of Pauli-product expectation values and local frames.

The correlation tensor T of an N-qubit state holds Tr[rho (s_x1 x ... x s_xN)]
for every multi-index in {0,1,2,3}^N (0 = identity, 1/2/3 = x/y/z).  It fully
determines the state: rho = 2^-N sum_x T_x (s_x1 x ... x s_xN).

Flat storage is C order, so the last qubit's index varies fastest.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce
from itertools import product

import numpy as np

from .states import DensityMatrix, InputError

PAULI = np.array(
    [
        [[1.0, 0.0], [0.0, 1.0]],
        [[0.0, 1.0], [1.0, 0.0]],
        [[0.0, -1.0j], [1.0j, 0.0]],
        [[1.0, 0.0], [0.0, -1.0]],
    ],
    dtype=complex,
)

ENTRY_TOL = 1e-9
IMAG_TOL = 1e-10
FRAME_TOL = 1e-10

_X_HAT = np.array([1.0, 0.0, 0.0])
_Y_HAT = np.array([0.0, 1.0, 0.0])
_Z_HAT = np.array([0.0, 0.0, 1.0])


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class CorrelationTensor:
    """All Pauli-product expectation values of a state, shape (4,)*N."""

    n_qubits: int
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != (4,) * self.n_qubits:
            raise InputError(
                f"expected tensor shape {(4,) * self.n_qubits}, got {vals.shape}"
            )
        top = float(np.max(np.abs(vals)))
        if top > 1.0 + ENTRY_TOL:
            raise InputError(f"tensor entry out of range: max |T| = {top!r}")
        if abs(vals[(0,) * self.n_qubits] - 1.0) > 1e-10:
            raise InputError("identity component of the tensor must equal 1")
        object.__setattr__(self, "values", _frozen(vals))

    def cartesian(self) -> np.ndarray:
        """The sub-tensor over Pauli indices 1..3 only, shape (3,)*N."""
        return self.values[(slice(1, 4),) * self.n_qubits]

    def to_json_dict(self) -> dict:
        return {
            "n_qubits": int(self.n_qubits),
            "order": "xN_fastest",
            "labels": ["0", "x", "y", "z"],
            "entries": [float(v) for v in self.values.ravel()],
        }


@dataclass(frozen=True)
class PlaneTensor:
    """In-plane correlation components over {1,2}^N (1 = first axis, 2 = second)."""

    n_qubits: int
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != (2,) * self.n_qubits:
            raise InputError(
                f"expected plane tensor shape {(2,) * self.n_qubits}, got {vals.shape}"
            )
        top = float(np.max(np.abs(vals))) if vals.size else 0.0
        if top > 1.0 + ENTRY_TOL:
            raise InputError(f"plane tensor entry out of range: max |T| = {top!r}")
        object.__setattr__(self, "values", _frozen(vals))

    def squared_sum(self) -> float:
        return float(np.sum(self.values**2))


@dataclass(frozen=True)
class LocalFrame:
    """Per-qubit orthonormal in-plane direction pairs; rows are unit 3-vectors."""

    axis1: np.ndarray
    axis2: np.ndarray

    def __post_init__(self):
        a1 = np.asarray(self.axis1, dtype=float)
        a2 = np.asarray(self.axis2, dtype=float)
        if a1.ndim != 2 or a1.shape[1] != 3 or a1.shape != a2.shape:
            raise InputError(f"frame axes must both have shape (N, 3), got {a1.shape} and {a2.shape}")
        norm_err = max(
            float(np.max(np.abs(np.linalg.norm(a1, axis=1) - 1.0))),
            float(np.max(np.abs(np.linalg.norm(a2, axis=1) - 1.0))),
        )
        if norm_err > FRAME_TOL:
            raise InputError(f"frame axes must be unit vectors (residual {norm_err:.3e})")
        dot_err = float(np.max(np.abs(np.sum(a1 * a2, axis=1))))
        if dot_err > FRAME_TOL:
            raise InputError(f"frame axes must be orthogonal (residual {dot_err:.3e})")
        object.__setattr__(self, "axis1", _frozen(a1))
        object.__setattr__(self, "axis2", _frozen(a2))

    @property
    def n_qubits(self) -> int:
        return self.axis1.shape[0]

    def normals(self) -> np.ndarray:
        """Plane normals axis1 x axis2, one unit row per qubit."""
        return np.cross(self.axis1, self.axis2)

    @classmethod
    def canonical(cls, n_qubits: int) -> "LocalFrame":
        """x and y coordinate axes for every qubit."""
        return cls(np.tile(_X_HAT, (n_qubits, 1)), np.tile(_Y_HAT, (n_qubits, 1)))


def correlation_tensor(rho: DensityMatrix) -> CorrelationTensor:
    """Compute every Pauli-product expectation value of a state.

    Works qubit by qubit: the density matrix, viewed as a (2,)*2N tensor,
    is contracted with the single-qubit Pauli stack once per qubit, which
    avoids materializing any of the 4^N product operators.
    """
    n = rho.n_qubits
    work = rho.matrix.reshape((2,) * (2 * n))
    for q in range(n):
        rem = n - q
        # row index pairs with the Pauli column, column index with the row
        work = np.tensordot(work, PAULI, axes=([0, rem], [2, 1]))
    imag = float(np.max(np.abs(work.imag)))
    if imag > IMAG_TOL:
        raise InputError(
            f"correlation entries have imaginary residue {imag:.3e}; "
            "the input matrix is not Hermitian enough"
        )
    return CorrelationTensor(n, work.real.copy())


@lru_cache(maxsize=8)
def _pauli_basis(n: int) -> np.ndarray:
    """Stack of all 4^n Pauli products, shape (4^n, 2^n, 2^n)."""
    if n == 1:
        return PAULI.copy()
    prev = _pauli_basis(n - 1)
    out = np.einsum("aij,bkl->abikjl", PAULI, prev)
    return out.reshape(4**n, 2**n, 2**n)


def density_from_tensor(t: CorrelationTensor) -> DensityMatrix:
    """Rebuild rho = 2^-N sum_x T_x (s_x1 x ... x s_xN) from its tensor.

    Deliberately computed from explicit Kronecker products, so it serves as
    an independent inverse of correlation_tensor.
    """
    n = t.n_qubits
    flat = t.values.ravel()
    if n <= 5:
        rho = np.tensordot(flat, _pauli_basis(n), axes=1)
    else:
        rho = np.zeros((2**n, 2**n), dtype=complex)
        for pos, idx in enumerate(product(range(4), repeat=n)):
            if flat[pos] == 0.0:
                continue
            op = reduce(np.kron, (PAULI[x] for x in idx))
            rho += flat[pos] * op
    return DensityMatrix(n, rho / 2.0**n)


def plane_subtensor(t: CorrelationTensor, f: LocalFrame) -> PlaneTensor:
    """Contract the Cartesian part of the tensor with each qubit's frame axes."""
    if f.n_qubits != t.n_qubits:
        raise InputError(
            f"frame has {f.n_qubits} qubits but tensor has {t.n_qubits}"
        )
    work = t.cartesian()
    for q in range(t.n_qubits):
        axes_q = np.stack([f.axis1[q], f.axis2[q]])
        work = np.tensordot(work, axes_q, axes=([0], [1]))
    return PlaneTensor(t.n_qubits, work)


def rotate_frame_in_plane(f: LocalFrame, angles) -> LocalFrame:
    """Rotate each qubit's axis pair by its angle about the plane normal."""
    ang = np.asarray(angles, dtype=float).reshape(-1)
    if ang.size != f.n_qubits:
        raise InputError(f"expected {f.n_qubits} angles, got {ang.size}")
    c = np.cos(ang)[:, None]
    s = np.sin(ang)[:, None]
    return LocalFrame(c * f.axis1 + s * f.axis2, -s * f.axis1 + c * f.axis2)


def frame_from_normals(normals) -> LocalFrame:
    """Deterministic in-plane axes for given plane normals.

    The first axis is the reference direction (z, or x near the z poles)
    projected into the plane; the second completes a right-handed triple.
    """
    nv = np.asarray(normals, dtype=float).reshape(-1, 3)
    a1 = np.empty_like(nv)
    a2 = np.empty_like(nv)
    for j, raw in enumerate(nv):
        norm = np.linalg.norm(raw)
        if norm == 0.0:
            raise InputError("plane normal must be nonzero")
        unit = raw / norm
        ref = _Z_HAT if abs(unit[2]) <= 0.9 else _X_HAT
        v = ref - unit * (ref @ unit)
        a1[j] = v / np.linalg.norm(v)
        a2[j] = np.cross(unit, a1[j])
    return LocalFrame(a1, a2)


def canonical_two_qubit_frame(
    t: CorrelationTensor, f: LocalFrame | None = None
) -> tuple[LocalFrame, PlaneTensor]:
    """Rotate a two-qubit frame in-plane so the 2x2 block becomes diagonal.

    The rotation angles come from the singular value decomposition of the
    in-plane block; only the vanishing off-diagonals are guaranteed, signs
    of the diagonal carry the correlation physics and are left alone.
    """
    if t.n_qubits != 2:
        raise InputError(f"canonical form is defined for 2 qubits, got {t.n_qubits}")
    if f is None:
        f = LocalFrame.canonical(2)
    block = plane_subtensor(t, f).values
    u, _, vt = np.linalg.svd(block)
    u = u.copy()
    vt = vt.copy()
    if np.linalg.det(u) < 0:
        u[:, 1] *= -1.0
    if np.linalg.det(vt) < 0:
        vt[1, :] *= -1.0
    theta1 = float(np.arctan2(u[1, 0], u[0, 0]))
    theta2 = float(np.arctan2(vt[0, 1], vt[0, 0]))
    rotated = rotate_frame_in_plane(f, [theta1, theta2])
    return rotated, plane_subtensor(t, rotated)
