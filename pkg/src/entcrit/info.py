"""Information carried by in-plane correlations and the criterion built on it.

A joint +-1 observable holds (p_plus - p_minus)^2 of knowledge, which equals
the squared correlation-tensor entry.  Summing these squares over the 2^N
in-plane product observables measures how much of the state's information
sits in correlations; any classical composition of single-qubit states keeps
that sum at or below one bit for every choice of local planes, so a maximum
above one certifies entanglement.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional

import numpy as np

from .pauli import (
    CorrelationTensor,
    LocalFrame,
    frame_from_normals,
    plane_subtensor,
)
from .search import OptimizerOptions, multistart_maximize
from .states import InputError

#: Margin above 1 required before a state is called entangled, so boundary
#: states do not flip verdicts on numerical noise.
DECISION_TOLERANCE = 1e-7

PROB_SUM_TOL = 1e-9


def info_from_probabilities(p_plus: float, p_minus: float) -> float:
    """Knowledge content (p_plus - p_minus)^2 of a two-outcome experiment."""
    if p_plus < 0.0 or p_minus < 0.0:
        raise InputError("probabilities must be nonnegative")
    if abs(p_plus + p_minus - 1.0) > PROB_SUM_TOL:
        raise InputError(
            f"probabilities must sum to 1 (got {p_plus + p_minus!r})"
        )
    return float(p_plus - p_minus) ** 2


@dataclass(frozen=True)
class OptimizerReport:
    restarts: int
    iterations: int
    converged: bool
    residual: float


@dataclass(frozen=True)
class CorrInfoResult:
    """Per-observable information measures for one choice of local planes."""

    frame: LocalFrame
    per_index: dict
    total: float


@dataclass(frozen=True)
class CriterionVerdict:
    max_total: float
    argmax_frame: LocalFrame
    entangled_by_info_criterion: bool
    optimizer_report: OptimizerReport

    def to_json_dict(self) -> dict:
        return {
            "max_total": float(self.max_total),
            "entangled": bool(self.entangled_by_info_criterion),
            "frame": {
                "normals": [[float(c) for c in row] for row in self.argmax_frame.normals()]
            },
            "optimizer": {
                "restarts": int(self.optimizer_report.restarts),
                "converged": bool(self.optimizer_report.converged),
            },
        }


def corr_info(t: CorrelationTensor, f: LocalFrame) -> CorrInfoResult:
    """Squared in-plane correlations, per multi-index and summed."""
    pt = plane_subtensor(t, f)
    per_index = {
        idx: float(v) ** 2
        for idx, v in zip(product((1, 2), repeat=t.n_qubits), pt.values.ravel())
    }
    return CorrInfoResult(frame=f, per_index=per_index, total=float(sum(per_index.values())))


def _normals_from_angles(x: np.ndarray) -> np.ndarray:
    ang = x.reshape(-1, 2)
    st = np.sin(ang[:, 0])
    return np.column_stack(
        [st * np.cos(ang[:, 1]), st * np.sin(ang[:, 1]), np.cos(ang[:, 0])]
    )


def _angles_from_vector(v: np.ndarray) -> list[float]:
    return [float(np.arccos(np.clip(v[2], -1.0, 1.0))), float(np.arctan2(v[1], v[0]))]


def plane_info_total(t: CorrelationTensor, normals) -> float:
    """Sum of squared in-plane correlations for given plane normals.

    Equals the squared norm of the Cartesian tensor projected onto the
    product of the planes, so it depends only on the normals and not on the
    in-plane axis orientation.
    """
    cart = t.cartesian()
    work = cart
    nv = np.asarray(normals, dtype=float).reshape(-1, 3)
    for q in range(t.n_qubits):
        unit = nv[q] / np.linalg.norm(nv[q])
        proj = np.eye(3) - np.outer(unit, unit)
        work = np.tensordot(work, proj, axes=([0], [0]))
    return float(np.tensordot(work, cart, axes=t.n_qubits))


def _two_qubit_optimal_normals(cart: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    u, _, vt = np.linalg.svd(cart)
    return u[:, 2], vt[2, :]


def maximize_corr_info(
    t: CorrelationTensor, options: Optional[OptimizerOptions] = None
) -> CriterionVerdict:
    """Maximize the in-plane information sum over all local plane choices.

    Two angles per qubit parametrize each plane normal; the in-plane axis
    orientation is redundant and left out.  Deterministic for a fixed seed.
    """
    opts = options or OptimizerOptions()
    n = t.n_qubits
    cart = t.cartesian()

    def objective(x: np.ndarray) -> float:
        work = cart
        normals = _normals_from_angles(x)
        for q in range(n):
            nq = normals[q]
            nq = nq / np.linalg.norm(nq)
            proj = np.eye(3) - np.outer(nq, nq)
            work = np.tensordot(work, proj, axes=([0], [0]))
        return float(np.tensordot(work, cart, axes=n))

    warm = [
        np.tile([0.0, 0.0], n),                 # z normals: canonical x-y planes
        np.tile([np.pi / 2, 0.0], n),           # x normals
        np.tile([np.pi / 2, np.pi / 2], n),     # y normals
    ]
    if n == 2:
        nu, nv = _two_qubit_optimal_normals(cart)
        warm.append(np.array(_angles_from_vector(nu) + _angles_from_vector(nv)))

    lower = np.zeros(2 * n)
    upper = np.tile([np.pi, 2.0 * np.pi], n)
    res = multistart_maximize(objective, lower, upper, opts, warm_starts=warm)

    frame = frame_from_normals(_normals_from_angles(res.x))
    report = OptimizerReport(
        restarts=res.starts,
        iterations=res.iterations,
        converged=res.converged,
        residual=res.residual,
    )
    return CriterionVerdict(
        max_total=res.value,
        argmax_frame=frame,
        entangled_by_info_criterion=res.value > 1.0 + DECISION_TOLERANCE,
        optimizer_report=report,
    )


def two_qubit_info_criterion(t: CorrelationTensor) -> CriterionVerdict:
    """Closed-form two-qubit verdict: sum of the two largest eigenvalues of M^T M.

    M is the 3x3 Cartesian block; the optimal planes are orthogonal to the
    smallest singular directions, so no iterative search is needed.
    """
    if t.n_qubits != 2:
        raise InputError(f"closed form requires 2 qubits, got {t.n_qubits}")
    cart = t.cartesian()
    eigs = np.linalg.eigvalsh(cart.T @ cart)
    max_total = float(eigs[-1] + eigs[-2])
    frame = frame_from_normals(np.stack(_two_qubit_optimal_normals(cart)))
    report = OptimizerReport(restarts=0, iterations=0, converged=True, residual=0.0)
    return CriterionVerdict(
        max_total=max_total,
        argmax_frame=frame,
        entangled_by_info_criterion=max_total > 1.0 + DECISION_TOLERANCE,
        optimizer_report=report,
    )
