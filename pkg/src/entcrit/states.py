"""N-qubit state containers, named presets, and the JSON state-file format.

Conventions shared by the whole package:

* Basis states are ordered by z-eigenvalue bitstrings, with qubit 1 as the
  most significant bit, so |up,...,up> comes first.
* |+x> = (|+z> + |-z>)/sqrt(2) and |+y> = (|+z> + i|-z>)/sqrt(2).  All
  reported quantities (correlation tensors, inequality values) are
  independent of this phase choice.
* Complex numbers serialize as [re, im] pairs of IEEE-754 doubles.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

import numpy as np

#: Default cap on qubit count.  Dense 2^N x 2^N storage and 4^N tensor
#: enumeration blow up quickly past this; reassign to raise the limit.
MAX_QUBITS = 12

HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-9
NORM_TOL = 1e-8

KET_PLUS_Z = np.array([1.0, 0.0], dtype=complex)
KET_MINUS_Z = np.array([0.0, 1.0], dtype=complex)
KET_PLUS_X = np.array([1.0, 1.0], dtype=complex) / np.sqrt(2.0)
KET_MINUS_X = np.array([1.0, -1.0], dtype=complex) / np.sqrt(2.0)
KET_PLUS_Y = np.array([1.0, 1.0j], dtype=complex) / np.sqrt(2.0)
KET_MINUS_Y = np.array([1.0, -1.0j], dtype=complex) / np.sqrt(2.0)

PRESET_KINDS = (
    "ghz",
    "bell_phi_minus",
    "product_plus_x_minus_x",
    "werner_ghz",
    "maximally_mixed",
    "product_all_plus_x",
)


class InputError(ValueError):
    """User-supplied data is malformed or inconsistent."""


class StateFormatError(InputError):
    """A state or settings file does not match the expected JSON schema."""


@dataclass(frozen=True)
class InvariantViolation:
    """One failed density-matrix invariant together with its measured residual."""

    invariant: str
    residual: float


class StateValidationError(InputError):
    """A matrix failed the density-matrix invariants."""

    def __init__(self, report):
        self.report = list(report)
        detail = "; ".join(
            f"{v.invariant} (residual {v.residual:.3e})" for v in self.report
        )
        super().__init__(f"not a valid density matrix: {detail}")


def _check_qubit_count(n_qubits: int) -> None:
    if not isinstance(n_qubits, (int, np.integer)) or n_qubits < 1:
        raise InputError(f"n_qubits must be a positive integer, got {n_qubits!r}")
    if n_qubits > MAX_QUBITS:
        raise InputError(
            f"n_qubits={n_qubits} exceeds the cap of {MAX_QUBITS} "
            "(raise entcrit.states.MAX_QUBITS to override)"
        )


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class StateVector:
    """Pure-state amplitudes over the 2^N z-basis bitstrings."""

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        _check_qubit_count(self.n_qubits)
        amps = np.asarray(self.amplitudes, dtype=complex)
        dim = 2**self.n_qubits
        if amps.shape != (dim,):
            raise InputError(
                f"expected {dim} amplitudes for {self.n_qubits} qubits, "
                f"got shape {amps.shape}"
            )
        if not np.all(np.isfinite(amps.view(np.float64))):
            raise InputError("amplitudes must be finite")
        object.__setattr__(self, "amplitudes", _frozen(amps))

    @property
    def dim(self) -> int:
        return 2**self.n_qubits

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


@dataclass(frozen=True)
class DensityMatrix:
    """2^N x 2^N complex matrix; physical invariants checked separately.

    The constructor enforces only shape and finiteness so that invalid
    matrices can still be inspected through validate_density_matrix.
    """

    n_qubits: int
    matrix: np.ndarray

    def __post_init__(self):
        _check_qubit_count(self.n_qubits)
        m = np.asarray(self.matrix, dtype=complex)
        dim = 2**self.n_qubits
        if m.shape != (dim, dim):
            raise InputError(
                f"expected a {dim}x{dim} matrix for {self.n_qubits} qubits, "
                f"got shape {m.shape}"
            )
        if not np.all(np.isfinite(m.view(np.float64))):
            raise InputError("matrix entries must be finite")
        object.__setattr__(self, "matrix", _frozen(m))

    @property
    def dim(self) -> int:
        return 2**self.n_qubits

    def purity(self) -> float:
        return float(np.trace(self.matrix @ self.matrix).real)


def validate_density_matrix(dm: DensityMatrix) -> list[InvariantViolation]:
    """Check Hermiticity, unit trace, and positive semidefiniteness.

    Returns an empty list when all invariants hold at their tolerances;
    otherwise one entry per violated invariant with the measured residual.
    """
    report: list[InvariantViolation] = []
    m = dm.matrix
    herm_residual = float(np.max(np.abs(m - m.conj().T)))
    if herm_residual > HERMITICITY_TOL:
        report.append(InvariantViolation("hermiticity", herm_residual))
    trace_residual = float(abs(np.trace(m) - 1.0))
    if trace_residual > TRACE_TOL:
        report.append(InvariantViolation("trace", trace_residual))
    min_eig = float(np.linalg.eigvalsh((m + m.conj().T) / 2.0)[0])
    if min_eig < -PSD_TOL:
        report.append(InvariantViolation("positive_semidefinite", -min_eig))
    return report


def from_state_vector(v: StateVector) -> DensityMatrix:
    """Projector onto a normalized pure state."""
    norm = v.norm()
    if abs(norm - 1.0) > NORM_TOL:
        raise InputError(f"state vector is not normalized: |norm - 1| = {abs(norm - 1.0):.3e}")
    return DensityMatrix(v.n_qubits, np.outer(v.amplitudes, v.amplitudes.conj()))


def ghz_vector(n_qubits: int) -> StateVector:
    """(|0...0> + |1...1>)/sqrt(2)."""
    _check_qubit_count(n_qubits)
    amps = np.zeros(2**n_qubits, dtype=complex)
    amps[0] = amps[-1] = 1.0 / np.sqrt(2.0)
    return StateVector(n_qubits, amps)


@dataclass(frozen=True)
class StatePreset:
    """Named state family; visibility applies to werner_ghz only."""

    kind: str
    n_qubits: int
    visibility: Optional[float] = None

    def __post_init__(self):
        if self.kind not in PRESET_KINDS:
            raise InputError(
                f"unknown preset kind {self.kind!r}; expected one of {PRESET_KINDS}"
            )
        _check_qubit_count(self.n_qubits)
        if self.kind == "werner_ghz":
            if self.visibility is None:
                raise InputError("werner_ghz preset requires a visibility")
            if not 0.0 <= self.visibility <= 1.0:
                raise InputError(f"visibility must lie in [0, 1], got {self.visibility}")
        elif self.visibility is not None:
            raise InputError(f"visibility is only valid for werner_ghz, not {self.kind!r}")
        if self.kind in ("bell_phi_minus", "product_plus_x_minus_x") and self.n_qubits != 2:
            raise InputError(
                f"preset {self.kind!r} is defined for 2 qubits, got n_qubits={self.n_qubits}"
            )


def _ghz_projector(n: int) -> np.ndarray:
    # corner entries are exactly 1/2, avoiding 1/sqrt(2) rounding in products
    m = np.zeros((2**n, 2**n), dtype=complex)
    for i in (0, -1):
        for j in (0, -1):
            m[i, j] = 0.5
    return m


def build_preset(p: StatePreset) -> DensityMatrix:
    """Construct the density matrix of a named preset."""
    n = p.n_qubits
    dim = 2**n
    plus_x = np.full((2, 2), 0.5, dtype=complex)
    minus_x = np.array([[0.5, -0.5], [-0.5, 0.5]], dtype=complex)
    if p.kind == "maximally_mixed":
        return DensityMatrix(n, np.eye(dim, dtype=complex) / dim)
    if p.kind == "ghz":
        return DensityMatrix(n, _ghz_projector(n))
    if p.kind == "werner_ghz":
        v = float(p.visibility)
        return DensityMatrix(
            n, v * _ghz_projector(n) + (1.0 - v) * np.eye(dim, dtype=complex) / dim
        )
    if p.kind == "bell_phi_minus":
        # x-basis anticorrelated, y-basis correlated: (|00> - |11>)/sqrt(2)
        m = _ghz_projector(2)
        m[0, 3] = m[3, 0] = -0.5
        return DensityMatrix(2, m)
    if p.kind == "product_plus_x_minus_x":
        return DensityMatrix(2, np.kron(plus_x, minus_x))
    if p.kind == "product_all_plus_x":
        m = np.array([[1.0]], dtype=complex)
        for _ in range(n):
            m = np.kron(m, plus_x)
        return DensityMatrix(n, m)
    raise InputError(f"unsupported preset kind {p.kind!r}")  # pragma: no cover


def _as_number(x, where: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise StateFormatError(f"{where}: expected a number, got {x!r}")
    return float(x)


def _as_complex(pair, where: str) -> complex:
    if not isinstance(pair, (list, tuple)) or len(pair) != 2:
        raise StateFormatError(f"{where}: expected a [re, im] pair, got {pair!r}")
    return complex(_as_number(pair[0], where), _as_number(pair[1], where))


def _require(doc: dict, field: str, where: str):
    if field not in doc:
        raise StateFormatError(f"missing field {field!r} in {where!r}")
    return doc[field]


def _parse_n_qubits(doc: dict, where: str) -> int:
    n = _require(doc, "n_qubits", where)
    if isinstance(n, bool) or not isinstance(n, int):
        raise StateFormatError(f"{where}.n_qubits: expected an integer, got {n!r}")
    return n


def parse_state_file(text) -> DensityMatrix:
    """Parse the JSON state-file format into a validated density matrix.

    The document must carry exactly one of the top-level keys "matrix",
    "vector", or "preset".
    """
    if isinstance(text, (bytes, bytearray)):
        text = text.decode("utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise StateFormatError(
            f"JSON parse error at line {e.lineno}, column {e.colno}: {e.msg}"
        ) from e
    if not isinstance(doc, dict):
        raise StateFormatError("top level of a state file must be a JSON object")
    present = [k for k in ("matrix", "vector", "preset") if k in doc]
    if len(present) != 1:
        raise StateFormatError(
            "state file must have exactly one of 'matrix', 'vector', 'preset'; "
            f"found {present or 'none'}"
        )
    key = present[0]
    body = doc[key]
    if not isinstance(body, dict):
        raise StateFormatError(f"{key!r} must be a JSON object")

    if key == "preset":
        kind = _require(body, "kind", "preset")
        if not isinstance(kind, str):
            raise StateFormatError(f"preset.kind: expected a string, got {kind!r}")
        n = _parse_n_qubits(body, "preset")
        visibility = body.get("visibility")
        if visibility is not None:
            visibility = _as_number(visibility, "preset.visibility")
        return build_preset(StatePreset(kind, n, visibility))

    n = _parse_n_qubits(body, key)
    _check_qubit_count(n)
    dim = 2**n

    if key == "vector":
        raw = _require(body, "amplitudes", "vector")
        if not isinstance(raw, list) or len(raw) != dim:
            raise StateFormatError(f"vector.amplitudes must be a list of {dim} [re, im] pairs")
        amps = np.array(
            [_as_complex(x, f"vector.amplitudes[{i}]") for i, x in enumerate(raw)]
        )
        return from_state_vector(StateVector(n, amps))

    raw = _require(body, "entries", "matrix")
    if not isinstance(raw, list) or len(raw) != dim:
        raise StateFormatError(f"matrix.entries must be a list of {dim} rows")
    rows = []
    for i, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != dim:
            raise StateFormatError(f"matrix.entries[{i}] must be a list of {dim} [re, im] pairs")
        rows.append([_as_complex(x, f"matrix.entries[{i}][{j}]") for j, x in enumerate(row)])
    dm = DensityMatrix(n, np.array(rows))
    report = validate_density_matrix(dm)
    if report:
        raise StateValidationError(report)
    return dm


def serialize_state(dm: DensityMatrix) -> str:
    """Emit a state file that parse_state_file reproduces entry for entry."""
    entries = [
        [[float(z.real), float(z.imag)] for z in row] for row in dm.matrix
    ]
    return json.dumps({"matrix": {"n_qubits": int(dm.n_qubits), "entries": entries}})
