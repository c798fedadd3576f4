"""Correlation-function Bell inequalities and violation search.

Local realism bounds the sum, over all sign tuples s in {-1,1}^N, of
|sum_k s1^k1 ... sN^kN E(k)| by 2^N, where E(k) is the correlation function
at the setting choice k in {1,2}^N and s^1 = s, s^2 = 1.  That single bound
summarizes the full 2^(2^N)-member family obtained by inserting +-1-valued
sign functions, which includes CHSH (N=2) and the Mermin combination (N=3)
via the Belinskii-Klyshko series.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import product
from typing import Optional

import numpy as np

from .info import DECISION_TOLERANCE, maximize_corr_info
from .pauli import CorrelationTensor, PlaneTensor
from .search import OptimizerOptions, multistart_maximize
from .states import InputError

#: Margin above 2^N required before the bound is reported as violated.
VIOLATION_TOLERANCE = 1e-7

UNIT_TOL = 1e-10

# rows: s = +1, s = -1; columns: exponent k = 1 (picks s), k = 2 (picks 1)
_SIGN_WEIGHTS = np.array([[1.0, 1.0], [-1.0, 1.0]])


def sign_tuples(n_qubits: int) -> list[tuple[int, ...]]:
    """All sign tuples, ordered to match raveled (2,)*N arrays (+1 first)."""
    return list(product((1, -1), repeat=n_qubits))


@dataclass(frozen=True)
class SettingsPair:
    """Two measurement directions per qubit, each a unit 3-vector row."""

    n1: np.ndarray
    n2: np.ndarray

    def __post_init__(self):
        v1 = np.asarray(self.n1, dtype=float)
        v2 = np.asarray(self.n2, dtype=float)
        if v1.ndim != 2 or v1.shape[1] != 3 or v1.shape != v2.shape:
            raise InputError(
                f"settings must both have shape (N, 3), got {v1.shape} and {v2.shape}"
            )
        err = max(
            float(np.max(np.abs(np.linalg.norm(v1, axis=1) - 1.0))),
            float(np.max(np.abs(np.linalg.norm(v2, axis=1) - 1.0))),
        )
        if err > UNIT_TOL:
            raise InputError(f"settings must be unit vectors (residual {err:.3e})")
        for name, v in (("n1", v1), ("n2", v2)):
            v = np.ascontiguousarray(v)
            v.setflags(write=False)
            object.__setattr__(self, name, v)

    @property
    def n_qubits(self) -> int:
        return self.n1.shape[0]

    def to_json_list(self) -> list[dict]:
        return [
            {"n1": [float(c) for c in a], "n2": [float(c) for c in b]}
            for a, b in zip(self.n1, self.n2)
        ]


@dataclass(frozen=True)
class CorrelationTable:
    """Correlation function values over all setting choices, shape (2,)*N.

    Axis index 0 selects each qubit's first setting, index 1 its second.
    """

    n_qubits: int
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != (2,) * self.n_qubits:
            raise InputError(
                f"expected table shape {(2,) * self.n_qubits}, got {vals.shape}"
            )
        top = float(np.max(np.abs(vals)))
        if top > 1.0 + 1e-9:
            raise InputError(f"correlation value out of range: max |E| = {top!r}")
        vals = np.ascontiguousarray(vals)
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)


@dataclass(frozen=True)
class SignFunction:
    """A +-1 assignment per sign tuple; axis index 0 means s = +1."""

    n_qubits: int
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != (2,) * self.n_qubits:
            raise InputError(
                f"expected sign table shape {(2,) * self.n_qubits}, got {vals.shape}"
            )
        if not np.all(np.abs(vals) == 1.0):
            raise InputError("sign function values must be exactly +1 or -1")
        vals = np.ascontiguousarray(vals)
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_mapping(cls, n_qubits: int, mapping: dict) -> "SignFunction":
        vals = np.empty((2,) * n_qubits)
        for pos, s in enumerate(sign_tuples(n_qubits)):
            if s not in mapping:
                raise InputError(f"sign function table is missing tuple {s}")
            vals.ravel()[pos] = mapping[s]
        return cls(n_qubits, vals)

    def as_mapping(self) -> dict:
        return {
            s: int(v) for s, v in zip(sign_tuples(self.n_qubits), self.values.ravel())
        }


@dataclass(frozen=True)
class BellEvaluation:
    lhs_general: float
    per_s_moduli: dict
    bound: float
    violated: bool
    violation_ratio: float


def quantum_correlation(t: CorrelationTensor, directions) -> float:
    """Expectation of the product of spin projections along one direction per qubit."""
    dirs = np.asarray(directions, dtype=float).reshape(t.n_qubits, 3)
    err = float(np.max(np.abs(np.linalg.norm(dirs, axis=1) - 1.0)))
    if err > UNIT_TOL:
        raise InputError(f"directions must be unit vectors (residual {err:.3e})")
    work = t.cartesian()
    for q in range(t.n_qubits):
        work = np.tensordot(work, dirs[q], axes=([0], [0]))
    return float(work)


def correlation_table(t: CorrelationTensor, s: SettingsPair) -> CorrelationTable:
    """Correlation function at every combination of the two settings per qubit."""
    if s.n_qubits != t.n_qubits:
        raise InputError(
            f"settings have {s.n_qubits} qubits but tensor has {t.n_qubits}"
        )
    work = _table_values(t.cartesian(), s.n1, s.n2, t.n_qubits)
    return CorrelationTable(t.n_qubits, work)


def _table_values(cart: np.ndarray, n1: np.ndarray, n2: np.ndarray, n: int) -> np.ndarray:
    work = cart
    for q in range(n):
        pair = np.stack([n1[q], n2[q]])
        work = np.tensordot(work, pair, axes=([0], [1]))
    return work


def signed_sums(table: CorrelationTable) -> np.ndarray:
    """B(s) = sum_k s1^k1 ... sN^kN E(k) for every sign tuple, shape (2,)*N."""
    work = table.values
    for _ in range(table.n_qubits):
        work = np.tensordot(work, _SIGN_WEIGHTS, axes=([0], [1]))
    return work


def general_bell_lhs(table: CorrelationTable) -> BellEvaluation:
    """Evaluate the master inequality: sum of |B(s)| against the bound 2^N."""
    n = table.n_qubits
    b = signed_sums(table)
    moduli = np.abs(b)
    lhs = float(moduli.sum())
    bound = float(2**n)
    per_s = {s: float(m) for s, m in zip(sign_tuples(n), moduli.ravel())}
    return BellEvaluation(
        lhs_general=lhs,
        per_s_moduli=per_s,
        bound=bound,
        violated=lhs > bound + VIOLATION_TOLERANCE,
        violation_ratio=lhs / bound,
    )


def sign_function_inequality(table: CorrelationTable, sgn: SignFunction) -> float:
    """|sum_s S(s) B(s)|, one member of the sign-function family (bound 2^N)."""
    if sgn.n_qubits != table.n_qubits:
        raise InputError(
            f"sign function has {sgn.n_qubits} qubits but table has {table.n_qubits}"
        )
    return float(abs(np.sum(sgn.values * signed_sums(table))))


def belinskii_klyshko_sign_function(n_qubits: int) -> SignFunction:
    """Sign function of the Belinskii-Klyshko series.

    Evaluates sqrt(2) cos(-pi/4 + (s1+...+sN - N) pi/4), with the step
    orientation flipped for odd N so that N=2 lands on the CHSH combination
    E(1,1)+E(1,2)+E(2,1)-E(2,2) and N=3 on the Mermin combination
    E(1,2,2)+E(2,1,2)+E(2,2,1)-E(1,1,1).  The cosine arguments are odd
    multiples of pi/4, so every value is exactly +-1; any residue beyond
    1e-12 indicates a construction bug.
    """
    orient = 1.0 if n_qubits % 2 == 0 else -1.0
    vals = np.empty((2,) * n_qubits)
    flat = vals.ravel()
    for pos, s in enumerate(sign_tuples(n_qubits)):
        raw = np.sqrt(2.0) * np.cos(
            -np.pi / 4.0 + orient * (sum(s) - n_qubits) * np.pi / 4.0
        )
        snapped = float(np.sign(raw))
        if abs(raw - snapped) > 1e-12:
            raise ArithmeticError(
                f"sign function value {raw!r} at {s} is not exactly +-1"
            )
        flat[pos] = snapped
    return SignFunction(n_qubits, vals)


def belinskii_klyshko_value(table: CorrelationTable) -> float:
    """The Belinskii-Klyshko combination itself, normalized to the bound 2.

    For N=2 this is |E(1,1)+E(1,2)+E(2,1)-E(2,2)|, for N=3 it is
    |E(1,2,2)+E(2,1,2)+E(2,2,1)-E(1,1,1)|.
    """
    raw = sign_function_inequality(
        table, belinskii_klyshko_sign_function(table.n_qubits)
    )
    return raw / 2.0 ** (table.n_qubits - 1)


def _spherical(theta: np.ndarray, phi: np.ndarray) -> np.ndarray:
    st = np.sin(theta)
    return np.column_stack([st * np.cos(phi), st * np.sin(phi), np.cos(theta)])


def _angles_of(v: np.ndarray) -> list[float]:
    return [float(np.arccos(np.clip(v[2], -1.0, 1.0))), float(np.arctan2(v[1], v[0]))]


def _bell_warm_starts(t: CorrelationTensor) -> list[np.ndarray]:
    """In-plane azimuth families known to be optimal for graph-like states,
    plus the closed-form two-qubit construction from the Cartesian block."""
    n = t.n_qubits
    starts = []
    for total in (0.0, np.pi / 4, -np.pi / 4, np.pi / 2, -np.pi / 2, 3 * np.pi / 4, -3 * np.pi / 4, np.pi):
        alpha = total / n
        per_qubit = [np.pi / 2, alpha, np.pi / 2, alpha + np.pi / 2]
        starts.append(np.tile(per_qubit, n))
    if n == 2:
        u, s, vt = np.linalg.svd(t.cartesian())
        mu = float(np.arctan2(s[1], s[0]))
        b1 = np.cos(mu) * vt[0] + np.sin(mu) * vt[1]
        b2 = np.cos(mu) * vt[0] - np.sin(mu) * vt[1]
        starts.append(
            np.array(
                _angles_of(u[:, 0]) + _angles_of(u[:, 1]) + _angles_of(b1) + _angles_of(b2)
            )
        )
    return starts


def maximize_general_bell(
    t: CorrelationTensor, options: Optional[OptimizerOptions] = None
) -> tuple[BellEvaluation, SettingsPair]:
    """Search settings (two unit vectors per qubit) maximizing the master sum.

    Returns the evaluation at the best-found settings together with those
    settings; deterministic for a fixed seed.
    """
    opts = options or OptimizerOptions(restarts=64)
    n = t.n_qubits
    cart = t.cartesian()

    def objective(x: np.ndarray) -> float:
        ang = x.reshape(n, 4)
        n1 = _spherical(ang[:, 0], ang[:, 1])
        n2 = _spherical(ang[:, 2], ang[:, 3])
        work = _table_values(cart, n1, n2, n)
        for _ in range(n):
            work = np.tensordot(work, _SIGN_WEIGHTS, axes=([0], [1]))
        return float(np.abs(work).sum())

    lower = np.zeros(4 * n)
    upper = np.tile([np.pi, 2 * np.pi, np.pi, 2 * np.pi], n)
    res = multistart_maximize(
        objective, lower, upper, opts, warm_starts=_bell_warm_starts(t)
    )

    ang = res.x.reshape(n, 4)
    settings = SettingsPair(_spherical(ang[:, 0], ang[:, 1]), _spherical(ang[:, 2], ang[:, 3]))
    evaluation = general_bell_lhs(correlation_table(t, settings))
    return evaluation, settings


def maximize_sign_function_value(
    t: CorrelationTensor,
    sgn: SignFunction,
    options: Optional[OptimizerOptions] = None,
) -> tuple[float, SettingsPair]:
    """Search settings maximizing one named family member |sum_s S(s) B(s)|.

    The master sum is blind to setting relabelings that move a violation
    between family members, so pinning down a specific combination (CHSH,
    Mermin) requires maximizing it directly.
    """
    opts = options or OptimizerOptions(restarts=64)
    n = t.n_qubits
    cart = t.cartesian()
    svals = sgn.values

    def objective(x: np.ndarray) -> float:
        ang = x.reshape(n, 4)
        n1 = _spherical(ang[:, 0], ang[:, 1])
        n2 = _spherical(ang[:, 2], ang[:, 3])
        work = _table_values(cart, n1, n2, n)
        for _ in range(n):
            work = np.tensordot(work, _SIGN_WEIGHTS, axes=([0], [1]))
        return float(abs(np.sum(svals * work)))

    lower = np.zeros(4 * n)
    upper = np.tile([np.pi, 2 * np.pi, np.pi, 2 * np.pi], n)
    res = multistart_maximize(
        objective, lower, upper, opts, warm_starts=_bell_warm_starts(t)
    )
    ang = res.x.reshape(n, 4)
    settings = SettingsPair(
        _spherical(ang[:, 0], ang[:, 1]), _spherical(ang[:, 2], ang[:, 3])
    )
    return res.value, settings


def necsuf_lhs(pt: PlaneTensor, alphas) -> float:
    """Cosine-weighted absolute in-plane sum deciding local realism.

    Correlations admit a local realistic description exactly when this sum
    stays at or below one for every frame and every angle choice; its value
    never exceeds the root of the squared in-plane sum (Cauchy-Schwarz).
    """
    a = np.asarray(alphas, dtype=float).reshape(-1)
    if a.size != pt.n_qubits:
        raise InputError(f"expected {pt.n_qubits} angles, got {a.size}")
    weights = [
        np.array([np.cos(a[q] + np.pi / 2.0), np.cos(a[q] + np.pi)])
        for q in range(pt.n_qubits)
    ]
    w = reduce(np.multiply.outer, weights)
    return float(np.abs(w * pt.values).sum())


def sufficient_lr_condition(
    t: CorrelationTensor, options: Optional[OptimizerOptions] = None
) -> tuple[float, bool]:
    """Delegate to the information criterion: a max at or below one bit
    guarantees the master inequality holds at every setting choice."""
    verdict = maximize_corr_info(t, options)
    max_sum = float(verdict.max_total)
    return max_sum, max_sum <= 1.0 + DECISION_TOLERANCE


def bell_report_dict(
    n_qubits: int, evaluation: BellEvaluation, settings: SettingsPair
) -> dict:
    return {
        "n_qubits": int(n_qubits),
        "lhs": float(evaluation.lhs_general),
        "bound": float(evaluation.bound),
        "ratio": float(evaluation.violation_ratio),
        "violated": bool(evaluation.violated),
        "settings": settings.to_json_list(),
        "per_s": [
            {"s": [int(x) for x in s], "modulus": float(m)}
            for s, m in evaluation.per_s_moduli.items()
        ],
    }


def parse_settings_file(text, n_qubits: int) -> SettingsPair:
    """Parse {"pairs": [{"n1": [x,y,z], "n2": [x,y,z]}, ...]}."""
    import json

    from .states import StateFormatError

    if isinstance(text, (bytes, bytearray)):
        text = text.decode("utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise StateFormatError(
            f"JSON parse error at line {e.lineno}, column {e.colno}: {e.msg}"
        ) from e
    if not isinstance(doc, dict) or "pairs" not in doc:
        raise StateFormatError("settings file must be an object with a 'pairs' list")
    pairs = doc["pairs"]
    if not isinstance(pairs, list) or len(pairs) != n_qubits:
        raise StateFormatError(
            f"settings file must list {n_qubits} pairs, got "
            f"{len(pairs) if isinstance(pairs, list) else type(pairs).__name__}"
        )
    n1 = []
    n2 = []
    for i, item in enumerate(pairs):
        if not isinstance(item, dict) or "n1" not in item or "n2" not in item:
            raise StateFormatError(f"pairs[{i}] must have 'n1' and 'n2' vectors")
        for key, dest in (("n1", n1), ("n2", n2)):
            vec = item[key]
            if not isinstance(vec, list) or len(vec) != 3:
                raise StateFormatError(f"pairs[{i}].{key} must be a 3-vector")
            dest.append([float(c) for c in vec])
    return SettingsPair(np.array(n1), np.array(n2))
