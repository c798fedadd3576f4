"""Constructive local-hidden-variable models for correlation tables.

Any table satisfying the 2^N master bound admits an explicit local model:
each sign tuple s receives hidden probability p(s) = 2^-N |B(s)| spread
uniformly over the deterministic strategies obeying A_j(n1) = s_j A_j(n2)
whose product of second-setting outcomes matches the sign of B(s).  Mass
left over goes to noise distributed uniformly over all 4^N strategies,
which contributes nothing to any correlation function.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import product
from typing import Union

import numpy as np

from .bell import CorrelationTable, general_bell_lhs, sign_tuples, signed_sums
from .states import InputError

MASS_TOL = 1e-10


class BellBoundError(InputError):
    """The table violates the 2^N bound, so no local model exists."""

    def __init__(self, lhs: float, bound: float):
        self.lhs = float(lhs)
        self.bound = float(bound)
        super().__init__(
            f"table violates the local-realism bound: lhs {lhs!r} > {bound!r}"
        )


@dataclass(frozen=True)
class DeterministicStrategy:
    """Predetermined +-1 outcomes per qubit for each of the two settings."""

    a1: tuple
    a2: tuple

    def __post_init__(self):
        for name in ("a1", "a2"):
            vals = tuple(int(v) for v in getattr(self, name))
            if any(v not in (-1, 1) for v in vals):
                raise InputError(f"strategy outcomes must be +-1, got {vals}")
            object.__setattr__(self, name, vals)
        if len(self.a1) != len(self.a2):
            raise InputError("both outcome tuples must cover the same qubits")

    @property
    def n_qubits(self) -> int:
        return len(self.a1)


@dataclass(frozen=True)
class LhvModel:
    """Weighted deterministic strategies plus a uniform-noise remainder."""

    n_qubits: int
    atoms: tuple
    noise_weight: float
    noise_kind: str = "uniform_over_all_strategies"

    def __post_init__(self):
        cleaned = []
        for strategy, p in self.atoms:
            if p < -1e-12:
                raise InputError(f"atom probability must be nonnegative, got {p!r}")
            if strategy.n_qubits != self.n_qubits:
                raise InputError("atom strategy qubit count mismatch")
            cleaned.append((strategy, max(0.0, float(p))))
        object.__setattr__(self, "atoms", tuple(cleaned))
        total = sum(p for _, p in self.atoms) + self.noise_weight
        if abs(total - 1.0) > MASS_TOL:
            raise InputError(f"probability mass must sum to 1, got {total!r}")
        if self.noise_weight < -1e-12:
            raise InputError("noise weight must be nonnegative")

    def total_atom_mass(self) -> float:
        return float(sum(p for _, p in self.atoms))

    def to_json_dict(self) -> dict:
        return {
            "n_qubits": int(self.n_qubits),
            "atoms": [
                {"a1": list(s.a1), "a2": list(s.a2), "p": float(p)}
                for s, p in self.atoms
            ],
            "noise_weight": float(self.noise_weight),
        }


def construct_lhv(table: CorrelationTable) -> LhvModel:
    """Build the explicit local model for a table within the master bound.

    Sign tuples whose signed sum vanishes carry no mass, so the sign
    constraint is moot there and they are skipped.
    """
    evaluation = general_bell_lhs(table)
    if evaluation.violated:
        raise BellBoundError(evaluation.lhs_general, evaluation.bound)
    n = table.n_qubits
    b = signed_sums(table)
    atoms = []
    for s, b_val in zip(sign_tuples(n), b.ravel()):
        p = abs(float(b_val)) / 2.0**n
        if p == 0.0:
            continue
        target = 1 if b_val > 0 else -1
        share = p / 2.0 ** (n - 1)
        for a2 in product((1, -1), repeat=n):
            prod_a2 = 1
            for v in a2:
                prod_a2 *= v
            if prod_a2 != target:
                continue
            a1 = tuple(sj * a2j for sj, a2j in zip(s, a2))
            atoms.append((DeterministicStrategy(a1, a2), share))
    noise_weight = max(0.0, 1.0 - sum(p for _, p in atoms))
    return LhvModel(n, tuple(atoms), noise_weight)


def lhv_correlation_table(model: LhvModel) -> CorrelationTable:
    """Correlation table the model realizes.

    The uniform noise term averages every single-qubit outcome to zero and
    therefore adds nothing to any entry.
    """
    n = model.n_qubits
    acc = np.zeros((2,) * n)
    for strategy, p in model.atoms:
        per_qubit = [
            np.array([strategy.a1[q], strategy.a2[q]], dtype=float) for q in range(n)
        ]
        acc += p * reduce(np.multiply.outer, per_qubit)
    return CorrelationTable(n, acc)


def verify_lhv(model: LhvModel, table: CorrelationTable) -> float:
    """Largest absolute difference between the model's table and the target."""
    if model.n_qubits != table.n_qubits:
        raise InputError(
            f"model has {model.n_qubits} qubits but table has {table.n_qubits}"
        )
    realized = lhv_correlation_table(model)
    return float(np.max(np.abs(realized.values - table.values)))


def _as_generator(rng: Union[int, np.random.Generator]) -> np.random.Generator:
    return rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)


def sample_outcome_arrays(
    model: LhvModel, size: int, rng: Union[int, np.random.Generator]
) -> tuple[np.ndarray, np.ndarray]:
    """Draw predetermined outcomes for both settings, shapes (size, N).

    Vectorized companion of sample_strategy for Monte-Carlo demonstrations.
    """
    gen = _as_generator(rng)
    n = model.n_qubits
    probs = np.array([p for _, p in model.atoms] + [model.noise_weight])
    probs = np.clip(probs, 0.0, None)
    probs = probs / probs.sum()
    picks = gen.choice(len(probs), size=size, p=probs)
    a1 = np.empty((size, n), dtype=np.int8)
    a2 = np.empty((size, n), dtype=np.int8)
    for i, (strategy, _) in enumerate(model.atoms):
        mask = picks == i
        if mask.any():
            a1[mask] = strategy.a1
            a2[mask] = strategy.a2
    noise_mask = picks == len(model.atoms)
    count = int(noise_mask.sum())
    if count:
        a1[noise_mask] = gen.integers(0, 2, size=(count, n)) * 2 - 1
        a2[noise_mask] = gen.integers(0, 2, size=(count, n)) * 2 - 1
    return a1, a2


def sample_strategy(
    model: LhvModel, rng: Union[int, np.random.Generator]
) -> DeterministicStrategy:
    """Draw one strategy from the atom distribution joined with the noise."""
    a1, a2 = sample_outcome_arrays(model, 1, rng)
    return DeterministicStrategy(tuple(int(v) for v in a1[0]), tuple(int(v) for v in a2[0]))


def empirical_table(a1: np.ndarray, a2: np.ndarray) -> CorrelationTable:
    """Monte-Carlo estimate of the correlation table from sampled outcomes."""
    size, n = a1.shape
    acc = np.zeros((2,) * n)
    outcomes = np.stack([a1.astype(float), a2.astype(float)], axis=1)  # (size, 2, n)
    for pos, k in enumerate(product((0, 1), repeat=n)):
        cols = np.stack([outcomes[:, k[q], q] for q in range(n)], axis=1)
        acc.ravel()[pos] = cols.prod(axis=1).mean()
    return CorrelationTable(n, np.clip(acc, -1.0, 1.0))
