"""
system.py - Sparse Laurent polynomial systems over a support collection.

A SparseSystem is a coefficient vector in C^A: one complex number per support
point, ordered like the (lexicographically sorted) support points. Zero
coefficients are allowed. Evaluation uses the stacked exponent matrix of all
members, so the homotopy and Newton code only deal with flat arrays.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from ...core.supports.lattice import Support, SupportCollection, check_subset
from ...core.supports.monomial import MonomialMap
from ...err import PreconditionError, SerializationError

logger = logging.getLogger(__name__)

Seed = Union[int, Sequence[int], np.random.SeedSequence, np.random.Generator]

TORUS_FLOOR = 1e-14


def rng_from(seed: Seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


@dataclass(frozen=True, slots=True)
class TorusPoint:
    """
    A point of the algebraic torus ``(C^*)^n``.

    Attributes:
        coords (Tuple[complex, ...]): Coordinates, each of modulus above the
            torus floor.
    """

    coords: Tuple[complex, ...]

    def __post_init__(self):
        coords = tuple(complex(c) for c in self.coords)
        if not coords:
            raise PreconditionError("A torus point needs at least one coordinate.", code="empty_point")
        if any(abs(c) <= TORUS_FLOOR or not np.isfinite(c) for c in coords):
            raise PreconditionError(f"Point {coords} is not in the torus.", code="zero_coordinate")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def from_array(cls, values: Iterable[complex]) -> "TorusPoint":
        return cls(tuple(complex(v) for v in values))

    @property
    def array(self) -> np.ndarray:
        return np.array(self.coords, dtype=complex)

    def __len__(self) -> int:
        return len(self.coords)

    def __getitem__(self, i: int) -> complex:
        return self.coords[i]

    def serialize(self) -> List[Dict[str, float]]:
        return [{"re": c.real, "im": c.imag} for c in self.coords]

    @classmethod
    def deserialize(cls, payload: Sequence[Dict[str, float]]) -> "TorusPoint":
        from pydantic import ValidationError

        from .models.system import PointPayload

        try:
            data = PointPayload.model_validate({"coords": list(payload)})
        except ValidationError as e:
            raise SerializationError(f"Invalid torus point: {e.errors()[0]['msg']}") from e
        return cls(tuple(complex(c.re, c.im) for c in data.coords))


def as_array(x: Union[TorusPoint, Sequence[complex], np.ndarray]) -> np.ndarray:
    if isinstance(x, TorusPoint):
        return x.array
    arr = np.asarray(x, dtype=complex)
    if np.any(np.abs(arr) <= TORUS_FLOOR):
        raise PreconditionError("Evaluation point has a zero coordinate.", code="zero_coordinate")
    return arr


class MonomialEvaluator:
    """
    Vectorised evaluation of all monomials of a collection.

    ``exponents`` stacks the support points of all members; ``selector`` sums
    the coefficient-weighted monomials of each member.
    """

    __slots__ = ("exponents", "selector", "offsets")

    def __init__(self, collection: SupportCollection):
        rows: List[Tuple[int, ...]] = []
        owner: List[int] = []
        offsets = [0]
        for i, support in enumerate(collection):
            rows.extend(support.points)
            owner.extend([i] * len(support))
            offsets.append(len(rows))
        n = collection.ambient_dim
        self.exponents = np.array(rows, dtype=np.int64).reshape(len(rows), n)
        self.selector = np.zeros((len(collection), len(rows)))
        self.selector[owner, np.arange(len(rows))] = 1.0
        self.offsets = tuple(offsets)

    def monomials(self, x: np.ndarray) -> np.ndarray:
        return np.prod(np.power(x[None, :], self.exponents), axis=1)

    def values(self, coeffs: np.ndarray, x: np.ndarray, mono: Optional[np.ndarray] = None) -> np.ndarray:
        mono = self.monomials(x) if mono is None else mono
        return self.selector @ (coeffs * mono)

    def jacobian(self, coeffs: np.ndarray, x: np.ndarray, mono: Optional[np.ndarray] = None) -> np.ndarray:
        mono = self.monomials(x) if mono is None else mono
        partials = (coeffs * mono)[:, None] * self.exponents / x[None, :]
        return self.selector @ partials


class SparseSystem:
    """
    Coefficient assignment over a support collection.

    Instances are immutable: the coefficient arrays are flagged read-only and
    every operation returns a new system.

    Args:
        collection (SupportCollection): Supports ``(A_1, ..., A_N)``.
        coefficients (Sequence[Sequence[complex]]): One sequence per member,
            aligned with the sorted points of that member.
    """

    __slots__ = ("collection", "flat", "_evaluator")

    def __init__(self, collection: SupportCollection, coefficients: Sequence[Sequence[complex]]):
        if len(coefficients) != len(collection):
            raise PreconditionError(
                f"Got {len(coefficients)} coefficient rows for {len(collection)} supports.",
                code="coefficient_mismatch",
            )
        for i, (support, row) in enumerate(zip(collection, coefficients)):
            if len(row) != len(support):
                raise PreconditionError(
                    f"Support {i} has {len(support)} points but {len(row)} coefficients.",
                    code="coefficient_mismatch",
                )
        flat = np.concatenate([np.asarray(row, dtype=complex).ravel() for row in coefficients]) if len(collection) else np.zeros(0, complex)
        if not np.all(np.isfinite(flat)):
            raise PreconditionError("Coefficients must be finite.", code="bad_coefficient")
        flat.flags.writeable = False
        self.collection = collection
        self.flat = flat
        self._evaluator: Optional[MonomialEvaluator] = None

    @classmethod
    def from_flat(cls, collection: SupportCollection, flat: np.ndarray) -> "SparseSystem":
        sizes = np.cumsum([0] + [len(s) for s in collection])
        return cls(collection, [flat[sizes[i]:sizes[i + 1]] for i in range(len(collection))])

    @classmethod
    def zero(cls, collection: SupportCollection) -> "SparseSystem":
        return cls(collection, [np.zeros(len(s), complex) for s in collection])

    @classmethod
    def from_terms(cls, collection: SupportCollection, terms: Sequence[Dict[Tuple[int, ...], complex]]) -> "SparseSystem":
        """Build from one ``{exponent: coefficient}`` mapping per member; missing points get 0."""
        rows = []
        for support, mapping in zip(collection, terms):
            extra = set(map(tuple, mapping)) - set(support.points)
            if extra:
                raise PreconditionError(f"Terms {sorted(extra)} are outside the support.", code="not_subset")
            rows.append([complex(mapping.get(p, 0)) for p in support.points])
        return cls(collection, rows)

    @property
    def evaluator(self) -> MonomialEvaluator:
        if self._evaluator is None:
            self._evaluator = MonomialEvaluator(self.collection)
        return self._evaluator

    @property
    def ambient_dim(self) -> int:
        return self.collection.ambient_dim

    def square(self) -> bool:
        return self.collection.square()

    def row(self, i: int) -> np.ndarray:
        sizes = np.cumsum([0] + [len(s) for s in self.collection])
        return self.flat[sizes[i]:sizes[i + 1]]

    @property
    def coefficients(self) -> Tuple[np.ndarray, ...]:
        return tuple(self.row(i) for i in range(len(self.collection)))

    def coefficient(self, i: int, point: Sequence[int]) -> complex:
        return complex(self.row(i)[self.collection[i].index_of(point)])

    def terms(self, i: int) -> Dict[Tuple[int, ...], complex]:
        return {p: complex(c) for p, c in zip(self.collection[i].points, self.row(i))}

    def nonzero_support(self) -> SupportCollection:
        return SupportCollection(
            tuple(Support(tuple(p for p, c in zip(s.points, self.row(i)) if c != 0), s.ambient_dim) for i, s in enumerate(self.collection)),
            self.ambient_dim,
        )

    def evaluate(self, x) -> np.ndarray:
        return self.evaluator.values(self.flat, as_array(x))

    def jacobian(self, x) -> np.ndarray:
        return self.evaluator.jacobian(self.flat, as_array(x))

    def __add__(self, other: "SparseSystem") -> "SparseSystem":
        self._same_collection(other)
        return SparseSystem.from_flat(self.collection, self.flat + other.flat)

    def scale(self, factor: complex) -> "SparseSystem":
        return SparseSystem.from_flat(self.collection, self.flat * factor)

    def combine(self, other: "SparseSystem", t: float, gamma: complex = 1.0) -> "SparseSystem":
        """``t * self + (1 - t) * gamma * other``."""
        self._same_collection(other)
        return SparseSystem.from_flat(self.collection, t * self.flat + (1 - t) * gamma * other.flat)

    def embed(self, target: SupportCollection) -> "SparseSystem":
        """Same polynomials on a larger collection; new points get coefficient 0."""
        if not self.collection.issubset(target):
            raise PreconditionError("Target collection does not contain the system's supports.", code="not_subset")
        return SparseSystem.from_terms(target, [self.terms(i) for i in range(len(self.collection))])

    def shift(self, shifts: Sequence[Sequence[int]]) -> "SparseSystem":
        """Multiply ``f_i`` by ``x^{shifts[i]}``; torus zeros are unchanged."""
        return SparseSystem(self.collection.translate(shifts), self.coefficients)

    def restrict(self, subset: Sequence[int]) -> "SparseSystem":
        idx = check_subset(subset, len(self.collection))
        return SparseSystem(self.collection.restrict(idx), [self.row(i) for i in idx])

    def project(self, keep: int) -> "SparseSystem":
        """Drop trailing coordinates ``keep..n-1``; their exponents must all be 0."""
        members = []
        for s in self.collection:
            if any(any(p[keep:]) for p in s.points):
                raise PreconditionError("Cannot drop coordinates that carry exponents.", code="not_projectable")
            members.append(Support(tuple(p[:keep] for p in s.points), keep))
        return SparseSystem(SupportCollection(tuple(members), keep), self.coefficients)

    def _same_collection(self, other: "SparseSystem") -> None:
        if other.collection != self.collection:
            raise PreconditionError("Systems live on different collections.", code="collection_mismatch")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SparseSystem) and self.collection == other.collection and np.array_equal(self.flat, other.flat)

    def __repr__(self) -> str:
        return f"SparseSystem(N={len(self.collection)}, n={self.ambient_dim}, terms={self.flat.size})"

    def serialize(self) -> Dict[str, Any]:
        return {
            "collection": self.collection.serialize(),
            "coefficients": [[{"re": float(c.real), "im": float(c.imag)} for c in self.row(i)] for i in range(len(self.collection))],
        }

    @classmethod
    def deserialize(cls, payload: Dict[str, Any]) -> "SparseSystem":
        from pydantic import ValidationError

        from .models.system import SystemPayload

        try:
            data = SystemPayload.model_validate(payload)
        except ValidationError as e:
            raise SerializationError(f"Invalid system: {e.errors()[0]['msg']}") from e
        collection = SupportCollection.deserialize(data.collection.model_dump())
        # Input points may be in any order; coefficients follow the input order.
        rows = []
        for raw_points, raw_coeffs, support in zip(data.collection.supports, data.coefficients, collection):
            mapping = {tuple(p): complex(c.re, c.im) for p, c in zip(raw_points, raw_coeffs)}
            rows.append([mapping[p] for p in support.points])
        return cls(collection, rows)


def evaluate(system: SparseSystem, x) -> np.ndarray:
    """``(f_1(x), ..., f_N(x))`` at a torus point."""
    return system.evaluate(x)


def jacobian(system: SparseSystem, x) -> np.ndarray:
    """``N x n`` matrix of partial derivatives at a torus point."""
    return system.jacobian(x)


def split(system: SparseSystem, part: SupportCollection) -> Tuple[SparseSystem, SparseSystem]:
    """
    ``F = F_B + F_C`` with ``F_B`` carrying the coefficients on ``B``.

    Raises:
        PreconditionError: ``not_subset`` when ``B`` is not member-wise inside
            the system's collection.
    """
    if not part.issubset(system.collection):
        raise PreconditionError("B is not contained in the collection.", code="not_subset")
    marks = []
    for s, b in zip(system.collection, part):
        inside_b = set(b.points)
        marks.extend(p in inside_b for p in s.points)
    mask = np.array(marks, dtype=bool)
    inside = np.where(mask, system.flat, 0)
    outside = np.where(mask, 0, system.flat)
    return SparseSystem.from_flat(system.collection, inside), SparseSystem.from_flat(system.collection, outside)


def agree_outside(first: SparseSystem, second: SparseSystem, part: SupportCollection) -> bool:
    """``F ≈_{A \\ B} G``: identical coefficients outside ``B``."""
    return np.array_equal(split(first, part)[1].flat, split(second, part)[1].flat)


def random_coefficients(size: int, rng: np.random.Generator) -> np.ndarray:
    """Moduli uniform on ``[0.5, 1.5]`` and phases uniform on ``[0, 2 pi)``."""
    moduli = rng.uniform(0.5, 1.5, size)
    phases = rng.uniform(0.0, 2 * np.pi, size)
    return moduli * np.exp(1j * phases)


def random_system(collection: SupportCollection, seed: Seed) -> SparseSystem:
    """Generic system with independent random coefficients; deterministic under ``seed``."""
    rng = rng_from(seed)
    size = sum(len(s) for s in collection)
    return SparseSystem.from_flat(collection, random_coefficients(size, rng))


def resample(system: SparseSystem, part: SupportCollection, seed: Seed) -> SparseSystem:
    """Replace the coefficients on ``B`` by fresh random ones, keep the rest."""
    rng = rng_from(seed)
    _, outside = split(system, part)
    inside = split(random_system(system.collection, rng), part)[0]
    return SparseSystem.from_flat(system.collection, outside.flat + inside.flat)


def apply_monomial_map(system: SparseSystem, phi: MonomialMap, inverse: bool = False) -> SparseSystem:
    """
    Move the support points by ``Phi`` (or ``Phi^-1``), carrying coefficients.

    With ``inverse=True`` the result ``G`` satisfies ``G(phi(x)) = F(x)``;
    with ``inverse=False`` it satisfies ``F(phi(y)) = G(y)`` and the torus
    solutions correspond through ``phi``.

    Raises:
        NonIntegralError: when a pulled back point is not integral.
    """
    collection = phi.apply_collection(system.collection, inverse=inverse)
    move = phi.inverse_point if inverse else phi.apply_point
    terms = [{move(p): c for p, c in system.terms(i).items()} for i in range(len(system.collection))]
    return SparseSystem.from_terms(collection, terms)


def newton_step(system: SparseSystem, x) -> Optional[np.ndarray]:
    """Newton correction ``-J^-1 F(x)``; ``None`` when the Jacobian is singular."""
    x = as_array(x)
    try:
        return -np.linalg.solve(system.jacobian(x), system.evaluate(x))
    except np.linalg.LinAlgError:
        return None


def newton_residual(system: SparseSystem, x) -> float:
    """Relative size of the Newton correction, ``|J^-1 F(x)|_inf / max(1, |x|_inf)``."""
    x = as_array(x)
    step = newton_step(system, x)
    if step is None:
        return float("inf")
    return float(np.max(np.abs(step)) / max(1.0, float(np.max(np.abs(x)))))


def condition_number(system: SparseSystem, x) -> float:
    return float(np.linalg.cond(system.jacobian(as_array(x))))


def newton_polish(system: SparseSystem, x, tol: float, max_iters: int) -> Tuple[np.ndarray, float]:
    """Newton iterations until the relative correction drops below ``tol``."""
    x = as_array(x).copy()
    residual = float("inf")
    for _ in range(max_iters):
        step = newton_step(system, x)
        if step is None:
            return x, float("inf")
        x = x + step
        residual = float(np.max(np.abs(step)) / max(1.0, float(np.max(np.abs(x)))))
        if residual <= tol:
            break
    return x, newton_residual(system, x)
