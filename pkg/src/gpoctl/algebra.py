"""Exact lattice arithmetic on [0,1]-valued scalars, vectors and square matrices.

Degrees are ``fractions.Fraction`` values.  The only operations ever applied
are minimum, maximum and the complement ``1 - x``, so results stay exact
rationals and equality tests (fixpoint detection in particular) are sound.
Binary floating point would already break the complement: 1 - 0.7 != 0.3.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Union

PossLike = Union[Fraction, int, float, str]

ZERO = Fraction(0)
ONE = Fraction(1)


class DimensionMismatchError(ValueError):
    """Operands of a vector/matrix operation have different dimensions."""


def poss(value: PossLike) -> Fraction:
    """Coerce *value* to an exact possibility degree in [0, 1].

    Strings may be decimal literals ("0.35") or ratios ("7/20").  Floats are
    read through their shortest repr, so a literal like 0.1 denotes exactly
    1/10 rather than the nearest binary double.
    """
    if isinstance(value, bool):
        raise ValueError(f"not a possibility degree: {value!r}")
    if isinstance(value, float):
        value = repr(value)
    try:
        degree = Fraction(value)
    except (ValueError, TypeError, ZeroDivisionError):
        raise ValueError(f"not a possibility degree: {value!r}") from None
    if degree < ZERO or degree > ONE:
        raise ValueError(f"value outside [0,1]: {value!r}")
    return degree


def format_poss(value: Fraction) -> str:
    """Render a degree exactly: shortest terminating decimal, else num/den."""
    num, den = value.numerator, value.denominator
    if den == 1:
        return str(num)
    reduced = den
    twos = fives = 0
    while reduced % 2 == 0:
        reduced //= 2
        twos += 1
    while reduced % 5 == 0:
        reduced //= 5
        fives += 1
    if reduced != 1:
        return f"{num}/{den}"
    digits = max(twos, fives)
    scaled = str(num * 10**digits // den).rjust(digits + 1, "0")
    return f"{scaled[:-digits]}.{scaled[-digits:]}"


@dataclass(frozen=True)
class FuzzyVector:
    """Fixed-length tuple of possibility degrees indexed by state."""

    entries: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not self.entries:
            raise ValueError("vector must have positive dimension")

    @staticmethod
    def of(values: Iterable[PossLike]) -> "FuzzyVector":
        return FuzzyVector(tuple(poss(v) for v in values))

    @staticmethod
    def zeros(dim: int) -> "FuzzyVector":
        return FuzzyVector((ZERO,) * dim)

    @staticmethod
    def ones(dim: int) -> "FuzzyVector":
        return FuzzyVector((ONE,) * dim)

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.entries)

    def __getitem__(self, index: int) -> Fraction:
        return self.entries[index]

    def _require_same_dim(self, other: "FuzzyVector") -> None:
        if self.dim != other.dim:
            raise DimensionMismatchError(
                f"vector dimensions differ: {self.dim} vs {other.dim}"
            )

    def join(self, other: "FuzzyVector") -> "FuzzyVector":
        """Entrywise maximum."""
        self._require_same_dim(other)
        return FuzzyVector(tuple(map(max, self.entries, other.entries)))

    def meet(self, other: "FuzzyVector") -> "FuzzyVector":
        """Entrywise minimum."""
        self._require_same_dim(other)
        return FuzzyVector(tuple(map(min, self.entries, other.entries)))

    def complement(self) -> "FuzzyVector":
        """Entrywise 1 - x; an exact involution."""
        return FuzzyVector(tuple(ONE - e for e in self.entries))

    def __le__(self, other: "FuzzyVector") -> bool:
        self._require_same_dim(other)
        return all(a <= b for a, b in zip(self.entries, other.entries))


@dataclass(frozen=True)
class FuzzyMatrix:
    """Square grid of possibility degrees; composition is max-min."""

    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        if not self.rows:
            raise ValueError("matrix must have positive dimension")
        dim = len(self.rows)
        if any(len(row) != dim for row in self.rows):
            raise ValueError("matrix must be square")

    @staticmethod
    def of(rows: Iterable[Iterable[PossLike]]) -> "FuzzyMatrix":
        return FuzzyMatrix(tuple(tuple(poss(v) for v in row) for row in rows))

    @staticmethod
    def zeros(dim: int) -> "FuzzyMatrix":
        return FuzzyMatrix(((ZERO,) * dim,) * dim)

    @staticmethod
    def identity(dim: int) -> "FuzzyMatrix":
        return FuzzyMatrix(
            tuple(
                tuple(ONE if i == j else ZERO for j in range(dim))
                for i in range(dim)
            )
        )

    @property
    def dim(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> Fraction:
        return self.rows[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.rows[i]

    def _require_same_dim(self, other: "FuzzyMatrix") -> None:
        if self.dim != other.dim:
            raise DimensionMismatchError(
                f"matrix dimensions differ: {self.dim} vs {other.dim}"
            )

    def compose(self, other: "FuzzyMatrix") -> "FuzzyMatrix":
        """Max-min composition: result[i][j] = max_k min(self[i][k], other[k][j])."""
        self._require_same_dim(other)
        columns = tuple(zip(*other.rows))
        return FuzzyMatrix(
            tuple(
                tuple(max(map(min, row, col)) for col in columns)
                for row in self.rows
            )
        )

    def apply(self, vec: FuzzyVector) -> FuzzyVector:
        """Max-min matrix-vector product: result[i] = max_k min(self[i][k], vec[k])."""
        if self.dim != vec.dim:
            raise DimensionMismatchError(
                f"matrix dimension {self.dim} does not match vector dimension {vec.dim}"
            )
        return FuzzyVector(
            tuple(max(map(min, row, vec.entries)) for row in self.rows)
        )

    def join(self, other: "FuzzyMatrix") -> "FuzzyMatrix":
        """Entrywise maximum."""
        self._require_same_dim(other)
        return FuzzyMatrix(
            tuple(
                tuple(map(max, row_a, row_b))
                for row_a, row_b in zip(self.rows, other.rows)
            )
        )

    def diagonal(self) -> FuzzyVector:
        return FuzzyVector(tuple(self.rows[i][i] for i in range(self.dim)))

    def power(self, exponent: int) -> "FuzzyMatrix":
        """Max-min power with P^0 = identity and P^(k+1) = P^k o P."""
        if exponent < 0:
            raise ValueError("exponent must be non-negative")
        acc = FuzzyMatrix.identity(self.dim)
        for _ in range(exponent):
            acc = acc.compose(self)
        return acc

    def reflexive_transitive_closure(self) -> "FuzzyMatrix":
        """Join of all max-min powers, identity included.

        Computed by squaring (I v P); once the reached exponent is at least
        dim, higher powers add nothing (a longer walk revisits a state and
        the spliced shorter walk has an edge-minimum at least as large).
        """
        acc = self.join(FuzzyMatrix.identity(self.dim))
        reached = 1
        while reached < self.dim:
            acc = acc.compose(acc)
            reached *= 2
        return acc

    def transitive_closure(self) -> "FuzzyMatrix":
        """Join of the positive max-min powers P v P^2 v ... v P^dim."""
        return self.compose(self.reflexive_transitive_closure())

    def __le__(self, other: "FuzzyMatrix") -> bool:
        self._require_same_dim(other)
        return all(
            a <= b
            for row_a, row_b in zip(self.rows, other.rows)
            for a, b in zip(row_a, row_b)
        )


def diag(vec: FuzzyVector) -> FuzzyMatrix:
    """Square matrix with *vec* on the diagonal and 0 elsewhere."""
    return FuzzyMatrix(
        tuple(
            tuple(vec[i] if i == j else ZERO for j in range(vec.dim))
            for i in range(vec.dim)
        )
    )
