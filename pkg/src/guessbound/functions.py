"""Function tables, random-function families, and two-universality checks.

Domain and range elements are indices.  For bit-string domains the fixed
convention is little-endian: bit i of the index is bit i of the string.
Tables are dense integer arrays, which keeps exhaustive loops cheap.

Families are weighted finite sets of tables with a seedable sampler.
Enumeration is capped at ``ENUMERATION_CAP`` support members; beyond the cap
every exact operation raises `EnumerationCapError` and demands explicit
Monte Carlo with a caller-chosen sample count, never silent sampling.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

from .probability import Distribution
from .rng import stream

ENUMERATION_CAP = 65536
TWO_UNIVERSAL_ATOL = 1e-12
MAX_CHECKED_DOMAIN = 256


class EnumerationCapError(ValueError):
    """Raised when an exact operation would enumerate past ENUMERATION_CAP."""


@dataclass(frozen=True, eq=False)
class FunctionTable:
    """Explicit map from 0..domain_size-1 to 0..range_size-1."""

    values: np.ndarray
    range_size: int

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.int64)
        if v.ndim != 1 or v.size == 0:
            raise ValueError("table values must be a nonempty 1-d array")
        if self.range_size < 1:
            raise ValueError("range_size must be positive")
        if v.min() < 0 or v.max() >= self.range_size:
            raise ValueError("table values must lie in [0, range_size)")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @property
    def domain_size(self) -> int:
        return self.values.size

    def __call__(self, x: int) -> int:
        return int(self.values[x])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FunctionTable)
            and self.range_size == other.range_size
            and np.array_equal(self.values, other.values)
        )

    def __hash__(self) -> int:
        return hash((self.range_size, self.values.tobytes()))

    def preimage_sizes(self) -> np.ndarray:
        return np.bincount(self.values, minlength=self.range_size)

    def is_balanced(self) -> bool:
        """True for a predicate whose 0- and 1-preimages have equal size."""
        if self.range_size != 2:
            return False
        zeros = int((self.values == 0).sum())
        return 2 * zeros == self.domain_size

    def then(self, outer: "FunctionTable") -> "FunctionTable":
        """Table of outer(self(x))."""
        if outer.domain_size != self.range_size:
            raise ValueError("outer domain must equal inner range")
        return FunctionTable(outer.values[self.values], outer.range_size)

    def to_json(self) -> list[int]:
        return [int(v) for v in self.values]

    @classmethod
    def from_json(cls, values, range_size: int) -> "FunctionTable":
        return cls(np.asarray(values, dtype=np.int64), range_size)


def _int_to_bits(values, num_bits: int) -> np.ndarray:
    v = np.asarray(values, dtype=np.int64)
    return (v[..., None] >> np.arange(num_bits)) & 1


def _bits_to_int(bits) -> np.ndarray:
    b = np.asarray(bits, dtype=np.int64)
    return b @ (1 << np.arange(b.shape[-1], dtype=np.int64))


class FunctionFamily:
    """Weighted finite set of function tables with a seedable sampler."""

    kind: str = "abstract"
    domain_size: int
    range_size: int

    def sample(self, rng: np.random.Generator) -> FunctionTable:
        raise NotImplementedError

    def support_size(self) -> int:
        raise NotImplementedError

    def params(self) -> dict:
        raise NotImplementedError

    def _check_cap(self):
        size = self.support_size()
        if size > ENUMERATION_CAP:
            raise EnumerationCapError(
                f"{self.kind} family has {size} members, beyond the exact-"
                f"enumeration cap {ENUMERATION_CAP}; use Monte Carlo sampling "
                "with an explicit sample count"
            )

    def support(self) -> Iterator[tuple[float, FunctionTable]]:
        """Yield (weight, table) pairs in a fixed documented order."""
        raise NotImplementedError

    def support_matrix(self) -> tuple[np.ndarray, np.ndarray]:
        """Weights and stacked table values, shape (support, domain)."""
        self._check_cap()
        weights = np.empty(self.support_size())
        values = np.empty((self.support_size(), self.domain_size), dtype=np.int64)
        for index, (weight, table) in enumerate(self.support()):
            weights[index] = weight
            values[index] = table.values
        return weights, values

    def to_json(self, seed=None) -> dict:
        return {"kind": self.kind, "params": self.params(), "seed": seed}


class UniformFunctionFamily(FunctionFamily):
    """Uniformly random function from the domain to the range."""

    kind = "uniform-all"

    def __init__(self, domain_size: int, range_size: int = 2):
        if domain_size < 1 or range_size < 1:
            raise ValueError("domain_size and range_size must be positive")
        self.domain_size = domain_size
        self.range_size = range_size

    def params(self) -> dict:
        return {"domain_size": self.domain_size, "range_size": self.range_size}

    def support_size(self) -> int:
        return self.range_size**self.domain_size

    def sample(self, rng) -> FunctionTable:
        return FunctionTable(
            rng.integers(0, self.range_size, size=self.domain_size), self.range_size
        )

    def support_matrix(self):
        # table index t maps x to digit x of t written base range_size
        self._check_cap()
        size = self.support_size()
        indices = np.arange(size, dtype=np.int64)
        if self.range_size == 2:
            values = _int_to_bits(indices, self.domain_size)
        else:
            values = np.empty((size, self.domain_size), dtype=np.int64)
            rest = indices
            for x in range(self.domain_size):
                rest, values[:, x] = np.divmod(rest, self.range_size)
        weights = np.full(size, 1.0 / size)
        return weights, values

    def support(self):
        weights, values = self.support_matrix()
        for w, row in zip(weights, values):
            yield float(w), FunctionTable(row, self.range_size)


class BalancedPredicateFamily(FunctionFamily):
    """Uniformly random balanced predicate on an even-size domain."""

    kind = "uniform-balanced"
    range_size = 2

    def __init__(self, domain_size: int):
        if domain_size < 2 or domain_size % 2 != 0:
            raise ValueError("balanced predicates need an even domain of size >= 2")
        self.domain_size = domain_size

    def params(self) -> dict:
        return {"domain_size": self.domain_size}

    def support_size(self) -> int:
        return math.comb(self.domain_size, self.domain_size // 2)

    def sample(self, rng) -> FunctionTable:
        values = np.zeros(self.domain_size, dtype=np.int64)
        ones = rng.permutation(self.domain_size)[: self.domain_size // 2]
        values[ones] = 1
        return FunctionTable(values, 2)

    def support(self):
        self._check_cap()
        weight = 1.0 / self.support_size()
        for ones in itertools.combinations(range(self.domain_size), self.domain_size // 2):
            values = np.zeros(self.domain_size, dtype=np.int64)
            values[list(ones)] = 1
            yield weight, FunctionTable(values, 2)

    def support_matrix(self):
        self._check_cap()
        combos = list(itertools.combinations(range(self.domain_size), self.domain_size // 2))
        values = np.zeros((len(combos), self.domain_size), dtype=np.int64)
        for index, ones in enumerate(combos):
            values[index, list(ones)] = 1
        return np.full(len(combos), 1.0 / len(combos)), values


class AffineFamily(FunctionFamily):
    """h(x) = A x xor b over GF(2) with uniformly random A, b.

    Maps input_bits-bit strings to output_bits-bit strings; a concrete
    two-universal workhorse requiring (output_bits * (input_bits + 1))
    random bits per draw.
    """

    kind = "affine-gf2"

    def __init__(self, input_bits: int, output_bits: int = 1):
        if input_bits < 1 or output_bits < 1:
            raise ValueError("input_bits and output_bits must be positive")
        self.input_bits = input_bits
        self.output_bits = output_bits
        self.domain_size = 2**input_bits
        self.range_size = 2**output_bits

    def params(self) -> dict:
        return {"input_bits": self.input_bits, "output_bits": self.output_bits}

    def support_size(self) -> int:
        return 2 ** (self.output_bits * (self.input_bits + 1))

    def _table(self, matrix: np.ndarray, offset: np.ndarray) -> FunctionTable:
        x_bits = _int_to_bits(np.arange(self.domain_size), self.input_bits)
        out_bits = (x_bits @ matrix.T + offset) % 2
        return FunctionTable(_bits_to_int(out_bits), self.range_size)

    def sample(self, rng) -> FunctionTable:
        matrix = rng.integers(0, 2, size=(self.output_bits, self.input_bits))
        offset = rng.integers(0, 2, size=self.output_bits)
        return self._table(matrix, offset)

    def support(self):
        self._check_cap()
        n, k = self.input_bits, self.output_bits
        weight = 1.0 / self.support_size()
        for index in range(self.support_size()):
            matrix = _int_to_bits(index, k * n).reshape(k, n)
            offset = _int_to_bits(index >> (k * n), k)
            yield weight, self._table(matrix, offset)


class InnerProductFamily(FunctionFamily):
    """Predicate <a, x> over GF(2) with a uniformly random mask a."""

    kind = "inner-product"
    range_size = 2

    def __init__(self, input_bits: int):
        if input_bits < 1:
            raise ValueError("input_bits must be positive")
        self.input_bits = input_bits
        self.domain_size = 2**input_bits

    def params(self) -> dict:
        return {"input_bits": self.input_bits}

    def support_size(self) -> int:
        return 2**self.input_bits

    def _table(self, mask: int) -> FunctionTable:
        bits = _int_to_bits(np.arange(self.domain_size) & mask, self.input_bits)
        return FunctionTable(bits.sum(axis=1) % 2, 2)

    def sample(self, rng) -> FunctionTable:
        return self._table(int(rng.integers(0, self.domain_size)))

    def support(self):
        self._check_cap()
        weight = 1.0 / self.support_size()
        for mask in range(self.support_size()):
            yield weight, self._table(mask)


class ExplicitFamily(FunctionFamily):
    """Explicit weighted list of tables over a common domain and range."""

    kind = "explicit"

    def __init__(self, tables, weights=None):
        tables = tuple(tables)
        if not tables:
            raise ValueError("explicit family needs at least one table")
        domains = {t.domain_size for t in tables}
        ranges = {t.range_size for t in tables}
        if len(domains) != 1 or len(ranges) != 1:
            raise ValueError("all tables must share domain and range")
        if weights is None:
            weights = Distribution.uniform(len(tables))
        elif not isinstance(weights, Distribution):
            weights = Distribution(weights)
        if weights.size != len(tables):
            raise ValueError("one weight per table required")
        self.tables = tables
        self.weights = weights
        self.domain_size = tables[0].domain_size
        self.range_size = tables[0].range_size

    def params(self) -> dict:
        return {
            "tables": [t.to_json() for t in self.tables],
            "range_size": self.range_size,
            "weights": [float(w) for w in self.weights.probs],
        }

    def support_size(self) -> int:
        return len(self.tables)

    def sample(self, rng) -> FunctionTable:
        index = rng.choice(len(self.tables), p=self.weights.probs)
        return self.tables[int(index)]

    def support(self):
        self._check_cap()
        for weight, table in zip(self.weights.probs, self.tables):
            yield float(weight), table


class ComposedFamily(FunctionFamily):
    """outer after inner, with the two factors drawn independently."""

    kind = "composed"

    def __init__(self, outer: FunctionFamily, inner: FunctionFamily):
        if outer.domain_size != inner.range_size:
            raise ValueError("outer domain must equal inner range")
        self.outer = outer
        self.inner = inner
        self.domain_size = inner.domain_size
        self.range_size = outer.range_size

    def params(self) -> dict:
        return {"outer": self.outer.to_json(), "inner": self.inner.to_json()}

    def support_size(self) -> int:
        return self.outer.support_size() * self.inner.support_size()

    def sample(self, rng) -> FunctionTable:
        inner_table = self.inner.sample(rng)
        outer_table = self.outer.sample(rng)
        return inner_table.then(outer_table)

    def support(self):
        self._check_cap()
        for w_in, inner_table in self.inner.support():
            for w_out, outer_table in self.outer.support():
                yield w_in * w_out, inner_table.then(outer_table)


def compose(outer: FunctionFamily, inner: FunctionFamily) -> ComposedFamily:
    """Family of outer(inner(x)) with independent draws of the two factors."""
    return ComposedFamily(outer, inner)


def enumerate_predicates(domain_size: int, balanced: bool = False) -> list[FunctionTable]:
    """All predicates (or all balanced predicates) on a domain of size <= 16."""
    if domain_size < 1 or domain_size > 16:
        raise EnumerationCapError(
            f"predicate enumeration supports domains up to 16, got {domain_size}; "
            "use sampling"
        )
    if balanced:
        return [t for _, t in BalancedPredicateFamily(domain_size).support()]
    return [t for _, t in UniformFunctionFamily(domain_size, 2).support()]


def sample_function(family: FunctionFamily, seed: int) -> FunctionTable:
    """Draw one table from the family, deterministically in the seed."""
    return family.sample(stream(seed))


def collision_matrix(family: FunctionFamily) -> np.ndarray:
    """Exact pairwise collision probabilities Pr[f(x) = f(x')] for all x, x'."""
    weights, values = family.support_matrix()
    matrix = np.zeros((family.domain_size, family.domain_size))
    for weight, row in zip(weights, values):
        matrix += weight * (row[:, None] == row[None, :])
    return matrix


def collision_probability(family: FunctionFamily, x: int, x_prime: int) -> float:
    """Exact probability that a drawn function collides on the two inputs."""
    if x == x_prime:
        raise ValueError("collision probability needs two distinct inputs")
    weights, values = family.support_matrix()
    return float(weights @ (values[:, x] == values[:, x_prime]))


def collision_probability_mc(
    family: FunctionFamily, x: int, x_prime: int, samples: int, seed: int
) -> tuple[float, float]:
    """Monte Carlo collision probability with its standard error."""
    if x == x_prime:
        raise ValueError("collision probability needs two distinct inputs")
    if samples < 1:
        raise ValueError("samples must be positive")
    rng = stream(seed)
    hits = sum(
        1 for _ in range(samples) if (t := family.sample(rng))(x) == t(x_prime)
    )
    estimate = hits / samples
    stderr = math.sqrt(max(estimate * (1 - estimate), 0.0) / samples)
    return estimate, stderr


class TwoUniversalReport(NamedTuple):
    two_universal: bool
    worst_pair: tuple[int, int]
    worst_probability: float
    threshold: float


def is_two_universal(family: FunctionFamily) -> TwoUniversalReport:
    """Exact two-universality check over every distinct input pair.

    True when the worst pairwise collision probability stays within
    1/range_size (plus TWO_UNIVERSAL_ATOL of float headroom).
    """
    if family.domain_size > MAX_CHECKED_DOMAIN:
        raise EnumerationCapError(
            f"two-universality check enumerates all input pairs; domain "
            f"{family.domain_size} exceeds {MAX_CHECKED_DOMAIN}"
        )
    threshold = 1.0 / family.range_size
    if family.domain_size == 1:
        # no distinct pairs to collide on
        return TwoUniversalReport(True, (0, 0), 0.0, threshold)
    matrix = collision_matrix(family)
    np.fill_diagonal(matrix, -1.0)
    flat = int(matrix.argmax())
    pair = (flat // family.domain_size, flat % family.domain_size)
    worst = float(matrix[pair])
    return TwoUniversalReport(
        worst <= threshold + TWO_UNIVERSAL_ATOL, pair, worst, threshold
    )


def agreement_coefficient(family: FunctionFamily, x: int, x_prime: int) -> float:
    """2 Pr[f(x) = f(x')] - 1 for a predicate family; 1 when x = x'."""
    if family.range_size != 2:
        raise ValueError("agreement coefficient is defined for predicate families")
    if x == x_prime:
        return 1.0
    return 2.0 * collision_probability(family, x, x_prime) - 1.0


def agreement_matrix(family: FunctionFamily) -> np.ndarray:
    """Matrix of agreement coefficients; the diagonal is identically 1."""
    if family.range_size != 2:
        raise ValueError("agreement coefficient is defined for predicate families")
    return 2.0 * collision_matrix(family) - 1.0
