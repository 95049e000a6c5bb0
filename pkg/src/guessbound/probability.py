"""Finite probability distributions, channels, and distance-from-uniform measures.

Alphabets are index sets 0..n-1.  A `JointDistribution` stores the secret Z
on the rows and the observer's variable on the columns; conditioning always
happens on the column variable.  A `SelectableChannel` models a storage
device from which the observer picks exactly one read-out channel, and the
combined-strategy distance lets that pick depend on side information U.

All values are immutable after construction and every operation is a pure
function, so everything here is safe to call from parallel sweeps.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

SIMPLEX_ATOL = 1e-12


def _as_mass_array(values, ndim: int, what: str) -> np.ndarray:
    a = np.asarray(values, dtype=float)
    if a.ndim != ndim or a.size == 0:
        raise ValueError(f"{what} must be a nonempty {ndim}-d array, got shape {a.shape}")
    if a.min() < -SIMPLEX_ATOL:
        raise ValueError(f"{what} has a negative entry ({a.min():.3e})")
    if abs(a.sum() - 1.0) > SIMPLEX_ATOL:
        raise ValueError(f"{what} has total mass {a.sum()!r}, expected 1")
    a = np.clip(a, 0.0, None)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class Distribution:
    """Probability vector over an alphabet of size len(probs)."""

    probs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "probs", _as_mass_array(self.probs, 1, "distribution"))

    @property
    def size(self) -> int:
        return self.probs.size

    @classmethod
    def uniform(cls, n: int) -> "Distribution":
        return cls(np.full(n, 1.0 / n))

    @classmethod
    def point_mass(cls, index: int, n: int) -> "Distribution":
        p = np.zeros(n)
        p[index] = 1.0
        return cls(p)

    def collision_probability(self) -> float:
        """Probability that two independent draws coincide, sum p^2."""
        return float((self.probs**2).sum())

    def renyi_entropy(self) -> float:
        """Order-2 Renyi entropy -log2 of the collision probability."""
        return float(-np.log2(self.collision_probability()))


@dataclass(frozen=True)
class JointDistribution:
    """Joint distribution with the secret on rows and the observation on columns."""

    probs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "probs", _as_mass_array(self.probs, 2, "joint distribution"))

    @property
    def row_size(self) -> int:
        return self.probs.shape[0]

    @property
    def col_size(self) -> int:
        return self.probs.shape[1]

    @classmethod
    def independent(cls, row: Distribution, col: Distribution) -> "JointDistribution":
        return cls(np.outer(row.probs, col.probs))

    @classmethod
    def from_channel(cls, row_prior: Distribution, channel: "ClassicalChannel") -> "JointDistribution":
        """Joint of (Z, C(Z)) for Z distributed as `row_prior`."""
        if channel.input_size != row_prior.size:
            raise ValueError("channel input alphabet does not match the prior")
        return cls(row_prior.probs[:, None] * channel.rows)

    def row_marginal(self) -> Distribution:
        return Distribution(self.probs.sum(axis=1))

    def col_marginal(self) -> Distribution:
        return Distribution(self.probs.sum(axis=0))


@dataclass(frozen=True)
class ClassicalChannel:
    """Row-stochastic matrix mapping input index to a distribution over outputs."""

    rows: np.ndarray

    def __post_init__(self):
        r = np.asarray(self.rows, dtype=float)
        if r.ndim != 2 or r.size == 0:
            raise ValueError(f"channel must be a nonempty matrix, got shape {r.shape}")
        if r.min() < -SIMPLEX_ATOL:
            raise ValueError("channel has a negative entry")
        sums = r.sum(axis=1)
        if np.abs(sums - 1.0).max() > SIMPLEX_ATOL:
            raise ValueError("every channel row must sum to 1")
        r = np.clip(r, 0.0, None)
        r.flags.writeable = False
        object.__setattr__(self, "rows", r)

    @property
    def input_size(self) -> int:
        return self.rows.shape[0]

    @property
    def output_size(self) -> int:
        return self.rows.shape[1]

    @classmethod
    def identity(cls, n: int) -> "ClassicalChannel":
        return cls(np.eye(n))

    @classmethod
    def deterministic(cls, values, output_size: int) -> "ClassicalChannel":
        """Channel that maps input x to output values[x] with certainty."""
        v = np.asarray(values, dtype=int)
        rows = np.zeros((v.size, output_size))
        rows[np.arange(v.size), v] = 1.0
        return cls(rows)

    def apply(self, dist: Distribution) -> Distribution:
        if dist.size != self.input_size:
            raise ValueError("input alphabet mismatch")
        return Distribution(dist.probs @ self.rows)

    def push_joint(self, joint: JointDistribution) -> JointDistribution:
        """Map a joint (Z, S) to (Z, C(S)) by acting on the column variable."""
        if joint.col_size != self.input_size:
            raise ValueError("channel input alphabet does not match the joint")
        return JointDistribution(joint.probs @ self.rows)


@dataclass(frozen=True)
class SelectableChannel:
    """A storage device: a finite set of channels sharing one input alphabet."""

    channels: tuple

    def __post_init__(self):
        chans = tuple(self.channels)
        if not chans:
            raise ValueError("selectable channel needs at least one member")
        sizes = {c.input_size for c in chans}
        if len(sizes) != 1:
            raise ValueError("all member channels must share the input alphabet")
        object.__setattr__(self, "channels", chans)

    @property
    def input_size(self) -> int:
        return self.channels[0].input_size

    def __len__(self) -> int:
        return len(self.channels)

    @classmethod
    def classical(cls, input_size: int) -> "SelectableChannel":
        """Full classical read-out.

        The device containing every channel on the state is equivalent, for
        every distance computed here, to the singleton identity channel:
        post-processing never increases the distance from uniform.
        """
        return cls((ClassicalChannel.identity(input_size),))

    @classmethod
    def bit_readout(cls, num_bits: int) -> "SelectableChannel":
        """Device storing `num_bits` bits of which exactly one may be read.

        States are indices of {0,1}^num_bits with bit i of the index being
        bit i of the string; member i reveals bit i.
        """
        states = np.arange(2**num_bits)
        members = tuple(
            ClassicalChannel.deterministic((states >> i) & 1, 2) for i in range(num_bits)
        )
        return cls(members)


def variational_distance(p: Distribution, q: Distribution) -> float:
    """Half the L1 distance between two distributions on a common alphabet."""
    if p.size != q.size:
        raise ValueError(f"alphabet mismatch: {p.size} vs {q.size}")
    return float(0.5 * np.abs(p.probs - q.probs).sum())


def dist_from_uniform(p: Distribution) -> float:
    """Variational distance of p from the uniform distribution on its alphabet."""
    return float(0.5 * np.abs(p.probs - 1.0 / p.size).sum())


def cond_dist_from_uniform(joint: JointDistribution) -> float:
    """Expected distance of the row variable from uniform given the column.

    Columns of zero mass contribute nothing.
    """
    col_mass = joint.probs.sum(axis=0)
    return float(0.5 * np.abs(joint.probs - col_mass / joint.row_size).sum())


def guessing_probability(joint: JointDistribution) -> float:
    """Best probability of guessing the row variable from the column variable.

    Equals 1/|Z| + d(Z|W) exactly when the row alphabet is binary, and is
    never larger in general.
    """
    return float(joint.probs.max(axis=0).sum())


def maximal_coupling(joint: JointDistribution) -> tuple[ClassicalChannel, float]:
    """Channel turning (Z, W) into a uniform row variable that tracks Z.

    The returned channel takes the flattened pair index z * |W| + w and
    outputs a variable that is exactly uniform and independent of W, while
    agreeing with Z with the largest achievable probability
    1 - d(Z|W), which is returned alongside.
    """
    p = joint.probs
    nz, nw = p.shape
    uniform = 1.0 / nz
    col_mass = p.sum(axis=0)
    rows = np.full((nz * nw, nz), uniform)
    match = 0.0
    for w in range(nw):
        if col_mass[w] <= 0.0:
            continue
        cond = p[:, w] / col_mass[w]
        kept = np.minimum(cond, uniform)
        surplus = cond - kept
        deficit = uniform - kept
        gap = surplus.sum()
        match += col_mass[w] * kept.sum()
        for z in range(nz):
            if cond[z] <= 0.0:
                continue
            row = np.zeros(nz)
            row[z] = kept[z]
            if gap > 0.0:
                row += surplus[z] * (deficit / gap)
            rows[z * nw + w] = row / cond[z]
    return ClassicalChannel(rows), float(match)


def selectable_dist(device: SelectableChannel, joint: JointDistribution) -> float:
    """Distance of Z from uniform given the best single read-out of the device.

    `joint` couples Z (rows) with the device state S (columns); the result is
    the maximum over member channels W of d(Z | W(S)).
    """
    if device.input_size != joint.col_size:
        raise ValueError("device state alphabet does not match the joint")
    return max(cond_dist_from_uniform(c.push_joint(joint)) for c in device.channels)


def _as_triple(probs_zsu) -> np.ndarray:
    return _as_mass_array(probs_zsu, 3, "joint distribution over (Z, S, U)")


def combined_strategy(device: SelectableChannel, probs_zsu) -> tuple[float, list[int]]:
    """Combined-strategy distance and the read-out choice it makes per U value.

    `probs_zsu` is the joint of (Z, S, U) with axes in that order.  For every
    u the observer picks the member channel maximizing the conditional
    distance of Z from uniform; ties go to the lowest channel index.  Returns
    the expectation over U of the maximized distances together with the
    chosen indices (0 for zero-mass u values, which contribute nothing).
    """
    arr = _as_triple(probs_zsu)
    if device.input_size != arr.shape[1]:
        raise ValueError("device state alphabet does not match the joint")
    total = 0.0
    choices: list[int] = []
    for u in range(arr.shape[2]):
        slab = arr[:, :, u]
        mass = slab.sum()
        if mass <= 0.0:
            choices.append(0)
            continue
        joint_u = JointDistribution(slab / mass)
        values = [cond_dist_from_uniform(c.push_joint(joint_u)) for c in device.channels]
        best = int(np.argmax(values))
        choices.append(best)
        total += mass * values[best]
    return float(total), choices


def combined_dist(device: SelectableChannel, probs_zsu) -> float:
    """Distance of Z from uniform given one device read-out chosen using U."""
    return combined_strategy(device, probs_zsu)[0]
