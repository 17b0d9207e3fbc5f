"""Deterministic, counter-based sampling of random coefficient vectors.

Every variate is a pure function of (master_seed, stream_index, draw_index):
draw_index k of stream s under seed m is

    mix64(mix64(m ^ s * SALT) + k * GAMMA)

where mix64 is the SplitMix64 output finalizer and GAMMA its Weyl increment.
Because no state is carried between draws, any slicing of the sample range
across workers reproduces bit-identical values, and coefficient j of sample i
can be regenerated in isolation.

Normals use the basic Box-Muller transform: draws 2m and 2m + 1 of a stream
share one uniform pair (u1, u2), with

    z_{2m} = r cos(2 pi u2),  z_{2m+1} = r sin(2 pi u2),  r = sqrt(-2 ln u1),

and u1 drawn from (0, 1] so the logarithm is always finite.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .polynomial import RealPolynomial

_U64 = np.uint64
_SEED_MASK = (1 << 64) - 1
_MIX_MULT_1 = _U64(0xBF58476D1CE4E5B9)
_MIX_MULT_2 = _U64(0x94D049BB133111EB)
_WEYL_GAMMA = _U64(0x9E3779B97F4A7C15)
_STREAM_SALT = _U64(0xC2B2AE3D27D4EB4F)
_INV_2_53 = 2.0**-53

# Counter offset reserved for auxiliary draws (e.g. the evaluation angle of a
# sample); coefficient draws live at small k, so the two ranges never collide.
AUX_DRAW_OFFSET = 1 << 62


class CoefficientDistribution(Enum):
    """Coefficient law of the random ensemble."""

    STANDARD_NORMAL = "gaussian"
    UNIFORM_SYMMETRIC = "uniform"

    @property
    def second_moment(self) -> float:
        """E[A^2]: 1 for standard normal, 1/3 for uniform on [-1, 1]."""
        return 1.0 if self is CoefficientDistribution.STANDARD_NORMAL else 1.0 / 3.0


@dataclass(frozen=True)
class SampleStream:
    """Addressable random stream; draw k depends only on (master_seed, stream_index, k)."""

    master_seed: int
    stream_index: int = 0

    def __post_init__(self) -> None:
        for name in ("master_seed", "stream_index"):
            value = getattr(self, name)
            if not 0 <= value <= _SEED_MASK:
                raise ValueError(f"{name} must fit in 64 unsigned bits, got {value}")


def _mix64(z: np.ndarray) -> np.ndarray:
    # SplitMix64 finalizer; uint64 arithmetic wraps mod 2^64 by design.
    z = (z ^ (z >> _U64(30))) * _MIX_MULT_1
    z = (z ^ (z >> _U64(27))) * _MIX_MULT_2
    return z ^ (z >> _U64(31))


def _raw_bits(master_seed: int, streams: np.ndarray, draws: np.ndarray) -> np.ndarray:
    """64 mixed bits per (stream, draw) pair, broadcasting the two index arrays."""
    with np.errstate(over="ignore"):
        base = _mix64(_U64(master_seed) ^ streams * _STREAM_SALT)
        return _mix64(base + draws * _WEYL_GAMMA)


def _unit_open(master_seed: int, streams: np.ndarray, draws: np.ndarray) -> np.ndarray:
    """Uniform on (0, 1]: the top 53 bits, shifted off zero."""
    with np.errstate(over="ignore"):
        top = _raw_bits(master_seed, streams, draws) >> _U64(11)
        return (top + _U64(1)) * _INV_2_53


def _unit_half_open(master_seed: int, streams: np.ndarray, draws: np.ndarray) -> np.ndarray:
    """Uniform on [0, 1)."""
    with np.errstate(over="ignore"):
        return (_raw_bits(master_seed, streams, draws) >> _U64(11)) * _INV_2_53


def _normal_values(master_seed: int, streams: np.ndarray, draws: np.ndarray) -> np.ndarray:
    streams = np.asarray(streams, dtype=np.uint64)
    draws = np.asarray(draws, dtype=np.uint64)
    with np.errstate(over="ignore"):
        pair_base = (draws >> _U64(1)) << _U64(1)
        u1 = _unit_open(master_seed, streams, pair_base)
        u2 = _unit_half_open(master_seed, streams, pair_base + _U64(1))
        odd = (draws & _U64(1)).astype(bool)
    radius = np.sqrt(-2.0 * np.log(u1))
    angle = (2.0 * np.pi) * u2
    return np.where(odd, radius * np.sin(angle), radius * np.cos(angle))


def _uniform_values(master_seed: int, streams: np.ndarray, draws: np.ndarray) -> np.ndarray:
    streams = np.asarray(streams, dtype=np.uint64)
    draws = np.asarray(draws, dtype=np.uint64)
    return 2.0 * _unit_half_open(master_seed, streams, draws) - 1.0


def standard_normal(stream: SampleStream, k: int) -> float:
    """Draw k of an N(0, 1) stream."""
    return float(_normal_values(stream.master_seed, stream.stream_index, k))


def uniform_symmetric(stream: SampleStream, k: int) -> float:
    """Draw k of a uniform stream on [-1, 1)."""
    return float(_uniform_values(stream.master_seed, stream.stream_index, k))


def sample_draws(
    master_seed: int,
    first_stream: int,
    count: int,
    draw_indices: np.ndarray,
    dist: CoefficientDistribution,
) -> np.ndarray:
    """Draws for streams first_stream .. first_stream + count - 1, one row per stream.

    Row i, column j equals the scalar draw(stream = first_stream + i,
    k = draw_indices[j]) exactly, for any slicing of the stream range.
    """
    if count < 0:
        raise ValueError(f"count must be >= 0, got {count}")
    streams = np.arange(first_stream, first_stream + count, dtype=np.uint64)[:, None]
    draws = np.asarray(draw_indices, dtype=np.uint64)[None, :]
    if dist is CoefficientDistribution.STANDARD_NORMAL:
        return _normal_values(master_seed, streams, draws)
    return _uniform_values(master_seed, streams, draws)


def coefficient_matrix(
    master_seed: int,
    first_stream: int,
    count: int,
    degree: int,
    dist: CoefficientDistribution,
) -> np.ndarray:
    """(count, degree + 1) coefficient rows; row i is sample first_stream + i."""
    if degree < 0:
        raise ValueError(f"degree must be >= 0, got {degree}")
    return sample_draws(master_seed, first_stream, count, np.arange(degree + 1), dist)


def sample_polynomial(
    degree: int, dist: CoefficientDistribution, stream: SampleStream
) -> RealPolynomial:
    """One random polynomial of the given degree, reproducible from the stream alone."""
    row = coefficient_matrix(stream.master_seed, stream.stream_index, 1, degree, dist)
    return RealPolynomial(row[0])


def uniform_angles(master_seed: int, first_stream: int, count: int) -> np.ndarray:
    """One angle in [0, 2 pi) per stream, drawn from the reserved auxiliary counter.

    Independent of the coefficient draws of the same stream, so a sample's
    evaluation angle can be generated next to its coefficients.
    """
    streams = np.arange(first_stream, first_stream + count, dtype=np.uint64)
    return 2.0 * np.pi * _unit_half_open(master_seed, streams, np.uint64(AUX_DRAW_OFFSET))
