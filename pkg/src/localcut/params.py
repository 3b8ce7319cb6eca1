"""Constants profiles, derived Nibble parameters, and cut reports."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .graph import GraphLike, VertexSet, balance, conductance

Number = Union[int, float, str, Fraction]


def as_fraction(x: Number) -> Fraction:
    """Exact fraction for ``x``; floats go through their shortest repr, so
    ``0.2`` becomes ``1/5`` rather than the nearest binary double."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


def ceil_log2(x: int) -> int:
    """``ceil(log2(x))`` for a positive integer, computed exactly."""
    if x < 1:
        raise ValueError("ceil_log2 needs x >= 1")
    return (x - 1).bit_length()


@dataclass(frozen=True)
class ConstantsProfile:
    c1: int
    c2: int
    c3: int
    c4: int
    c5: int
    c6: int
    name: str = "custom"
    # Set for profiles known to break an inequality; derive_params then warns
    # instead of raising.
    waived: bool = False

    def as_tuple(self) -> tuple[int, ...]:
        return (self.c1, self.c2, self.c3, self.c4, self.c5, self.c6)


def paper_constants() -> ConstantsProfile:
    return ConstantsProfile(200, 280, 1800, 140, 20, 60, name="paper")


def practical_constants() -> ConstantsProfile:
    """Small integer constants that still satisfy every inequality.

    Found by a search minimizing ``c2 * c3``; compared with the default profile
    the truncation threshold is about 4.6x coarser and ``f1`` about 2.7x
    larger, which keeps supports and walks shorter at desk scale.
    """
    return ConstantsProfile(400, 104, 389, 52, 8, 20, name="practical")


def profile_by_name(name: str) -> ConstantsProfile:
    if name == "paper":
        return paper_constants()
    if name == "practical":
        return practical_constants()
    raise ValueError(f"unknown constants profile {name!r}")


def validate_constants(p: ConstantsProfile) -> list[str]:
    """Names of the violated inequalities, empty when the profile is valid."""
    c1, c2, c3, c4, c5, c6 = (Fraction(c) for c in p.as_tuple())
    checks = [
        ("c2 >= 2*c4", c2 >= 2 * c4),
        ("c6 >= 2*c5", c6 >= 2 * c5),
        ("c3 >= 8*c5", c3 >= 8 * c5),
        ("c4 >= 4*c5", c4 >= 4 * c5),
        ("1/(2c6) - 1/c3 - 1/(2c5c6) >= 1/c4", 1 / (2 * c6) - 1 / c3 - 1 / (2 * c5 * c6) >= 1 / c4),
        ("1/(2c5) >= 6/(5c6) + 1/c1", 1 / (2 * c5) >= 6 / (5 * c6) + 1 / c1),
        ("1/5 >= 1/c5 + 4c6/(3c3) + 1/(2c1) + 1/(2c2)",
         Fraction(1, 5) >= 1 / c5 + 4 * c6 / (3 * c3) + 1 / (2 * c1) + 1 / (2 * c2)),
    ]
    return [name for name, ok in checks if not ok]


@dataclass(frozen=True)
class NibbleParams:
    phi: Fraction
    b: int
    profile: ConstantsProfile
    volume: int
    ell: int
    t1: int
    t_last: int
    f1: Fraction
    eps: Fraction

    @property
    def eps_float(self) -> float:
        return float(self.eps)

    @property
    def work_cap(self) -> int:
        """``ceil(1/eps)``, the per-step bound on ``vol(support(r_{t-1}))``."""
        return math.ceil(1 / self.eps)

    @property
    def c4_threshold(self) -> Fraction:
        """Right-hand side of the slope condition, ``1 / (c4 (ell+2) 2^b)``."""
        return Fraction(1, self.profile.c4 * (self.ell + 2) * 2 ** self.b)

    def t_h(self, h: int) -> int:
        if not 0 <= h <= self.ell + 1:
            raise ValueError("h must lie in 0..ell+1")
        return h * self.t1


def walk_length(phi: Fraction, volume: int, profile: ConstantsProfile) -> tuple[int, int, int]:
    """``(ell, t1, t_last)`` for the given conductance target and volume."""
    # ceil(log2(vol/2)) == ceil(log2(vol)) - 1, also for odd volumes.
    ell = ceil_log2(volume) - 1
    arg = profile.c1 * (ell + 2) * math.sqrt(volume / 2)
    t1 = math.ceil(2.0 / float(phi) ** 2 * math.log(arg))
    return ell, t1, (ell + 1) * t1


def derive_params(g: GraphLike, phi: Number, b: int, profile: ConstantsProfile | None = None) -> NibbleParams:
    """All quantities Nibble needs, derived for the (view) volume of ``g``.

    ``b = 0`` is accepted for testing.
    """
    profile = profile or paper_constants()
    phi = as_fraction(phi)
    if not 0 < phi < 1:
        raise ValueError(f"phi must lie in (0, 1), got {phi}")
    if b < 0:
        raise ValueError("b must be nonnegative")
    vol = g.volume_total
    if vol < 2:
        raise ValueError(f"volume {vol} is below 2")
    bad = validate_constants(profile)
    if bad:
        if not profile.waived:
            raise ValueError(f"profile {profile.name!r} violates: {'; '.join(bad)}")
        warnings.warn(f"profile {profile.name!r} violates {len(bad)} inequalities", stacklevel=2)
    ell, t1, t_last = walk_length(phi, vol, profile)
    f1 = Fraction(1, profile.c2 * (ell + 2) * t_last)
    eps = Fraction(1, profile.c3 * (ell + 2) * t_last * 2 ** b)
    return NibbleParams(phi, b, profile, vol, ell, t1, t_last, f1, eps)


@dataclass(frozen=True)
class CutReport:
    """A vertex set with its exact cut statistics and where it came from."""

    members: VertexSet
    conductance: Fraction
    volume: int
    balance: Fraction
    algorithm: str
    found_at_step: int = 0
    sweep_index: int = 0
    start_vertex: Optional[int] = None
    b: Optional[int] = None
    seed: Optional[int] = None
    work_units: int = 0

    @classmethod
    def for_set(cls, g: GraphLike, members: VertexSet, algorithm: str, **extra) -> "CutReport":
        return cls(members, conductance(g, members), members.cached_volume,
                   balance(g, members), algorithm, **extra)

    @property
    def empty(self) -> bool:
        return not len(self.members)
