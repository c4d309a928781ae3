"""Weyl-chamber symmetry maps: inverse, mirror, and their combination.

The Hermitian conjugate of a gate reflects its chamber point through the
c1 = pi/2 plane; multiplication by SWAP acts through a composition of
reflections.  Every map here returns canonicalized coordinates so that the
class-equality predicate stays the single comparison path.
"""

from __future__ import annotations

from fractions import Fraction

from .coords import (PI, CartanCoord, canonicalize, class_equal, in_chamber,
                     require_in_chamber)
from .numerics import DEFAULT_POLICY, TolerancePolicy

__all__ = [
    "canonicalize", "class_equal", "coord_distance", "in_chamber",
    "inverse_map", "mirror_map", "mirrored_inverse_map",
    "is_inverse_invariant", "is_mirror_invariant", "is_mirrored_inverse_invariant",
]


def _sgn(x) -> int:
    # sign convention with sgn(0) = +1; exact when x is a Fraction
    return 1 if x >= 0 else -1


def inverse_map(coord: CartanCoord) -> CartanCoord:
    """Class of U^dag: (pi - c1, c2, c3), canonicalized."""
    coord = canonicalize(coord)
    require_in_chamber(coord)
    if coord.frac is not None:
        x1, x2, x3 = coord.frac
        return canonicalize((1 - x1, x2, x3))
    c1, c2, c3 = coord.astuple()
    return canonicalize((PI - c1, c2, c3))


def mirror_map(coord: CartanCoord) -> CartanCoord:
    """Class of SWAP.U (equivalently U.SWAP), canonicalized.

    (c1, c2, c3) -> (pi/2 + s c3, pi/2 - c2, s (pi/2 - c1)) with
    s = sgn(pi/2 - c1).
    """
    coord = canonicalize(coord)
    require_in_chamber(coord)
    if coord.frac is not None:
        x1, x2, x3 = coord.frac
        half = Fraction(1, 2)
        s = _sgn(half - x1)
        return canonicalize((half + s * x3, half - x2, s * (half - x1)))
    c1, c2, c3 = coord.astuple()
    s = _sgn(PI / 2 - c1)
    return canonicalize((PI / 2 + s * c3, PI / 2 - c2, s * (PI / 2 - c1)))


def mirrored_inverse_map(coord: CartanCoord) -> CartanCoord:
    """Class of the mirror of U^dag (= inverse of the mirror), canonicalized.

    (c1, c2, c3) -> (pi/2 - s c3, pi/2 - c2, s (pi/2 - c1)) with
    s = sgn(pi/2 - c1).
    """
    coord = canonicalize(coord)
    require_in_chamber(coord)
    if coord.frac is not None:
        x1, x2, x3 = coord.frac
        half = Fraction(1, 2)
        s = _sgn(half - x1)
        return canonicalize((half - s * x3, half - x2, s * (half - x1)))
    c1, c2, c3 = coord.astuple()
    s = _sgn(PI / 2 - c1)
    return canonicalize((PI / 2 - s * c3, PI / 2 - c2, s * (PI / 2 - c1)))


def is_inverse_invariant(coord, policy: TolerancePolicy = DEFAULT_POLICY) -> bool:
    """True on the c1 = pi/2 and c3 = 0 planes: U and U^dag share a class."""
    coord = canonicalize(coord)
    return class_equal(inverse_map(coord), coord, policy.coord_tol)


def is_mirror_invariant(coord, policy: TolerancePolicy = DEFAULT_POLICY) -> bool:
    """True only for the class at (pi/2, pi/4, 0)."""
    coord = canonicalize(coord)
    return class_equal(mirror_map(coord), coord, policy.coord_tol)


def is_mirrored_inverse_invariant(coord, policy: TolerancePolicy = DEFAULT_POLICY) -> bool:
    """True exactly on the two segments c2 = pi/4, c1 +/- c3 = pi/2."""
    coord = canonicalize(coord)
    return class_equal(mirrored_inverse_map(coord), coord, policy.coord_tol)
