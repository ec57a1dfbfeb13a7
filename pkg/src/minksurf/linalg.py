"""Indefinite linear algebra on Minkowski 4-space and its bivectors.

The ambient space is R^4 with the inner product of signature
(-, +, +, +); the first component is the time-like one.  Bivectors live
in the 6-dimensional exterior square, coordinatized by Pluecker-style
components in the fixed basis order (12, 13, 14, 23, 24, 34), on which
the induced inner product is diagonal with signs (-1, -1, -1, +1, +1, +1).

All functions are pure and all values immutable.  The vector and
bivector containers are generic over their scalar type: components may
be floats or jets, since both support the same arithmetic.  Operations
that need comparisons or square roots (causal classification, frame
construction) take floats, or accept an adapter so the geometry layer
can run the identical construction on jets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence

__all__ = [
    "AmbientVector",
    "Bivector",
    "CausalClass",
    "DegeneratePlane",
    "NullPivot",
    "BIVECTOR_SIGNS",
    "minkowski_inner",
    "wedge",
    "bivector_inner",
    "hodge_dual",
    "dual_unit_normal_bivector",
    "orthonormal_normal_frame",
    "causal_character",
    "DEFAULT_CAUSAL_TOL",
]

DEFAULT_CAUSAL_TOL = 1e-9

# Signs of the induced inner product on the bivector basis
# (12, 13, 14, 23, 24, 34): a factor f1 makes the square negative.
BIVECTOR_SIGNS = (-1.0, -1.0, -1.0, 1.0, 1.0, 1.0)


class DegeneratePlane(Exception):
    """The two tangent vectors do not span a space-like plane."""


class NullPivot(Exception):
    """Every Gram-Schmidt candidate projected to a (near-)null vector.

    Unreachable for genuinely space-like tangent planes (the projection
    of the time axis onto the normal plane always has squared length
    <= -1); kept as a guard against degenerate inputs.
    """


class CausalClass(Enum):
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"
    LIGHTLIKE = "lightlike"
    ZERO = "zero"


@dataclass(frozen=True, slots=True)
class AmbientVector:
    """A vector in Minkowski 4-space; c0 is the time-like component."""

    c0: float
    c1: float
    c2: float
    c3: float

    def components(self) -> tuple:
        return (self.c0, self.c1, self.c2, self.c3)

    def __add__(self, other: "AmbientVector") -> "AmbientVector":
        return AmbientVector(self.c0 + other.c0, self.c1 + other.c1,
                             self.c2 + other.c2, self.c3 + other.c3)

    def __sub__(self, other: "AmbientVector") -> "AmbientVector":
        return AmbientVector(self.c0 - other.c0, self.c1 - other.c1,
                             self.c2 - other.c2, self.c3 - other.c3)

    def __neg__(self) -> "AmbientVector":
        return AmbientVector(-self.c0, -self.c1, -self.c2, -self.c3)

    def scaled(self, s) -> "AmbientVector":
        return AmbientVector(s * self.c0, s * self.c1, s * self.c2, s * self.c3)


@dataclass(frozen=True, slots=True)
class Bivector:
    """An element of the exterior square, Pluecker components in the
    basis order (12, 13, 14, 23, 24, 34)."""

    p12: float
    p13: float
    p14: float
    p23: float
    p24: float
    p34: float

    def components(self) -> tuple:
        return (self.p12, self.p13, self.p14, self.p23, self.p24, self.p34)

    def __add__(self, other: "Bivector") -> "Bivector":
        return Bivector(*(a + b for a, b in zip(self.components(), other.components())))

    def __sub__(self, other: "Bivector") -> "Bivector":
        return Bivector(*(a - b for a, b in zip(self.components(), other.components())))

    def __neg__(self) -> "Bivector":
        return Bivector(*(-a for a in self.components()))

    def scaled(self, s) -> "Bivector":
        return Bivector(*(s * a for a in self.components()))

    def plucker_residual(self) -> float:
        """Zero exactly on decomposable bivectors."""
        return self.p12 * self.p34 - self.p13 * self.p24 + self.p14 * self.p23


def minkowski_inner(a: AmbientVector, b: AmbientVector):
    return -a.c0 * b.c0 + a.c1 * b.c1 + a.c2 * b.c2 + a.c3 * b.c3


def euclid_sq(a: AmbientVector):
    return a.c0 * a.c0 + a.c1 * a.c1 + a.c2 * a.c2 + a.c3 * a.c3


def wedge(a: AmbientVector, b: AmbientVector) -> Bivector:
    return Bivector(
        a.c0 * b.c1 - a.c1 * b.c0,
        a.c0 * b.c2 - a.c2 * b.c0,
        a.c0 * b.c3 - a.c3 * b.c0,
        a.c1 * b.c2 - a.c2 * b.c1,
        a.c1 * b.c3 - a.c3 * b.c1,
        a.c2 * b.c3 - a.c3 * b.c2,
    )


def bivector_inner(alpha: Bivector, beta: Bivector):
    acc = None
    for s, x, y in zip(BIVECTOR_SIGNS, alpha.components(), beta.components()):
        term = x * y if s > 0 else -(x * y)
        acc = term if acc is None else acc + term
    return acc


def bivector_euclid_norm(alpha: Bivector) -> float:
    """Euclidean norm of the six components.

    Residual measurements use this norm, never the indefinite one: a
    light-like defect has zero indefinite norm but is still a defect.
    """
    return math.sqrt(sum(float(x) ** 2 for x in alpha.components()))


def hodge_dual(b: Bivector) -> Bivector:
    """The star operator on the exterior square.

    Characterized by alpha ^ beta = <star(alpha), beta> vol with the
    orientation of the standard basis; on this index ordering it is a
    component shuffle with signs, and star(star(b)) = -b.
    """
    return Bivector(
        b.p34,
        -b.p24,
        b.p23,
        -b.p14,
        b.p13,
        -b.p12,
    )


def causal_character(v: AmbientVector, tol: float = DEFAULT_CAUSAL_TOL) -> CausalClass:
    """Scale-aware causal classification of a (possibly inexact) vector."""
    if tol < 0:
        raise ValueError("tolerance must be nonnegative")
    e2 = euclid_sq(v)
    if math.sqrt(e2) <= tol:
        return CausalClass.ZERO
    q = minkowski_inner(v, v)
    if abs(q) <= tol * (1.0 + e2):
        return CausalClass.LIGHTLIKE
    return CausalClass.SPACELIKE if q > 0 else CausalClass.TIMELIKE


# -- normal plane constructions ----------------------------------------
#
# Both constructions below are written against a scalar adapter so the
# identical code path serves floats (this module's public API) and jets
# (the geometry layer).  value() extracts a float for decisions; sqrt()
# stays in the scalar ring.

_FLOAT_ADAPTER = (float, math.sqrt)

_BASIS = (
    AmbientVector(1.0, 0.0, 0.0, 0.0),
    AmbientVector(0.0, 1.0, 0.0, 0.0),
    AmbientVector(0.0, 0.0, 1.0, 0.0),
    AmbientVector(0.0, 0.0, 0.0, 1.0),
)


def _gram_det(t1: AmbientVector, t2: AmbientVector):
    g11 = minkowski_inner(t1, t1)
    g12 = minkowski_inner(t1, t2)
    g22 = minkowski_inner(t2, t2)
    return g11 * g22 - g12 * g12, g11


def dual_unit_normal_bivector(t1: AmbientVector, t2: AmbientVector,
                              tol: float = DEFAULT_CAUSAL_TOL,
                              _adapter=_FLOAT_ADAPTER) -> Bivector:
    """Unit bivector of the normal plane of a space-like tangent plane.

    Computed gauge-free as the normalized star-dual of t1 ^ t2.  The
    result nu is decomposable, satisfies <nu, nu> = -1, annihilates the
    tangent plane, and is oriented so that the adapted frame
    (e1, e2, e3, e4) with e3 ^ e4 = nu has positive determinant.
    """
    value, sqrt_fn = _adapter
    det, g11 = _gram_det(t1, t2)
    if value(det) <= tol or value(g11) <= 0.0:
        raise DegeneratePlane(
            f"tangent Gram determinant {value(det)!r} (g11={value(g11)!r}) "
            "is not positive")
    return hodge_dual(wedge(t1, t2)).scaled(1.0 / sqrt_fn(det))


def _project_out(v: AmbientVector, units: Sequence[tuple[AmbientVector, float]]):
    # units: (unit vector, its squared sign eps in {+1.0, -1.0})
    out = v
    for e, eps in units:
        coef = minkowski_inner(out, e)
        out = out - e.scaled(coef if eps > 0 else -coef)
    return out


def _normal_frame(t1: AmbientVector, t2: AmbientVector, tol: float, adapter):
    value, sqrt_fn = adapter
    det, g11 = _gram_det(t1, t2)
    if value(det) <= tol or value(g11) <= 0.0:
        raise DegeneratePlane(
            f"tangent Gram determinant {value(det)!r} (g11={value(g11)!r}) "
            "is not positive")
    e1 = t1.scaled(1.0 / sqrt_fn(g11))
    r = _project_out(t2, ((e1, 1.0),))
    e2 = r.scaled(1.0 / sqrt_fn(minkowski_inner(r, r)))

    tangent = ((e1, 1.0), (e2, 1.0))
    projections = [_project_out(f, tangent) for f in _BASIS]
    norms = [value(minkowski_inner(p, p)) for p in projections]

    # First pivot: largest |<p, p>| among the projected basis vectors.
    # The time axis projection has <p, p> <= -1, so a usable pivot always
    # exists; ties resolve to the lowest index for reproducibility.
    first = max(range(4), key=lambda a: (abs(norms[a]), -a))
    q1 = minkowski_inner(projections[first], projections[first])
    eps1 = 1.0 if norms[first] > 0 else -1.0
    n1 = projections[first].scaled(1.0 / sqrt_fn(q1 if eps1 > 0 else -q1))

    rest = []
    for a in range(4):
        if a == first:
            continue
        q = _project_out(projections[a], ((n1, eps1),))
        rest.append((a, q, value(minkowski_inner(q, q))))
    scale = 1.0 + max(abs(n) for _, _, n in rest)
    usable = [(a, q, n) for a, q, n in rest if abs(n) > tol * scale]
    if not usable:
        raise NullPivot("no non-null second pivot in the normal plane")
    a2, q2, n2raw = max(usable, key=lambda t: (abs(t[2]), -t[0]))
    q2sq = minkowski_inner(q2, q2)
    eps2 = 1.0 if n2raw > 0 else -1.0
    n2 = q2.scaled(1.0 / sqrt_fn(q2sq if eps2 > 0 else -q2sq))

    # The normal plane of a space-like surface has signature (+, -).
    if eps1 > 0:
        e3, e4 = n1, n2
        pivots = (first, a2)
    else:
        e3, e4 = n2, n1
        pivots = (a2, first)
    return e1, e2, e3, e4, pivots


def orthonormal_normal_frame(t1: AmbientVector, t2: AmbientVector,
                             tol: float = DEFAULT_CAUSAL_TOL,
                             ) -> tuple[AmbientVector, AmbientVector, int]:
    """An orthonormal basis (e3 space-like, e4 time-like) of the normal
    plane, plus the sign relating e3 ^ e4 to the dual unit bivector.

    The construction projects the standard basis onto the normal plane
    and pivots on the largest squared length, so it is deterministic;
    the sign is +1 or -1 and is reported rather than silently fixed.
    """
    _, _, e3, e4, _ = _normal_frame(t1, t2, tol, _FLOAT_ADAPTER)
    nu = dual_unit_normal_bivector(t1, t2, tol)
    w = wedge(e3, e4)
    # w equals +nu or -nu; compare against the larger component for safety.
    diffs = bivector_euclid_norm(w - nu), bivector_euclid_norm(w + nu)
    sign = 1 if diffs[0] < diffs[1] else -1
    return e3, e4, sign
