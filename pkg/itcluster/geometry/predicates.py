"""Exact orientation and incircle predicates.

Both predicates evaluate a floating-point determinant first and accept its
sign when it clears a forward error bound. Otherwise the determinant is
recomputed with ``fractions.Fraction``, which represents every finite double
exactly, so the returned sign is always the sign of the exact determinant.
"""

from __future__ import annotations

from enum import IntEnum
from fractions import Fraction
import math
import sys
from typing import Sequence, Tuple

from ..errors import PredicatePreconditionError

_EPSILON = sys.float_info.epsilon / 2.0  # unit roundoff, 2**-53

# Forward error bounds for the filtered determinants.
_CCW_ERRBOUND = (3.0 + 16.0 * _EPSILON) * _EPSILON
_ICC_ERRBOUND = (10.0 + 96.0 * _EPSILON) * _EPSILON

# The bounds assume no intermediate underflows or overflows. Products of up to
# four differences stay inside the normal range when every nonzero difference
# magnitude lies in [2**-240, 2**240].
_SAFE_MIN = 2.0**-240
_SAFE_MAX = 2.0**240


class Orientation(IntEnum):
    CW = -1
    COLLINEAR = 0
    CCW = 1


class CirclePosition(IntEnum):
    OUTSIDE = -1
    COCIRCULAR = 0
    INSIDE = 1


def _xy(p) -> Tuple[float, float]:
    if hasattr(p, "x") and hasattr(p, "y"):
        return float(p.x), float(p.y)
    return float(p[0]), float(p[1])


def _in_safe_range(values: Sequence[float]) -> bool:
    for v in values:
        m = abs(v)
        if m != 0.0 and not (_SAFE_MIN <= m <= _SAFE_MAX):
            return False
    return True


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def orient2d_sign(a, b, c) -> int:
    """Sign of the exact orientation determinant of ``a, b, c``.

    Positive when the triple turns counter-clockwise.
    """
    ax, ay = a
    bx, by = b
    cx, cy = c
    acx = ax - cx
    bcx = bx - cx
    acy = ay - cy
    bcy = by - cy

    if _in_safe_range((acx, bcx, acy, bcy)):
        detleft = acx * bcy
        detright = acy * bcx
        det = detleft - detright
        errbound = _CCW_ERRBOUND * (abs(detleft) + abs(detright))
        if abs(det) > errbound:
            return 1 if det > 0 else -1
        if errbound == 0.0:
            return 0

    fax, fay, fbx, fby, fcx, fcy = map(Fraction, (ax, ay, bx, by, cx, cy))
    return _sign((fax - fcx) * (fby - fcy) - (fay - fcy) * (fbx - fcx))


def incircle_sign(a, b, c, d) -> int:
    """Sign of the exact incircle determinant.

    For a counter-clockwise ``a, b, c`` the result is positive when ``d`` lies
    strictly inside their circumcircle, zero when cocircular.
    """
    ax, ay = a
    bx, by = b
    cx, cy = c
    dx, dy = d
    adx = ax - dx
    bdx = bx - dx
    cdx = cx - dx
    ady = ay - dy
    bdy = by - dy
    cdy = cy - dy

    if _in_safe_range((adx, bdx, cdx, ady, bdy, cdy)):
        bdxcdy = bdx * cdy
        cdxbdy = cdx * bdy
        alift = adx * adx + ady * ady

        cdxady = cdx * ady
        adxcdy = adx * cdy
        blift = bdx * bdx + bdy * bdy

        adxbdy = adx * bdy
        bdxady = bdx * ady
        clift = cdx * cdx + cdy * cdy

        det = (
            alift * (bdxcdy - cdxbdy)
            + blift * (cdxady - adxcdy)
            + clift * (adxbdy - bdxady)
        )
        permanent = (
            (abs(bdxcdy) + abs(cdxbdy)) * alift
            + (abs(cdxady) + abs(adxcdy)) * blift
            + (abs(adxbdy) + abs(bdxady)) * clift
        )
        errbound = _ICC_ERRBOUND * permanent
        if math.isfinite(det) and abs(det) > errbound:
            return 1 if det > 0 else -1
        if errbound == 0.0:
            return 0

    fa = [Fraction(v) for v in (ax, ay)]
    fb = [Fraction(v) for v in (bx, by)]
    fc = [Fraction(v) for v in (cx, cy)]
    fd = [Fraction(v) for v in (dx, dy)]
    eadx, eady = fa[0] - fd[0], fa[1] - fd[1]
    ebdx, ebdy = fb[0] - fd[0], fb[1] - fd[1]
    ecdx, ecdy = fc[0] - fd[0], fc[1] - fd[1]
    exact = (
        (eadx * eadx + eady * eady) * (ebdx * ecdy - ecdx * ebdy)
        + (ebdx * ebdx + ebdy * ebdy) * (ecdx * eady - eadx * ecdy)
        + (ecdx * ecdx + ecdy * ecdy) * (eadx * ebdy - ebdx * eady)
    )
    return _sign(exact)


def orient2d(a, b, c) -> Orientation:
    """Exact orientation of the triple ``a, b, c``."""
    return Orientation(orient2d_sign(_xy(a), _xy(b), _xy(c)))


def in_circumcircle(a, b, c, d) -> CirclePosition:
    """
    Exact position of ``d`` relative to the circle through ``a, b, c``.

    Args:
        a, b, c: Counter-clockwise triangle vertices
        d: Query point

    Raises:
        PredicatePreconditionError: If ``a, b, c`` is not counter-clockwise
    """
    pa, pb, pc, pd = _xy(a), _xy(b), _xy(c), _xy(d)
    if orient2d_sign(pa, pb, pc) != 1:
        raise PredicatePreconditionError(
            "in_circumcircle requires a counter-clockwise triangle, "
            f"got {pa}, {pb}, {pc}"
        )
    return CirclePosition(incircle_sign(pa, pb, pc, pd))
