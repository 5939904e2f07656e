"""Incidence geometry of complexified Minkowski space.

Alpha- and beta-planes, the null lines they cut out, null hyperplanes, the
chart construction on the space of null lines, and the coordinate change to
the standard double-null complex coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import (BQ_BASIS, BQ_UNIT_IM, Q_I, Q_J, Biquaternion,
                      Quaternion, as_biquaternion)
from .errors import ChartSingularError, NoIntersectionError, PoleChartError
from .forms import pi_minus, pi_plus

MEMBERSHIP_TOL = 1e-10

_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class AlphaPlane:
    """Points with pi_eta^+ (q - c) = 0."""

    c: Biquaternion
    eta: Quaternion


@dataclass(frozen=True)
class BetaPlane:
    """Points with (q - c) pi_eta^+ = 0."""

    c: Biquaternion
    eta: Quaternion


def alpha_contains(a: AlphaPlane, q, tol=MEMBERSHIP_TOL) -> bool:
    d = as_biquaternion(q) - a.c
    return (pi_plus(a.eta) * d).norm() <= tol * (1.0 + d.norm())


def beta_contains(b: BetaPlane, q, tol=MEMBERSHIP_TOL) -> bool:
    d = as_biquaternion(q) - b.c
    return (d * pi_plus(b.eta)).norm() <= tol * (1.0 + d.norm())


def planes_intersect(a: AlphaPlane, b: BetaPlane, tol=MEMBERSHIP_TOL) -> bool:
    d = a.c - b.c
    return (pi_plus(a.eta) * d * pi_plus(b.eta)).norm() <= tol * (1.0 + d.norm())


def is_null(v, tol=MEMBERSHIP_TOL) -> bool:
    """True when the complex scalar v conj(v) vanishes (scale-relative)."""
    v = as_biquaternion(v)
    return abs(v.herm()) <= tol * (1.0 + v.norm2())


#: Real basis of the complexified quaternions, for 8-parameter solves.
REAL_BASIS8 = tuple(BQ_BASIS) + tuple(BQ_UNIT_IM * e for e in BQ_BASIS)


def _solve_sandwich(left: Biquaternion, right: Biquaternion, target: Biquaternion):
    """Least-squares delta with left * delta * right closest to target."""
    cols = np.array([ (left * u * right).components() for u in REAL_BASIS8 ]).T
    b = np.array(target.components())
    sol, *_ = np.linalg.lstsq(cols, b, rcond=None)
    delta = Biquaternion()
    for coef, u in zip(sol, REAL_BASIS8):
        delta = delta + u.scale(float(coef))
    res = float(np.linalg.norm(b - cols @ sol))
    return delta, res


@dataclass(frozen=True)
class NullLine:
    """Intersection of an alpha-plane and a beta-plane.

    Stores a base point and the two unit-imaginary structures; the direction
    representative is recomputed on demand rather than stored.
    """

    p: Biquaternion
    eta1: Quaternion
    eta2: Quaternion

    def direction(self) -> Biquaternion:
        """Normalized null direction pi1^- delta pi2^-.

        Tries delta = 1, then i, then j; the earlier candidates can vanish
        (eta2 = -eta1 kills both 1 and any delta commuting with eta1), so
        the choice is made by norm, never assumed.
        """
        pm1 = pi_minus(self.eta1)
        pm2 = pi_minus(self.eta2)
        for cand in (BQ_BASIS[0], BQ_BASIS[1], BQ_BASIS[2]):
            d = pm1 * cand * pm2
            n = d.norm()
            if n > 1e-8:
                return d.scale(1.0 / n)
        raise ValueError("no nonvanishing direction representative found")

    def contains(self, q, tol=MEMBERSHIP_TOL) -> bool:
        d = as_biquaternion(q) - self.p
        _, res = _solve_sandwich(pi_minus(self.eta1), pi_minus(self.eta2), d)
        return res <= tol * (1.0 + d.norm())

    def point_at(self, t) -> Biquaternion:
        """Point p + t * direction, t real or complex."""
        return self.p + self.direction().scale(t)


def null_line_from(a: AlphaPlane, b: BetaPlane, tol=MEMBERSHIP_TOL) -> NullLine:
    """The null line cut out by an intersecting alpha/beta pair.

    Solves pi1^- delta pi2^+ = (c2 - c1) pi2^+ for delta over the eight real
    parameters, then bases the line at c1 + pi1^- delta.
    """
    if not planes_intersect(a, b, tol):
        raise NoIntersectionError("planes fail the incidence condition")
    pp2 = pi_plus(b.eta)
    target = (b.c - a.c) * pp2
    delta, res = _solve_sandwich(pi_minus(a.eta), pp2, target)
    if res > tol * (1.0 + target.norm()) * 10.0:
        raise NoIntersectionError("incidence solve did not converge")
    p = a.c + pi_minus(a.eta) * delta
    return NullLine(p, a.eta, b.eta)


@dataclass(frozen=True)
class NullHyperplane:
    """Points with pi_eta1^+ (q - q0) pi_eta2^+ = 0."""

    q0: Biquaternion
    eta1: Quaternion
    eta2: Quaternion

    def contains(self, q, tol=MEMBERSHIP_TOL) -> bool:
        d = as_biquaternion(q) - self.q0
        return (pi_plus(self.eta1) * d * pi_plus(self.eta2)).norm() <= tol * (1.0 + d.norm())


def chart_coords(h: NullHyperplane, line: NullLine, tol=1e-12) -> Biquaternion:
    """Intersection point of a null line with the hyperplane chart.

    With delta = (eta1 - mu1)^-1 (q - q0) (eta2 - mu2)^-1 for any q on the
    line, the point q - pi_mu1^- delta pi_mu2^- lands on the hyperplane; the
    chart is singular when the line shares a structure with the hyperplane.
    """
    d1 = h.eta1 - line.eta1
    d2 = h.eta2 - line.eta2
    if d1.norm() <= tol or d2.norm() <= tol:
        raise ChartSingularError("line structure coincides with hyperplane structure")
    q_rel = line.p - h.q0
    delta = Biquaternion(d1.inv()) * q_rel * Biquaternion(d2.inv())
    out = h.q0 + q_rel - pi_minus(line.eta1) * delta * pi_minus(line.eta2)
    return out


def klein_intersections(z: AlphaPlane, tol=1e-12):
    """Points where the plane meets the two fixed planes pi_i^+- q = 0.

    Returns (q_plus, q_minus) = ((eta -/+ i)^-1 pi_eta^+ c); undefined when
    eta sits at either pole +-i.
    """
    if (z.eta - Q_I).norm() <= tol or (z.eta + Q_I).norm() <= tol:
        raise PoleChartError("plane structure sits at a chart pole")
    w = pi_plus(z.eta) * z.c
    q_plus = Biquaternion((z.eta - Q_I).inv()) * w
    q_minus = Biquaternion((z.eta + Q_I).inv()) * w
    return q_plus, q_minus


@dataclass(frozen=True)
class MinkCoords:
    """Double-null complex coordinates (z, zt, w, wt)."""

    z: complex
    zt: complex
    w: complex
    wt: complex


def mink_convert(q) -> MinkCoords:
    """Linear bijection onto (z, zt, w, wt); exact up to rounding."""
    q = as_biquaternion(q)
    q0, q1, q2, q3 = (q.component(mu) for mu in range(4))
    return MinkCoords(
        z=(q0 + 1j * q3) / _SQRT2,
        zt=(q0 - 1j * q3) / _SQRT2,
        w=(q1 + 1j * q2) / _SQRT2,
        wt=(-q1 + 1j * q2) / _SQRT2,
    )


def mink_invert(m: MinkCoords) -> Biquaternion:
    q0 = (m.z + m.zt) / _SQRT2
    q3 = (m.z - m.zt) / (1j * _SQRT2)
    q1 = (m.w - m.wt) / _SQRT2
    q2 = (m.w + m.wt) / (1j * _SQRT2)
    out = Biquaternion()
    for c, e in zip((q0, q1, q2, q3), BQ_BASIS):
        out = out + e.scale(c)
    return out


def random_null_line(rng, scale=1.0, through=None) -> NullLine:
    """Seeded generic null line; optionally through a fixed point."""
    from .sampling import random_biquaternion, random_unit_imaginary
    eta1 = random_unit_imaginary(rng)
    eta2 = random_unit_imaginary(rng)
    p = as_biquaternion(through) if through is not None else random_biquaternion(rng, scale)
    return NullLine(p, eta1, eta2)
