"""The complex projective fibration over the quaternionic line.

Chart convention: the CP^3 chart z4 = 1 pairs with the quaternionic chart
q2 = 1; the opposite chart is reached by composing with the transition map
instead of being implemented separately.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (Q_I, Quaternion, renormalize_unit_imaginary)
from .errors import (ChartMissError, DegenerateEmbeddingError,
                     OriginSingularError, ZeroDivisorError)
from .moebius import SphereMoebius, mob_apply, mob_from_cp1

EQUIV_TOL = 1e-10


def _cq(z1: complex, z2: complex) -> Quaternion:
    """The quaternion z1 + z2 j with the complex unit identified with i."""
    return Quaternion(z1.real, z1.imag, z2.real, z2.imag)


@dataclass(frozen=True)
class CP3Point:
    z1: complex
    z2: complex
    z3: complex
    z4: complex

    def __post_init__(self):
        if max(abs(self.z1), abs(self.z2), abs(self.z3), abs(self.z4)) == 0.0:
            raise ValueError("projective coordinates cannot all vanish")

    def scaled(self, lam: complex) -> "CP3Point":
        return CP3Point(lam * self.z1, lam * self.z2, lam * self.z3, lam * self.z4)

    def chart_swap(self) -> "CP3Point":
        """Exchange the two quaternionic slots: (z1,z2,z3,z4) -> (z3,z4,z1,z2)."""
        return CP3Point(self.z3, self.z4, self.z1, self.z2)


@dataclass(frozen=True)
class HPPoint:
    """Homogeneous quaternion pair, defined up to left multiplication."""

    q1: Quaternion
    q2: Quaternion

    def equivalent(self, other: "HPPoint", tol=EQUIV_TOL) -> bool:
        """Decide class membership by left-dividing on the larger slot."""
        scale = max(self.q1.norm(), self.q2.norm())
        oscale = max(other.q1.norm(), other.q2.norm())
        if scale == 0.0 or oscale == 0.0:
            raise ValueError("not a projective point")
        if self.q1.norm() >= self.q2.norm():
            u = other.q1 * self.q1.inv()
        else:
            u = other.q2 * self.q2.inv()
        r1 = (u * self.q1 - other.q1).norm()
        r2 = (u * self.q2 - other.q2).norm()
        return max(r1, r2) <= tol * (1.0 + oscale)

    def chart_coordinate(self) -> Quaternion:
        """Coordinate q2^-1 q1 in the q2 = 1 chart."""
        return self.q2.inv() * self.q1


def fibration_pi(z: CP3Point) -> HPPoint:
    """Bundle projection (z1, z2, z3, z4) -> (z1 + z2 j, z3 + z4 j)."""
    return HPPoint(_cq(z.z1, z.z2), _cq(z.z3, z.z4))


def eta_stereo(z1, z2) -> Quaternion:
    """Stereographic point (z1 + z2 j)^-1 i (z1 + z2 j) on the unit sphere."""
    v = _cq(complex(z1), complex(z2))
    if v.norm2() == 0.0:
        raise ValueError("(z1, z2) must be nonzero")
    return renormalize_unit_imaginary(v.inv() * Q_I * v)


def trivialize_phi(z: CP3Point):
    """Local trivialization in the z4 = 1 chart.

    Returns (q, eta) with q = (z3 + j)^-1 (z1 + z2 j) and eta the
    stereographic image of z3; q agrees with the chart coordinate of the
    projected point.
    """
    scale = max(abs(z.z1), abs(z.z2), abs(z.z3), abs(z.z4))
    if abs(z.z4) <= 1e-13 * scale:
        raise ChartMissError("z4 = 0 lies outside this chart")
    w1, w2, w3 = z.z1 / z.z4, z.z2 / z.z4, z.z3 / z.z4
    q = _cq(w3, 1.0).inv() * _cq(w1, w2)
    return q, eta_stereo(w3, 1.0)


def transition_tau(q: Quaternion, eta: Quaternion):
    """Chart transition (q, eta) -> (q^-1, q^-1 eta q)."""
    if q.norm2() <= 1e-26:
        raise OriginSingularError("transition undefined at q = 0")
    qi = q.inv()
    return qi, renormalize_unit_imaginary(qi * eta * q)


@dataclass(frozen=True)
class LineEmbedding:
    """Degree-one embedding of the projective line into CP^3.

    Coefficients map (z1, z2) to (a z1 + b z2, c z1 + d z2,
    at z1 + bt z2, ct z1 + dt z2).
    """

    a: complex
    b: complex
    c: complex
    d: complex
    at: complex
    bt: complex
    ct: complex
    dt: complex

    def __post_init__(self):
        m = np.array([[self.a, self.b], [self.c, self.d],
                      [self.at, self.bt], [self.ct, self.dt]])
        s = np.linalg.svd(m, compute_uv=False)
        if s[1] <= 1e-12 * s[0]:
            raise DegenerateEmbeddingError("coefficients do not span a line")
        # Each quaternionic slot must see the domain; a vanishing slot pair
        # collapses the trivialized image.
        if max(abs(self.a), abs(self.b), abs(self.c), abs(self.d)) == 0.0 or \
           max(abs(self.at), abs(self.bt), abs(self.ct), abs(self.dt)) == 0.0:
            raise DegenerateEmbeddingError("a quaternionic slot is identically zero")

    def apply(self, z1: complex, z2: complex) -> CP3Point:
        return CP3Point(self.a * z1 + self.b * z2, self.c * z1 + self.d * z2,
                        self.at * z1 + self.bt * z2, self.ct * z1 + self.dt * z2)


@dataclass(frozen=True)
class SphereData:
    """Center h, generalized radius rho, and fiber Moebius map of a line."""

    h: Quaternion
    rho: Quaternion
    moebius: SphereMoebius
    from_closed_form: bool = True

    def evaluate(self, eta: Quaternion):
        m = mob_apply(self.moebius, eta)
        return self.h + m * self.rho, m


def embed_line_direct(e: LineEmbedding, z1: complex, z2: complex):
    """Directly composed image (q2^-1 q1, ad_q2(i)) of one domain point."""
    chi = _cq(z1, z2)
    if chi.norm2() == 0.0:
        raise ValueError("domain point cannot vanish")
    p = e.apply(z1, z2)
    q1 = _cq(p.z1, p.z2)
    q2 = _cq(p.z3, p.z4)
    if q2.norm2() <= 1e-26 * chi.norm2():
        raise DegenerateEmbeddingError("image leaves the trivialization chart")
    return q2.inv() * q1, renormalize_unit_imaginary(q2.inv() * Q_I * q2)


def _fit_sphere_data(e: LineEmbedding, mob: SphereMoebius) -> SphereData:
    """Least-squares (h, rho) from sampled direct evaluations.

    Fallback for coefficient configurations where the closed forms divide
    by a non-invertible combination.
    """
    samples = [(1.0, 0.3), (0.2, 1.0), (1.0, 1.0), (1.0, -0.7), (0.4j + 1.0, 1.0)]
    rows = []
    rhs = []
    for z1, z2 in samples:
        g, m = embed_line_direct(e, complex(z1), complex(z2))
        # h + m*rho = g, linear in the 8 real unknowns (h, rho).
        for comp in range(4):
            row = [0.0] * 8
            basis = (Quaternion(1), Quaternion(0, 1), Quaternion(0, 0, 1),
                     Quaternion(0, 0, 0, 1))
            for k, bq in enumerate(basis):
                row[k] = bq.components()[comp]
                row[4 + k] = (m * bq).components()[comp]
            rows.append(row)
            rhs.append(g.components()[comp])
    sol, *_ = np.linalg.lstsq(np.array(rows), np.array(rhs), rcond=None)
    h = Quaternion(*sol[:4])
    rho = Quaternion(*sol[4:])
    fitted = SphereData(h, rho, mob, from_closed_form=False)
    for z1, z2 in samples:
        g, m = embed_line_direct(e, complex(z1), complex(z2))
        pred = fitted.h + m * fitted.rho
        if (pred - g).norm() > 1e-8 * (1.0 + g.norm()):
            raise DegenerateEmbeddingError("image is not a graph over the fiber sphere")
    return fitted


def embed_line(e: LineEmbedding) -> SphereData:
    """Sphere data (h, rho, M) reproducing the composed image of the line.

    h = a^-1 (b a^-1 + a b^-1)^-1 (a b^-1 + bt at^-1) at and the matching
    radius formula, with (a, b) the sphere coefficients of the second slot
    and (at, bt) those of the first.  Falls back to a least-squares fit when
    a required inverse does not exist.
    """
    mob = mob_from_cp1(e.at, e.bt, e.ct, e.dt)
    tilde = mob_from_cp1(e.a, e.b, e.c, e.d)
    al, be = mob.alpha, mob.beta
    alt, bet = tilde.alpha, tilde.beta
    try:
        if min(al.norm2(), be.norm2(), alt.norm2()) <= 1e-24:
            raise ZeroDivisorError("vanishing sphere coefficient")
        mid = (be * al.inv() + al * be.inv()).inv()
        h = al.inv() * mid * (al * be.inv() + bet * alt.inv()) * alt
        rho = be.inv() * mid * (bet * alt.inv() - be * al.inv()) * alt
    except ZeroDivisorError:
        return _fit_sphere_data(e, mob)
    return SphereData(h, rho, mob, from_closed_form=True)
