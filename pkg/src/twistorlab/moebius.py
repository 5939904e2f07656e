"""Moebius actions: on the fiber sphere, on Minkowskian quaternions via the
restricted Lorentz group, and on the complexified quaternions themselves."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (BASIS, BQ_BASIS, BQ_UNIT_IM, Biquaternion, Quaternion,
                      as_biquaternion, bq_inv, renormalize_unit_imaginary)
from .calculus import differential
from .errors import (DegenerateFactorizationError, DegenerateMapError,
                     NotNormalizedError, SingularMoebiusError,
                     SingularPointError, ZeroDivisorError)
from .fields import Field, inv, sqrt_complex
from .forms import QOneForm, dq_form, dqbar_form

NORMALIZATION_TOL = 1e-10


@dataclass(frozen=True)
class SphereMoebius:
    """Fiber-sphere Moebius map eta -> (alpha + eta beta)^-1 eta (alpha + eta beta)."""

    alpha: Quaternion
    beta: Quaternion


def mob_apply(m: SphereMoebius, eta: Quaternion) -> Quaternion:
    """Apply the map; the result is renormalized onto the unit sphere."""
    g = m.alpha + eta * m.beta
    n2 = g.norm2()
    if n2 <= 1e-24 * (1.0 + m.alpha.norm2() + m.beta.norm2()):
        raise SingularMoebiusError("alpha + eta*beta is not invertible")
    out = g.inv() * eta * g
    return renormalize_unit_imaginary(out)


def _cq(z: complex) -> Quaternion:
    """Complex number as a quaternion in the (1, i) plane."""
    return Quaternion(z.real, z.imag)


def mob_from_cp1(a, b, c, d) -> SphereMoebius:
    """Sphere coefficients of the projective map (z1, z2) -> (a z1 + b z2, c z1 + d z2).

    Uses 2 alpha = a + c j + conj(j b + d) and 2 i beta = a + c j - conj(j b + d),
    so that the map intertwines with the stereographic identification.
    """
    a, b, c, d = complex(a), complex(b), complex(c), complex(d)
    det = a * d - b * c
    scale = max(abs(a), abs(b), abs(c), abs(d))
    if abs(det) <= 1e-13 * (1.0 + scale * scale):
        raise DegenerateMapError("ad - bc = 0 does not define a projective map")
    jb_d = Quaternion(d.real, -d.imag, -b.real, b.imag)  # conj(j*b + d)
    two_alpha = _cq(a) + Quaternion(0.0, 0.0, c.real, c.imag) + jb_d
    two_ibeta = _cq(a) + Quaternion(0.0, 0.0, c.real, c.imag) - jb_d
    w = two_ibeta * 0.5
    beta = Quaternion(w.x, -w.w, w.z, -w.y)  # left-divide by i
    return SphereMoebius(two_alpha * 0.5, beta)


def mob_to_biquaternion(m: SphereMoebius) -> Biquaternion:
    """The biquaternion alpha + I beta carrying the same projective data."""
    return Biquaternion(m.alpha, m.beta)


def sphere_moebius_from_bq(phi: Biquaternion) -> SphereMoebius:
    """Sphere map with (alpha, beta) the two banks of phi."""
    return SphereMoebius(phi.re, phi.im)


@dataclass(frozen=True)
class MinkowskiQuaternion:
    """Point x0 + I(i x1 + j x2 + k x3) of the real Minkowski slice."""

    x0: float
    x1: float
    x2: float
    x3: float

    def to_biquaternion(self) -> Biquaternion:
        return Biquaternion(Quaternion(self.x0),
                            Quaternion(0.0, self.x1, self.x2, self.x3))

    @staticmethod
    def from_biquaternion(b: Biquaternion, tol=1e-9) -> "MinkowskiQuaternion":
        off = (b.re.vector().norm2() + b.im.w * b.im.w) ** 0.5
        if off > tol * (1.0 + b.norm()):
            raise ValueError("biquaternion is not of Minkowskian shape")
        return MinkowskiQuaternion(b.re.w, b.im.x, b.im.y, b.im.z)

    def interval(self) -> float:
        """Quadratic form x0^2 - x1^2 - x2^2 - x3^2."""
        return self.x0 ** 2 - self.x1 ** 2 - self.x2 ** 2 - self.x3 ** 2


def check_normalized(phi: Biquaternion, tol=NORMALIZATION_TOL) -> None:
    s = phi.herm()
    if abs(s - 1.0) > tol:
        raise NotNormalizedError(f"phi conj(phi) = {s!r}, expected 1")


def lorentz_apply(phi: Biquaternion, qm: MinkowskiQuaternion) -> MinkowskiQuaternion:
    """Restricted Lorentz action qm -> phi qm star(conj(phi))."""
    check_normalized(phi)
    out = phi * qm.to_biquaternion() * phi.conj().star()
    return MinkowskiQuaternion.from_biquaternion(out)


def mob_generator(phi_field: Field, p, v):
    """Banks (gamma, delta) of conj(phi) dphi contracted with v.

    For a normalized path both banks are pure imaginary: the rotation and
    boost generators of the restricted Lorentz algebra.
    """
    phi = phi_field(p)
    check_normalized(phi)
    g = phi.conj() * phi_field.deriv(p, v)
    return g.re, g.im


@dataclass(frozen=True)
class BqMoebius:
    """Fractional-linear map kappa(q) = (alpha q + beta)(gamma q + delta)^-1."""

    alpha: Biquaternion
    beta: Biquaternion
    gamma: Biquaternion
    delta: Biquaternion

    def compose(self, other: "BqMoebius") -> "BqMoebius":
        """Coefficient-matrix product: self after other."""
        a, b, c, d = self.alpha, self.beta, self.gamma, self.delta
        e, f, g, h = other.alpha, other.beta, other.gamma, other.delta
        return BqMoebius(a * e + b * g, a * f + b * h,
                         c * e + d * g, c * f + d * h)


def bq_mob_apply(m: BqMoebius, q) -> Biquaternion:
    q = as_biquaternion(q)
    try:
        den = bq_inv(m.gamma * q + m.delta)
    except ZeroDivisorError as exc:
        raise SingularPointError(f"gamma q + delta is a zero divisor at {q!r}") from exc
    return (m.alpha * q + m.beta) * den


def kappa_field(m: BqMoebius) -> Field:
    """The map as a differentiable field."""
    return Field(lambda q: (m.alpha * q + m.beta) * inv(m.gamma * q + m.delta),
                 name="kappa")


def tilde_coefficients(m: BqMoebius):
    """Coefficients (alpha~, beta~, gamma~, delta~) of the sandwich factorization.

    alpha~ = (alpha gamma^-1 delta - beta)^-1, beta~ = (alpha - beta delta^-1 gamma)^-1,
    gamma~ = gamma, delta~ = delta.  Raises DegenerateFactorizationError when a
    required inverse does not exist (the identity map is such a case).
    """
    try:
        gi = bq_inv(m.gamma)
        di = bq_inv(m.delta)
        at = bq_inv(m.alpha * gi * m.delta - m.beta)
        bt = bq_inv(m.alpha - m.beta * di * m.gamma)
        bq_inv(m.alpha)
        bq_inv(m.beta)
    except ZeroDivisorError as exc:
        raise DegenerateFactorizationError(
            "map does not admit the sandwich factorization") from exc
    return at, bt, m.gamma, m.delta


def bq_mob_factor(m: BqMoebius):
    """Fields (chi, psi) with d kappa contracted on v equal to chi(q) v psi(q)."""
    at, bt, gt, dt = tilde_coefficients(m)
    chi = Field(lambda q: inv(q * at + bt), name="chi")
    psi = Field(lambda q: inv(gt * q + dt), name="psi")
    return chi, psi


def phi_from_chi(chi: Field) -> Field:
    """Normalized phi = chi (chi conj(chi))^(-1/2), principal branch."""
    def fn(q):
        c = chi.fn(q)
        return c * inv(sqrt_complex(c * c.conj()))
    return Field(fn, name="phi")


#: Real basis of the complexified quaternions: e_mu and I e_mu.
_REAL_BASIS8 = tuple(BQ_BASIS) + tuple(BQ_UNIT_IM * e for e in BQ_BASIS)


def _lstsq_form(target: QOneForm, columns) -> float:
    """Least-squares distance from target to the real span of column forms.

    Returns the coefficient-norm of the residual form after the optimal
    32x8 real solve.
    """
    b = np.array([x for c in target.coeffs() for x in c.components()])
    a = np.array([[x for c in col.coeffs() for x in c.components()]
                  for col in columns]).T
    sol, *_ = np.linalg.lstsq(a, b, rcond=None)
    res = b - a @ sol
    per_coeff = res.reshape(4, 8)
    return float(np.sqrt((per_coeff ** 2).sum(axis=1)).max())


def theorem1_residual(kappa: Field, phi: Field, p):
    """Distance of (d kappa, conj(phi) d phi) from the conformal normal form.

    r1 minimizes |d kappa - phi dq nu| over nu; r2 minimizes
    |conj(phi) d phi - (dq xi - conj(xi) dqbar)/2| over xi.  Both vanish at
    points where the map is twistor conformal with the given phi.
    """
    p = as_biquaternion(p)
    phi_p = phi(p)
    check_normalized(phi_p)

    dk = differential(kappa, p)
    cols1 = [dq_form().left_mul(phi_p).right_mul(u) for u in _REAL_BASIS8]
    r1 = _lstsq_form(dk, cols1)

    g = differential(phi, p).left_mul(phi_p.conj())
    cols2 = [(dq_form().right_mul(u) - dqbar_form().left_mul(u.conj())).scale(0.5)
             for u in _REAL_BASIS8]
    r2 = _lstsq_form(g, cols2)
    return r1, r2
