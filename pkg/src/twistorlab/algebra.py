"""Quaternion and biquaternion arithmetic.

The component order (w, x, y, z) <-> (1, i, j, k) is fixed library-wide.
A biquaternion stores two quaternion banks, re + I*im, where the
complexification unit I commutes with i, j, k and squares to -1.
"""

from __future__ import annotations

import math

from .errors import ZeroDivisorError

ZERO_DIVISOR_RTOL = 1e-12


class Quaternion:
    """Real quaternion w + x*i + y*j + z*k with Hamilton multiplication."""

    __slots__ = ("w", "x", "y", "z")

    def __init__(self, w=0.0, x=0.0, y=0.0, z=0.0):
        self.w = float(w)
        self.x = float(x)
        self.y = float(y)
        self.z = float(z)

    def __repr__(self):
        return f"Quaternion({self.w!r}, {self.x!r}, {self.y!r}, {self.z!r})"

    def components(self):
        return (self.w, self.x, self.y, self.z)

    def __add__(self, other):
        if isinstance(other, (int, float)):
            return _q(self.w + other, self.x, self.y, self.z)
        if not isinstance(other, Quaternion):
            return NotImplemented
        return _q(self.w + other.w, self.x + other.x,
                  self.y + other.y, self.z + other.z)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, float)):
            return _q(self.w - other, self.x, self.y, self.z)
        if not isinstance(other, Quaternion):
            return NotImplemented
        return _q(self.w - other.w, self.x - other.x,
                  self.y - other.y, self.z - other.z)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        return _q(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return _q(self.w * other, self.x * other,
                      self.y * other, self.z * other)
        if not isinstance(other, Quaternion):
            return NotImplemented
        aw, ax, ay, az = self.w, self.x, self.y, self.z
        bw, bx, by, bz = other.w, other.x, other.y, other.z
        return _q(
            aw * bw - ax * bx - ay * by - az * bz,
            aw * bx + ax * bw + ay * bz - az * by,
            aw * by - ax * bz + ay * bw + az * bx,
            aw * bz + ax * by - ay * bx + az * bw,
        )

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return _q(self.w * other, self.x * other,
                      self.y * other, self.z * other)
        return NotImplemented

    def conj(self):
        return _q(self.w, -self.x, -self.y, -self.z)

    def norm2(self):
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def norm(self):
        return math.sqrt(self.norm2())

    def inv(self):
        n2 = self.norm2()
        if n2 <= 0.0:
            raise ZeroDivisorError("cannot invert the zero quaternion")
        s = 1.0 / n2
        return _q(self.w * s, -self.x * s, -self.y * s, -self.z * s)

    def vector(self):
        """Imaginary part as a quaternion."""
        return Quaternion(0.0, self.x, self.y, self.z)

    def real(self):
        return self.w

    def isclose(self, other, tol=1e-12):
        return (abs(self.w - other.w) <= tol and abs(self.x - other.x) <= tol
                and abs(self.y - other.y) <= tol and abs(self.z - other.z) <= tol)


def _q(w, x, y, z) -> Quaternion:
    # Allocation fast path: skips float() coercion for values produced by
    # arithmetic that is already float.
    out = Quaternion.__new__(Quaternion)
    out.w = w
    out.x = x
    out.y = y
    out.z = z
    return out


Q_ONE = Quaternion(1.0)
Q_I = Quaternion(0.0, 1.0)
Q_J = Quaternion(0.0, 0.0, 1.0)
Q_K = Quaternion(0.0, 0.0, 0.0, 1.0)

#: Basis e_mu = (1, i, j, k); this ordering is assumed everywhere.
BASIS = (Q_ONE, Q_I, Q_J, Q_K)


def qmul(a: Quaternion, b: Quaternion) -> Quaternion:
    """Hamilton product of two quaternions."""
    return a * b


class Biquaternion:
    """Complexified quaternion re + I*im with commuting complex unit I."""

    __slots__ = ("re", "im")

    def __init__(self, re=None, im=None):
        self.re = re if re is not None else Quaternion()
        self.im = im if im is not None else Quaternion()

    def __repr__(self):
        return f"Biquaternion({self.re!r}, {self.im!r})"

    def components(self):
        """All eight real components, re bank first."""
        return self.re.components() + self.im.components()

    def component(self, mu):
        """Complex coefficient of the basis element e_mu."""
        return complex(self.re.components()[mu], self.im.components()[mu])

    def __add__(self, other):
        if not isinstance(other, Biquaternion):
            other = as_biquaternion(other)
            if other is NotImplemented:
                return NotImplemented
        return _bq(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Biquaternion):
            other = as_biquaternion(other)
            if other is NotImplemented:
                return NotImplemented
        return _bq(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        return _bq(-self.re, -self.im)

    def __mul__(self, other):
        if not isinstance(other, Biquaternion):
            other = as_biquaternion(other)
            if other is NotImplemented:
                return NotImplemented
        a, b = self.re, self.im
        c, d = other.re, other.im
        return _bq(a * c - b * d, a * d + b * c)

    def __rmul__(self, other):
        other = as_biquaternion(other)
        if other is NotImplemented:
            return NotImplemented
        return other.__mul__(self)

    def scale(self, c):
        """Multiply by a complex scalar (cheaper than a full product)."""
        if isinstance(c, complex):
            cr, ci = c.real, c.imag
            return _bq(self.re * cr - self.im * ci,
                       self.re * ci + self.im * cr)
        return _bq(self.re * c, self.im * c)

    def conj(self):
        """Quaternion conjugate: reverses i, j, k in both banks, fixes I."""
        return _bq(self.re.conj(), self.im.conj())

    def star(self):
        """Complex conjugate: negates the im bank, fixes i, j, k."""
        return _bq(self.re, -self.im)

    def norm2(self):
        """Sum of squares of all eight real components."""
        return self.re.norm2() + self.im.norm2()

    def norm(self):
        return math.sqrt(self.norm2())

    def complex_part(self):
        """Scalar (1, I) part as a python complex."""
        return complex(self.re.w, self.im.w)

    def vector_norm(self):
        """Norm of everything outside the complex-scalar span."""
        return math.sqrt(self.re.vector().norm2() + self.im.vector().norm2())

    def herm(self):
        """Complex scalar self * conj(self); exact up to rounding."""
        p, r = self.re, self.im
        re = p.norm2() - r.norm2()
        im = 2.0 * (p.w * r.w + p.x * r.x + p.y * r.y + p.z * r.z)
        return complex(re, im)

    def inv(self):
        return bq_inv(self)

    def isclose(self, other, tol=1e-12):
        return self.re.isclose(other.re, tol) and self.im.isclose(other.im, tol)


def _bq(re: Quaternion, im: Quaternion) -> Biquaternion:
    out = Biquaternion.__new__(Biquaternion)
    out.re = re
    out.im = im
    return out


BQ_ZERO = Biquaternion()
BQ_ONE = Biquaternion(Q_ONE)
BQ_I = Biquaternion(Q_I)
BQ_J = Biquaternion(Q_J)
BQ_K = Biquaternion(Q_K)

#: Complexification unit I as a biquaternion.
BQ_UNIT_IM = Biquaternion(Quaternion(), Q_ONE)

#: Basis e_mu lifted to biquaternions.
BQ_BASIS = (BQ_ONE, BQ_I, BQ_J, BQ_K)


def as_biquaternion(x):
    """Coerce scalars and quaternions into biquaternions."""
    if isinstance(x, Biquaternion):
        return x
    if isinstance(x, Quaternion):
        return Biquaternion(x)
    if isinstance(x, (int, float)):
        return Biquaternion(Quaternion(x))
    if isinstance(x, complex):
        return Biquaternion(Quaternion(x.real), Quaternion(x.imag))
    return NotImplemented


def from_components(c):
    """Biquaternion from eight real components, re bank first."""
    return Biquaternion(Quaternion(c[0], c[1], c[2], c[3]),
                        Quaternion(c[4], c[5], c[6], c[7]))


def bq_mul(a, b) -> Biquaternion:
    """Ring product on the complexified quaternions."""
    return as_biquaternion(a) * as_biquaternion(b)


def bq_conj(a, kind="quaternion") -> Biquaternion:
    """Conjugation of a biquaternion.

    kind selects quaternion conjugation (reverses i, j, k), complex
    conjugation (reverses I), or their composition; each is an involution
    and the two commute.
    """
    a = as_biquaternion(a)
    if kind == "quaternion":
        return a.conj()
    if kind == "complex":
        return a.star()
    if kind == "both":
        return a.conj().star()
    raise ValueError(f"unknown conjugation kind: {kind!r}")


def bq_inv(a) -> Biquaternion:
    """Inverse conj(a) / (a conj(a)).

    Raises ZeroDivisorError when |a conj(a)| <= 1e-12 * (1 + |a|^2), the
    scale-relative test for non-invertibility in the complexified ring.
    """
    a = as_biquaternion(a)
    s = a.herm()
    if abs(s) <= ZERO_DIVISOR_RTOL * (1.0 + a.norm2()):
        raise ZeroDivisorError(f"biquaternion is a zero divisor (|a conj a| = {abs(s):.3e})")
    if s.imag == 0.0:
        return a.conj().scale(1.0 / s.real)
    return a.conj().scale(1.0 / s)


def unit_imaginary(x, y, z) -> Quaternion:
    """Unit imaginary quaternion from a nonzero 3-vector (normalized)."""
    n = math.sqrt(x * x + y * y + z * z)
    if n == 0.0:
        raise ValueError("zero vector cannot be normalized to a unit imaginary")
    return Quaternion(0.0, x / n, y / n, z / n)


def is_unit_imaginary(q: Quaternion, tol=1e-9) -> bool:
    return abs(q.w) <= tol and abs(q.norm2() - 1.0) <= 2.0 * tol


def renormalize_unit_imaginary(q: Quaternion) -> Quaternion:
    """Project a near-unit-imaginary quaternion back onto the sphere."""
    return unit_imaginary(q.x, q.y, q.z)
