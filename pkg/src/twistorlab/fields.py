"""Closed-form biquaternion fields with exact first derivatives.

A Field wraps a python callable built from the arithmetic primitives below
(ring operations, conjugations, inversion, complex square root).  Passing a
dual-lifted point through the same callable propagates first derivatives
exactly, one dual component per real coordinate: four for points moving on
the real slice, eight for fully complexified points.
"""

from __future__ import annotations

import cmath

from .algebra import (BQ_BASIS, BQ_UNIT_IM, Biquaternion, Quaternion,
                      as_biquaternion, bq_inv)
from .errors import BranchFailureError, SingularFieldError, ZeroDivisorError

_SQRT_CUT_RTOL = 1e-12


def bq_sqrt_complex(a):
    """Principal square root of a complex-scalar biquaternion.

    Raises BranchFailureError on the branch cut (zero or negative-real
    argument); raises ValueError if the argument has a vector part.
    """
    a = as_biquaternion(a)
    z = a.complex_part()
    if a.vector_norm() > 1e-9 * (1.0 + abs(z)):
        raise ValueError("sqrt argument is not a complex scalar")
    if abs(z) <= 1e-150 or (z.real < 0.0 and abs(z.imag) <= _SQRT_CUT_RTOL * abs(z)):
        raise BranchFailureError(f"square-root branch cut hit at {z!r}")
    w = cmath.sqrt(z)
    return Biquaternion(Quaternion(w.real), Quaternion(w.imag))


class DualBq:
    """Biquaternion with a tuple of first-derivative banks.

    Supports the same operator surface as Biquaternion; products apply the
    ordered Leibniz rule, so noncommutativity is preserved.
    """

    __slots__ = ("val", "d")

    def __init__(self, val: Biquaternion, d: tuple):
        self.val = val
        self.d = d

    def _lift(self, x):
        if isinstance(x, DualBq):
            return x
        b = as_biquaternion(x)
        if b is NotImplemented:
            return NotImplemented
        zero = Biquaternion()
        return DualBq(b, tuple(zero for _ in self.d))

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return DualBq(self.val + o.val,
                      tuple(a + b for a, b in zip(self.d, o.d)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return DualBq(self.val - o.val,
                      tuple(a - b for a, b in zip(self.d, o.d)))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        return DualBq(-self.val, tuple(-a for a in self.d))

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        v, w = self.val, o.val
        return DualBq(v * w,
                      tuple(dv * w + v * dw for dv, dw in zip(self.d, o.d)))

    def __rmul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return o.__mul__(self)

    def scale(self, c):
        return DualBq(self.val.scale(c), tuple(a.scale(c) for a in self.d))

    def conj(self):
        return DualBq(self.val.conj(), tuple(a.conj() for a in self.d))

    def star(self):
        return DualBq(self.val.star(), tuple(a.star() for a in self.d))

    def inv(self):
        v = bq_inv(self.val)
        return DualBq(v, tuple(-(v * a * v) for a in self.d))

    def sqrt_complex(self):
        s = bq_sqrt_complex(self.val)
        half = 0.5 / s.complex_part()
        return DualBq(s, tuple(a.scale(half) for a in self.d))


def sqrt_complex(x):
    """Square root usable on both plain and dual-lifted values."""
    if isinstance(x, DualBq):
        return x.sqrt_complex()
    return bq_sqrt_complex(x)


def inv(x):
    """Inverse usable on both plain and dual-lifted values."""
    return x.inv() if isinstance(x, DualBq) else bq_inv(x)


class Field:
    """Closed-form map from (bi)quaternion points to biquaternions."""

    __slots__ = ("fn", "name")

    def __init__(self, fn, name=None):
        self.fn = fn
        self.name = name

    def __repr__(self):
        return f"Field({self.name or self.fn!r})"

    def __call__(self, p) -> Biquaternion:
        p = as_biquaternion(p)
        try:
            return as_biquaternion(self.fn(p))
        except ZeroDivisorError as exc:
            raise SingularFieldError(f"field singular at {p!r}") from exc

    def partials(self, p):
        """Partial derivatives along the four basis directions e_mu.

        The dual seeds displace the re bank, so for holomorphic fields these
        are exactly the complex-linear partials at p.
        """
        p = as_biquaternion(p)
        # One evaluation carries all four dual banks.
        point = DualBq(p, tuple(BQ_BASIS))
        try:
            out = self.fn(point)
        except ZeroDivisorError as exc:
            raise SingularFieldError(f"field singular at {p!r}") from exc
        return _as_dual(out, 4).d

    def partials8(self, p):
        """Partials along e_mu and I*e_mu (fully complexified domain)."""
        p = as_biquaternion(p)
        dirs = tuple(BQ_BASIS) + tuple(BQ_UNIT_IM * e for e in BQ_BASIS)
        point = DualBq(p, dirs)
        try:
            out = self.fn(point)
        except ZeroDivisorError as exc:
            raise SingularFieldError(f"field singular at {p!r}") from exc
        out = _as_dual(out, 8)
        return out.d

    def deriv(self, p, v: Biquaternion) -> Biquaternion:
        """Directional derivative along a real displacement v."""
        p = as_biquaternion(p)
        point = DualBq(p, (as_biquaternion(v),))
        try:
            out = self.fn(point)
        except ZeroDivisorError as exc:
            raise SingularFieldError(f"field singular at {p!r}") from exc
        return _as_dual(out, 1).d[0]


def _as_dual(x, n):
    if isinstance(x, DualBq):
        return x
    b = as_biquaternion(x)
    zero = Biquaternion()
    return DualBq(b, tuple(zero for _ in range(n)))


def constant_field(c) -> Field:
    c = as_biquaternion(c)
    return Field(lambda q: c, name="const")


IDENTITY_FIELD = Field(lambda q: q, name="q")


def fd_partials(field: Field, p, rel_step=1e-5):
    """Central finite-difference oracle for the four e_mu partials."""
    p = as_biquaternion(p)
    h = rel_step * (1.0 + p.norm())
    out = []
    for e in BQ_BASIS:
        step = e.scale(h)
        f_plus = field(p + step)
        f_minus = field(p - step)
        out.append((f_plus - f_minus).scale(1.0 / (2.0 * h)))
    return tuple(out)
