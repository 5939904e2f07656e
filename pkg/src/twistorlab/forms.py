"""Biquaternion-valued differential forms on flat four-space.

One-forms carry a complex-linear (hol) and complex-antilinear (anti) bank of
four biquaternion coefficients each; contraction with a tangent vector v uses
the complex components v_mu of v on the basis e_mu.  Two-forms carry six
coefficients on the ordered basis dx0^dx1, dx0^dx2, dx0^dx3, dx1^dx2,
dx1^dx3, dx2^dx3.
"""

from __future__ import annotations

from .algebra import (BASIS, BQ_BASIS, Biquaternion, Quaternion,
                      as_biquaternion)

_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def _zero4():
    z = Biquaternion()
    return (z, z, z, z)


class QOneForm:
    """One-form with hol (complex-linear) and anti (antilinear) banks."""

    __slots__ = ("hol", "anti")

    def __init__(self, hol=None, anti=None):
        self.hol = tuple(as_biquaternion(c) for c in hol) if hol else _zero4()
        self.anti = tuple(as_biquaternion(c) for c in anti) if anti else _zero4()

    def __repr__(self):
        return f"QOneForm(hol={self.hol!r}, anti={self.anti!r})"

    def contract(self, v) -> Biquaternion:
        """Value on the tangent vector v (complex components on e_mu)."""
        v = as_biquaternion(v)
        out = Biquaternion()
        for mu in range(4):
            c = v.component(mu)
            out = out + self.hol[mu].scale(c) + self.anti[mu].scale(c.conjugate())
        return out

    def coeffs(self):
        """Effective real-slice coefficients hol_mu + anti_mu."""
        return tuple(h + a for h, a in zip(self.hol, self.anti))

    def __add__(self, other):
        return QOneForm(tuple(a + b for a, b in zip(self.hol, other.hol)),
                        tuple(a + b for a, b in zip(self.anti, other.anti)))

    def __sub__(self, other):
        return QOneForm(tuple(a - b for a, b in zip(self.hol, other.hol)),
                        tuple(a - b for a, b in zip(self.anti, other.anti)))

    def __neg__(self):
        return QOneForm(tuple(-a for a in self.hol), tuple(-a for a in self.anti))

    def scale(self, c):
        return QOneForm(tuple(a.scale(c) for a in self.hol),
                        tuple(a.scale(c) for a in self.anti))

    def left_mul(self, b):
        b = as_biquaternion(b)
        return QOneForm(tuple(b * a for a in self.hol),
                        tuple(b * a for a in self.anti))

    def right_mul(self, b):
        b = as_biquaternion(b)
        return QOneForm(tuple(a * b for a in self.hol),
                        tuple(a * b for a in self.anti))

    def norm(self):
        """Max over the eight coefficient banks of the Euclidean 8-norm."""
        return max(max(c.norm() for c in self.hol),
                   max(c.norm() for c in self.anti))


def dq_form() -> QOneForm:
    """The form dq: contraction returns the vector itself."""
    return QOneForm(hol=BQ_BASIS)


def dqbar_form() -> QOneForm:
    """The form dqbar: contraction returns the quaternion conjugate."""
    return QOneForm(hol=tuple(b.conj() for b in BQ_BASIS))


class QTwoForm:
    """Two-form with six biquaternion coefficients on dx_mu ^ dx_nu."""

    __slots__ = ("c",)

    PAIRS = _PAIRS

    def __init__(self, c=None):
        if c is None:
            z = Biquaternion()
            self.c = (z, z, z, z, z, z)
        else:
            self.c = tuple(as_biquaternion(x) for x in c)

    def __repr__(self):
        return f"QTwoForm({self.c!r})"

    def __add__(self, other):
        return QTwoForm(tuple(a + b for a, b in zip(self.c, other.c)))

    def __sub__(self, other):
        return QTwoForm(tuple(a - b for a, b in zip(self.c, other.c)))

    def __neg__(self):
        return QTwoForm(tuple(-a for a in self.c))

    def scale(self, s):
        return QTwoForm(tuple(a.scale(s) for a in self.c))

    def left_mul(self, b):
        b = as_biquaternion(b)
        return QTwoForm(tuple(b * a for a in self.c))

    def right_mul(self, b):
        b = as_biquaternion(b)
        return QTwoForm(tuple(a * b for a in self.c))

    def norm(self):
        return max(a.norm() for a in self.c)

    def contract(self, u, v) -> Biquaternion:
        """Antisymmetric contraction with the ordered pair (u, v)."""
        u = as_biquaternion(u)
        v = as_biquaternion(v)
        out = Biquaternion()
        for k, (mu, nu) in enumerate(_PAIRS):
            s = u.component(mu) * v.component(nu) - u.component(nu) * v.component(mu)
            out = out + self.c[k].scale(s)
        return out

    def isclose(self, other, tol=1e-12):
        return all(a.isclose(b, tol) for a, b in zip(self.c, other.c))


def wedge(a: QOneForm, b: QOneForm) -> QTwoForm:
    """Noncommutative wedge on the real-slice coefficients.

    The coefficient on dx_mu ^ dx_nu (mu < nu) is a_mu b_nu - a_nu b_mu,
    with the biquaternion products taken in that order.
    """
    ac = a.coeffs()
    bc = b.coeffs()
    return QTwoForm(tuple(ac[mu] * bc[nu] - ac[nu] * bc[mu] for mu, nu in _PAIRS))


# Hodge star with volume form dx0^dx1^dx2^dx3: index map and signs on the
# ordered pair basis.
_STAR_INDEX = (5, 4, 3, 2, 1, 0)
_STAR_SIGN = (1.0, -1.0, 1.0, 1.0, -1.0, 1.0)


def hodge_star(f: QTwoForm) -> QTwoForm:
    """Hodge dual; an involution on two-forms in Euclidean signature."""
    return QTwoForm(tuple(f.c[_STAR_INDEX[k]].scale(_STAR_SIGN[k])
                          for k in range(6)))


def sd_split(f: QTwoForm):
    """Self-dual / anti-self-dual parts (F + *F)/2, (F - *F)/2."""
    s = hodge_star(f)
    return (f + s).scale(0.5), (f - s).scale(0.5)


def _left_matrix(eta: Quaternion):
    """Columns of left multiplication by eta on the basis e_nu."""
    return tuple((eta * e).components() for e in BASIS)


def apply_Ir(eta: Quaternion, omega: QOneForm) -> QOneForm:
    """Right-action complex structure: (I_eta^r omega)(v) = omega(eta v)."""
    cols = _left_matrix(eta)
    hol = []
    anti = []
    for nu in range(4):
        h = Biquaternion()
        a = Biquaternion()
        for mu in range(4):
            r = cols[nu][mu]
            if r != 0.0:
                h = h + omega.hol[mu].scale(r)
                a = a + omega.anti[mu].scale(r)
        hol.append(h)
        anti.append(a)
    return QOneForm(hol, anti)


def script_I(eta: Quaternion, omega: QOneForm) -> QOneForm:
    """Projector onto the eta-holomorphic cotangent space: eta - I_eta^r."""
    return omega.left_mul(eta) - apply_Ir(eta, omega)


def script_J(eta: Quaternion, omega: QOneForm) -> QOneForm:
    """Lie-algebra action eta*omega - omega*eta - I_eta^r(omega)."""
    return omega.left_mul(eta) - omega.right_mul(eta) - apply_Ir(eta, omega)


def pi_plus(eta: Quaternion) -> Biquaternion:
    """The zero-divisor I + eta."""
    return Biquaternion(eta, Quaternion(1.0))


def pi_minus(eta: Quaternion) -> Biquaternion:
    """The zero-divisor I - eta."""
    return Biquaternion(-eta, Quaternion(1.0))


def proj_pm(eta: Quaternion, sign: int, x, side="left") -> Biquaternion:
    """Apply the eigenspace projector I +/- eta on the chosen side."""
    x = as_biquaternion(x)
    p = pi_plus(eta) if sign > 0 else pi_minus(eta)
    if side == "left":
        return p * x
    if side == "right":
        return x * p
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def is_holomorphic(omega: QOneForm, tol=1e-12) -> bool:
    """True when the antilinear bank vanishes relative to the form scale."""
    anti_norm = max(c.norm() for c in omega.anti)
    return anti_norm <= tol * (1.0 + omega.norm())


#: Spanning set of directions for contraction residuals on the
#: complexified tangent space.
SPAN8 = tuple(BQ_BASIS) + tuple(Biquaternion(Quaternion(), q) for q in BASIS)


def lemma1_check(omega: QOneForm, eta: Quaternion):
    """Residuals of the two equivalent descent conditions.

    Returns (r_contract, r_operator): the largest contraction value
    pi+ omega(pi- delta) over a spanning set of delta, and the coefficient
    norm of script_I(pi+ omega).  For holomorphic omega the two expressions
    agree pointwise, so they vanish together.
    """
    pp = pi_plus(eta)
    pm = pi_minus(eta)
    r_contract = max((pp * omega.contract(pm * d)).norm() for d in SPAN8)
    r_operator = script_I(eta, omega.left_mul(pp)).norm()
    return r_contract, r_operator


def lemma1_equivalence_residual(omega: QOneForm, eta: Quaternion) -> float:
    """Pointwise defect between the contraction and operator conditions.

    Zero (to rounding) for every holomorphic form, independent of whether
    the conditions themselves hold.
    """
    pp = pi_plus(eta)
    pm = pi_minus(eta)
    op = script_I(eta, omega.left_mul(pp))
    return max((pp * omega.contract(pm * d) - op.contract(d)).norm()
               for d in SPAN8)


def holomorphy_residual(eta: Quaternion, df: QOneForm, m) -> float:
    """Pointwise target-structure holomorphy defect |I_eta^r(df) - m*df|."""
    return (apply_Ir(eta, df) - df.left_mul(m)).norm()
