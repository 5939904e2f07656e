"""Frustrated conformal transformations.

The connection nabla f = df + dq xi f + f xi dq couples a self-dual left
potential and an anti-self-dual right potential; solutions of the projected
equation sigma_bar(nabla f) = 0 transport to maps on the space of null
lines.  The basic-instanton potential and its closed-form curvatures live
here as the worked example.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import (BQ_BASIS, BQ_UNIT_IM, Biquaternion, Quaternion,
                      as_biquaternion, bq_inv)
from .ambitwistor import NullLine, chart_coords, is_null, solve_sandwich
from .calculus import differential
from .errors import (NonNullDirectionError, NotASolutionError,
                     SingularFieldError, SingularOnPathError)
from .fields import Field, inv
from .forms import QOneForm, QTwoForm, dq_form, dqbar_form, wedge
from .moebius import BqMoebius, tilde_coefficients

#: Fixed-step integrator resolution per unit of path parameter.
STEPS_PER_UNIT = 1024


def bpst_xi(q) -> Biquaternion:
    """Basic-instanton potential -conj(q) / (1 + q conj(q)).

    Off the real slice |q|^2 means the complex scalar q conj(q), the only
    continuation compatible with null-line transport.
    """
    q = as_biquaternion(q)
    return -q.conj() * bq_inv(1 + q * q.conj())


BPST_XI = Field(lambda q: -q.conj() * inv(1 + q * q.conj()), name="bpst_xi")

F_IDENTITY = Field(lambda q: q, name="q")


def nabla_apply(xi: Field, f: Field, p) -> QOneForm:
    """The one-form df + dq (xi f) + (f xi) dq at p."""
    p = as_biquaternion(p)
    df = differential(f, p)
    xv = xi(p)
    fv = f(p)
    return df + dq_form().right_mul(xv * fv) + dq_form().left_mul(fv * xv)


def sigma_coefficient(omega: QOneForm) -> complex:
    """Complex least-squares coefficient of omega against dq.

    Uses the coefficient inner product: sum over the basis slots of the
    8-component dot products.
    """
    num = 0.0 + 0.0j
    for mu in range(4):
        e = BQ_BASIS[mu]
        c = omega.coeffs()[mu]
        dot_re = sum(a * b for a, b in zip(e.components(), c.components()))
        ie = e.scale(1j)
        dot_im = sum(a * b for a, b in zip(ie.components(), c.components()))
        num += complex(dot_re, dot_im)
    return num / 4.0


def sigma_bar(omega: QOneForm) -> QOneForm:
    """Orthogonal projection off the complex line spanned by dq."""
    lam = sigma_coefficient(omega)
    return omega - dq_form().scale(lam)


def fct_residual(xi: Field, f: Field, p) -> float:
    """Coefficient norm of sigma_bar(nabla f) at p; zero for solutions."""
    return sigma_bar(nabla_apply(xi, f, p)).norm()


_DQ_W_DQBAR = wedge(dq_form(), dqbar_form())
_DQBAR_W_DQ = wedge(dqbar_form(), dq_form())


def _del_qbar_value(partials) -> Biquaternion:
    out = partials[0]
    for mu in (1, 2, 3):
        out = out + BQ_BASIS[mu] * partials[mu]
    return out.scale(0.5)


def _interleaved_left(two_form: QTwoForm, partials) -> QTwoForm:
    """(1/2) sum_mu e_mu (two_form) (d_mu xi)."""
    acc = QTwoForm()
    for mu in range(4):
        acc = acc + two_form.left_mul(BQ_BASIS[mu]).right_mul(partials[mu])
    return acc.scale(0.5)


def _interleaved_right(two_form: QTwoForm, partials) -> QTwoForm:
    """(1/2) sum_mu (d_mu xi) (two_form) e_mu."""
    acc = QTwoForm()
    for mu in range(4):
        acc = acc + two_form.left_mul(partials[mu]).right_mul(BQ_BASIS[mu])
    return acc.scale(0.5)


def xi_conditions_residual(xi: Field, p):
    """Residuals of the two potential conditions at p.

    r1 is the coefficient norm of (del_qbar - conj(xi)) dqbar^dq xi with the
    derivative interleaved through the two-form; r2 is |Im(del_qbar xi)|.
    """
    p = as_biquaternion(p)
    d = xi.partials(p)
    xv = xi(p)
    t = _interleaved_left(_DQBAR_W_DQ, d) - _DQBAR_W_DQ.left_mul(xv.conj()).right_mul(xv)
    r1 = t.norm()
    r2 = _del_qbar_value(d).im.norm()
    return r1, r2


def curvature(xi: Field, p):
    """Left and right curvature two-forms of the potential at p.

    Omega_l = (1/2)(-dq^dqbar (del_qbar + conj xi) xi
                    + (del_qbar - conj xi) dqbar^dq xi) and the mirrored
    right-hand formula; cross-check against curvature_first_principles.
    """
    p = as_biquaternion(p)
    d = xi.partials(p)
    xv = xi(p)
    del_qbar_xi = _del_qbar_value(d)
    xi_del_qbar = (sum((d[mu] * BQ_BASIS[mu] for mu in (1, 2, 3)), d[0])).scale(0.5)

    omega_l = (-_DQ_W_DQBAR.right_mul(del_qbar_xi + xv.conj() * xv)
               + _interleaved_left(_DQBAR_W_DQ, d)
               - _DQBAR_W_DQ.left_mul(xv.conj()).right_mul(xv)).scale(0.5)

    omega_r = (_DQBAR_W_DQ.left_mul(xi_del_qbar + xv * xv.conj())
               - _interleaved_right(_DQ_W_DQBAR, d)
               + _DQ_W_DQBAR.left_mul(xv).right_mul(xv.conj())).scale(0.5)
    return omega_l, omega_r


def curvature_first_principles(xi: Field, p):
    """dA + A^A and dB - B^B computed directly from the gauge fields."""
    p = as_biquaternion(p)
    d = xi.partials(p)
    xv = xi(p)
    a = dq_form().right_mul(xv)            # A = dq xi
    b = dq_form().left_mul(xv)             # B = xi dq
    da = QTwoForm(tuple(BQ_BASIS[nu] * d[mu] - BQ_BASIS[mu] * d[nu]
                        for mu, nu in QTwoForm.PAIRS))
    db = QTwoForm(tuple(d[mu] * BQ_BASIS[nu] - d[nu] * BQ_BASIS[mu]
                        for mu, nu in QTwoForm.PAIRS))
    return da + wedge(a, a), db - wedge(b, b)


@dataclass(frozen=True)
class TransportState:
    """Parallel-transport frames at parameter t, chi(t0) = psi(t0) = 1."""

    chi: Biquaternion
    psi: Biquaternion
    t: float
    step_doubling_error: float = 0.0


def _rk4_path(xi_fn, p, v, ts, steps_per_unit=STEPS_PER_UNIT):
    """Integrate chi' = chi (v xi), psi' = (xi v) psi through the times ts.

    Returns the list of (chi, psi) at each requested t; ts[0] is the start
    with unit initial frames.  The coefficient field is evaluated along
    q(t) = p + t v only, so the stage coefficients are shared between the
    two frames.
    """
    one = Biquaternion(Quaternion(1.0))
    chi, psi = one, one
    out = [(chi, psi)]

    def coeffs(t):
        q = p + v.scale(t)
        try:
            x = xi_fn(q)
        except SingularFieldError as exc:
            raise SingularOnPathError(f"potential singular at t = {t}") from exc
        return v * x, x * v

    for seg in range(len(ts) - 1):
        t0, t1 = ts[seg], ts[seg + 1]
        n = max(1, int(math.ceil(abs(t1 - t0) * steps_per_unit)))
        h = (t1 - t0) / n
        a1, b1 = coeffs(t0)
        for k in range(n):
            t = t0 + k * h
            a2, b2 = coeffs(t + 0.5 * h)
            a3, b3 = coeffs(t + h)
            # Classical RK4 for the linear right-invariant system.
            k1 = chi * a1
            k2 = (chi + k1.scale(0.5 * h)) * a2
            k3 = (chi + k2.scale(0.5 * h)) * a2
            k4 = (chi + k3.scale(h)) * a3
            chi = chi + (k1 + (k2 + k3).scale(2.0) + k4).scale(h / 6.0)
            m1 = b1 * psi
            m2 = b2 * (psi + m1.scale(0.5 * h))
            m3 = b2 * (psi + m2.scale(0.5 * h))
            m4 = b3 * (psi + m3.scale(h))
            psi = psi + (m1 + (m2 + m3).scale(2.0) + m4).scale(h / 6.0)
            a1, b1 = a3, b3
        out.append((chi, psi))
    return out


def _line_direction(line: NullLine, scale) -> Biquaternion:
    v = line.direction().scale(scale)
    if not is_null(v, 1e-10):
        raise NonNullDirectionError("transport direction is not null")
    return v


def transport(xi: Field, line: NullLine, scale=1.0, t0=0.0, t1=1.0,
              steps=None, verify=True) -> TransportState:
    """Transport both frames along q(t) = p + t v from t0 to t1.

    steps overrides the per-unit default for the whole segment; with
    verify=True the integration is repeated at doubled resolution and the
    deviation recorded on the returned state.
    """
    v = _line_direction(line, scale)
    spu = STEPS_PER_UNIT if steps is None else max(1, int(steps / max(abs(t1 - t0), 1e-300)))
    states = _rk4_path(xi.fn, line.p, v, (t0, t1), spu)
    chi, psi = states[-1]
    err = 0.0
    if verify:
        chi2, psi2 = _rk4_path(xi.fn, line.p, v, (t0, t1), 2 * spu)[-1]
        err = max((chi - chi2).norm(), (psi - psi2).norm())
    return TransportState(chi, psi, t1, err)


def transport_convergence_ratio(xi: Field, line: NullLine, scale=1.0,
                                t1=1.0, base_steps=16) -> float:
    """Observed step-halving error ratio against the Richardson limit.

    A clean fourth-order scheme gives ratios near 16; the coarse base
    resolution keeps truncation error well above rounding.
    """
    v = _line_direction(line, scale)
    vals = []
    for mult in (1, 2, 4):
        spu = int(base_steps * mult / max(t1, 1e-300))
        chi, psi = _rk4_path(xi.fn, line.p, v, (0.0, t1), spu)[-1]
        vals.append((chi, psi))
    (c1, p1), (c2, p2), (c4, p4) = vals
    # Richardson limit from the two finest resolutions.
    c_lim = c4 + (c4 - c2).scale(1.0 / 15.0)
    p_lim = p4 + (p4 - p2).scale(1.0 / 15.0)
    e1 = max((c1 - c_lim).norm(), (p1 - p_lim).norm())
    e2 = max((c2 - c_lim).norm(), (p2 - p_lim).norm())
    if e2 == 0.0:
        return float("inf")
    return e1 / e2


def lambda_transport(f: Field, line: NullLine, t0=0.0, t1=1.0, steps=None,
                     scale=1.0):
    """Integrate the scalar transport of the dq-coefficient along the line.

    Uses the basic-instanton relation (1/2) dlambda =
    -(dq conj(f) + f dqbar) / (1 + |q|^2)^2 contracted with the null
    direction; lambda(t0) comes from projecting nabla f onto dq at the
    start point.  Returns (ts, lambdas) as numpy arrays.
    """
    v = _line_direction(line, scale)
    n = steps if steps is not None else max(1, int(math.ceil(abs(t1 - t0) * STEPS_PER_UNIT)))
    h = (t1 - t0) / n

    def rhs(t):
        q = line.p + v.scale(t)
        try:
            fv = f(q)
            s = bq_inv(1 + q * q.conj())
        except SingularFieldError as exc:
            raise SingularOnPathError(f"singular at t = {t}") from exc
        except Exception:
            raise
        w = (v * fv.conj() + fv * v.conj()) * (s * s)
        return -2.0 * w.complex_part()

    lam0 = sigma_coefficient(nabla_apply(BPST_XI, f, line.p + v.scale(t0)))
    ts = [t0]
    lams = [lam0]
    lam = lam0
    g1 = rhs(t0)
    for k in range(n):
        t = t0 + k * h
        g2 = rhs(t + 0.5 * h)
        g3 = rhs(t + h)
        lam = lam + (g1 + 4.0 * g2 + g3) * (h / 6.0)
        ts.append(t + h)
        lams.append(lam)
        g1 = g3
    return np.array(ts), np.array(lams)


@dataclass(frozen=True)
class AmbiMapData:
    """Induced map data of a solution restricted to one null line."""

    m1: Biquaternion
    m2: Biquaternion
    kappa0: Biquaternion
    constancy_residual: float
    collinearity_residual: float


def ambimap_eval(xi: Field, f: Field, line: NullLine, samples=7,
                 tol=1e-8) -> AmbiMapData:
    """Transported structures and image base point along the line.

    m1 = chi^-1 eta1 chi and m2 = psi eta2 psi^-1 must agree across the
    samples, and the image points chi f psi must be pairwise separated by
    null directions of (m1, m2); residuals beyond 10x tol raise
    NotASolutionError.
    """
    v = _line_direction(line, 1.0)
    ts = np.linspace(0.0, 1.0, samples)
    states = _rk4_path(xi.fn, line.p, v, tuple(ts))
    m1s, m2s, kappas = [], [], []
    for t, (chi, psi) in zip(ts, states):
        q = line.p + v.scale(float(t))
        m1s.append(bq_inv(chi) * line.eta1 * chi)
        m2s.append(psi * line.eta2 * bq_inv(psi))
        kappas.append(chi * f(q) * psi)
    constancy = max(max((m - m1s[0]).norm() for m in m1s),
                    max((m - m2s[0]).norm() for m in m2s))
    m1, m2 = m1s[0], m2s[0]
    pm1 = BQ_UNIT_IM - m1
    pm2 = BQ_UNIT_IM - m2
    coll = 0.0
    for kap in kappas[1:]:
        d = kap - kappas[0]
        _, res = solve_sandwich(pm1, pm2, d)
        coll = max(coll, res / (1.0 + d.norm()))
    if constancy > 10.0 * tol or coll > 10.0 * tol:
        raise NotASolutionError(
            f"map data residuals too large (constancy {constancy:.2e}, "
            f"collinearity {coll:.2e})")
    return AmbiMapData(m1, m2, kappas[0], constancy, coll)


def patching_check(xi: Field, f: Field, line: NullLine, s_plane, t_plane,
                   samples=5) -> float:
    """Consistency of the two chart descriptions of kappa on the line.

    Charts are based at the intersections q_S, q_T of the line with the two
    hyperplanes; the frames transported from each base point describe the
    same kappa up to the constant factors F_chi, F_psi obtained by
    transporting between the base points.  Returns the largest deviation
    of the affine relation over the samples (the offset term vanishes for
    a single global solution).
    """
    from .ambitwistor import chart_coords
    q_s = chart_coords(s_plane, line)
    q_t = chart_coords(t_plane, line)
    v = _line_direction(line, 1.0)
    # Complex coordinate of q_T - q_S along the line direction.
    d = q_t - q_s
    vv = sum(abs(v.component(mu)) ** 2 for mu in range(4))
    c = sum(v.component(mu).conjugate() * d.component(mu) for mu in range(4)) / vv
    w = v.scale(c)
    if (q_s + w - q_t).norm() > 1e-8 * (1.0 + d.norm()):
        raise NotASolutionError("chart points do not lie on a common line")

    ts = np.linspace(0.0, 1.0, samples)
    from_s = _rk4_path(xi.fn, q_s, w, tuple(ts))
    back = tuple(1.0 - ts)
    from_t = _rk4_path(xi.fn, q_t, -w, back[::-1] and tuple(1.0 - ts))
    # F factors from one transport between the base points.
    chi_st, psi_st = _rk4_path(xi.fn, q_s, w, (0.0, 1.0))[-1]
    f_chi = bq_inv(chi_st)
    f_psi = bq_inv(psi_st)

    worst = 0.0
    for k, t in enumerate(ts):
        x = q_s + w.scale(float(t))
        chi_s, psi_s = from_s[k]
        chi_t, psi_t = from_t[k]
        fv = f(x)
        kappa = chi_s * fv * psi_s
        kappa_t = chi_t * fv * psi_t
        lhs = kappa_t
        rhs = f_chi * kappa * f_psi
        worst = max(worst, (lhs - rhs).norm() / (1.0 + rhs.norm()))
    return worst


def moebius_fct_data(m: BqMoebius):
    """Potential and solution field realized by a fractional-linear map.

    With the sandwich coefficients of the factorization, xi = -at chi and
    f = chi^-1 kappa psi^-1 = (q at + bt)(alpha q + beta) satisfy
    nabla f = dq exactly, so the projected equation holds wherever the map
    is regular.
    """
    at, bt, _, _ = tilde_coefficients(m)
    xi = Field(lambda q: -(at * inv(q * at + bt)), name="moebius_xi")
    f = Field(lambda q: (q * at + bt) * (m.alpha * q + m.beta), name="moebius_f")
    return xi, f
