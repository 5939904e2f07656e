"""Differentials of fields and the quaternionic derivative operators."""

from __future__ import annotations

from .algebra import BQ_BASIS, Biquaternion
from .fields import Field
from .forms import QOneForm

_I_HALF = complex(0.0, 0.5)


def differential(field: Field, p, complexified=False) -> QOneForm:
    """Exact differential of a field at p as a one-form.

    With complexified=False the four e_mu partials fill the hol bank (the
    split is meaningful only over the complexified domain).  With
    complexified=True the eight real partials are combined into
    complex-linear and antilinear banks.
    """
    if not complexified:
        return QOneForm(hol=field.partials(p))
    d = field.partials8(p)
    hol = tuple(d[mu].scale(0.5) - d[mu + 4].scale(_I_HALF) for mu in range(4))
    anti = tuple(d[mu].scale(0.5) + d[mu + 4].scale(_I_HALF) for mu in range(4))
    return QOneForm(hol=hol, anti=anti)


def del_q(field: Field, p) -> Biquaternion:
    """Left quaternionic derivative (1/2)(d0 - i d1 - j d2 - k d3)."""
    d = field.partials(p)
    out = d[0]
    for mu in (1, 2, 3):
        out = out - BQ_BASIS[mu] * d[mu]
    return out.scale(0.5)


def del_qbar(field: Field, p) -> Biquaternion:
    """Conjugate derivative (1/2)(d0 + i d1 + j d2 + k d3)."""
    d = field.partials(p)
    out = d[0]
    for mu in (1, 2, 3):
        out = out + BQ_BASIS[mu] * d[mu]
    return out.scale(0.5)


def del_qbar_dqbar(partials) -> QOneForm:
    """Interleaved form (1/2) sum_mu e_mu dqbar (d_mu f).

    Contraction with v gives (1/2) sum_mu e_mu conj(v) (d_mu f); together
    with dq del_q this reconstructs the differential.
    """
    hol = []
    for nu in range(4):
        en_bar = BQ_BASIS[nu].conj()
        acc = Biquaternion()
        for mu in range(4):
            acc = acc + BQ_BASIS[mu] * en_bar * partials[mu]
        hol.append(acc.scale(0.5))
    return QOneForm(hol=hol)
