"""Seeded random inputs for property batteries and tests."""

from __future__ import annotations

from .algebra import Biquaternion, Quaternion


def random_quaternion(rng, scale=1.0) -> Quaternion:
    return Quaternion(*(rng.normal(size=4) * scale))


def random_biquaternion(rng, scale=1.0) -> Biquaternion:
    return Biquaternion(random_quaternion(rng, scale), random_quaternion(rng, scale))


def random_unit_imaginary(rng) -> Quaternion:
    while True:
        v = rng.normal(size=3)
        n = (v ** 2).sum() ** 0.5
        if n > 1e-6:
            return Quaternion(0.0, *(v / n))


def random_nonzero_complex(rng, floor=0.05) -> complex:
    while True:
        z = complex(rng.normal(), rng.normal())
        if abs(z) > floor:
            return z


def random_invertible_biquaternion(rng, scale=1.0, floor=0.05) -> Biquaternion:
    while True:
        b = random_biquaternion(rng, scale)
        if abs(b.herm()) > floor * (1.0 + b.norm2()):
            return b
