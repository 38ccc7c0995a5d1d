"""Exact evaluation of the normalized spherical overlap product.

For a dominant weight mu in the spherical lattice the normalized constant
factors over the positive nonmultipliable roots.  Each root contributes a
finite rational product driven by

    mu_alpha = <mu, alpha>/<alpha, alpha>   (a nonnegative integer)
    rho_alpha, x_alpha, y_alpha             (quarter-integer parameters)

with x_alpha = (m_half + 2)/4 and y_alpha = (m_half + 2 m)/4 built from the
root multiplicities.  Everything here is exact Fraction arithmetic; the
log-Gamma evaluator ``c_gamma`` is the independent floating-point oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .rootdata import (
    ORBIT_ALPHA1,
    ORBIT_MIDDLE,
    SpaceDatum,
    Weight,
    _as_f_vector,
    _f_ints_from_xi,
    _first_integrality_violation,
    _rho4,
    _root_support,
    lambda_alpha,
    pad_xi_coeffs,
    rho,
    weight_from_xi,
)

# Exact rationals ride on the stdlib Fraction: arbitrary-precision integer
# numerator/denominator, canonical reduced form, positive denominator.
BigRational = Fraction


@dataclass(frozen=True)
class CFactorParams:
    """Per-root data for one factor of the overlap product."""

    mu_alpha: int
    rho_alpha: Fraction
    x_alpha: Fraction
    y_alpha: Fraction

    def __post_init__(self):
        if self.mu_alpha < 0:
            raise ValueError("mu_alpha must be a nonnegative integer")
        if self.rho_alpha <= 0:
            raise ValueError("rho_alpha must be positive")
        if self.x_alpha < Fraction(1, 2) or (4 * self.x_alpha).denominator != 1:
            raise ValueError("x_alpha must be a quarter-integer >= 1/2")
        if self.y_alpha < self.x_alpha - Fraction(1, 2) or (4 * self.y_alpha).denominator != 1:
            raise ValueError("y_alpha must be a quarter-integer >= x_alpha - 1/2")

    @classmethod
    def from_multiplicities(cls, mu_alpha: int, rho_alpha, m_alpha: int, m_half: int):
        return cls(
            mu_alpha=int(mu_alpha),
            rho_alpha=Fraction(rho_alpha),
            x_alpha=Fraction(m_half + 2, 4),
            y_alpha=Fraction(m_half + 2 * m_alpha, 4),
        )

    @classmethod
    def from_root(cls, datum: SpaceDatum, mu, root):
        m, mh = datum.mults_for(root.orbit)
        if m == 0 and mh == 0:
            raise ValueError(f"{root!r} has zero multiplicity, so it is not a root here")
        if not isinstance(mu, Weight):
            mu = weight_from_xi(datum, mu)
        mu_a = lambda_alpha(mu, root)
        if mu_a.denominator != 1 or mu_a < 0:
            raise ValueError(f"pairing of mu with {root!r} is {mu_a}, not a nonnegative integer")
        return cls.from_multiplicities(int(mu_a), lambda_alpha(rho(datum), root), m, mh)


def _factor_num_den(mu: int, rho: Fraction, x: Fraction, y: Fraction) -> tuple[int, int]:
    """Integer numerator/denominator of one root factor (unreduced)."""
    if mu == 0:
        return 1, 1
    q = 4 * (rho.denominator * x.denominator * y.denominator)  # common scale, a multiple of 4
    rq = int(rho * q)
    xq = int(x * q)
    yq = int(y * q)
    num = 1
    for j in range(2 * mu):
        num *= 2 * rq + j * q
    den = 1
    for j in range(mu):
        den *= (rq + xq + j * q) * (rq + yq + j * q)
    return num, den << (2 * mu)


def c_factor(params: CFactorParams) -> Fraction:
    """One root's contribution to the normalized overlap product.

    Equal to ((1+x/rho)(1+y/rho))^(-mu) * prod_{j<mu} [(1+j/(2rho)) *
    (1+(mu+j)/(2rho))] / [(1+j/(x+rho)) (1+j/(y+rho))]; evaluated here in
    the telescoped form prod_{j<2mu}(2rho+j) / (4^mu prod_{j<mu}
    (rho+x+j)(rho+y+j)), which is the same rational number.
    """
    num, den = _factor_num_den(params.mu_alpha, params.rho_alpha,
                               params.x_alpha, params.y_alpha)
    return Fraction(num, den)


def c_factor_reference(params: CFactorParams) -> Fraction:
    """Literal transcription of the displayed product; cross-check only."""
    mu, rho, x, y = params.mu_alpha, params.rho_alpha, params.x_alpha, params.y_alpha
    value = ((1 + x / rho) * (1 + y / rho)) ** -mu
    for j in range(mu):
        value *= (1 + Fraction(j, 1) / (2 * rho)) * (1 + Fraction(mu + j, 1) / (2 * rho))
        value /= (1 + Fraction(j, 1) / (x + rho)) * (1 + Fraction(j, 1) / (y + rho))
    return value


def _integer_f_coeffs(datum: SpaceDatum, w) -> list[int] | None:
    """Integer f-coefficients of a lattice weight, or None if not integral.

    Type-A vectors are shifted to the zero-first-coefficient representative
    first; lattice membership makes the shifted coordinates integers.
    """
    vec = list(_as_f_vector(datum, w))
    if datum.psi.label == "A":
        base = vec[0]
        vec = [c - base for c in vec]
    out = []
    for c in vec:
        c = Fraction(c)
        if c.denominator != 1:
            return None
        out.append(int(c))
    return out


def _reject(datum: SpaceDatum, w):
    root = _first_integrality_violation(datum, w)
    assert root is not None
    val = lambda_alpha(_as_f_vector(datum, w), root)
    raise ValueError(
        f"weight is not in the spherical dominant lattice: pairing with {root!r} is {val}"
    )


def c_value(datum: SpaceDatum, mu) -> Fraction:
    """The normalized overlap constant at dominant weight mu, exactly.

    ``mu`` may be a Weight or a sequence of fundamental-weight coefficients.
    Rejects weights outside the spherical dominant lattice, naming the
    lexicographically first pattern root that fails integrality.  Pattern
    roots of total multiplicity zero contribute nothing.
    """
    if isinstance(mu, Weight):
        coeffs = _integer_f_coeffs(datum, mu)
        if coeffs is None:
            _reject(datum, mu.coeffs_f)
    else:
        if len(mu) != datum.psi.rank:
            raise ValueError(f"need {datum.psi.rank} coefficients, got {len(mu)}")
        coeffs = _f_ints_from_xi(datum.psi, tuple(int(k) for k in mu))
    r4 = _rho4(datum)
    label = datum.psi.label
    rank = datum.psi.rank
    # (is_alpha1_orbit, mu_alpha, 8*rho_alpha) -> count of equal factors
    counts: dict[tuple[bool, int, int], int] = {}
    bad = False
    if label == "B":
        for j in range(rank):
            m = coeffs[j]
            if m < 0:
                bad = True
                break
            if m:
                key = (True, m, 2 * r4[j])
                counts[key] = counts.get(key, 0) + 1
    elif label == "C":
        for j in range(rank):
            m = coeffs[j]
            if m < 0 or m & 1:
                bad = True
                break
            if m:
                key = (True, m >> 1, r4[j])
                counts[key] = counts.get(key, 0) + 1
    if not bad and label in ("B", "C", "D"):
        alpha1_pairs = label == "D"
        for j in range(1, rank):
            mj, rj = coeffs[j], r4[j]
            for i in range(j):
                diff = mj - coeffs[i]
                tot = mj + coeffs[i]
                if diff < 0 or diff & 1 or tot < 0:
                    bad = True
                    break
                if diff:
                    key = (alpha1_pairs, diff >> 1, rj - r4[i])
                    counts[key] = counts.get(key, 0) + 1
                if tot:
                    key = (alpha1_pairs, tot >> 1, rj + r4[i])
                    counts[key] = counts.get(key, 0) + 1
            if bad:
                break
    elif not bad:  # A
        for j in range(1, rank + 1):
            mj, rj = coeffs[j], r4[j]
            for i in range(j):
                diff = mj - coeffs[i]
                if diff < 0 or diff & 1:
                    bad = True
                    break
                if diff:
                    key = (True, diff >> 1, rj - r4[i])
                    counts[key] = counts.get(key, 0) + 1
            if bad:
                break
    if bad:
        _reject(datum, coeffs)
    num = 1
    den = 1
    for (alpha1, mu_a, rho8), cnt in counts.items():
        m, mh = datum.mults_for(ORBIT_ALPHA1 if alpha1 else ORBIT_MIDDLE)
        if m == 0 and mh == 0:
            continue  # multiplicity-zero pattern entry: not a root
        if rho8 <= 0:
            raise ArithmeticError("internal error: nonpositive rho pairing on a root")
        x8 = 2 * (mh + 2)
        y8 = 2 * (mh + 2 * m)
        fn = 1
        for j in range(2 * mu_a):
            fn *= 2 * rho8 + 8 * j
        fd = 1
        for j in range(mu_a):
            fd *= (rho8 + x8 + 8 * j) * (rho8 + y8 + 8 * j)
        fd <<= 2 * mu_a
        if cnt == 1:
            num *= fn
            den *= fd
        else:
            num *= fn ** cnt
            den *= fd ** cnt
    return Fraction(num, den)


def _log_cprime(lam: float, quarter_mh: float, m: int) -> float:
    if lam <= 0:
        raise ArithmeticError("internal error: nonpositive Gamma argument")
    return (-2.0 * lam * math.log(2.0) + math.lgamma(2.0 * lam)
            - math.lgamma(lam + quarter_mh + 0.5)
            - math.lgamma(lam + quarter_mh + 0.5 * m))


def c_gamma(datum: SpaceDatum, lam) -> float:
    """Floating-point oracle for the normalized overlap constant.

    ``lam`` is the already-shifted spectral parameter (mu plus the half-sum
    weight), as a Weight or f-coefficient vector with positive pairings on
    every root.  Computed root by root through log-Gamma, so it shares no
    code path with the exact product.
    """
    vec = _as_f_vector(datum, lam)
    r4 = _rho4(datum)
    vec4: list | None = []
    for c in vec:
        c4 = 4 * c
        if c4.denominator == 1:
            vec4.append(int(c4))
        else:
            vec4 = None
            break
    if vec4 is None:
        vec4 = [4.0 * float(c) for c in vec]  # non-quarter input: float pairings
    total = 0.0
    mults = {ORBIT_ALPHA1: datum.mults_for(ORBIT_ALPHA1),
             ORBIT_MIDDLE: datum.mults_for(ORBIT_MIDDLE)}
    for orbit, norm_sq, entries in _root_support(datum.psi):
        m, mh = mults[orbit]
        if m == 0 and mh == 0:
            continue
        if len(entries) == 1:
            i0, v0 = entries[0]
            lam4 = vec4[i0] * v0
            rho4 = r4[i0] * v0
        else:
            (i0, v0), (i1, v1) = entries
            lam4 = vec4[i0] * v0 + vec4[i1] * v1
            rho4 = r4[i0] * v0 + r4[i1] * v1
        if lam4 == rho4:
            continue
        scale = 4 * norm_sq
        quarter = mh / 4.0
        total += _log_cprime(lam4 / scale, quarter, m) - _log_cprime(rho4 / scale, quarter, m)
    return math.exp(total)


def overlap_highest_weight(datum: SpaceDatum, mu) -> float:
    """Inner product of the normalized spherical vector with the highest
    weight vector: the square root of the exact overlap constant."""
    return math.sqrt(float(c_value(datum, mu)))


def _check_propagates(datum_m: SpaceDatum, datum_n: SpaceDatum) -> None:
    if datum_m.family != datum_n.family:
        raise ValueError(f"families differ: {datum_m.family!r} vs {datum_n.family!r}")
    if datum_m.grassmannian:
        if datum_m.param("p") != datum_n.param("p"):
            raise ValueError("fixed rank p differs between levels")
        if datum_m.param("q") < datum_n.param("q"):
            raise ValueError("higher level must have q at least the lower level's")
    elif datum_m.rank < datum_n.rank:
        raise ValueError("higher level must have rank at least the lower level's")


def overlap_q_squared(datum_m: SpaceDatum, datum_n: SpaceDatum, coeffs) -> Fraction:
    """Exact square of the limit-vector overlap between two levels of one
    chain: c(level m) / c(level n) for the same padded coefficient vector."""
    _check_propagates(datum_m, datum_n)
    low = pad_xi_coeffs(coeffs, datum_n.rank)
    high = pad_xi_coeffs(low, datum_m.rank)
    return c_value(datum_m, high) / c_value(datum_n, low)


def overlap_q(datum_m: SpaceDatum, datum_n: SpaceDatum, coeffs) -> float:
    """Overlap of the level-n spherical vector with the level-m one."""
    return math.sqrt(float(overlap_q_squared(datum_m, datum_n, coeffs)))
