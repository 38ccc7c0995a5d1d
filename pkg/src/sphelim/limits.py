"""Direct systems of symmetric spaces and the rank dichotomy.

A chain is either finite-rank (Grassmannian families: p stays fixed, the
level is the growing q) or infinite-rank (the level IS the rank).  Along a
chain, a dominant weight propagates by keeping its fundamental-weight
coefficients and zero-padding; the overlap constants then form a
nonincreasing sequence whose limit is positive exactly in the finite-rank
case.  ``classify`` decides which side of the dichotomy a computed sequence
sits on, attaching a divergence certificate in the infinite-rank case.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cfunc import c_value
from .rootdata import (
    FAMILIES,
    ORBIT_ALPHA1,
    ORBIT_MIDDLE,
    RestrictedRoot,
    RootSystemType,
    SpaceDatum,
    Weight,
    build_space,
    lambda_alpha,
    pad_xi_coeffs,
    rho,
    weight_from_xi,
)

VERDICT_POSITIVE = "PositiveLimit"
VERDICT_ZERO = "ZeroLimit"
VERDICT_UNDECIDED = "Undecided"

MODE_FINITE = "finite_rank"
MODE_INFINITE = "infinite_rank"


@dataclass(frozen=True)
class DirectSystem:
    """A family chain plus the base dominant weight (xi-coefficients).

    Grassmannian families run in finite-rank mode with ``fixed_p`` set
    (rank1-real pins p = 1 automatically); the other families run in
    infinite-rank mode, where len(base_coeffs) is the base rank.
    """

    family: str
    base_coeffs: tuple[int, ...]
    fixed_p: int | None = None

    def __post_init__(self):
        fam = FAMILIES.get(self.family)
        if fam is None:
            raise ValueError(f"unknown family {self.family!r}")
        object.__setattr__(self, "base_coeffs", tuple(int(k) for k in self.base_coeffs))
        if any(k < 0 for k in self.base_coeffs):
            raise ValueError("base coefficients must be nonnegative")
        if fam.param_kind == "pq":
            p = fam.fixed_p if fam.fixed_p is not None else self.fixed_p
            if p is None:
                raise ValueError(f"family {self.family!r} needs fixed_p")
            if self.fixed_p is not None and self.fixed_p != p:
                raise ValueError(f"family {self.family!r} fixes p = {p}")
            object.__setattr__(self, "fixed_p", p)
            if len(self.base_coeffs) != p:
                raise ValueError(f"need exactly p = {p} coefficients")
        else:
            if self.fixed_p is not None:
                raise ValueError(f"family {self.family!r} grows in rank; fixed_p does not apply")
            if not self.base_coeffs:
                raise ValueError("need at least one base coefficient")
            _n_for_rank(fam, len(self.base_coeffs))  # validates the base rank exists

    @property
    def mode(self) -> str:
        return MODE_FINITE if FAMILIES[self.family].param_kind == "pq" else MODE_INFINITE

    @property
    def base_level(self) -> int:
        if self.mode == MODE_FINITE:
            return self.fixed_p
        return len(self.base_coeffs)

    @property
    def trivial(self) -> bool:
        return not any(self.base_coeffs)


def _n_for_rank(fam, rank: int) -> int:
    for n in (rank, rank + 1):
        if n >= fam.min_n and fam.rank_of(n) == rank:
            return n
    raise ValueError(f"family {fam.slug!r} has no member of rank {rank}")


def datum_at_level(system: DirectSystem, level: int) -> SpaceDatum:
    fam = FAMILIES[system.family]
    if system.mode == MODE_FINITE:
        return build_space(system.family, p=system.fixed_p, q=level)
    return build_space(system.family, n=_n_for_rank(fam, level))


def propagate(system: DirectSystem, level: int) -> tuple[SpaceDatum, Weight]:
    """The space and the propagated weight at one level of the chain.

    Finite-rank mode reuses the coefficients unchanged (the rank is fixed);
    infinite-rank mode zero-pads them up to the level's rank.  Either way
    the weight restricts back to the base weight on the smaller flat.
    """
    if level < system.base_level:
        raise ValueError(f"level {level} is below the base level {system.base_level}")
    datum = datum_at_level(system, level)
    coeffs = pad_xi_coeffs(system.base_coeffs, datum.rank)
    return datum, weight_from_xi(datum, coeffs)


@dataclass(frozen=True)
class CSequence:
    """Overlap constants along a chain, exact and sorted by level."""

    system: DirectSystem
    levels: tuple[int, ...]
    values: tuple[Fraction, ...]

    def last(self) -> tuple[int, Fraction]:
        return self.levels[-1], self.values[-1]

    def extended(self, more_levels: Sequence[int], max_workers: int = 1) -> "CSequence":
        fresh = [lv for lv in more_levels if lv not in set(self.levels)]
        if not fresh:
            return self
        add = _values_at(self.system, fresh, max_workers)
        merged = sorted(zip(self.levels + tuple(fresh), self.values + tuple(add)))
        return CSequence(self.system,
                         tuple(lv for lv, _ in merged),
                         tuple(v for _, v in merged))


def _level_value(args) -> Fraction:
    family, fixed_p, base_coeffs, level = args
    system = DirectSystem(family, base_coeffs, fixed_p)
    datum, w = propagate(system, level)
    return c_value(datum, w)


def _values_at(system: DirectSystem, levels: Sequence[int], max_workers: int) -> list[Fraction]:
    jobs = [(system.family, system.fixed_p, system.base_coeffs, lv) for lv in levels]
    if max_workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=max_workers) as pool:
            return list(pool.map(_level_value, jobs, chunksize=8))
    return [_level_value(job) for job in jobs]


def default_max_workers() -> int:
    """Worker cap from the SPHELIM_THREADS environment variable (default 1)."""
    raw = os.environ.get("SPHELIM_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValueError(f"SPHELIM_THREADS must be an integer, got {raw!r}") from None


def c_sequence(system: DirectSystem, levels: Sequence[int],
               max_workers: int = 1) -> CSequence:
    """Exact overlap constants at the given levels (sorted, deduplicated).

    Worker count only changes wall time, never values: the per-level results
    are assembled in level order.
    """
    lvs = sorted(set(int(lv) for lv in levels))
    if not lvs:
        raise ValueError("need at least one level")
    if lvs[0] < system.base_level:
        raise ValueError(f"level {lvs[0]} is below the base level {system.base_level}")
    vals = _values_at(system, lvs, max_workers)
    return CSequence(system, tuple(lvs), tuple(vals))


# --------------------------------------------------------------------------
# divergence certificates


def divergence_certificate(a: Sequence, x: Sequence, L: int, N: int,
                           epsilon=None, delta=None) -> Fraction:
    """Exact partial product prod_{j=L}^{N} (1 + a_j/(x_j + j))^(-1).

    The sequences are aligned with j = L..N.  Requires a_j >= epsilon > 0
    and 0 <= x_j <= delta (defaults: the observed min/max).  When the
    per-term ratio a_j/(x_j+j) stays below 5/2, each factor is at most
    exp(-(epsilon/2)/(delta+j)), so the full product decays under
    exp(-(epsilon/2) * sum 1/(delta+j)) -> 0.
    """
    if N < L:
        return Fraction(1)
    count = N - L + 1
    a = [Fraction(v) for v in a]
    x = [Fraction(v) for v in x]
    if len(a) != count or len(x) != count:
        raise ValueError(f"need {count} entries for j = {L}..{N}")
    epsilon = min(a) if epsilon is None else Fraction(epsilon)
    delta = max(x) if delta is None else Fraction(delta)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    product = Fraction(1)
    for offset, (aj, xj) in enumerate(zip(a, x)):
        j = L + offset
        if aj < epsilon:
            raise ValueError(f"a_{j} = {aj} violates the lower bound {epsilon}")
        if xj < 0 or xj > delta:
            raise ValueError(f"x_{j} = {xj} violates the band [0, {delta}]")
        product /= 1 + aj / (xj + j)
    return product


def decay_bound(epsilon, delta, L: int, N: int) -> float:
    """exp(-(epsilon/2) * sum_{j=L}^{N} 1/(delta+j)); comparison schedule."""
    eps = float(epsilon)
    dlt = float(delta)
    return math.exp(-0.5 * eps * math.fsum(1.0 / (dlt + j) for j in range(L, N + 1)))


def infinite_rank_root_sequence(psi_type, level: int, base_coeff_index: int = 1) -> RestrictedRoot:
    """The witness root used to prove decay along an infinite-rank chain.

    At level n (= rank) the root pairs to 1 with the propagated fundamental
    weight of index ``base_coeff_index``, has no half root, and its pairing
    with the half-sum weight grows affinely in n: f_{n+1}-f_1 for A,
    f_n (index 1) or f_n-f_1 (index > 1) for B, f_n+f_1 for C, f_n+f_2
    for D.
    """
    label = psi_type.label if isinstance(psi_type, RootSystemType) else str(psi_type)
    n, k = int(level), int(base_coeff_index)
    if k < 1:
        raise ValueError("base_coeff_index is 1-based")
    if label == "A":
        if n < max(k, 1):
            raise ValueError(f"A witness needs level >= {max(k, 1)}")
        return RestrictedRoot(n + 1, ((0, -1), (n, 1)), ORBIT_ALPHA1)
    if label == "B":
        if k == 1:
            if n < 1:
                raise ValueError("B witness needs level >= 1")
            return RestrictedRoot(n, ((n - 1, 1),), ORBIT_ALPHA1)
        if n < max(k, 2):
            raise ValueError(f"B witness needs level >= {max(k, 2)}")
        return RestrictedRoot(n, ((0, -1), (n - 1, 1)), ORBIT_MIDDLE)
    if label == "C":
        if n < max(k, 2):
            raise ValueError(f"C witness needs level >= {max(k, 2)}")
        return RestrictedRoot(n, ((0, 1), (n - 1, 1)), ORBIT_MIDDLE)
    if label == "D":
        if n < max(k, 3):
            raise ValueError(f"D witness needs level >= {max(k, 3)}")
        return RestrictedRoot(n, ((1, 1), (n - 1, 1)), ORBIT_ALPHA1)
    raise ValueError(f"unknown root-system label {label!r}")


def _witness_min_level(label: str, k: int) -> int:
    if label == "A":
        return max(k, 1)
    if label == "B":
        return max(k, 1) if k == 1 else max(k, 2)
    if label == "C":
        return max(k, 2)
    return max(k, 3)


def _certificate_evidence(seq: CSequence) -> dict | None:
    """Build divergence evidence from the witness-root factors.

    Returns None when the scanned levels cannot support it (too few usable
    levels, or the affine/bound checks fail).
    """
    system = seq.system
    fam = FAMILIES[system.family]
    label = fam.psi_label
    k0 = next((i + 1 for i, c in enumerate(system.base_coeffs) if c), None)
    if k0 is None:
        return None
    start = _witness_min_level(label, k0)
    rows = []  # (level, rho_alpha, y_alpha, factor)
    for level in seq.levels:
        if level < start:
            continue
        root = infinite_rank_root_sequence(label, level, k0)
        datum, w = propagate(system, level)
        m, mh = datum.mults_for(root.orbit)
        if mh != 0 or m <= 0:
            return None
        mu_a = lambda_alpha(w, root)
        if mu_a < 1:
            return None
        rho_a = lambda_alpha(rho(datum), root)
        y = Fraction(mh + 2 * m, 4)
        rows.append((level, rho_a, y, 1 / (1 + y / rho_a)))
    if len(rows) < 2:
        return None
    (n1, r1, y1, _), (n2, r2, _, _) = rows[0], rows[1]
    t = (r2 - r1) / (n2 - n1)
    s = r1 - t * n1
    if t <= 0:
        return None
    for level, rho_a, y, _ in rows:
        if rho_a != t * level + s or y != y1:
            return None  # witness data not affine/constant: no certificate
    shift = max(0, math.ceil(-s / t))
    rows = [r for r in rows if r[0] - shift >= 1]  # shifted index must start at 1
    if len(rows) < 2:
        return None
    epsilon = y1 / t
    delta = shift + s / t
    first_j = rows[0][0] - shift
    if epsilon / (delta + first_j) > Fraction(5, 2):
        return None
    js = [level - shift for level, *_ in rows]
    partial = Fraction(1)
    for *_, factor in rows:
        partial *= factor
    bound = None
    if js == list(range(js[0], js[-1] + 1)):
        # contiguous scan: the factors match the decay schedule term by term
        count = len(js)
        check = divergence_certificate([epsilon] * count, [delta] * count,
                                       js[0], js[-1], epsilon=epsilon, delta=delta)
        if check != partial:
            return None
        bound = decay_bound(epsilon, delta, js[0], js[-1])
    last_value = seq.values[-1]
    return {
        "witness_levels": [level for level, *_ in rows],
        "witness_index": k0,
        "rho_slope": t,
        "rho_intercept": s,
        "epsilon": epsilon,
        "delta": delta,
        "index_shift": shift,
        "partial_product": partial,
        "decay_bound": bound,
        "last_value_below_partial": last_value <= partial,
    }


# --------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class ClassifyConfig:
    """Thresholds for the convergence verdict.

    zero_floor: crossing it (infinite-rank mode) yields ZeroLimit even
    without a certificate.  positive_floor: a PositiveLimit verdict demands
    the stabilized values stay above it (default: bare positivity, which
    exact arithmetic gives for free).  window/rtol: the last ``window``
    levels must have consecutive relative changes below ``rtol``.
    """

    zero_floor: Fraction = Fraction(1, 10 ** 6)
    positive_floor: Fraction = Fraction(0)
    window: int = 5
    rtol: float = 1e-4

    def __post_init__(self):
        object.__setattr__(self, "zero_floor", Fraction(self.zero_floor))
        object.__setattr__(self, "positive_floor", Fraction(self.positive_floor))
        if self.window < 2:
            raise ValueError("window must be at least 2")
        if self.rtol <= 0 or self.zero_floor <= 0:
            raise ValueError("rtol and zero_floor must be positive")


@dataclass(frozen=True)
class ConvergenceReport:
    verdict: str
    limit_estimate: float | None
    evidence: dict = field(compare=False)

    @property
    def decided(self) -> bool:
        return self.verdict != VERDICT_UNDECIDED


def _richardson(levels: Sequence[int], values: Sequence[Fraction]) -> float:
    """Two-point extrapolation against a 1/level tail."""
    if len(values) == 1:
        return float(values[0])
    n, m = levels[-2], levels[-1]
    cn, cm = values[-2], values[-1]
    return float((m * cm - n * cn) / Fraction(m - n))


def classify(seq: CSequence, config: ClassifyConfig | None = None) -> ConvergenceReport:
    """Decide the limit of an overlap sequence.

    Finite-rank chains converge to a positive limit: the verdict waits for a
    stabilization window, then reports the extrapolated limit.  Infinite-rank
    chains with a nonzero weight decay to zero: the verdict comes from the
    witness-root certificate or from crossing the floor, whichever is
    available.  Anything else stays Undecided with a request for more levels.
    """
    config = config or ClassifyConfig()
    if not seq.levels:
        raise ValueError("empty sequence")
    for earlier, later in zip(seq.values, seq.values[1:]):
        if later > earlier:
            raise ValueError(
                "overlap sequence increased between levels; this cannot happen "
                "for a propagated dominant weight and indicates an upstream bug"
            )
    last_level, last_value = seq.last()
    base_evidence = {
        "mode": seq.system.mode,
        "levels_scanned": len(seq.levels),
        "last_level": last_level,
        "last_value": last_value,
    }
    if all(v == 1 for v in seq.values):
        return ConvergenceReport(VERDICT_POSITIVE, 1.0,
                                 base_evidence | {"constant_one": True})
    if seq.system.mode == MODE_FINITE:
        w = config.window
        if len(seq.values) >= w:
            tail = seq.values[-w:]
            rels = [float((hi - lo) / hi) for hi, lo in zip(tail, tail[1:])]
            if max(rels) < config.rtol and min(tail) > config.positive_floor:
                estimate = _richardson(seq.levels, seq.values)
                return ConvergenceReport(VERDICT_POSITIVE, estimate, base_evidence | {
                    "stabilization_window": list(seq.levels[-w:]),
                    "max_relative_change": max(rels),
                    "window_lower_bound": min(tail),
                    "extrapolation": "two-point against 1/level",
                })
        return ConvergenceReport(VERDICT_UNDECIDED, None, base_evidence | {
            "request": "more levels",
            "reason": f"no trailing window of {w} levels with relative change below {config.rtol}",
        })
    certificate = _certificate_evidence(seq)
    floor_crossed = last_value < config.zero_floor
    if certificate is not None or floor_crossed:
        return ConvergenceReport(VERDICT_ZERO, 0.0, base_evidence | {
            "floor": config.zero_floor,
            "floor_crossed": floor_crossed,
            "certificate": certificate,
        })
    return ConvergenceReport(VERDICT_UNDECIDED, None, base_evidence | {
        "request": "more levels",
        "reason": "no divergence certificate yet and the floor was not crossed",
    })


def classify_scan(system: DirectSystem, max_level: int,
                  config: ClassifyConfig | None = None,
                  batch: int = 25, max_workers: int = 1) -> tuple[CSequence, ConvergenceReport]:
    """Extend a sequence level by level until classify() decides or the cap
    is reached.  Returns the scanned sequence and the final report."""
    config = config or ClassifyConfig()
    start = system.base_level
    if max_level < start:
        raise ValueError("max_level is below the base level")
    seq = None
    level = start
    while True:
        upto = min(max_level, level + batch - 1)
        chunk = list(range(level, upto + 1))
        seq = c_sequence(system, chunk, max_workers) if seq is None else seq.extended(chunk, max_workers)
        report = classify(seq, config)
        if report.decided or upto == max_level:
            return seq, report
        level = upto + 1
