"""Catalog of classical compact symmetric spaces and their restricted root data.

Every vector is stored as a tuple of coefficients over the orthonormal basis
f_1, ..., f_N of the (dual) maximal flat: index i-1 holds the coefficient of
f_i.  Ambient dimension N equals the rank, except for type A where N = rank+1
and linear functionals are only defined modulo the all-ones vector; type-A
representatives are normalized so the f_1 coefficient is zero.

The real Grassmannian family is bookkept with the C-type pattern: the long
roots 2f_j carry multiplicity 0 while their halves f_j carry q-p.  A pattern
root whose multiplicity and half-root multiplicity are both zero is not a
root of the space at all; evaluators skip it.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

ORBIT_ALPHA1 = "alpha1_orbit"
ORBIT_MIDDLE = "middle"

_MIN_RANK = {"A": 1, "B": 1, "C": 1, "D": 4}


@dataclass(frozen=True)
class RootSystemType:
    """Reduced root-system pattern: one of A, B, C, D with a rank.

    B_1 and C_1/C_2 are accepted as low-rank pattern aliases (the rank-one
    and rank-two Grassmannians need them); D requires rank >= 4.
    """

    label: str
    rank: int

    def __post_init__(self):
        if self.label not in _MIN_RANK:
            raise ValueError(f"unknown root-system label {self.label!r}")
        if self.rank < _MIN_RANK[self.label]:
            raise ValueError(
                f"type {self.label} needs rank >= {_MIN_RANK[self.label]}, got {self.rank}"
            )

    @property
    def ambient_dim(self) -> int:
        return self.rank + 1 if self.label == "A" else self.rank


@dataclass(frozen=True)
class RestrictedRoot:
    """A positive nonmultipliable root, stored sparsely.

    ``entries`` lists (index, coefficient) pairs with ascending 0-based
    indices; ``coeffs`` materializes the dense f-basis vector.
    """

    n: int
    entries: tuple[tuple[int, int], ...]
    orbit: str

    @property
    def coeffs(self) -> tuple[int, ...]:
        dense = [0] * self.n
        for idx, val in self.entries:
            dense[idx] = val
        return tuple(dense)

    def norm_sq(self) -> int:
        return sum(v * v for _, v in self.entries)

    def __repr__(self):
        parts = []
        for idx, val in self.entries:
            sign = "+" if val > 0 and parts else ("" if val > 0 else "-")
            mag = abs(val)
            parts.append(f"{sign}{'' if mag == 1 else mag}f{idx + 1}")
        return f"RestrictedRoot({''.join(parts)}, {self.orbit})"


@dataclass(frozen=True)
class Weight:
    """A weight: integer coordinates over the fundamental weights when known,
    plus the dense f-basis coefficient vector."""

    coeffs_f: tuple[Fraction, ...]
    coeffs_xi: tuple[int, ...] | None = None

    def __iter__(self):
        return iter(self.coeffs_f)


@dataclass(frozen=True)
class SpaceDatum:
    """One member of a catalog family: root pattern plus multiplicities.

    mult_middle applies to the roots f_j +- f_i; mult_alpha1 to the orbit of
    the distinguished end simple root (f_j for B, 2f_j for C, everything for
    A and D, whose roots form a single Weyl orbit); mult_half to the halves
    of the alpha1-orbit roots.  d is the real dimension of the base field
    for Grassmannian rows, None otherwise.
    """

    family: str
    row: str
    psi: RootSystemType
    params: tuple[tuple[str, int], ...]
    mult_middle: int
    mult_alpha1: int
    mult_half: int
    d: int | None = None

    def __post_init__(self):
        if min(self.mult_middle, self.mult_alpha1, self.mult_half) < 0:
            raise ValueError("multiplicities must be nonnegative")
        if self.mult_half and self.psi.label not in ("B", "C"):
            raise ValueError("half roots only occur on the B/C alpha1 orbit")
        if self.mult_half and self.psi.label == "B":
            # would put roots at f_j/2, outside the integer lattice kept here
            raise ValueError("B-pattern data with half roots is not supported")

    @property
    def rank(self) -> int:
        return self.psi.rank

    @property
    def grassmannian(self) -> bool:
        return self.d is not None

    @property
    def a(self) -> Fraction:
        """Half the weighted multiplicity of the alpha1 orbit."""
        return Fraction(2 * self.mult_alpha1 + self.mult_half, 4)

    @property
    def b(self) -> Fraction:
        """Half the middle multiplicity."""
        return Fraction(self.mult_middle, 2)

    def param(self, name: str) -> int:
        for key, value in self.params:
            if key == name:
                return value
        raise KeyError(name)

    def mults_for(self, orbit: str) -> tuple[int, int]:
        """(multiplicity of alpha, multiplicity of alpha/2) for an orbit."""
        if orbit == ORBIT_ALPHA1:
            return self.mult_alpha1, self.mult_half
        return self.mult_middle, 0


# --------------------------------------------------------------------------
# catalog


@dataclass(frozen=True)
class FamilyRow:
    slug: str
    row: str
    group: str
    subgroup: str
    psi_label: str
    param_kind: str  # "n" or "pq"
    mult_middle_of: object  # callable or int
    mult_alpha1_of: object
    mult_half_of: object
    d: int | None
    rank_of: object  # callable param(s) -> rank
    min_n: int = 1
    fixed_p: int | None = None


def _const(v):
    return lambda *_: v


FAMILIES: dict[str, FamilyRow] = {}


def _register(row: FamilyRow):
    FAMILIES[row.slug] = row


_register(FamilyRow("group-su", "1", "SU(n) x SU(n)", "diagonal SU(n)", "A", "n",
                    _const(2), _const(2), _const(0), None, lambda n: n - 1, min_n=2))
_register(FamilyRow("group-spin-odd", "2", "Spin(2n+1) x Spin(2n+1)", "diagonal Spin(2n+1)", "B", "n",
                    _const(2), _const(2), _const(0), None, lambda n: n))
_register(FamilyRow("group-spin-even", "3", "Spin(2n) x Spin(2n)", "diagonal Spin(2n)", "D", "n",
                    _const(2), _const(2), _const(0), None, lambda n: n, min_n=4))
_register(FamilyRow("group-sp", "4", "Sp(n) x Sp(n)", "diagonal Sp(n)", "C", "n",
                    _const(2), _const(2), _const(0), None, lambda n: n))
_register(FamilyRow("grass-complex", "5", "SU(p+q)", "S(U(p) x U(q))", "C", "pq",
                    _const(2), _const(1), lambda p, q: 2 * (q - p), 2, lambda p, q: p))
_register(FamilyRow("su-over-so", "6", "SU(n)", "SO(n)", "A", "n",
                    _const(1), _const(1), _const(0), None, lambda n: n - 1, min_n=2))
_register(FamilyRow("su-over-sp", "7", "SU(2n)", "Sp(n)", "A", "n",
                    _const(4), _const(4), _const(0), None, lambda n: n - 1, min_n=2))
_register(FamilyRow("grass-real", "8", "SO(p+q)", "SO(p) x SO(q)", "C", "pq",
                    _const(1), _const(0), lambda p, q: q - p, 1, lambda p, q: p))
_register(FamilyRow("so-over-u-even", "9.1", "SO(4n)", "U(2n)", "C", "n",
                    _const(4), _const(1), _const(0), None, lambda n: n))
_register(FamilyRow("so-over-u-odd", "9.2", "SO(4n+2)", "U(2n+1)", "C", "n",
                    _const(4), _const(1), _const(4), None, lambda n: n))
_register(FamilyRow("grass-quaternion", "10", "Sp(p+q)", "Sp(p) x Sp(q)", "C", "pq",
                    _const(4), _const(3), lambda p, q: 4 * (q - p), 4, lambda p, q: p))
_register(FamilyRow("sp-over-u", "11", "Sp(n)", "U(n)", "C", "n",
                    _const(1), _const(0), _const(0), None, lambda n: n))
# convenience alias: the p = 1 real Grassmannian chain (spheres)
_register(FamilyRow("rank1-real", "8", "SO(1+q)", "SO(q)", "C", "pq",
                    _const(1), _const(0), lambda p, q: q - p, 1, lambda p, q: 1,
                    fixed_p=1))


def build_space(family: str, p: int | None = None, q: int | None = None,
                n: int | None = None) -> SpaceDatum:
    """Instantiate one catalog family member.

    Grassmannian rows take p >= 1 and q >= p (rank1-real fixes p = 1);
    the remaining rows take the single group parameter n.
    """
    try:
        fam = FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; see catalog_rows()") from None
    if fam.param_kind == "pq":
        if fam.fixed_p is not None:
            if p is not None and p != fam.fixed_p:
                raise ValueError(f"family {family!r} fixes p = {fam.fixed_p}")
            p = fam.fixed_p
        if n is not None:
            raise ValueError(f"family {family!r} takes (p, q), not n")
        if p is None or q is None:
            raise ValueError(f"family {family!r} needs p and q")
        if p < 1 or q < p:
            raise ValueError(f"need 1 <= p <= q, got p={p}, q={q}")
        params = (("p", p), ("q", q))
        args = (p, q)
    else:
        if p is not None or q is not None:
            raise ValueError(f"family {family!r} takes n, not (p, q)")
        if n is None:
            raise ValueError(f"family {family!r} needs n")
        if n < fam.min_n:
            raise ValueError(f"family {family!r} needs n >= {fam.min_n}, got {n}")
        params = (("n", n),)
        args = (n,)
    return SpaceDatum(
        family=family,
        row=fam.row,
        psi=RootSystemType(fam.psi_label, fam.rank_of(*args)),
        params=params,
        mult_middle=fam.mult_middle_of(*args),
        mult_alpha1=fam.mult_alpha1_of(*args),
        mult_half=fam.mult_half_of(*args),
        d=fam.d,
    )


def catalog_rows() -> list[FamilyRow]:
    """All registered rows, primary catalog first, alias last."""
    return list(FAMILIES.values())


# --------------------------------------------------------------------------
# roots and weights


def _psi_of(obj) -> RootSystemType:
    return obj.psi if isinstance(obj, SpaceDatum) else obj


def iter_root_support(psi: RootSystemType) -> Iterator[tuple[str, int, tuple[tuple[int, int], ...]]]:
    """Stream the positive nonmultipliable roots as (orbit, norm_sq, entries).

    Entries are sparse (index, coefficient) pairs; no dense vectors are
    built, so this stays cheap at large rank.  Enumeration order is fixed
    but not lexicographic.
    """
    r = psi.rank
    label = psi.label
    if label == "A":
        for j in range(1, r + 1):        # root f_{j+1} - f_i, 0-based idx
            for i in range(j):
                yield ORBIT_ALPHA1, 2, ((i, -1), (j, 1))
        return
    pair_orbit = ORBIT_ALPHA1 if label == "D" else ORBIT_MIDDLE
    if label == "B":
        for j in range(r):
            yield ORBIT_ALPHA1, 1, ((j, 1),)
    elif label == "C":
        for j in range(r):
            yield ORBIT_ALPHA1, 4, ((j, 2),)
    for j in range(1, r):
        for i in range(j):
            yield pair_orbit, 2, ((i, -1), (j, 1))
            yield pair_orbit, 2, ((i, 1), (j, 1))


@functools.lru_cache(maxsize=64)
def _root_support(psi: RootSystemType) -> tuple[tuple[str, int, tuple[tuple[int, int], ...]], ...]:
    """Materialized iter_root_support, cached for evaluator hot loops."""
    return tuple(iter_root_support(psi))


def _sparse_lex_less(a: tuple[tuple[int, int], ...], b: tuple[tuple[int, int], ...]) -> bool:
    """Dense lexicographic order on f-coefficients, compared sparsely."""
    ia = ib = 0
    while ia < len(a) or ib < len(b):
        pa = a[ia][0] if ia < len(a) else None
        pb = b[ib][0] if ib < len(b) else None
        if pa == pb:
            va, vb = a[ia][1], b[ib][1]
            if va != vb:
                return va < vb
            ia += 1
            ib += 1
        elif pb is None or (pa is not None and pa < pb):
            # a has a nonzero where b has zero
            if a[ia][1] != 0:
                return a[ia][1] < 0
            ia += 1
        else:
            if b[ib][1] != 0:
                return b[ib][1] > 0
            ib += 1
    return False


def positive_nonmultipliable_roots(obj: Union[SpaceDatum, RootSystemType]) -> list[RestrictedRoot]:
    """The positive nonmultipliable roots, lexicographically ordered by
    f-coefficients.  Materializes dense-sortable objects; intended for
    moderate ranks (evaluators stream instead)."""
    psi = _psi_of(obj)
    n = psi.ambient_dim
    roots = [RestrictedRoot(n, entries, orbit) for orbit, _, entries in iter_root_support(psi)]
    roots.sort(key=lambda root: root.coeffs)
    return roots


def simple_roots(obj: Union[SpaceDatum, RootSystemType]) -> list[RestrictedRoot]:
    """Simple roots alpha_1..alpha_r; alpha_1 is the distinguished end."""
    psi = _psi_of(obj)
    r, n, label = psi.rank, psi.ambient_dim, psi.label
    out = []
    if label == "A":
        for j in range(r):
            out.append(RestrictedRoot(n, ((j, -1), (j + 1, 1)), ORBIT_ALPHA1))
        return out
    if label == "B":
        out.append(RestrictedRoot(n, ((0, 1),), ORBIT_ALPHA1))
    elif label == "C":
        out.append(RestrictedRoot(n, ((0, 2),), ORBIT_ALPHA1))
    else:  # D
        out.append(RestrictedRoot(n, ((0, 1), (1, 1)), ORBIT_ALPHA1))
    pair_orbit = ORBIT_ALPHA1 if label == "D" else ORBIT_MIDDLE
    for j in range(1, r):
        out.append(RestrictedRoot(n, ((j - 1, -1), (j, 1)), pair_orbit))
    return out


@functools.lru_cache(maxsize=256)
def _xi_int_rows(psi: RootSystemType) -> tuple[tuple[int, ...], ...]:
    """Integer f-coefficient rows of xi_1..xi_r (every fundamental weight
    here has integer f-coordinates; type-A rows already start with 0)."""
    r, n, label = psi.rank, psi.ambient_dim, psi.label
    rows: list[tuple[int, ...]] = []
    if label == "A":
        for j in range(1, r + 1):
            rows.append(tuple(2 if i >= j else 0 for i in range(n)))
        return tuple(rows)
    if label == "B":
        rows.append((1,) * n)
    elif label == "C":
        rows.append((2,) * n)
    else:  # D
        rows.append((1,) * n)
        rows.append((-1,) + (1,) * (n - 1))
    start = 2 if label in ("B", "C") else 3
    for j in range(start, r + 1):
        rows.append(tuple(2 if i >= j - 1 else 0 for i in range(n)))
    return tuple(rows)


def fundamental_weights(obj: Union[SpaceDatum, RootSystemType]) -> list[Weight]:
    """Weights xi_1..xi_r dual to the simple roots: <xi_i, alpha_j>/<alpha_j,alpha_j> = delta_ij."""
    psi = _psi_of(obj)
    out = []
    for j, row in enumerate(_xi_int_rows(psi)):
        unit = tuple(1 if i == j else 0 for i in range(psi.rank))
        out.append(Weight(tuple(Fraction(c) for c in row), unit))
    return out


def _f_ints_from_xi(psi: RootSystemType, coeffs: Sequence[int]) -> list[int]:
    """Integer f-coordinates of sum_j coeffs[j] * xi_{j+1}; no validation."""
    f = [0] * psi.ambient_dim
    for k, row in zip(coeffs, _xi_int_rows(psi)):
        if k:
            for i, c in enumerate(row):
                if c:
                    f[i] += k * c
    return f


def weight_from_xi(obj: Union[SpaceDatum, RootSystemType], coeffs: Sequence[int]) -> Weight:
    """The integer combination sum_j coeffs[j] * xi_{j+1}.

    Coefficients may be any integers; nonnegative ones give dominant
    weights in the spherical lattice.
    """
    psi = _psi_of(obj)
    if len(coeffs) != psi.rank:
        raise ValueError(f"need {psi.rank} coefficients, got {len(coeffs)}")
    coeffs = tuple(int(k) for k in coeffs)
    f = _f_ints_from_xi(psi, coeffs)
    return Weight(tuple(Fraction(c) for c in f), coeffs)


def pad_xi_coeffs(coeffs: Sequence[int], rank: int) -> tuple[int, ...]:
    """Zero-pad a fundamental-weight coefficient vector up to ``rank``.

    This is how a dominant weight at a lower rank propagates up a chain:
    the coefficients are kept and the new simple roots get coefficient 0.
    """
    coeffs = tuple(int(k) for k in coeffs)
    if len(coeffs) > rank:
        raise ValueError(f"cannot pad {len(coeffs)} coefficients down to rank {rank}")
    return coeffs + (0,) * (rank - len(coeffs))


def zero_weight(obj: Union[SpaceDatum, RootSystemType]) -> Weight:
    psi = _psi_of(obj)
    return Weight(tuple(Fraction(0) for _ in range(psi.ambient_dim)),
                  tuple(0 for _ in range(psi.rank)))


def _as_f_vector(obj, lam) -> tuple[Fraction, ...]:
    psi = _psi_of(obj)
    vec = tuple(Fraction(c) for c in (lam.coeffs_f if isinstance(lam, Weight) else lam))
    if len(vec) != psi.ambient_dim:
        raise ValueError(f"expected {psi.ambient_dim} f-coefficients, got {len(vec)}")
    return vec


@functools.lru_cache(maxsize=256)
def _rho4(datum: SpaceDatum) -> tuple[int, ...]:
    """4 * rho in f-coefficients (always integral).

    rho is half the multiplicity-weighted sum of all positive restricted
    roots, halves included; the sum is taken orbit by orbit.  Type-A output
    is normalized to a zero first coefficient.
    """
    psi = datum.psi
    r, n, label = psi.rank, psi.ambient_dim, psi.label
    two_rho = [0] * n
    if label == "A":
        m = datum.mult_alpha1
        for j in range(n):
            two_rho[j] = m * (2 * (j + 1) - 1 - n)
        base = two_rho[0]
        two_rho = [c - base for c in two_rho]
        return tuple(2 * c for c in two_rho)
    m_pair = datum.mult_alpha1 if label == "D" else datum.mult_middle
    for j in range(n):
        two_rho[j] += m_pair * 2 * j          # sum of f_j +- f_i over i < j
    if label == "B":
        for j in range(n):
            two_rho[j] += datum.mult_alpha1   # roots f_j
    elif label == "C":
        for j in range(n):
            two_rho[j] += 2 * datum.mult_alpha1 + datum.mult_half  # 2f_j and halves f_j
    return tuple(2 * c for c in two_rho)


def rho(datum: SpaceDatum) -> Weight:
    """Half the multiplicity-weighted sum of the positive restricted roots."""
    return Weight(tuple(Fraction(c, 4) for c in _rho4(datum)))


def lambda_alpha(lam, alpha: RestrictedRoot, *, scale: int | Fraction = 1) -> Fraction:
    """<lam, alpha>/<alpha, alpha> in the f-basis inner product.

    ``scale`` multiplies the Gram matrix uniformly; the ratio is invariant,
    which is the normalization-independence witness used in tests.
    """
    if scale <= 0:
        raise ValueError("scale must be positive")
    vec = lam.coeffs_f if isinstance(lam, Weight) else lam
    num = sum(Fraction(vec[idx]) * val for idx, val in alpha.entries)
    return (Fraction(scale) * num) / (Fraction(scale) * alpha.norm_sq())


def _first_integrality_violation(datum: SpaceDatum, lam) -> RestrictedRoot | None:
    """Lexicographically first pattern root alpha with <lam,alpha>/<alpha,alpha>
    not a nonnegative integer, or None."""
    psi = datum.psi
    vec = _as_f_vector(datum, lam)
    worst: tuple[tuple[int, int], ...] | None = None
    worst_orbit = ""
    for orbit, norm_sq, entries in iter_root_support(psi):
        num = sum(vec[idx] * val for idx, val in entries)
        val = num / norm_sq
        if val.denominator != 1 or val < 0:
            if worst is None or _sparse_lex_less(entries, worst):
                worst = entries
                worst_orbit = orbit
    if worst is None:
        return None
    return RestrictedRoot(psi.ambient_dim, worst, worst_orbit)


def in_lambda_plus(datum: SpaceDatum, lam) -> bool:
    """Membership in the spherical dominant lattice: the pairing with every
    positive nonmultipliable pattern root must be a nonnegative integer."""
    return _first_integrality_violation(datum, lam) is None
