"""The involutive mapping cone and the correction terms d_lower, d_upper.

Two independent routes are provided. :func:`correction_terms_cone`
reads the terms off the two towers of the cone homology;
:func:`correction_terms_direct` searches the original complex for the
elements characterising them, one grading at a time.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import MonoMatrix, _bits, parity, solve_bits
from .complex import (
    GradedComplex,
    GradedMap,
    HomologyModule,
    d_invariant,
    homology,
    induced_on_homology,
)
from .errors import StructureError
from .iota import IotaComplex, require_valid

__all__ = [
    "ConeComplex",
    "InvolutiveSummary",
    "ai0_terms",
    "build_cone",
    "correction_terms_cone",
    "correction_terms_direct",
    "q_name",
]


def q_name(name: str) -> str:
    return f"Q.{name}"


@dataclass(frozen=True)
class ConeComplex:
    """Cone of ``Q(1 + iota)`` together with the Q-action."""

    complex: GradedComplex
    q: GradedMap
    base: IotaComplex


def build_cone(x: IotaComplex) -> ConeComplex:
    require_valid(x)
    c = x.complex
    gens = {n: g + 1 for n, g in c.gens.items()}
    gens.update({q_name(n): g for n, g in c.gens.items()})
    arrows = []
    for n in c.gens:
        arrows.extend((n, t) for t in c.diff.image(n))
        arrows.append((n, q_name(n)))
        arrows.extend((n, q_name(t)) for t in x.iota.matrix.image(n))
        arrows.extend((q_name(n), q_name(t)) for t in c.diff.image(n))
    cone = GradedComplex(gens, arrows)  # repeated arrows cancel in pairs
    q = GradedMap.from_arrows(cone, cone, 1, [(n, q_name(n)) for n in c.gens])
    return ConeComplex(cone, q, x)


@dataclass(frozen=True)
class InvolutiveSummary:
    d: Fraction
    d_lower: Fraction
    d_upper: Fraction
    hfi: HomologyModule | None = None
    q_action: MonoMatrix | None = None

    def triple(self) -> tuple:
        """``(d_lower, d, d_upper)``."""
        return (self.d_lower, self.d, self.d_upper)


def _same_class(a, b) -> bool:
    diff = a - b
    return diff.denominator == 1 and diff.numerator % 2 == 0


def correction_terms_cone(x: IotaComplex) -> InvolutiveSummary:
    """Terms from the cone: ``d_upper = t_plus + 2`` and ``d_lower = t_minus + 1``.

    ``t_plus`` is the top of the cone tower in the grading class of d,
    ``t_minus`` the top of the other one.
    """
    d = d_invariant(x.complex)
    cone = build_cone(x)
    h = homology(cone.complex)
    towers = h.free_towers
    if len(towers) != 2:
        raise StructureError(f"cone homology has {len(towers)} towers, expected 2")
    plus = [t for t in towers if _same_class(t, d)]
    minus = [t for t in towers if _same_class(t, d + 1)]
    if len(plus) != 1 or len(minus) != 1:
        raise StructureError("cone towers do not have opposite parity")
    return InvolutiveSummary(
        d=d,
        d_lower=minus[0] + 1,
        d_upper=plus[0] + 2,
        hfi=h,
        q_action=induced_on_homology(cone.q),
    )


def ai0_terms(a0: IotaComplex) -> InvolutiveSummary:
    """Correction terms of a large surgery from its pinned A0 model."""
    return correction_terms_cone(a0)


class _Slices:
    """Column data of d and 1 + iota restricted to grading slices."""

    def __init__(self, x: IotaComplex):
        c = x.complex
        self.c = c
        self.diff = c._cols()
        self.one_plus_iota = [
            col ^ (1 << i) for i, col in enumerate(c._cols(x.iota.matrix))
        ]
        h = homology(c)
        self.lam = h.tower_functional("T0")
        self.d = d_invariant(c)
        self.max_order = max((n for _, n in h.torsion), default=0)
        self.all_bits = (1 << len(c)) - 1

    def full(self, r) -> bool:
        return self.c.level(r) == self.all_bits


def _rows(blocks):
    """Equations ``sum_blocks M_b u_b = 0``.

    ``blocks`` is a list of ``(unknown generator indices, column masks)``;
    returns the row bitmasks and the number of unknowns.
    """
    rows: dict[int, int] = {}
    k = 0
    for indices, cols in blocks:
        for i in indices:
            for g in _bits(cols[i]):
                rows[g] = rows.get(g, 0) ^ (1 << k)
            k += 1
    return list(rows.values()), k


def _lower_feasible(s: _Slices, r) -> bool:
    c = s.c
    v_idx = list(_bits(c.level(r)))
    w_idx = list(_bits(c.level(r + 1)))
    nv = len(v_idx)
    n = nv + len(w_idx)
    # d v = 0
    cycle_rows, _ = _rows([(v_idx, s.diff)])
    # (1 + iota) v + d w = 0
    hit_rows, _ = _rows([(v_idx, s.one_plus_iota), (w_idx, s.diff)])
    lam_row = 0
    for k, i in enumerate(v_idx):
        if s.lam >> i & 1:
            lam_row |= 1 << k
    rows = cycle_rows + hit_rows + [lam_row | (1 << n)]
    part, _ = solve_bits(rows, n, want_kernel=False)
    return part is not None


def _upper_feasible(s: _Slices, r, m: int) -> bool:
    c = s.c
    x_idx = list(_bits(c.level(r)))
    y_idx = list(_bits(c.level(r + 1)))
    z_idx = list(_bits(c.level(r - 2 * m + 1)))
    nx, ny, nz = len(x_idx), len(y_idx), len(z_idx)
    n = nx + ny + nz
    # d y + (1 + iota) x = 0
    r1, _ = _rows([(x_idx, s.one_plus_iota), (y_idx, s.diff)])
    # d z + U^m x = 0; U^m x has the same support as x
    rows2: dict[int, int] = {}
    for k, i in enumerate(x_idx):
        rows2[i] = rows2.get(i, 0) ^ (1 << k)
    for k, i in enumerate(z_idx):
        for g in _bits(s.diff[i]):
            rows2[g] = rows2.get(g, 0) ^ (1 << (nx + ny + k))
    # lambda(U^m y + (1 + iota) z) = 1
    lam_row = 1 << n
    for k, i in enumerate(y_idx):
        if s.lam >> i & 1:
            lam_row ^= 1 << (nx + k)
    for k, i in enumerate(z_idx):
        if parity(s.lam & s.one_plus_iota[i]):
            lam_row ^= 1 << (nx + ny + k)
    rows = r1 + list(rows2.values()) + [lam_row]
    part, _ = solve_bits(rows, n, want_kernel=False)
    return part is not None


def correction_terms_direct(x: IotaComplex) -> tuple[Fraction, Fraction]:
    """``(d_lower, d_upper)`` by slice-wise linear feasibility.

    d_lower is two more than the top grading of a cycle v with
    non-zero tower coefficient and ``(1 + iota) v`` a boundary.
    d_upper is three more than the top grading of an x for which there
    are y, z with ``dy = (1 + iota) x``, ``dz = U^m x`` and
    ``U^m y + (1 + iota) z`` carrying the tower.
    """
    require_valid(x)
    s = _Slices(x)
    d = s.d

    r = d - 2
    lower = None
    while True:
        if _lower_feasible(s, r):
            lower = r + 2
            break
        if s.full(r) and s.full(r + 1):
            break
        r -= 2
    if lower is None:
        raise StructureError("no feasible grading for d_lower")

    m = s.max_order + 1
    top = max(x.complex.gens.values())
    r = d - 1
    while r + 2 <= top:
        r += 2
    upper = None
    while r >= d - 3:
        if _upper_feasible(s, r, m):
            upper = r + 3
            break
        r -= 2
    if upper is None:
        raise StructureError("no feasible grading for d_upper")
    return lower, upper
