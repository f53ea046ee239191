"""Local maps between iota-complexes and the group structure.

A local map X -> Y is a grading-preserving chain map F together with a
homotopy H from ``F iota_X`` to ``iota_Y F`` such that F carries the
tower of X onto a U-power of the tower of Y. Both F and H have finitely
many homogeneity-allowed coefficients, so the existence question is a
single F2-linear feasibility problem.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import MonoMatrix, compose
from .complex import GradedComplex, GradedMap, _System, homology, null_homotopy
from .errors import ConsistencyError
from .iota import IotaComplex, dual, require_valid, tensor
from .knots import preset

__all__ = [
    "DualityWitness",
    "LocalMapWitness",
    "duality_witness",
    "find_local_map",
    "group_inverse",
    "group_product",
    "group_unit",
    "locally_equivalent",
]


def _tower_coefficient(x: IotaComplex, y: IotaComplex, f: MonoMatrix):
    """U-power k with ``F(tower of X) = U^k (tower of Y) + torsion``, or None."""
    hx = homology(x.complex)
    hy = homology(y.complex)
    rep = hx.representatives["T0"]
    coords = hy.coordinates(f.apply(rep))
    return coords.get("T0")


@dataclass(frozen=True)
class LocalMapWitness:
    source: IotaComplex
    target: IotaComplex
    F: GradedMap
    H: GradedMap
    tower_power: int

    def verify(self) -> bool:
        x, y = self.source, self.target
        f, h = self.F.matrix, self.H.matrix
        if f.shift != 0 or h.shift != -1:
            return False
        if compose(y.complex.diff, f) != compose(f, x.complex.diff):
            return False
        lhs = compose(f, x.iota.matrix) + compose(y.iota.matrix, f)
        rhs = compose(y.complex.diff, h) + compose(h, x.complex.diff)
        if lhs != rhs:
            return False
        return _tower_coefficient(x, y, f) == self.tower_power


def find_local_map(x: IotaComplex, y: IotaComplex) -> LocalMapWitness | None:
    """A local map ``x -> y`` with its homotopy, or None if there is none."""
    require_valid(x)
    require_valid(y)
    cx, cy = x.complex, y.complex
    system = _System()
    unk_f = system.add_unknown_map(cx.gens, cy.gens, 0, "F")
    unk_h = system.add_unknown_map(cx.gens, cy.gens, -1, "H")
    # dF + Fd = 0
    system.left(cy.diff, unk_f, "chain")
    system.right(unk_f, cx.diff, "chain")
    # F iota + iota F + dH + Hd = 0
    system.left(y.iota.matrix, unk_f, "iota")
    system.right(unk_f, x.iota.matrix, "iota")
    system.left(cy.diff, unk_h, "iota")
    system.right(unk_h, cx.diff, "iota")
    # tower coefficient of F(tower representative) is 1
    rep = homology(cx).representatives["T0"].support
    lam = homology(cy).tower_functional("T0")
    idx = cy._index
    hits = [
        k
        for k, (tag, s, t) in enumerate(system.unknowns)
        if tag == "F" and s in rep and lam >> idx[t] & 1
    ]
    system.add_row(hits, 1)
    part, _ = system.solve()
    if part is None:
        return None
    f = GradedMap(cx, cy, system.assemble(part, "F", cx.gens, cy.gens, 0))
    h = GradedMap(cx, cy, system.assemble(part, "H", cx.gens, cy.gens, -1))
    k = _tower_coefficient(x, y, f.matrix)
    witness = LocalMapWitness(x, y, f, h, k if k is not None else -1)
    if k is None or not witness.verify():
        raise ConsistencyError("local map failed re-verification")
    return witness


def locally_equivalent(x: IotaComplex, y: IotaComplex) -> bool:
    return find_local_map(x, y) is not None and find_local_map(y, x) is not None


def group_unit() -> IotaComplex:
    return preset("unit")


def group_product(x: IotaComplex, y: IotaComplex) -> IotaComplex:
    return tensor(x, y)


def group_inverse(x: IotaComplex) -> IotaComplex:
    return dual(x)


@dataclass(frozen=True)
class DualityWitness:
    """Coevaluation ``gamma: e -> X (x) X^v`` and trace ``zeta: X (x) X^v -> e``.

    ``h_gamma`` and ``h_zeta`` are homotopies from ``gamma`` to
    ``iota gamma`` and from ``zeta`` to ``zeta iota``.
    """

    x: IotaComplex
    product: IotaComplex
    unit: IotaComplex
    gamma: GradedMap
    zeta: GradedMap
    h_gamma: GradedMap
    h_zeta: GradedMap

    def zeta_gamma(self) -> MonoMatrix:
        return compose(self.zeta.matrix, self.gamma.matrix)

    def local_maps(self) -> tuple[LocalMapWitness, LocalMapWitness]:
        """The witnesses ``e -> X (x) X^v`` and ``X (x) X^v -> e``."""
        e, p = self.unit, self.product
        up = LocalMapWitness(
            e, p, self.gamma, self.h_gamma,
            _tower_coefficient(e, p, self.gamma.matrix),
        )
        down = LocalMapWitness(
            p, e, self.zeta, self.h_zeta,
            _tower_coefficient(p, e, self.zeta.matrix),
        )
        return up, down

    def verify(self) -> bool:
        if not (self.gamma.is_chain_map() and self.zeta.is_chain_map()):
            return False
        if self.zeta_gamma() != MonoMatrix.identity(self.unit.gens):
            return False
        return all(w.verify() and w.tower_power == 0 for w in self.local_maps())


def duality_witness(x: IotaComplex) -> DualityWitness:
    require_valid(x)
    xd = dual(x)
    p = tensor(x, xd)
    e = group_unit()
    ce: GradedComplex = e.complex
    (unit_gen,) = ce.gens
    pairs = [f"{n}|{m}" for n, m in zip(x.gens, xd.gens)]
    gamma = GradedMap.from_arrows(ce, p.complex, 0, [(unit_gen, q) for q in pairs])
    zeta = GradedMap.from_arrows(p.complex, ce, 0, [(q, unit_gen) for q in pairs])
    if not (gamma.is_chain_map() and zeta.is_chain_map()):
        raise ConsistencyError("coevaluation or trace is not a chain map")
    if len(pairs) % 2 != 1:
        raise ConsistencyError("an iota-complex must have an odd number of generators")
    # gamma iota_e + iota_P gamma, with iota_e = id
    g_defect = GradedMap(ce, p.complex, gamma.matrix + compose(p.iota.matrix, gamma.matrix))
    z_defect = GradedMap(
        p.complex, ce, zeta.matrix + compose(zeta.matrix, p.iota.matrix)
    )
    h_gamma = null_homotopy(g_defect)
    h_zeta = null_homotopy(z_defect)
    if h_gamma is None or h_zeta is None:
        raise ConsistencyError("duality maps do not commute with iota up to homotopy")
    w = DualityWitness(x, p, e, gamma, zeta, h_gamma, h_zeta)
    if not w.verify():
        raise ConsistencyError("duality witness failed re-verification")
    return w
