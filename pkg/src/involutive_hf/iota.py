"""Complexes with an involution: validation, tensor products and duals."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .algebra import MonoMatrix, compose
from .complex import (
    GradedComplex,
    GradedMap,
    ValidationReport,
    homology,
    null_homotopy,
    phi,
    validate,
)
from .errors import ConsistencyError, StructureError, ValidationError

__all__ = [
    "IotaComplex",
    "check_phi_correction",
    "dual",
    "dual_name",
    "require_valid",
    "tensor",
    "tensor_maps",
    "validate_iota",
]

DUAL_SUFFIX = "^v"


@dataclass(frozen=True)
class IotaComplex:
    complex: GradedComplex
    iota: GradedMap
    label: str = ""
    _checked: dict = field(default_factory=dict, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.iota.source != self.complex or self.iota.target != self.complex:
            raise StructureError("iota must be an endomorphism of the complex")
        if self.iota.shift != 0:
            raise StructureError("iota must preserve the grading")

    @classmethod
    def build(cls, gens, diff=(), iota=None, label="") -> "IotaComplex":
        """From generator gradings, differential arrows and iota arrows.

        ``iota=None`` means the identity.
        """
        c = GradedComplex(gens, diff)
        if iota is None:
            m = MonoMatrix.identity(c.gens)
        else:
            m = MonoMatrix(c.gens, c.gens, 0, iota)
        return cls(c, GradedMap(c, c, m), label)

    @property
    def gens(self):
        return self.complex.gens

    def __len__(self):
        return len(self.complex)

    def relabel(self, label: str) -> "IotaComplex":
        out = IotaComplex(self.complex, self.iota, label)
        out._checked.update(self._checked)
        return out

    def _trust(self) -> "IotaComplex":
        self._checked["report"] = ValidationReport()
        return self


def validate_iota(x: IotaComplex) -> ValidationReport:
    """Check that iota is a chain map squaring to the identity up to homotopy.

    The underlying complex is validated first and must have exactly one tower.

    On success ``report.witness`` holds a homotopy H with
    ``dH + Hd = iota^2 + id``.
    """
    report = validate(x.complex)
    c = x.complex
    if report.ok:
        comm = compose(c.diff, x.iota.matrix) + compose(x.iota.matrix, c.diff)
        for s, t, n in comm.arrows():
            report.violations.append(f"iota is not a chain map: (d iota + iota d)({s}) contains U^{n}{t}")
    if report.ok:
        sq = x.iota.then(x.iota) + GradedMap.identity(c)
        h = null_homotopy(sq)
        if h is None:
            report.violations.append("iota^2 is not chain homotopic to the identity")
        else:
            report.witness = h
    if report.ok:
        towers = homology(c).free_towers
        if len(towers) != 1:
            report.violations.append(
                f"homology must have exactly one free tower, found {len(towers)}"
            )
    if report.ok:
        x._checked["report"] = report
    return report


def require_valid(x: IotaComplex) -> IotaComplex:
    """Raise :class:`ValidationError` unless ``x`` validates (cached)."""
    if "report" in x._checked:
        return x
    report = validate_iota(x)
    if not report.ok:
        name = f" {x.label}" if x.label else ""
        raise ValidationError(f"invalid iota-complex{name}", report.violations)
    return x


def _pair(a: str, b: str) -> str:
    return f"{a}|{b}"


def _tensor_complex(c1: GradedComplex, c2: GradedComplex) -> GradedComplex:
    gens = {
        _pair(a, b): ga + gb + 2
        for (a, ga), (b, gb) in product(c1.gens.items(), c2.gens.items())
    }
    arrows = []
    for a, b in product(c1.gens, c2.gens):
        src = _pair(a, b)
        for t in c1.diff.image(a):
            arrows.append((src, _pair(t, b)))
        for t in c2.diff.image(b):
            arrows.append((src, _pair(a, t)))
    return GradedComplex(gens, arrows)


def tensor_maps(f: GradedMap, g: GradedMap, source: GradedComplex, target: GradedComplex) -> GradedMap:
    """``f (x) g`` as a map between the given tensor complexes."""
    out = {}
    for a, b in product(f.source.gens, g.source.gens):
        img = {_pair(s, t) for s in f.matrix.image(a) for t in g.matrix.image(b)}
        if img:
            out[_pair(a, b)] = img
    m = MonoMatrix._trusted(source.gens, target.gens, f.shift + g.shift, out)
    return GradedMap(source, target, m)


def tensor(x: IotaComplex, y: IotaComplex) -> IotaComplex:
    """The product ``(C1 (x) C2, iota1 (x) iota2)``."""
    require_valid(x)
    require_valid(y)
    c = _tensor_complex(x.complex, y.complex)
    iota = tensor_maps(x.iota, y.iota, c, c)
    label = f"{x.label or '?'}#{y.label or '?'}"
    return IotaComplex(c, iota, label)._trust()


def dual_name(name: str) -> str:
    """``x -> x^v``; dualising twice restores the name. Tensor names dualise factorwise."""
    return "|".join(
        p[: -len(DUAL_SUFFIX)] if p.endswith(DUAL_SUFFIX) else p + DUAL_SUFFIX
        for p in name.split("|")
    )


def dual(x: IotaComplex) -> IotaComplex:
    """Transpose the differential and iota; gradings become ``-gr - 4``.

    The shift keeps the unit (a generator at -2) self-dual and makes
    ``gr(x (x) x^v) = -2`` for every generator.
    """
    require_valid(x)
    c = x.complex
    names = {n: dual_name(n) for n in c.gens}
    if len(set(names.values())) != len(names):
        raise StructureError("dual generator names collide")
    gens = {names[n]: -g - 4 for n, g in c.gens.items()}
    diff = [(names[t], names[s]) for s, t, _ in c.diff.arrows()]
    iota = [(names[t], names[s]) for s, t, _ in x.iota.matrix.arrows()]
    label = x.label[1:] if x.label.startswith("-") else f"-{x.label}" if x.label else ""
    out = IotaComplex.build(gens, diff, iota, label)
    return out._trust()


def check_phi_correction(x: IotaComplex, y: IotaComplex) -> GradedMap:
    """Homotopy H on ``x (x) y`` with ``dH + Hd = U(Phi1 iota1 (x) Phi2 iota2)``."""
    prod = tensor(x, y)
    c = prod.complex
    left = x.iota.then(phi(x.complex))
    right = y.iota.then(phi(y.complex))
    target = tensor_maps(left, right, c, c).u_multiple(1)
    h = null_homotopy(target)
    if h is None:
        raise ConsistencyError("U(Phi iota (x) Phi iota) is not null-homotopic")
    return h
