"""Staircase knot complexes and the large-surgery models built from them.

The preset library lives here as well.

A staircase is drawn in the (i, j) plane: corners ``c_0 .. c_k`` run
from ``(0, g)`` down to ``(g, 0)`` and each odd generator sits at the
outer corner between two neighbours, with a horizontal arrow to the
left neighbour and a vertical arrow to the lower one. As drawn, corners
have Maslov grading 0 and odd generators 1, before normalisation.

A truncation ``C{f(i, j) <= 0}`` for ``f`` in ``max``, ``min`` or ``i``
keeps one F2[U]-generator per staircase generator: the translate
``U^n s`` with ``n = f(position of s)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .algebra import grading
from .complex import GradedComplex, GradedMap, d_invariant, reduce
from .errors import ComplexError, StructureError
from .iota import IotaComplex, dual, require_valid, tensor

__all__ = [
    "PRESETS",
    "StaircaseModel",
    "SurgeryModel",
    "a0_max_model",
    "pin_grading",
    "preset",
    "preset_names",
    "quadrant_min_model",
    "reduced_model",
    "staircase",
    "staircase_surgery",
]

_TRUNCATIONS = {
    "max": max,
    "min": min,
    "i": lambda i, j: i,
}


@dataclass(frozen=True)
class StaircaseModel:
    steps: tuple
    mirrored: bool
    names: tuple
    positions: tuple   # (i, j) per generator
    maslov: tuple      # normalised Maslov grading at the drawn position
    arrows: tuple      # (src index, tgt index)

    @property
    def k(self) -> int:
        return len(self.steps)

    @property
    def genus(self) -> int:
        return sum(self.steps)

    @classmethod
    def from_steps(cls, steps=(), mirrored=False, names=None) -> "StaircaseModel":
        """Symmetric staircase whose t-th horizontal step is ``steps[t]``.

        Vertical steps are the horizontal ones reversed, so the picture is
        symmetric about the diagonal.
        """
        steps = tuple(int(s) for s in steps)
        if any(s < 1 for s in steps):
            raise ValueError("staircase steps must be positive")
        k = len(steps)
        g = sum(steps)
        corners = [(0, g)]
        for t in range(k):
            i, j = corners[-1]
            corners.append((i + steps[t], j - steps[k - 1 - t]))
        positions = []
        drawn = []
        arrows = []
        for t in range(k + 1):
            positions.append(corners[t])
            drawn.append(0)
            if t < k:
                positions.append((corners[t + 1][0], corners[t][1]))
                drawn.append(1)
                odd = 2 * t + 1
                arrows += [(odd, odd - 1), (odd, odd + 1)]
        if mirrored:
            positions = [(-i, -j) for i, j in positions]
            drawn = [-m for m in drawn]
            arrows = [(t, s) for s, t in arrows]
        n = 2 * k + 1
        if names is None:
            names = tuple(f"s{r}" for r in range(n))
        else:
            names = tuple(names)
            if len(names) != n or len(set(names)) != n:
                raise ValueError(f"need {n} distinct generator names")
        raw = cls(steps, bool(mirrored), names, tuple(positions), tuple(drawn), tuple(arrows))
        # CF^-(S^3) sits in the truncation i <= 0; put its tower top at -2
        top = d_invariant(raw._truncated_complex("i")) - 2
        shift = -2 - top
        return cls(
            steps,
            bool(mirrored),
            names,
            tuple(positions),
            tuple(m + shift for m in drawn),
            tuple(arrows),
        )

    def reflection(self) -> dict:
        """The involution iota_K: reflection in the diagonal."""
        n = len(self.names)
        return {self.names[r]: self.names[n - 1 - r] for r in range(n)}

    def _truncated_complex(self, kind: str) -> GradedComplex:
        f = _TRUNCATIONS[kind]
        shift = [f(i, j) for i, j in self.positions]
        gens = {
            name: grading(m - 2 * s)
            for name, m, s in zip(self.names, self.maslov, shift)
        }
        arrows = [(self.names[s], self.names[t]) for s, t in self.arrows]
        return GradedComplex(gens, arrows)

    def truncate(self, kind: str) -> IotaComplex:
        """The sub complex ``C{kind(i, j) <= 0}`` with iota_K restricted."""
        if kind not in ("max", "min"):
            raise ValueError("only the symmetric truncations 'max' and 'min' carry iota_K")
        c = self._truncated_complex(kind)
        refl = self.reflection()
        iota = GradedMap.from_arrows(c, c, 0, list(refl.items()))
        return IotaComplex(c, iota)


def staircase(k: int, mirrored: bool = False, names=None) -> StaircaseModel:
    """Staircase of the torus knot T(2, 2k+1), or of its mirror."""
    if not isinstance(k, int) or k < 1:
        raise ValueError("staircase needs k >= 1")
    return StaircaseModel.from_steps((1,) * k, mirrored, names)


@dataclass(frozen=True)
class SurgeryModel:
    iota: IotaComplex
    knot: str
    truncation: str
    pinned_d: Fraction | None = None


def _knot_label(s: StaircaseModel) -> str:
    sign = "-" if s.mirrored else ""
    if all(x == 1 for x in s.steps):
        return f"{sign}T(2,{2 * s.k + 1})" if s.k else "unknot"
    return f"{sign}staircase{s.steps}"


def a0_max_model(s: StaircaseModel) -> SurgeryModel:
    """Large positive surgery: the truncation ``max(i, j) <= 0``."""
    return SurgeryModel(s.truncate("max"), _knot_label(s), "max")


def quadrant_min_model(s: StaircaseModel) -> SurgeryModel:
    """Large negative surgery: the truncation ``min(i, j) <= 0``."""
    return SurgeryModel(s.truncate("min"), _knot_label(s), "min")


def pin_grading(m: SurgeryModel, d) -> SurgeryModel:
    """Shift all gradings so the tower top sits at ``d - 2``."""
    d = grading(d)
    x = m.iota
    shift = d - d_invariant(x.complex)
    c = x.complex.shifted(shift)
    iota = GradedMap.from_arrows(c, c, 0, [(s, t) for s, t, _ in x.iota.matrix.arrows()])
    return SurgeryModel(IotaComplex(c, iota, x.label), m.knot, m.truncation, d)


def reduced_model(m: SurgeryModel | IotaComplex) -> IotaComplex:
    """Cancel unit arrows, carrying iota along."""
    x = m.iota if isinstance(m, SurgeryModel) else m
    r = reduce(x.complex, [x.iota])
    return IotaComplex(r.complex, r.maps[0], x.label)


# The two surgery d-invariants are external inputs (Ni and Wu).
D_SURG_M3_T27 = Fraction(-1, 2)
D_SURG_5_MT211 = Fraction(1)


def _unit():
    return IotaComplex.build({"e": -2}, label="unit")


def _sigma_2_3_7():
    return IotaComplex.build(
        {"a": -2, "b": -2, "c": -3},
        [("c", "a", 1), ("c", "b", 1)],
        [("a", "b"), ("b", "a"), ("c", "c")],
        label="sigma_2_3_7",
    )


def _surg_m3_t27():
    return IotaComplex.build(
        {"a": "-5/2", "g": "-5/2", "d'": "-11/2"},
        [("d'", "a", 2), ("d'", "g", 2)],
        [("a", "g"), ("g", "a"), ("d'", "d'")],
        label="surg_m3_T27",
    )


def _surg_5_mt211():
    return IotaComplex.build(
        {"o'": -1, "y'": -1, "t": 4},
        [("o'", "t", 3), ("y'", "t", 3)],
        [("o'", "y'"), ("y'", "o'"), ("t", "t")],
        label="surg_5_mT211",
    )


def _minus_l31():
    return IotaComplex.build({"x": "-5/2"}, label="minus_L31")


PRESETS = {
    "unit": _unit,
    "sigma_2_3_7": _sigma_2_3_7,
    "surg_m3_T27": _surg_m3_t27,
    "surg_5_mT211": _surg_5_mt211,
    "minus_L31": _minus_l31,
}

PRESET_DESCRIPTIONS = {
    "unit": "S^3: one generator at -2, iota = id",
    "sigma_2_3_7": "Sigma(2,3,7): a, b at -2, c at -3, dc = U(a+b), iota swaps a, b",
    "surg_m3_T27": "S^3_{-3}(T(2,7)), reduced: a, g at -5/2, d' at -11/2, dd' = U^2(a+g)",
    "surg_5_mT211": "S^3_5(-T(2,11)), reduced: o', y' at -1, t at 4, do' = dy' = U^3 t",
    "minus_L31": "-L(3,1): one generator at -5/2, iota = id",
}


def preset_names() -> list[str]:
    return list(PRESETS)


_TERM = re.compile(r"^(?P<neg>-)?(?P<name>[A-Za-z_][A-Za-z0-9_]*)(?:\^(?P<power>\d+))?$")


def preset(name: str) -> IotaComplex:
    """A named model; ``a#b``, ``name^n`` and ``-name`` build sums and duals."""
    parts = [p.strip() for p in str(name).split("#")]
    result = None
    for part in parts:
        m = _TERM.match(part)
        if not m or m.group("name") not in PRESETS:
            raise ComplexError(f"unknown preset {part!r}; known: {', '.join(PRESETS)}")
        base = require_valid(PRESETS[m.group("name")]())
        if m.group("neg"):
            base = dual(base)
        power = int(m.group("power") or 1)
        if power < 1:
            raise ComplexError("preset power must be at least 1")
        term = base
        for _ in range(power - 1):
            term = tensor(term, base)
        result = term if result is None else tensor(result, term)
    if result is None:
        raise StructureError("empty preset name")
    return result.relabel(str(name))


def staircase_surgery(name: str) -> SurgeryModel:
    """The staircase route to the two surgery presets (before reduction)."""
    if name == "surg_m3_T27":
        s = staircase(3, names="abcdefg")
        return pin_grading(quadrant_min_model(s), D_SURG_M3_T27)
    if name == "surg_5_mT211":
        s = staircase(5, mirrored=True, names="opqrstuvwxy")
        return pin_grading(a0_max_model(s), D_SURG_5_MT211)
    raise ComplexError(f"no staircase construction for {name!r}")
