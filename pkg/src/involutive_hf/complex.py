"""Graded free chain complexes over F2[U].

Homology is computed by splitting the complex into elementary pieces
(free generators and two-step complexes ``x -> U^n y``): repeatedly take
the differential entry of smallest U-power, make its target a basis
vector, and clear the rest of its row. Since all entries are monomials
this never needs division.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType

from .algebra import (
    Element,
    MonoMatrix,
    _bits,
    compose,
    grading,
    parity,
    solve_bits,
    u_exponent,
)
from .errors import ConsistencyError, NotRationalHomologySphereError, StructureError

__all__ = [
    "GradedComplex",
    "GradedMap",
    "HomologyModule",
    "Reduction",
    "ValidationReport",
    "chain_map_space",
    "d_invariant",
    "gradewise_betti",
    "homology",
    "induced_on_homology",
    "null_homotopy",
    "phi",
    "reduce",
    "validate",
]


class GradedComplex:
    """Finitely generated free F2[U]-complex with graded generators.

    ``gens`` maps names to gradings; ``diff`` lists arrows ``(src, tgt)``
    or ``(src, tgt, n)`` meaning ``U^n tgt`` occurs in ``d(src)``. The
    constructor enforces homogeneity; ``d^2 = 0`` is checked by
    :func:`validate`.
    """

    __slots__ = ("gens", "diff", "__dict__")

    def __init__(self, gens, diff=()):
        if isinstance(gens, Mapping):
            items = gens.items()
        else:
            items = gens
        g = {}
        for name, gr in items:
            if name in g:
                raise StructureError(f"duplicate generator {name!r}")
            g[str(name)] = grading(gr)
        self.gens = MappingProxyType(g)
        if isinstance(diff, MonoMatrix):
            if dict(diff.source) != g or dict(diff.target) != g or diff.shift != 1:
                raise StructureError("differential must be a degree-1 endomorphism of the generators")
            self.diff = diff
        else:
            self.diff = MonoMatrix(self.gens, self.gens, 1, diff)

    @classmethod
    def from_matrix(cls, diff: MonoMatrix) -> "GradedComplex":
        return cls(diff.source, diff)

    def __len__(self):
        return len(self.gens)

    def __repr__(self):
        gens = ", ".join(f"{n}:{g}" for n, g in self.gens.items())
        return f"GradedComplex([{gens}], {self.diff!r})"

    def __eq__(self, other):
        if not isinstance(other, GradedComplex):
            return NotImplemented
        return dict(self.gens) == dict(other.gens) and self.diff == other.diff

    def __hash__(self):
        return hash((tuple(self.gens.items()), self.diff))

    def shifted(self, by) -> "GradedComplex":
        by = grading(by)
        gens = {n: g + by for n, g in self.gens.items()}
        return GradedComplex(gens, [(s, t) for s, t, _ in self.diff.arrows()])

    def renamed(self, mapping: Mapping) -> "GradedComplex":
        gens = {mapping.get(n, n): g for n, g in self.gens.items()}
        arrows = [(mapping.get(s, s), mapping.get(t, t)) for s, t, _ in self.diff.arrows()]
        return GradedComplex(gens, arrows)

    def d(self, element: Element) -> Element:
        return self.diff.apply(element)

    def element(self, terms, at=None) -> Element:
        """Build a homogeneous element from ``{name: U-power}`` or names.

        With plain names, ``at`` gives the grading; otherwise the grading
        is read off the first term.
        """
        if isinstance(terms, Mapping):
            names = list(terms)
            if not names:
                return Element(grading(at or 0), ())
            first = names[0]
            g = self.gens[first] - 2 * terms[first]
            for n, k in terms.items():
                if self.gens[n] - 2 * k != g:
                    raise StructureError(f"term U^{k}{n} is not at grading {g}")
            return Element(g, names)
        names = list(terms)
        g = grading(at) if at is not None else self.gens[names[0]]
        for n in names:
            if u_exponent(g, self.gens[n], 0) is None:
                raise StructureError(f"{n} cannot appear at grading {g}")
        return Element(g, names)

    # bit-level views shared by the solvers
    @property
    def _index(self) -> dict:
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = {n: i for i, n in enumerate(self.gens)}
            self.__dict__["_idx"] = idx
        return idx

    @property
    def _names(self) -> list:
        return list(self.gens)

    @property
    def _grs(self) -> list:
        return list(self.gens.values())

    def _cols(self, m: MonoMatrix | None = None) -> list[int]:
        m = self.diff if m is None else m
        idx = self._index
        out = []
        for n in self.gens:
            bits = 0
            for t in m.image(n):
                bits |= 1 << idx[t]
            out.append(bits)
        return out

    def _mask(self, element: Element) -> int:
        idx = self._index
        bits = 0
        for n in element.support:
            bits |= 1 << idx[n]
        return bits

    def _element(self, grading_value, bits: int) -> Element:
        names = self._names
        return Element(grading_value, (names[i] for i in _bits(bits)))

    def level(self, r) -> int:
        """Bitmask of generators g with U^k g at grading r for some k >= 0."""
        cached = self.__dict__.setdefault("_levels", {})
        r = grading(r)
        if r not in cached:
            bits = 0
            for i, g in enumerate(self._grs):
                if u_exponent(r, g, 0) is not None:
                    bits |= 1 << i
            cached[r] = bits
        return cached[r]


@dataclass(frozen=True)
class GradedMap:
    """A homogeneous F2[U]-linear map between complexes."""

    source: GradedComplex
    target: GradedComplex
    matrix: MonoMatrix

    def __post_init__(self):
        if dict(self.matrix.source) != dict(self.source.gens):
            raise StructureError("map source does not match the complex generators")
        if dict(self.matrix.target) != dict(self.target.gens):
            raise StructureError("map target does not match the complex generators")

    @classmethod
    def from_arrows(cls, source, target, shift, arrows) -> "GradedMap":
        return cls(source, target, MonoMatrix(source.gens, target.gens, shift, arrows))

    @classmethod
    def identity(cls, c: GradedComplex) -> "GradedMap":
        return cls(c, c, MonoMatrix.identity(c.gens))

    @property
    def shift(self) -> Fraction:
        return self.matrix.shift

    def is_chain_map(self) -> bool:
        left = compose(self.target.diff, self.matrix)
        right = compose(self.matrix, self.source.diff)
        return left == right

    def __call__(self, element: Element) -> Element:
        return self.matrix.apply(element)

    def __add__(self, other: "GradedMap") -> "GradedMap":
        return GradedMap(self.source, self.target, self.matrix + other.matrix)

    def then(self, other: "GradedMap") -> "GradedMap":
        """``other o self``."""
        return GradedMap(self.source, other.target, compose(other.matrix, self.matrix))

    def u_multiple(self, k: int = 1) -> "GradedMap":
        return GradedMap(self.source, self.target, self.matrix.u_multiple(k))


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)
    witness: object = None

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


def validate(c: GradedComplex) -> ValidationReport:
    """Check ``d^2 = 0``, homogeneity and that gradings share one coset of Z."""
    report = ValidationReport()
    for src, tgt, _ in c.diff.arrows():
        if c.diff.exponent(src, tgt) is None:
            report.violations.append(f"non-homogeneous entry {src} -> {tgt}")
    grs = list(c.gens.values())
    if grs:
        base = grs[0]
        for name, g in c.gens.items():
            if (g - base).denominator != 1:
                report.violations.append(
                    f"grading coset: {name} at {g} is not in {base} + Z"
                )
    dd = compose(c.diff, c.diff)
    for src, tgt, n in dd.arrows():
        report.violations.append(f"d^2 != 0: d(d({src})) contains U^{n}{tgt}")
    return report


@dataclass(frozen=True)
class _Decomposition:
    """Basis in which the differential is a sum of elementary pieces.

    ``basis[i]`` is a bitmask over the original generators (U-powers are
    implied by ``gradings[i]``). ``coords[j]`` is the functional reading
    off the coefficient of new basis vector j.
    """

    gradings: tuple
    basis: tuple
    coords: tuple
    pairs: tuple  # (source index, target index, exponent)
    free: tuple


def _decompose(c: GradedComplex) -> _Decomposition:
    cached = c.__dict__.get("_decomp")
    if cached is not None:
        return cached
    names = c._names
    grs = c._grs
    n = len(names)
    diff = c._cols()
    basis = [1 << i for i in range(n)]
    active = set(range(n))
    pairs = []
    while True:
        best = None
        for x in active:
            bits = diff[x]
            while bits:
                low = bits & -bits
                bits ^= low
                y = low.bit_length() - 1
                key = (grs[y] - grs[x], names[y], names[x])
                if best is None or key < best[0]:
                    best = (key, x, y)
        if best is None:
            break
        _, x, y = best
        ybit = 1 << y
        dx = diff[x]
        rest = dx & ~ybit
        if rest:
            # new basis vector d(x)/U^e replaces y
            new_y = 0
            for b in _bits(dx):
                new_y ^= basis[b]
            basis[y] = new_y
            for z in active:
                if diff[z] & ybit:
                    diff[z] ^= rest
        xbit = 1 << x
        for z in active:
            if z != x and diff[z] & ybit:
                diff[z] ^= ybit
                basis[z] ^= basis[x]
                zbit = 1 << z
                for w in active:
                    if diff[w] & zbit:
                        diff[w] ^= xbit
        for z in active:
            if diff[z] & (xbit | ybit) and z != x:
                raise ConsistencyError("d^2 != 0: cannot split the complex")
        active.discard(x)
        active.discard(y)
        pairs.append((x, y, u_exponent(grs[x], grs[y], 1)))
    free = tuple(sorted(active, key=lambda i: (-grs[i], names[i])))
    coords = _invert(basis, n)
    result = _Decomposition(tuple(grs), tuple(basis), coords, tuple(pairs), free)
    c.__dict__["_decomp"] = result
    return result


def _invert(basis: list[int], n: int) -> tuple:
    """Rows of the inverse basis matrix, as functionals on original masks."""
    rows = [(basis[j], 1 << j) for j in range(n)]
    pivot_rows: dict[int, tuple[int, int]] = {}
    for vec, tag in rows:
        while vec:
            p = (vec & -vec).bit_length() - 1
            if p in pivot_rows:
                pv, pt = pivot_rows[p]
                vec ^= pv
                tag ^= pt
            else:
                break
        if not vec:
            raise ConsistencyError("basis change is not invertible")
        pivot_rows[(vec & -vec).bit_length() - 1] = (vec, tag)
    # full reduction so each pivot row becomes a unit vector
    for p in sorted(pivot_rows, reverse=True):
        vec, tag = pivot_rows[p]
        for q in list(pivot_rows):
            if q != p:
                qv, qt = pivot_rows[q]
                if qv >> p & 1:
                    pivot_rows[q] = (qv ^ vec, qt ^ tag)
    # pivot_rows[g] = (e_g, tag) with e_g = sum of basis vectors in tag
    coords = [0] * n
    for g, (vec, tag) in pivot_rows.items():
        for j in _bits(tag):
            coords[j] |= 1 << g
    return tuple(coords)


@dataclass(frozen=True)
class HomologyModule:
    """Graded F2[U]-module ``(+) F2[U]_(t_i) (+) (+) (F2[U]/U^n_j)_(g_j)``.

    Summands are labelled ``T0, T1, ...`` (towers, by decreasing top
    grading) and ``Z0, Z1, ...`` (torsion). ``representatives`` maps each
    label to a cycle written in the original generators.
    """

    free_towers: tuple
    torsion: tuple
    representatives: Mapping
    _complex: GradedComplex = field(repr=False, compare=False)
    _labels: Mapping = field(repr=False, compare=False)  # label -> basis index

    @property
    def labels(self) -> list[str]:
        return list(self.representatives)

    def summand_gradings(self) -> dict[str, Fraction]:
        return {k: v.grading for k, v in self.representatives.items()}

    def order(self, label: str):
        """Torsion order of a summand, or None for a tower."""
        if label.startswith("T"):
            return None
        return self.torsion[int(label[1:])][1]

    def multiset(self):
        return (tuple(sorted(self.free_towers)), tuple(sorted(self.torsion)))

    def dimension_at(self, r) -> int:
        """dim_F2 of the homology in grading ``r``."""
        r = grading(r)
        dim = sum(1 for t in self.free_towers if u_exponent(r, t, 0) is not None)
        for g, n in self.torsion:
            k = u_exponent(r, g, 0)
            if k is not None and k < n:
                dim += 1
        return dim

    def coordinates(self, element: Element) -> dict[str, int]:
        """Express a cycle in the summand basis: ``label -> U-power``.

        Torsion coefficients at or beyond the order are dropped. Raises
        :class:`ConsistencyError` if the element is not a cycle.
        """
        c = self._complex
        dec = _decompose(c)
        mask = c._mask(element)
        for x, y, n in dec.pairs:
            if parity(dec.coords[x] & mask):
                raise ConsistencyError(f"{element.format(c.gens)} is not a cycle")
        out = {}
        for label, j in self._labels.items():
            if parity(dec.coords[j] & mask):
                k = u_exponent(element.grading, dec.gradings[j], 0)
                if k is None:
                    raise ConsistencyError("coordinate violates homogeneity")
                order = self.order(label)
                if order is None or k < order:
                    out[label] = k
        return out

    def tower_functional(self, label: str = "T0") -> int:
        """Bitmask functional: coefficient of the given tower."""
        dec = _decompose(self._complex)
        return dec.coords[self._labels[label]]

    def describe(self) -> str:
        parts = [f"F2[U]_({t})" for t in self.free_towers]
        parts += [
            f"(F2[U]/U^{n})_({g})" if n > 1 else f"F2_({g})" for g, n in self.torsion
        ]
        return " + ".join(parts) if parts else "0"


def homology(c: GradedComplex) -> HomologyModule:
    """Homology with its graded free/torsion decomposition and cycle representatives."""
    cached = c.__dict__.get("_homology")
    if cached is not None:
        return cached
    dec = _decompose(c)
    names = c._names
    reps = {}
    labels = {}
    towers = []
    for i, j in enumerate(dec.free):
        label = f"T{i}"
        towers.append(dec.gradings[j])
        reps[label] = c._element(dec.gradings[j], dec.basis[j])
        labels[label] = j
    tors = sorted(
        ((dec.gradings[y], n, y) for _, y, n in dec.pairs if n > 0),
        key=lambda t: (-t[0], t[1], names[t[2]]),
    )
    torsion = []
    for i, (g, n, y) in enumerate(tors):
        label = f"Z{i}"
        torsion.append((g, n))
        reps[label] = c._element(g, dec.basis[y])
        labels[label] = y
    h = HomologyModule(
        tuple(towers), tuple(torsion), MappingProxyType(reps), c, MappingProxyType(labels)
    )
    c.__dict__["_homology"] = h
    return h


def d_invariant(c: GradedComplex) -> Fraction:
    """Top grading of the unique free tower, plus 2."""
    h = homology(c)
    if len(h.free_towers) != 1:
        raise NotRationalHomologySphereError(
            f"not a rational-homology-sphere model: {len(h.free_towers)} free towers"
        )
    return h.free_towers[0] + 2


def gradewise_betti(c: GradedComplex, r) -> int:
    """dim_F2 H_r by plain F2 rank counts on the grading-r slice."""
    r = grading(r)
    cols = c._cols()
    lev = c.level(r)
    lev_up = c.level(r + 1)
    dim = lev.bit_count()
    rank_out = _rank([cols[i] for i in _bits(lev)])
    rank_in = _rank([cols[i] for i in _bits(lev_up)])
    return dim - rank_out - rank_in


def _rank(vectors: Iterable[int]) -> int:
    piv: dict[int, int] = {}
    for v in vectors:
        while v:
            p = (v & -v).bit_length() - 1
            if p in piv:
                v ^= piv[p]
            else:
                piv[p] = v
                break
    return len(piv)


def phi(c: GradedComplex) -> GradedMap:
    """Formal U-derivative of the differential (raises grading by 1)."""
    arrows = [(s, t) for s, t, n in c.diff.arrows() if n % 2 == 1]
    return GradedMap(c, c, MonoMatrix(c.gens, c.gens, -1, arrows))


class _System:
    """Linear system whose equations are indexed by matrix positions."""

    def __init__(self):
        self.unknowns: list = []
        self.eqs: dict = {}

    def add_unknown_map(self, source: Mapping, target: Mapping, shift, tag):
        """Declare every homogeneity-allowed entry of a map as an unknown."""
        by_src: dict = {}
        by_tgt: dict = {}
        tgt_items = list(target.items())
        for s, gs in source.items():
            for t, gt in tgt_items:
                if u_exponent(gs, gt, shift) is not None:
                    k = len(self.unknowns)
                    self.unknowns.append((tag, s, t))
                    by_src.setdefault(s, []).append((k, t))
                    by_tgt.setdefault(t, []).append((k, s))
        return by_src, by_tgt

    def left(self, m: MonoMatrix, unk, key=None):
        """Add ``m o X`` for the unknown map X."""
        by_src, _ = unk
        for s, entries in by_src.items():
            for k, mid in entries:
                for t in m.image(mid):
                    self._toggle((key, s, t), k)

    def right(self, unk, m: MonoMatrix, key=None):
        """Add ``X o m`` for the unknown map X."""
        by_src, _ = unk
        for s in m.source:
            for mid in m.image(s):
                for k, t in by_src.get(mid, ()):
                    self._toggle((key, s, t), k)

    def constant(self, m: MonoMatrix, key=None):
        for s, t, _ in m.arrows():
            self._toggle((key, s, t), None)

    def _toggle(self, eq, k):
        row = self.eqs.get(eq, 0)
        bit = (1 << len(self.unknowns)) if k is None else (1 << k)
        self.eqs[eq] = row ^ bit

    def add_row(self, row_unknowns: Iterable[int], rhs: int):
        # rows added after all unknowns are declared
        row = (rhs & 1) << len(self.unknowns)
        for k in row_unknowns:
            row ^= 1 << k
        self.eqs[("extra", len(self.eqs))] = row

    def solve(self, want_kernel=False):
        n = len(self.unknowns)
        return solve_bits(self.eqs.values(), n, want_kernel)

    def assemble(self, solution: int, tag, source: Mapping, target: Mapping, shift) -> MonoMatrix:
        out: dict = {}
        for k in _bits(solution):
            t, s, d = self.unknowns[k]
            if t == tag:
                out.setdefault(s, set()).add(d)
        return MonoMatrix._trusted(
            MappingProxyType(dict(source)), MappingProxyType(dict(target)), shift, out
        )


def null_homotopy(f: GradedMap, degree=None) -> GradedMap | None:
    """Find H with ``dH + Hd = f``, or return None.

    H has degree shift ``f.shift - 1`` (``degree`` may state the
    grading change of H, i.e. ``1 - f.shift``; it is checked). Only
    homogeneity-allowed coefficients are unknowns, so no U-truncation is
    involved.
    """
    h_shift = f.shift - 1
    if degree is not None and grading(degree) != -h_shift:
        raise StructureError(
            f"a homotopy for a map of degree shift {f.shift} changes grading by {-h_shift}"
        )
    src, tgt = f.source, f.target
    system = _System()
    unk = system.add_unknown_map(src.gens, tgt.gens, h_shift, "H")
    system.left(tgt.diff, unk)
    system.right(unk, src.diff)
    system.constant(f.matrix)
    part, _ = system.solve()
    if part is None:
        return None
    h = system.assemble(part, "H", src.gens, tgt.gens, h_shift)
    witness = GradedMap(src, tgt, h)
    check = compose(tgt.diff, h) + compose(h, src.diff)
    if check != f.matrix:
        raise ConsistencyError("homotopy failed re-substitution")
    return witness


@dataclass(frozen=True)
class ChainMapSpace:
    """All homogeneous chain maps ``C -> C'`` of a fixed degree shift."""

    source: GradedComplex
    target: GradedComplex
    shift: Fraction
    unknowns: tuple
    basis: tuple  # GradedMap

    @property
    def dimension(self) -> int:
        return len(self.basis)


def chain_map_space(c: GradedComplex, c2: GradedComplex, shift=0) -> ChainMapSpace:
    """Basis of the F2-space of degree-``shift`` chain maps ``c -> c2``."""
    shift = grading(shift)
    system = _System()
    unk = system.add_unknown_map(c.gens, c2.gens, shift, "F")
    system.left(c2.diff, unk)
    system.right(unk, c.diff)
    _, kernel = system.solve(want_kernel=True)
    basis = tuple(
        GradedMap(c, c2, system.assemble(v, "F", c.gens, c2.gens, shift)) for v in kernel
    )
    return ChainMapSpace(c, c2, shift, tuple(system.unknowns), basis)


def induced_on_homology(f: GradedMap) -> MonoMatrix:
    """Matrix of ``f_*`` between the summand bases of the two homologies.

    Entry ``A -> B`` with U-power k means ``f_*[A]`` contains ``U^k [B]``.
    """
    h_src = homology(f.source)
    h_tgt = homology(f.target)
    out = {}
    for label, rep in h_src.representatives.items():
        image = f(rep)
        if f.target.d(image):
            raise ConsistencyError(f"image of representative {label} is not a cycle")
        coords = h_tgt.coordinates(image)
        if coords:
            out[label] = set(coords)
    src_gr = h_src.summand_gradings()
    tgt_gr = h_tgt.summand_gradings()
    return MonoMatrix._trusted(
        MappingProxyType(src_gr), MappingProxyType(tgt_gr), f.shift, out
    )


@dataclass(frozen=True)
class Reduction:
    """Result of cancelling unit arrows.

    ``to_reduced`` and ``from_reduced`` are mutually inverse chain
    homotopy equivalences; ``maps`` are the supplied maps conjugated to
    the reduced complex.
    """

    complex: GradedComplex
    maps: tuple
    to_reduced: GradedMap
    from_reduced: GradedMap
    cancelled: tuple


def reduce(c: GradedComplex, maps: Iterable[GradedMap] = ()) -> Reduction:
    """Cancel pairs ``x -> y`` with U-power 0 until none remain.

    Pairs are taken lowest grading of ``x`` first, then by names, so the
    result is reproducible. Every supplied endomorphism ``M`` is replaced
    by ``f M g`` where ``f: C -> C'`` and ``g: C' -> C`` are the recorded
    equivalences; chain maps stay chain maps and ``M^2 ~ id`` is preserved.
    """
    maps = list(maps)
    for m in maps:
        if m.source is not c and m.source != c or (m.target is not c and m.target != c):
            raise StructureError("reduce: maps must be endomorphisms of the complex")
    gens = dict(c.gens)
    diff = {n: set(c.diff.image(n)) for n in gens}
    mats = [{n: set(m.matrix.image(n)) for n in gens} for m in maps]
    shifts = [m.shift for m in maps]
    f_tot = {n: {n} for n in gens}   # C -> current
    g_tot = {n: {n} for n in gens}   # current -> C
    cancelled = []
    while True:
        best = None
        for x in gens:
            for y in diff[x]:
                if gens[y] == gens[x] - 1:
                    key = (gens[x], x, y)
                    if best is None or key < best:
                        best = key
        if best is None:
            break
        _, x, y = best
        dx_rest = diff[x] - {y}

        def project(s: set) -> set:
            out = s - {x, y}
            if y in s:
                out ^= dx_rest
            return out

        # g(w) = w + [y in dw] x ; f(z) = z|rest + [z has y] d(x)|rest
        hits_y = {w for w in gens if w not in (x, y) and y in diff[w]}
        for mat in mats:
            new = {}
            for w in gens:
                if w in (x, y):
                    continue
                img = set(mat[w])
                if w in hits_y:
                    img ^= mat[x]
                new[w] = project(img)
            mat.clear()
            mat.update(new)
        new_g = {}
        for w in gens:
            if w in (x, y):
                continue
            img = set(g_tot[w])
            if w in hits_y:
                img ^= g_tot[x]
            new_g[w] = img
        g_tot = new_g
        f_tot = {n: project(s) for n, s in f_tot.items()}
        new_diff = {}
        for w in gens:
            if w in (x, y):
                continue
            new_diff[w] = project(diff[w])
        diff = new_diff
        del gens[x]
        del gens[y]
        cancelled.append((x, y))

    reduced = GradedComplex(gens, [(s, t) for s in gens for t in diff[s]])
    new_maps = tuple(
        GradedMap(reduced, reduced, MonoMatrix._trusted(reduced.gens, reduced.gens, sh, mat))
        for mat, sh in zip(mats, shifts)
    )
    to_reduced = GradedMap(c, reduced, MonoMatrix._trusted(c.gens, reduced.gens, 0, f_tot))
    from_reduced = GradedMap(reduced, c, MonoMatrix._trusted(reduced.gens, c.gens, 0, g_tot))
    return Reduction(reduced, new_maps, to_reduced, from_reduced, tuple(cancelled))
