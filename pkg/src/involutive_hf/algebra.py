"""Exact linear algebra over F2 and F2[U] for graded monomial matrices.

Every homogeneous map between graded free F2[U]-modules has monomial
entries, and the exponent of each entry is fixed by the gradings it
connects. A matrix is therefore stored as a sparse set of arrows
``source -> target`` and the U-power is recovered from the gradings.
The same trick applies to homogeneous elements: a set of generator
names together with a grading. F2[U]-linear algebra on such data is
plain F2 linear algebra on supports, restricted to the positions that
homogeneity allows.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType

from .errors import HomogeneityError, StructureError

__all__ = [
    "Element",
    "F2SolutionSpace",
    "MonoMatrix",
    "SmithForm",
    "compose",
    "format_grading",
    "graded_smith",
    "grading",
    "solve_affine_f2",
    "u_exponent",
]


def grading(value) -> Fraction:
    """Coerce ``value`` to an exact rational grading.

    Strings such as ``"-9/2"`` (ASCII or Unicode minus) and integers are
    accepted. Floats are rejected because they are not exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"grading must be exact, got {value!r}")
    if isinstance(value, str):
        value = value.strip().replace("−", "-")
    return Fraction(value)


def format_grading(value) -> str:
    return str(grading(value))


def u_exponent(source_grading, target_grading, shift=0):
    """Exponent n such that ``x -> U^n y`` drops grading by ``shift``.

    Returns None when no non-negative integer exponent exists.
    """
    twice = grading(target_grading) - grading(source_grading) + shift
    if twice.denominator != 1 or twice.numerator % 2 or twice < 0:
        return None
    return twice.numerator // 2


@dataclass(frozen=True)
class Element:
    """A homogeneous element: the sum of U^k g over ``support`` at ``grading``."""

    grading: Fraction
    support: frozenset

    def __post_init__(self):
        object.__setattr__(self, "grading", grading(self.grading))
        object.__setattr__(self, "support", frozenset(self.support))

    def __add__(self, other: "Element") -> "Element":
        if other.grading != self.grading and self.support and other.support:
            raise HomogeneityError(
                f"cannot add elements of gradings {self.grading} and {other.grading}"
            )
        g = self.grading if self.support else other.grading
        return Element(g, self.support ^ other.support)

    def __bool__(self) -> bool:
        return bool(self.support)

    def times_u(self, k: int = 1) -> "Element":
        return Element(self.grading - 2 * k, self.support)

    def terms(self, gens: Mapping) -> list[tuple[str, int]]:
        """``(name, exponent)`` pairs, ordered as in ``gens``."""
        out = []
        for name in gens:
            if name in self.support:
                n = u_exponent(self.grading, gens[name], 0)
                if n is None:
                    raise HomogeneityError(
                        f"{name} (grading {gens[name]}) cannot appear at grading {self.grading}"
                    )
                out.append((name, n))
        return out

    def format(self, gens: Mapping) -> str:
        if not self.support:
            return "0"
        parts = []
        for name, n in self.terms(gens):
            prefix = "" if n == 0 else ("U" if n == 1 else f"U^{n}")
            parts.append(prefix + name)
        return " + ".join(parts)


class MonoMatrix:
    """Sparse homogeneous matrix over F2[U] with monomial entries.

    ``source`` and ``target`` map generator names to gradings (insertion
    order is kept and used for deterministic output). An arrow ``x -> y``
    stands for the entry ``U^n`` with ``gr(x) - shift = gr(y) - 2n``.

    ``arrows`` may be an iterable of ``(src, tgt)`` or ``(src, tgt, n)``
    tuples, or a mapping ``(src, tgt) -> n``. Stated exponents are checked
    against the gradings. Repeated arrows add over F2.
    """

    __slots__ = ("source", "target", "shift", "_out")

    def __init__(self, source: Mapping, target: Mapping, shift=0, arrows=()):
        self.source = MappingProxyType({n: grading(g) for n, g in source.items()})
        self.target = MappingProxyType({n: grading(g) for n, g in target.items()})
        self.shift = grading(shift)
        if isinstance(arrows, Mapping):
            items = ((k[0], k[1], v) for k, v in arrows.items())
        else:
            items = (tuple(a) if len(a) == 3 else (a[0], a[1], None) for a in arrows)
        out: dict = {}
        for src, tgt, exp in items:
            if src not in self.source:
                raise StructureError(f"unknown source generator {src!r}")
            if tgt not in self.target:
                raise StructureError(f"unknown target generator {tgt!r}")
            n = u_exponent(self.source[src], self.target[tgt], self.shift)
            if n is None:
                raise HomogeneityError(
                    f"entry {src} -> {tgt}: gradings {self.source[src]} -> "
                    f"{self.target[tgt]} admit no U-power for degree shift {self.shift}"
                )
            if exp is not None and int(exp) != n:
                raise HomogeneityError(
                    f"entry {src} -> {tgt}: stated U^{exp} but gradings force U^{n}"
                )
            out.setdefault(src, set()).symmetric_difference_update({tgt})
        self._out = {s: frozenset(t) for s, t in out.items() if t}

    @classmethod
    def _trusted(cls, source, target, shift, out) -> "MonoMatrix":
        m = cls.__new__(cls)
        m.source = source if isinstance(source, MappingProxyType) else MappingProxyType(dict(source))
        m.target = target if isinstance(target, MappingProxyType) else MappingProxyType(dict(target))
        m.shift = grading(shift)
        m._out = {s: frozenset(t) for s, t in out.items() if t}
        return m

    @classmethod
    def identity(cls, gens: Mapping) -> "MonoMatrix":
        g = MappingProxyType({n: grading(v) for n, v in gens.items()})
        return cls._trusted(g, g, 0, {n: {n} for n in g})

    @classmethod
    def zero(cls, source: Mapping, target: Mapping, shift=0) -> "MonoMatrix":
        return cls(source, target, shift)

    def exponent(self, src, tgt):
        return u_exponent(self.source[src], self.target[tgt], self.shift)

    def __getitem__(self, key):
        src, tgt = key
        if tgt in self._out.get(src, ()):
            return self.exponent(src, tgt)
        return None

    def image(self, src) -> frozenset:
        return self._out.get(src, frozenset())

    def arrows(self) -> list[tuple[str, str, int]]:
        order = {n: i for i, n in enumerate(self.target)}
        out = []
        for src in self.source:
            for tgt in sorted(self._out.get(src, ()), key=order.__getitem__):
                out.append((src, tgt, self.exponent(src, tgt)))
        return out

    @property
    def nnz(self) -> int:
        return sum(len(t) for t in self._out.values())

    def is_zero(self) -> bool:
        return not self._out

    def same_shape(self, other: "MonoMatrix") -> bool:
        return (
            dict(self.source) == dict(other.source)
            and dict(self.target) == dict(other.target)
            and self.shift == other.shift
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, MonoMatrix):
            return NotImplemented
        return self.same_shape(other) and self._out == other._out

    def __hash__(self):
        return hash((self.shift, frozenset(self._out.items())))

    def __add__(self, other: "MonoMatrix") -> "MonoMatrix":
        if not self.same_shape(other):
            raise StructureError("cannot add matrices of different shape or degree")
        out = dict(self._out)
        for s, t in other._out.items():
            out[s] = out.get(s, frozenset()) ^ t
        return MonoMatrix._trusted(self.source, self.target, self.shift, out)

    def u_multiple(self, k: int = 1) -> "MonoMatrix":
        """U^k times this matrix (degree shift grows by 2k)."""
        return MonoMatrix._trusted(self.source, self.target, self.shift + 2 * k, self._out)

    def apply(self, element: Element) -> Element:
        acc: set = set()
        for name in element.support:
            acc ^= self._out.get(name, frozenset())
        return Element(element.grading - self.shift, acc)

    def __repr__(self):
        body = ", ".join(
            f"{s}->{'' if n == 0 else ('U' if n == 1 else f'U^{n}')}{t}"
            for s, t, n in self.arrows()
        )
        return f"MonoMatrix(shift={self.shift}, [{body}])"


def compose(a: MonoMatrix, b: MonoMatrix) -> MonoMatrix:
    """The composite ``a o b`` (apply ``b`` first)."""
    if dict(a.source) != dict(b.target):
        raise StructureError("compose: source of the left factor differs from target of the right")
    out = {}
    for src, mids in b._out.items():
        acc: set = set()
        for mid in mids:
            acc ^= a._out.get(mid, frozenset())
        if acc:
            out[src] = acc
    return MonoMatrix._trusted(b.source, a.target, a.shift + b.shift, out)


@dataclass(frozen=True)
class SmithForm:
    """``P * M * Q = D`` with ``D`` a matching of monomial pivots."""

    P: MonoMatrix
    Q: MonoMatrix
    D: MonoMatrix
    pivots: tuple  # ((source, target, exponent), ...) by non-decreasing exponent

    @property
    def exponents(self) -> list[int]:
        return [n for _, _, n in self.pivots]


def graded_smith(m: MonoMatrix) -> SmithForm:
    """Graded Smith reduction of a homogeneous monomial matrix.

    Pivots on the entry of smallest U-exponent (ties broken by target
    name, then source name); every elimination step then multiplies by a
    non-negative U-power, so ``P`` and ``Q`` stay homogeneous and
    invertible.
    """
    src_names = list(m.source)
    tgt_names = list(m.target)
    tidx = {n: i for i, n in enumerate(tgt_names)}
    sgr = [m.source[n] for n in src_names]
    tgr = [m.target[n] for n in tgt_names]
    cols = []
    for s in src_names:
        bits = 0
        for t in m.image(s):
            bits |= 1 << tidx[t]
        cols.append(bits)
    p_rows = [1 << i for i in range(len(tgt_names))]
    q_cols = [1 << i for i in range(len(src_names))]
    live_cols = set(range(len(src_names)))
    pivots = []
    while True:
        best = None
        for c in live_cols:
            bits = cols[c]
            while bits:
                low = bits & -bits
                r = low.bit_length() - 1
                bits ^= low
                key = (tgr[r] - sgr[c], tgt_names[r], src_names[c])
                if best is None or key < best[0]:
                    best = (key, r, c)
        if best is None:
            break
        _, r, c = best
        rbit = 1 << r
        others = cols[c] & ~rbit
        if others:
            # row_j += U^k row_r for every other row j hit by column c
            for cc in live_cols:
                if cols[cc] & rbit:
                    cols[cc] ^= others
            bits = others
            while bits:
                low = bits & -bits
                bits ^= low
                p_rows[low.bit_length() - 1] ^= p_rows[r]
        for cc in live_cols:
            if cc != c and cols[cc] & rbit:
                cols[cc] ^= rbit
                q_cols[cc] ^= q_cols[c]
        live_cols.discard(c)
        n = u_exponent(sgr[c], tgr[r], m.shift)
        pivots.append((src_names[c], tgt_names[r], n))
    pivots.sort(key=lambda p: (p[2], p[1], p[0]))

    p_out = {}
    for r, row in enumerate(p_rows):
        bits = row
        while bits:
            low = bits & -bits
            bits ^= low
            p_out.setdefault(tgt_names[low.bit_length() - 1], set()).add(tgt_names[r])
    q_out = {}
    for c, col in enumerate(q_cols):
        q_out[src_names[c]] = {src_names[i] for i in _bits(col)}
    P = MonoMatrix._trusted(m.target, m.target, 0, p_out)
    Q = MonoMatrix._trusted(m.source, m.source, 0, q_out)
    D = MonoMatrix._trusted(m.source, m.target, m.shift, {s: {t} for s, t, _ in pivots})
    return SmithForm(P, Q, D, tuple(pivots))


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def parity(x: int) -> int:
    return x.bit_count() & 1


class _Echelon:
    """Incremental row echelon form over F2; the rhs lives in bit ``n``."""

    __slots__ = ("n", "pivots", "consistent")

    def __init__(self, n: int):
        self.n = n
        self.pivots: dict[int, int] = {}
        self.consistent = True

    def add(self, row: int) -> None:
        piv = self.pivots
        while row:
            p = (row & -row).bit_length() - 1
            hit = piv.get(p)
            if hit is None:
                if p == self.n:
                    self.consistent = False
                else:
                    piv[p] = row
                return
            row ^= hit

    def _back_substitute(self, x: int, with_rhs: bool) -> int:
        n = self.n
        mask = (1 << n) - 1
        for p in sorted(self.pivots, reverse=True):
            row = self.pivots[p]
            bit = parity(row & x & mask & ~(1 << p))
            if with_rhs:
                bit ^= (row >> n) & 1
            if bit:
                x |= 1 << p
        return x

    def particular(self):
        if not self.consistent:
            return None
        return self._back_substitute(0, True)

    def kernel(self) -> list[int]:
        free = [i for i in range(self.n) if i not in self.pivots]
        return [self._back_substitute(1 << f, False) for f in free]


def solve_bits(rows: Iterable[int], n: int, want_kernel: bool = True):
    """Solve an F2 system whose rows carry the rhs in bit ``n``.

    Returns ``(particular, kernel)``; ``particular`` is None when the
    system is inconsistent.
    """
    ech = _Echelon(n)
    for row in rows:
        ech.add(row)
    part = ech.particular()
    return part, (ech.kernel() if want_kernel else [])


@dataclass(frozen=True)
class F2SolutionSpace:
    """Solution set of an affine F2 system over named unknowns.

    Vectors are frozensets of the unknowns that take the value 1.
    """

    unknowns: tuple
    particular: frozenset | None
    kernel: tuple

    @property
    def consistent(self) -> bool:
        return self.particular is not None

    @property
    def dimension(self) -> int:
        return len(self.kernel)


def solve_affine_f2(equations, rhs=None, unknowns=None, want_kernel=True) -> F2SolutionSpace:
    """Solve ``sum(eq_i) = rhs_i`` over F2.

    ``equations`` is a sequence of iterables of unknown names (each
    equation is the XOR of its unknowns); ``rhs`` defaults to all zeros.
    An inconsistent system yields ``particular=None``; the kernel basis
    is returned either way.
    """
    equations = [list(eq) for eq in equations]
    if unknowns is None:
        seen = {}
        for eq in equations:
            for u in eq:
                seen.setdefault(u, None)
        unknowns = tuple(seen)
    else:
        unknowns = tuple(unknowns)
    index = {u: i for i, u in enumerate(unknowns)}
    n = len(unknowns)
    rhs = [0] * len(equations) if rhs is None else [int(b) & 1 for b in rhs]
    if len(rhs) != len(equations):
        raise StructureError("rhs length differs from the number of equations")
    rows = []
    for eq, b in zip(equations, rhs):
        row = b << n
        for u in eq:
            if u not in index:
                raise StructureError(f"unknown {u!r} not declared")
            row ^= 1 << index[u]
        rows.append(row)
    part, kern = solve_bits(rows, n, want_kernel)

    def named(x):
        return frozenset(unknowns[i] for i in _bits(x))

    return F2SolutionSpace(
        unknowns,
        None if part is None else named(part),
        tuple(named(k) for k in kern),
    )
