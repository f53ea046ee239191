import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from involutive_hf.algebra import (
    Element,
    MonoMatrix,
    compose,
    graded_smith,
    grading,
    solve_affine_f2,
    u_exponent,
)
from involutive_hf.errors import HomogeneityError, StructureError
from involutive_hf.knots import preset


def test_grading_is_exact():
    assert grading("-9/2") == Fraction(-9, 2)
    assert grading("−9/2") == Fraction(-9, 2)
    assert grading(3) == 3
    with pytest.raises(TypeError):
        grading(0.5)
    with pytest.raises(TypeError):
        grading(True)


def test_u_exponent_homogeneity_rule():
    # d drops grading by 1: c at -3 to a at -2 carries U^1
    assert u_exponent(-3, -2, 1) == 1
    assert u_exponent(-2, -3, 1) == 0
    assert u_exponent(-3, -1, 1) is None  # would need U^(3/2)
    assert u_exponent(0, -3, 1) is None   # negative power


def test_matrix_rejects_non_homogeneous_entries():
    gens = {"a": Fraction(0), "b": Fraction(0)}
    with pytest.raises(HomogeneityError):
        MonoMatrix(gens, gens, 1, [("a", "b")])
    gens = {"a": Fraction(-2), "c": Fraction(-3)}
    with pytest.raises(HomogeneityError):
        MonoMatrix(gens, gens, 1, [("c", "a", 2)])
    assert MonoMatrix(gens, gens, 1, [("c", "a", 1)])["c", "a"] == 1


def test_duplicate_arrows_cancel():
    gens = {"a": Fraction(0), "b": Fraction(-1)}
    m = MonoMatrix(gens, gens, 1, [("a", "b"), ("a", "b")])
    assert m.is_zero()


def test_identity_is_neutral_and_dd_vanishes():
    x = preset("sigma_2_3_7")
    d = x.complex.diff
    ident = MonoMatrix.identity(x.gens)
    assert compose(ident, d) == d
    assert compose(d, ident) == d
    assert compose(d, d).is_zero()


def test_u_times_identity_squared():
    gens = {"a": Fraction(0), "b": Fraction(1)}
    u = MonoMatrix.identity(gens).u_multiple(1)
    uu = compose(u, u)
    assert uu == MonoMatrix.identity(gens).u_multiple(2)
    assert uu["a", "a"] == 2


def test_compose_checks_index_sets():
    a = MonoMatrix.identity({"a": Fraction(0)})
    b = MonoMatrix.identity({"b": Fraction(0)})
    with pytest.raises(StructureError):
        compose(a, b)


def test_element_format_and_u_powers():
    gens = {"a": Fraction(-2), "g": Fraction(-6)}
    v = Element(Fraction(-6), ["a", "g"])
    assert v.format(gens) == "U^2a + g"
    assert v.times_u(1).grading == -8


def _random_matrix(rng, n_src, n_tgt, shift):
    src = {f"s{i}": Fraction(rng.randint(-4, 4)) for i in range(n_src)}
    tgt = {f"t{i}": Fraction(rng.randint(-4, 4)) for i in range(n_tgt)}
    arrows = [
        (s, t)
        for s, gs in src.items()
        for t, gt in tgt.items()
        if u_exponent(gs, gt, shift) is not None and rng.random() < 0.5
    ]
    return MonoMatrix(src, tgt, shift, arrows)


def _invertible(m: MonoMatrix) -> bool:
    """Over F2[U] a homogeneous degree-0 matrix is invertible iff its U^0 part is."""
    names = list(m.source)
    rows = []
    for s in names:
        bits = 0
        for t in m.image(s):
            if m.exponent(s, t) == 0:
                bits |= 1 << names.index(t)
        rows.append(bits)
    rank = 0
    for bit in range(len(names)):
        pivot = next((r for r in rows if r >> bit & 1), None)
        if pivot is None:
            continue
        rows.remove(pivot)
        rows = [r ^ pivot if r >> bit & 1 else r for r in rows]
        rank += 1
    return rank == len(names)


def test_graded_smith_examples():
    z = MonoMatrix.zero({"a": Fraction(0)}, {"b": Fraction(-1)}, 1)
    sf = graded_smith(z)
    assert sf.D.is_zero()
    assert sf.P == MonoMatrix.identity(z.target)
    assert sf.Q == MonoMatrix.identity(z.source)

    one = MonoMatrix({"x": Fraction(0)}, {"y": Fraction(5)}, 1, [("x", "y")])
    assert graded_smith(one).exponents == [3]

    d = preset("sigma_2_3_7").complex.diff
    sf = graded_smith(d)
    assert sf.exponents == [1]
    assert compose(sf.P, compose(d, sf.Q)) == sf.D


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9), st.integers(1, 6), st.integers(1, 6), st.sampled_from([0, 1, -1, 2]))
def test_graded_smith_properties(seed, n_src, n_tgt, shift):
    rng = random.Random(seed)
    m = _random_matrix(rng, n_src, n_tgt, shift)
    sf = graded_smith(m)
    assert compose(sf.P, compose(m, sf.Q)) == sf.D
    assert sf.exponents == sorted(sf.exponents)
    assert _invertible(sf.P) and _invertible(sf.Q)
    # D has at most one entry per row and column
    targets = [t for _, t, _ in sf.D.arrows()]
    assert len(targets) == len(set(targets))
    assert all(len(sf.D.image(s)) <= 1 for s in sf.D.source)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**9))
def test_compose_associative(seed):
    rng = random.Random(seed)
    gens = {f"x{i}": Fraction(rng.randint(-3, 3)) for i in range(4)}

    def rand(shift):
        return MonoMatrix(gens, gens, shift, [
            (s, t) for s in gens for t in gens
            if u_exponent(gens[s], gens[t], shift) is not None and rng.random() < 0.4
        ])

    a, b, c = rand(0), rand(1), rand(2)
    assert compose(compose(a, b), c) == compose(a, compose(b, c))
    assert compose(a, b).shift == 1


def test_solve_affine_examples():
    sol = solve_affine_f2([["x", "y"], ["x"]], [1, 1])
    assert sol.particular == frozenset({"x"})
    assert sol.kernel == ()
    bad = solve_affine_f2([[]], [1])
    assert not bad.consistent


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_solve_affine_resubstitutes(seed):
    rng = random.Random(seed)
    unknowns = [f"u{i}" for i in range(rng.randint(1, 8))]
    eqs = [[u for u in unknowns if rng.random() < 0.4] for _ in range(rng.randint(1, 8))]
    rhs = [rng.randint(0, 1) for _ in eqs]
    sol = solve_affine_f2(eqs, rhs, unknowns)

    def value(assign, eq):
        return sum(1 for u in eq if u in assign) % 2

    for k in sol.kernel:
        assert all(value(k, eq) == 0 for eq in eqs)
    # kernel vectors are independent
    vecs = [sum(1 << unknowns.index(u) for u in k) for k in sol.kernel]
    for r in range(1, len(vecs) + 1):
        for combo in itertools.combinations(vecs, r):
            acc = 0
            for v in combo:
                acc ^= v
            assert acc != 0
    # brute force consistency
    feasible = any(
        all(value({u for u, b in zip(unknowns, bits) if b}, eq) == r for eq, r in zip(eqs, rhs))
        for bits in itertools.product([0, 1], repeat=len(unknowns))
    )
    assert sol.consistent == feasible
    if sol.consistent:
        assert all(value(sol.particular, eq) == r for eq, r in zip(eqs, rhs))
