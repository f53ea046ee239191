from fractions import Fraction

import pytest

from involutive_hf.complex import d_invariant, homology
from involutive_hf.errors import ComplexError, NotRationalHomologySphereError
from involutive_hf.involutive import ai0_terms, correction_terms_cone
from involutive_hf.iota import validate_iota
from involutive_hf.knots import (
    StaircaseModel,
    SurgeryModel,
    a0_max_model,
    pin_grading,
    preset,
    preset_names,
    quadrant_min_model,
    reduced_model,
    staircase,
    staircase_surgery,
)
from involutive_hf.algebra import compose, MonoMatrix
from involutive_hf.iota import IotaComplex

F = Fraction


def test_staircase_sizes():
    assert len(staircase(3).names) == 7
    assert len(staircase(5, mirrored=True).names) == 11
    with pytest.raises(ValueError):
        staircase(0)


def test_staircase_positions_t27():
    s = staircase(3)
    assert s.positions[0] == (0, 3) and s.positions[-1] == (3, 0)
    assert s.positions[1] == (1, 3)  # odd generator at the outer corner
    refl = s.reflection()
    assert all(refl[refl[n]] == n for n in s.names)
    for n, m in refl.items():
        i, j = s.positions[s.names.index(n)]
        assert s.positions[s.names.index(m)] == (j, i)


def test_mirror_reverses_arrows():
    s, m = staircase(2), staircase(2, mirrored=True)
    assert set(m.arrows) == {(t, u) for u, t in s.arrows}
    assert m.positions == tuple((-i, -j) for i, j in s.positions)


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
@pytest.mark.parametrize("mirrored", [False, True])
def test_normalisation_puts_s3_tower_at_minus_two(k, mirrored):
    s = staircase(k, mirrored)
    assert d_invariant(s._truncated_complex("i")) == 0


@pytest.mark.parametrize("k", [1, 2, 3, 4])
@pytest.mark.parametrize("mirrored", [False, True])
def test_truncations_are_iota_complexes(k, mirrored):
    s = staircase(k, mirrored)
    for make in (a0_max_model, quadrant_min_model):
        x = make(s).iota
        assert compose(x.iota.matrix, x.iota.matrix) == MonoMatrix.identity(x.gens)
        assert validate_iota(x).ok
        assert len(homology(x.complex).free_towers) == 1


def test_quadrant_model_t27():
    m = quadrant_min_model(staircase(3, names="abcdefg"))
    assert [m.iota.gens[n] for n in "abcdefg"] == [-2, -3, -4, -5, -4, -3, -2]
    pinned = pin_grading(m, F(-1, 2))
    assert pinned.iota.gens["a"] == F(-5, 2)
    r = reduced_model(pinned)
    assert dict(r.gens) == {"a": F(-5, 2), "d": F(-11, 2), "g": F(-5, 2)}
    assert r.complex.diff.arrows() == [("d", "a", 2), ("d", "g", 2)]
    assert r.iota.matrix.image("a") == {"g"}


def test_a0_model_minus_t211():
    m = a0_max_model(staircase(5, mirrored=True, names="opqrstuvwxy"))
    pinned = pin_grading(m, 1)
    assert pinned.iota.gens["t"] == 4
    r = reduced_model(pinned)
    assert len(r) == 3
    assert r.complex.diff.arrows() == [("o", "t", 3), ("y", "t", 3)]
    assert r.iota.matrix.image("o") == {"y"}


def test_unknot():
    s = StaircaseModel.from_steps(())
    x = a0_max_model(s).iota
    assert len(x) == 1
    assert x.iota.matrix == MonoMatrix.identity(x.gens)
    assert ai0_terms(pin_grading(a0_max_model(s), 0).iota).triple() == (0, 0, 0)


def test_pin_grading_shift():
    x = IotaComplex.build({"x": 3})
    m = pin_grading(SurgeryModel(x, "test", "max"), 0)
    assert m.iota.gens["x"] == -2
    two = IotaComplex.build({"x": 3, "y": 3})
    with pytest.raises(NotRationalHomologySphereError):
        pin_grading(SurgeryModel(two, "test", "max"), 0)


@pytest.mark.parametrize("name", ["surg_m3_T27", "surg_5_mT211"])
def test_staircase_route_matches_preset(name):
    m = staircase_surgery(name)
    p = preset(name)
    assert homology(m.iota.complex).multiset() == homology(p.complex).multiset()
    assert correction_terms_cone(m.iota).triple() == correction_terms_cone(p).triple()
    r = reduced_model(m)
    assert len(r) == 3
    assert validate_iota(r).ok


def test_presets():
    assert preset_names() == ["unit", "sigma_2_3_7", "surg_m3_T27", "surg_5_mT211", "minus_L31"]
    s = preset("sigma_2_3_7")
    assert validate_iota(s).ok and d_invariant(s.complex) == 0
    l31 = preset("minus_L31")
    assert len(l31) == 1 and d_invariant(l31.complex) == F(-1, 2)
    assert len(preset("sigma_2_3_7^2")) == 9
    assert d_invariant(preset("-surg_5_mT211").complex) == -1
    assert len(preset("surg_m3_T27#minus_L31")) == 3
    with pytest.raises(ComplexError):
        preset("nonsense")
    with pytest.raises(ComplexError):
        preset("sigma_2_3_7^0")
