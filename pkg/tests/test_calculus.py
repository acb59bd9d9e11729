import numpy as np
import pytest

from aginorm.calculus import (
    ExponentQuad,
    FunctionPair,
    ScalarFunction,
    Spectral,
    apply_function,
    matrix_power,
    psd_spectrum,
    validate_pair,
)
from aginorm.errors import EmptyGrid, InvalidParam, NegativeSpectrum, NotHermitian, NumericalAnomaly, SingularBase
from aginorm.linalg import sample_psd, sample_unitary

from conftest import mat_close


def test_square_of_two_by_two():
    a = np.array([[2.0, 1.0], [1.0, 2.0]])
    assert np.allclose(apply_function(a, ScalarFunction.power(2)), a @ a, atol=1e-13)
    assert np.allclose(a @ a, [[5, 4], [4, 5]])


def test_diagonal_powers():
    assert np.allclose(apply_function(np.diag([4.0, 9.0]), ScalarFunction.power(0.5)), np.diag([2.0, 3.0]))
    assert np.allclose(apply_function(np.diag([2.0, 4.0]), ScalarFunction.power(-1)), np.diag([0.5, 0.25]))
    assert np.allclose(matrix_power(np.diag([4.0]), 1.5), [[8.0]])


def test_power_identity_conventions(rng):
    a = sample_psd(rng, 4, 0.0)
    assert mat_close(matrix_power(a, 1), a, 1e-11)
    assert np.array_equal(matrix_power(a, 0), np.eye(4))


def test_clamp_band_and_negative_spectrum():
    w, _ = psd_spectrum(np.diag([1.0, -1e-12]))
    assert w[0] == 0.0
    with pytest.raises(NegativeSpectrum):
        psd_spectrum(np.diag([1.0, -1e-6]))
    with pytest.raises(NotHermitian):
        psd_spectrum([[1, 1], [0, 1]])


def test_pd_gate():
    with pytest.raises(SingularBase):
        apply_function(np.diag([1.0, 1e-10]), ScalarFunction.power(-0.5))
    # positive powers need no gate
    apply_function(np.diag([1.0, 0.0]), ScalarFunction.power(0.5))


def test_sampled_psd_passes_gate(rng):
    for _ in range(50):
        a = sample_psd(rng, 5, 0.1, 1 / np.sqrt(5))
        apply_function(a, ScalarFunction.power(-1))


def test_spectral_overflow_is_anomaly():
    s = Spectral(np.diag([1e10, 1.0]))
    with pytest.raises(NumericalAnomaly):
        s.power(400.0)


def test_function_strings_and_parse():
    assert str(ScalarFunction.power(0.3)) == "pow:0.3"
    assert ScalarFunction.parse("clip:2") == ScalarFunction.clip(2.0)
    assert str(FunctionPair.parse("pow:0.3,pow:0.7")) == "pow:0.3,pow:0.7"
    for bad in ("exp:1", "pow", "clip:-1", "pow:x"):
        with pytest.raises(InvalidParam):
            ScalarFunction.parse(bad)


def test_validate_pair_examples():
    assert validate_pair(FunctionPair.powers(0.3, 0.7)).ok
    # min(t, c) * max(1, t / c) = t: for t <= c it is t * 1, for t > c it is c * t / c
    assert validate_pair(FunctionPair.clip_split(2.5)).ok
    bad = validate_pair(FunctionPair.powers(0.5, 0.6, 1.0))
    assert not bad.ok and bad.worst_point == pytest.approx(1e6)
    assert validate_pair(FunctionPair.powers(1.5, 0.5)).ok  # target 2


def test_validate_pair_grid_rules():
    with pytest.raises(EmptyGrid):
        validate_pair(FunctionPair.powers(-1, 2), grid=[0.0])
    with pytest.raises(InvalidParam):
        validate_pair(FunctionPair.powers(0.5, 0.5), grid=[-1.0])
    assert validate_pair(FunctionPair.powers(-1, 2), grid=[0.0, 2.0]).ok


def test_custom_function_pair():
    f = ScalarFunction.custom("sqrt", np.sqrt)
    assert validate_pair(FunctionPair(f, f)).ok


def test_quad_validation():
    ExponentQuad(2, -1, 0.5, 0.5)
    with pytest.raises(InvalidParam):
        ExponentQuad(0.5, 0.6, 0.5, 0.5)
    q = ExponentQuad.from_free(1.5, 0.5, 2.0)
    assert q.as_list() == [1.5, 0.5, 0.5, 1.5] and not q.requires_pd
    assert ExponentQuad.from_free(-0.5, 0.2).requires_pd


def test_then_power():
    assert ScalarFunction.power(0.5).then_power(4) == ScalarFunction.power(2.0)
    g = ScalarFunction.clip(2.0).then_power(2)
    assert np.allclose(g(np.array([1.0, 3.0])), [1.0, 4.0])


def test_pair_composition(rng):
    pairs = [FunctionPair.powers(0.3, 0.7), FunctionPair.clip_split(0.5), FunctionPair.powers(-0.5, 1.5)]
    for _ in range(30):
        a = sample_psd(rng, 4, 0.1)
        s = Spectral(a)
        for pair in pairs:
            prod = s.apply(pair.first) @ s.apply(pair.second)
            assert np.linalg.norm(prod - a) <= 1e-9 * max(1.0, np.linalg.norm(a, 2))


def test_power_semigroup(rng):
    exps = (-1, -0.5, 0.3, 0.5, 0.7, 1)
    for _ in range(10):
        a = sample_psd(rng, 4, 0.2)
        for x in exps:
            for y in exps:
                lhs = matrix_power(a, x) @ matrix_power(a, y)
                assert mat_close(lhs, matrix_power(a, x + y), 1e-9)


def test_unitary_conjugation(rng):
    for _ in range(20):
        a = sample_psd(rng, 4, 0.1)
        u = sample_unitary(rng, 4)
        f = ScalarFunction.power(0.37)
        lhs = apply_function(u @ a @ u.conj().T, f)
        assert mat_close(lhs, u @ apply_function(a, f) @ u.conj().T, 1e-9)
