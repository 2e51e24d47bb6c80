import random
from fractions import Fraction

import pytest

from conftest import PI_LIST, env_for
from zastava.patterns import degree_vectors, enumerate_patterns, zero_pattern
from zastava.scalar import make_spec_env
from zastava.verma import (
    VermaEngine,
    WhittakerError,
    a_eigenvalue_audit,
    adjointness_audit,
    highest_weight_check,
    multi_path_patterns,
    path_independence,
    random_vector,
    shapovalov_norm,
    shapovalov_pairing,
    whittaker_component,
)
from zastava.yangian import WeightVector


def test_whittaker_examples(env2):
    h, (x1, x2) = env2.hbar, env2.x
    w0 = whittaker_component((1, 1), (0,), env2)
    assert w0.vector.coeffs == {zero_pattern((1, 1)): 1}
    w1 = whittaker_component((1, 1), (1,), env2)
    assert list(w1.vector.coeffs.values()) == [1 / (h * (h - x1 + x2))]
    assert w1.to_json()["degree"] == [1]


@pytest.mark.parametrize("pi", PI_LIST)
def test_whittaker_unit_constant(pi):
    eng = VermaEngine(pi, env_for(pi, 3))
    for d in degree_vectors(len(pi) - 1, 3):
        assert eng.whittaker_residuals(d) == []


def test_whittaker_error_carries_degree():
    eng = VermaEngine((1, 1), make_spec_env(2, 4, 0))
    with pytest.raises(ValueError):
        eng.whittaker((-1,))
    err = WhittakerError((2, 1), "rank 1 < 2")
    assert err.degree == (2, 1) and "[2, 1]" in str(err)


def test_shapovalov_examples(env2):
    h, (x1, x2) = env2.hbar, env2.x
    assert shapovalov_norm((1, 1), zero_pattern((1, 1)), env2) == 1
    (p,) = enumerate_patterns((1, 1), (1,))
    assert shapovalov_norm((1, 1), p, env2) == -h * (h - x1 + x2)


@pytest.mark.parametrize("pi", PI_LIST)
def test_path_independence(pi):
    env = env_for(pi, 4)
    assert path_independence(pi, 3, env) == []
    assert multi_path_patterns(pi, 3, env) > 0


@pytest.mark.parametrize("pi", [(1, 2), (1, 1, 1)])
def test_adjointness(pi):
    assert adjointness_audit(pi, 2, env_for(pi, 6), pairs=5, seed=1) == []
    assert adjointness_audit(pi, 2, env_for(pi, 6), pairs=2, seed=1, superscript_offset=1) != []


def test_pairing():
    env = make_spec_env(4, 8, 2)
    pats = enumerate_patterns((2, 2), (2,))
    xi = [WeightVector.basis(p) for p in pats]
    assert shapovalov_pairing((2, 2), xi[0], xi[1], env) == 0
    hw = WeightVector.basis(zero_pattern((2, 2)))
    assert shapovalov_pairing((2, 2), hw, hw, env) == 1
    eng = VermaEngine((2, 2), env)
    rng = random.Random(0)
    u, v = random_vector(eng.module, (2,), rng), random_vector(eng.module, (2,), rng)
    assert eng.pairing(u, v) == eng.pairing(v, u)
    with pytest.raises(ValueError):
        eng.pairing(u, hw)


@pytest.mark.parametrize("pi", PI_LIST)
def test_highest_weight(pi):
    env = env_for(pi, 2)
    assert highest_weight_check(pi, env, 6)
    x = list(env.x)
    x[0] += 1
    assert not highest_weight_check(pi, env, 6, prediction_env=env.with_x(x))
    assert a_eigenvalue_audit(pi, 2, env) == []


def test_chi_audit_records_values():
    eng = VermaEngine((1, 1), make_spec_env(2, 8, 0))
    audit = eng.chi_audit((1,))
    assert set(audit) == {(1, 2), (1, 3)}
    assert all(isinstance(v, Fraction) for v in audit.values())
