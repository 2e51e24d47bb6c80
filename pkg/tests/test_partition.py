import pytest

from zastava.partition import (
    block_transpositions,
    sign_of,
    sl2_closed_form,
    sl2_match,
    sl2_oracle,
    wl_invariance_check,
    z_coefficient,
    z_series,
)
from zastava.scalar import make_spec_env


def test_z_examples(env2):
    h, (x1, x2) = env2.hbar, env2.x
    assert z_coefficient((1, 1), (0,), env2) == 1
    assert z_coefficient((1, 1), (1,), env2) == 1 / (h * (h - x1 + x2))


def test_sl2_oracle_examples(env2):
    h, (x1, x2) = env2.hbar, env2.x
    assert sl2_oracle(0, env2) == 1
    assert sl2_oracle(1, env2) == 1 / (h * (h + x2 - x1))
    assert sl2_oracle(2, env2) == 1 / (2 * h**2 * (h + x2 - x1) * (2 * h + x2 - x1))
    assert all(sl2_oracle(m, env2) == sl2_closed_form(m, env2) for m in range(6))
    assert all(sl2_oracle(m, env2, "x1-x2") == sl2_closed_form(m, env2, "x1-x2") for m in range(6))
    with pytest.raises(ValueError):
        sl2_oracle(1, make_spec_env(3, 2, 0))


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_sl2_match(seed):
    env = make_spec_env(2, 12, seed)
    assert sl2_match(5, env) == {"x2-x1": True, "x1-x2": False}


def test_z_series():
    env = make_spec_env(3, 6, 0)
    zs = z_series((1, 1, 1), 2, env)
    assert len(zs.terms) == 6 and zs.terms[(0, 0)] == 1
    assert z_series((1, 1), 0, make_spec_env(2, 2, 0)).terms == {(0,): 1}
    js = zs.to_json()
    assert js["pi"] == [1, 1, 1] and js["terms"][0] == {"d": [0, 0], "value": "1"}
    assert zs.csv_rows()[1] == ["0-0", "1"]


def test_trivial_degree_lattice():
    zs = z_series((3,), 4, make_spec_env(3, 4, 0))
    assert zs.terms == {(): 1}


def test_wl_invariance():
    assert wl_invariance_check((2, 2), 2, 0)
    assert wl_invariance_check((1, 1), 3, 0)
    fake = lambda comp, d, env: env.x[0] * sum(d) + 1  # noqa: E731
    assert not wl_invariance_check((2, 2), 2, 0, fake)
    assert block_transpositions((1, 2)) == [(1, 2)]


def test_sign_rule():
    assert sign_of((1, 2)) == -1 and sign_of((1, 2), "none") == 1
    with pytest.raises(ValueError):
        sign_of((1,), "rho")


def test_pole_structure():
    # denominators factor over hbar and x_i - x_j + m hbar
    env = make_spec_env(2, 8, 3)
    h, (x1, x2) = env.hbar, env.x
    val = z_coefficient((1, 1), (3,), env)
    prod = 1
    for k in (1, 2, 3):
        prod *= k * h * (k * h + x2 - x1)
    assert val * prod == 1
