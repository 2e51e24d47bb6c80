from fractions import Fraction

import pytest

from conftest import PI_LIST, env_for
from zastava.patterns import degree_vectors, enumerate_patterns, zero_pattern
from zastava.scalar import make_spec_env
from zastava.yangian import (
    GeneratorRangeError,
    GenLabel,
    GTModule,
    Normalization,
    WeightVector,
    psi_factor,
    to_fmo,
)


@pytest.fixture
def m11(env2):
    return GTModule((1, 1), env2)


def one(pi, d):
    (p,) = enumerate_patterns(pi, d)
    return p


def test_e_coeff_example(m11, env2):
    h, (x1, x2) = env2.hbar, env2.x
    src, tgt = one((1, 1), (1,)), zero_pattern((1, 1))
    assert m11.e_coeff(src, tgt, 1, 1) == h - x1 + x2
    assert m11.e_coeff(src, src, 1, 1) == 0
    assert m11.e_row(tgt, 1, 1) == {}


def test_f_coeff_example(m11, env2):
    h, (x1, _) = env2.hbar, env2.x
    src, tgt = zero_pattern((1, 1)), one((1, 1), (1,))
    assert m11.f_coeff(src, tgt, 1, 1) == -1 / h
    assert m11.f_coeff(src, tgt, 1, 2) == x1 / h
    assert m11.f_coeff(src, one((1, 1), (2,)), 1, 1) == 0


def test_generator_ranges():
    m = GTModule((1, 2), make_spec_env(3, 6, 0))
    with pytest.raises(GeneratorRangeError):
        m.e_row(zero_pattern((1, 2)), 1, 1)
    with pytest.raises(GeneratorRangeError):
        m.f_row(zero_pattern((1, 2)), 1, 0)
    assert m.e_row(zero_pattern((1, 2)), 1, 2) == {}


def test_apply_generator(m11, env2):
    xi0 = WeightVector.basis(zero_pattern((1, 1)))
    out = m11.apply_generator(GenLabel("f", 1, 1), xi0)
    assert out == WeightVector((1, 1), (1,), {one((1, 1), (1,)): -1 / env2.hbar})
    empty = m11.apply_generator(GenLabel("e", 1, 1), xi0)
    assert empty.degree == (-1,) and empty.is_zero()
    v = WeightVector.basis(one((1, 1), (2,)))
    d = m11.apply_generator(GenLabel("d", 2, 1), v)
    assert set(d.coeffs) == set(v.coeffs)


def test_operator_matrix_matches_apply(env2):
    m = GTModule((2, 2), make_spec_env(4, 8, 3))
    lab = GenLabel("e", 1, 2)
    mat = m.operator_matrix(lab, (2,))
    for pat in m.patterns((2,)):
        v = WeightVector.basis(pat)
        assert mat.apply(v) == m.apply_generator(lab, v)


def test_A_eigenvalue(m11, env2):
    xi0 = zero_pattern((1, 1))
    assert m11.A_eigenvalue(xi0, 0).coeffs == (1,)
    assert m11.A_eigenvalue(xi0, 1).coeffs == (env2.x[0] / env2.hbar, 1)


@pytest.mark.parametrize("pi", PI_LIST)
def test_A_monic_and_separating(pi):
    env = env_for(pi, 5)
    m = GTModule(pi, env)
    for d in degree_vectors(len(pi) - 1, 3):
        pats = m.patterns(d)
        tuples = set()
        for pat in pats:
            polys = tuple(m.A_eigenvalue(pat, i) for i in range(len(pi) + 1))
            for i, poly in enumerate(polys):
                assert poly.is_monic() and poly.degree == sum(pi[:i])
            tuples.add(polys)
        assert len(tuples) == len(pats)


def test_d_series_highest_vector(env2):
    m = GTModule((1, 1), env2)
    xi0 = zero_pattern((1, 1))
    for k in (1, 2):
        ser = m.d_series(xi0, k, 5)
        assert ser[0] == 1
        assert ser[1] == k - 1 + env2.x[k - 1] / env2.hbar
        assert all(ser[r] == 0 for r in range(2, 6))


def test_truncation_on_basis(env2):
    m = GTModule((1, 1), env2)
    for d in range(4):
        pat = one((1, 1), (d,))
        assert all(m.d_gen(pat, 1, r) == 0 for r in range(2, 8))


def test_d_prime_inverts_d(env2):
    m = GTModule((1, 2), make_spec_env(3, 8, 2))
    pat = m.patterns((1,))[0]
    for k in (1, 2):
        for r in range(1, 5):
            total = sum(m.d_gen(pat, k, t) * m.d_prime_gen(pat, k, r - t) for t in range(r + 1))
            assert total == 0


def test_to_fmo(env2):
    h = env2.hbar
    xi0 = WeightVector.basis(zero_pattern((1, 1)))
    assert to_fmo(xi0, env2) == xi0
    v = WeightVector.basis(one((1, 1), (1,)))
    assert to_fmo(v, env2)[one((1, 1), (1,))] == -h
    w = WeightVector((2, 2), (2,), {p: Fraction(k + 1) for k, p in enumerate(enumerate_patterns((2, 2), (2,)))})
    env4 = make_spec_env(4, 6, 0)
    assert to_fmo(to_fmo(w, env4), env4, inverse=True) == w
    assert psi_factor(one((1, 1), (3,)), h) == -(h**3)


def test_fmo_conjugation_intertwines():
    env = make_spec_env(3, 8, 5)
    geo, fmo = GTModule((1, 2), env), GTModule((1, 2), env, Normalization.FMO)
    for pat in geo.patterns((1,)):
        v = WeightVector.basis(pat)
        for lab in (GenLabel("e", 1, 2), GenLabel("e", 1, 3), GenLabel("f", 1, 1), GenLabel("f", 1, 2)):
            lhs = to_fmo(geo.apply_generator(lab, v), env)
            rhs = fmo.apply_generator(lab, to_fmo(v, env))
            assert lhs == rhs


@pytest.mark.parametrize("pi", PI_LIST)
@pytest.mark.parametrize("norm", list(Normalization))
def test_interpolation_equivalence(pi, norm):
    m = GTModule(pi, env_for(pi, 1), norm)
    for d in degree_vectors(len(pi) - 1, 2):
        for pat in m.patterns(d):
            for i in range(1, len(pi)):
                b = m.B_series(pat, i)
                assert b == m.interpolate_BC(pat, i, "B")
                assert m.C_series(pat, i) == m.interpolate_BC(pat, i, "C")
                for poly in b.values():
                    assert poly.degree == sum(pi[:i]) - 1


def test_B_constant_for_rank_one(m11):
    for poly in m11.B_series(one((1, 1), (2,)), 1).values():
        assert poly.degree == 0
    assert m11.C_series(zero_pattern((1, 1)), 1) != {}
    assert m11.B_series(zero_pattern((1, 1)), 1) == {}


def test_interpolation_rejects_coincident_nodes():
    from zastava.scalar import SpecEnv

    m = GTModule((2, 2), SpecEnv(4, (Fraction(1), Fraction(1), Fraction(3), Fraction(5)), Fraction(1), 0))
    with pytest.raises(ArithmeticError):
        m.interpolate_BC(zero_pattern((2, 2)), 1, "B")
