from fractions import Fraction

import pytest

from zastava.checks import bruteforce_gram
from zastava.virasoro import (
    DegenerateParameters,
    VirParams,
    WhittakerSeries,
    agt_params,
    chic_map,
    dictionary_check,
    ff_params,
    nekrasov_series,
    partitions,
    vir_gram,
    vir_whittaker,
)

P = VirParams(Fraction(7, 3), Fraction(11, 5))


def naive_gram(params, level):
    """Normal-order each word by swapping the leftmost (nonnegative, negative) pair."""

    def reduce(word):
        total = Fraction(0)
        stack = [(Fraction(1), word)]
        while stack:
            coeff, w = stack.pop()
            if not w:
                total += coeff
                continue
            if w[-1] > 0 or w[0] < 0:
                continue
            if w[-1] == 0:
                stack.append((coeff * params.delta, w[:-1]))
                continue
            k = next(i for i in range(len(w) - 1) if w[i] >= 0 and w[i + 1] < 0)
            a, b = w[k], w[k + 1]
            stack.append((coeff, w[:k] + (b, a) + w[k + 2:]))
            stack.append((coeff * (a - b), w[:k] + (a + b,) + w[k + 2:]))
            if a + b == 0:
                stack.append((coeff * params.c * (a**3 - a) / 12, w[:k] + w[k + 2:]))
        return total

    basis = partitions(level)
    return [[reduce(tuple(reversed(mu)) + tuple(-k for k in nu)) for nu in basis] for mu in basis]


def test_gram_small_levels():
    D, c = P.delta, P.c
    assert vir_gram(P, 0) == [[1]]
    assert vir_gram(P, 1) == [[2 * D]]
    assert vir_gram(P, 2) == [[4 * D + c / 2, 6 * D], [6 * D, 8 * D * D + 4 * D]]


@pytest.mark.parametrize("level", range(6))
def test_gram_against_oracles(level):
    g = vir_gram(P, level)
    assert g == naive_gram(P, level)
    assert g == bruteforce_gram(P, level)
    assert all(g[i][j] == g[j][i] for i in range(len(g)) for j in range(len(g)))
    assert len(g) == len(partitions(level))


def test_partitions():
    assert partitions(4) == ((4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1))
    assert [len(partitions(n)) for n in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]


def test_whittaker_levels():
    ws = WhittakerSeries(P)
    assert vir_whittaker(P, 0).coeffs == {(): 1}
    assert ws.level(1).coeffs == {(1,): 1 / (2 * P.delta)}
    for d in range(7):
        assert ws.check_relations(d)
        assert ws.norm(d) == ws.norm_by_adjointness(d)


def test_degenerate():
    with pytest.raises(DegenerateParameters, match="level 1"):
        nekrasov_series(VirParams(Fraction(0), Fraction(1)), 3)


def test_nekrasov():
    s = nekrasov_series(P, 3)
    assert s[0] == 1 and s[1] == 1 / (2 * P.delta)
    e1, e2, a = Fraction(2, 3), Fraction(-5, 7), Fraction(1, 4)
    assert nekrasov_series(agt_params(a, e1, e2), 4) == nekrasov_series(agt_params(a, e2, e1), 4)


def test_agt_params():
    a = Fraction(3, 5)
    assert agt_params(a, 1, -1) == VirParams(a * a, Fraction(1))
    e = Fraction(7, 2)
    assert agt_params(0, e, e) == VirParams(Fraction(1), Fraction(25))
    with pytest.raises(ValueError):
        agt_params(1, 0, 1)


def test_ff_params():
    assert ff_params(-1, -1) == VirParams(Fraction(0), Fraction(1))
    assert ff_params(1, 0) == VirParams(Fraction(3, 8), Fraction(-2))
    assert ff_params(Fraction(5, 3), 4).delta == ff_params(-Fraction(5, 3) - 2, 4).delta
    with pytest.raises(ValueError):
        ff_params(1, -2)


def test_chic_map():
    assert chic_map(0, 1, -1) == (-1, -1)
    a, e = Fraction(2, 9), Fraction(-4, 3)
    assert chic_map(a, e, e) == (-2 * a / e - 1, -3)
    chi, k = chic_map(a, Fraction(5), e)
    assert k + 2 == -Fraction(5) / e
    with pytest.raises(ValueError):
        chic_map(1, 1, 0)


def test_dictionary_check():
    assert dictionary_check(5, 42)
    assert not dictionary_check(5, 42, mutate=True)
    assert dictionary_check(0, 1)
