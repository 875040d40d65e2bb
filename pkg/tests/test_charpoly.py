"""Exact characteristic polynomials against numpy and hand-built factors."""

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from msnring.charpoly import (
    char_polynomial,
    charpoly_dense,
    divide_linear,
    gershgorin_bound,
    integer_roots,
    poly_mul,
    support_components,
)


def random_sym(rng, n, low=-3, high=3):
    a = rng.integers(low, high + 1, size=(n, n))
    a = np.triu(a, 1)
    return (a + a.T).tolist()


def numpy_charpoly(block):
    """Ascending integer coefficients via numpy.poly, for cross-checking."""
    n = len(block)
    if n == 0:
        return [1]
    desc = np.poly(np.array(block, dtype=float))
    asc = [int(round(c)) for c in desc[::-1]]
    assert np.allclose(desc[::-1], asc, atol=1e-6)
    return asc


def test_charpoly_dense_tiny():
    assert charpoly_dense([]) == [1]
    assert charpoly_dense([[5]]) == [-5, 1]
    # [[0, 1], [1, 0]] has charpoly x^2 - 1
    assert charpoly_dense([[0, 1], [1, 0]]) == [-1, 0, 1]


def test_charpoly_dense_vs_numpy_fixed():
    block = [[0, 2, 0], [2, 0, 2], [0, 2, 0]]
    assert charpoly_dense(block) == numpy_charpoly(block)


def test_charpoly_dense_vs_numpy_random():
    rng = np.random.default_rng(7)
    for _ in range(30):
        n = int(rng.integers(1, 7))
        block = random_sym(rng, n)
        assert charpoly_dense(block) == numpy_charpoly(block)


@settings(deadline=None, max_examples=40)
@given(st.integers(0, 2**32 - 1), st.integers(1, 6))
def test_char_polynomial_matches_dense(seed, n):
    rng = np.random.default_rng(seed)
    block = random_sym(rng, n)
    assert char_polynomial(block) == charpoly_dense(block)


def test_char_polynomial_reuses_identical_blocks():
    # two disjoint copies of the same triangle: factor appears squared
    tri = np.array([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
    m = np.zeros((6, 6), dtype=int)
    m[:3, :3] = tri
    m[3:, 3:] = tri
    factor = charpoly_dense(tri.tolist())
    assert char_polynomial(m) == poly_mul(factor, factor)


def test_support_components():
    m = np.zeros((5, 5), dtype=int)
    m[0, 1] = m[1, 0] = 4
    m[2, 3] = m[3, 2] = 1
    assert support_components(m) == [[0, 1], [2, 3], [4]]
    # diagonal entries do not connect anything
    d = np.diag([3, 3, 3])
    assert support_components(d) == [[0], [1], [2]]


def test_gershgorin_bound():
    assert gershgorin_bound([]) == 0
    assert gershgorin_bound([[0, -4, 1], [-4, 0, 0], [1, 0, 0]]) == 5


def test_divide_linear():
    # x^2 - 5x + 6 = (x - 2)(x - 3)
    q, rem = divide_linear([6, -5, 1], 2)
    assert rem == 0 and q == [-3, 1]
    q, rem = divide_linear([6, -5, 1], 1)
    assert rem == 2


def test_integer_roots_known_polynomials():
    # (x - 2)^2 (x + 3) = x^3 - x^2 - 8x + 12
    roots, residual = integer_roots([12, -8, -1, 1], bound=12)
    assert roots == [(-3, 1), (2, 2)]
    assert residual == 0
    # x^2 - 2 has no integer roots
    roots, residual = integer_roots([-2, 0, 1], bound=2)
    assert roots == []
    assert residual == 2
    # x (x^2 - 2): trailing zeros give the root 0
    roots, residual = integer_roots([0, -2, 0, 1], bound=2)
    assert roots == [(0, 1)]
    assert residual == 2


def test_integer_roots_respects_bound():
    # root 7 outside the stated bound is never found
    roots, residual = integer_roots([-7, 1], bound=3)
    assert roots == []
    assert residual == 1


@settings(deadline=None, max_examples=40)
@given(st.lists(st.integers(-4, 4), min_size=1, max_size=5))
def test_integer_roots_reconstruct(root_list):
    poly = [1]
    for r in root_list:
        poly = poly_mul(poly, [-r, 1])
    bound = max(abs(r) for r in root_list)
    roots, residual = integer_roots(poly, bound=bound)
    assert residual == 0
    rebuilt = []
    for r, mult in roots:
        rebuilt.extend([r] * mult)
    assert sorted(rebuilt) == sorted(root_list)


def test_char_polynomial_diagonal():
    assert char_polynomial(np.diag([1, 1])) == [1, -2, 1]
    assert char_polynomial(np.zeros((3, 3), dtype=int)) == [0, 0, 0, 1]


def test_poly_mul():
    assert poly_mul([1], [5, 1]) == [5, 1]
    assert poly_mul([-1, 1], [1, 1]) == [-1, 0, 1]
