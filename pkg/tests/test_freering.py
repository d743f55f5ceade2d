import pytest
from hypothesis import given, settings, strategies as st

from ringlock.freering import (
    FreePoly,
    bracket,
    format_word,
    nc_arith,
    nc_substitute,
    parse_free,
    reduce_exponents_mod,
)

MODULI = st.sampled_from([0, 2, 3, 6])


@st.composite
def free_polys(draw, modulus=None, letters="xy", max_len=4, max_terms=4):
    m = draw(MODULI) if modulus is None else modulus
    words = draw(st.lists(st.text(alphabet=letters, max_size=max_len), max_size=max_terms))
    coeffs = draw(st.lists(st.integers(-5, 5), min_size=len(words), max_size=len(words)))
    acc = FreePoly.zero(m)
    for w, c in zip(words, coeffs):
        acc = acc + FreePoly.word(tuple(w), c, m)
    return acc


@st.composite
def triples(draw):
    m = draw(MODULI)
    return tuple(draw(free_polys(modulus=m)) for _ in range(3))


@given(triples())
def test_ring_axioms(fgh):
    f, g, h = fgh
    m = f.modulus
    assert (f + g) + h == f + (g + h)
    assert f + g == g + f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert (f + g) * h == f * h + g * h
    assert f * FreePoly.one(m) == f == FreePoly.one(m) * f
    assert f - f == FreePoly.zero(m)


def test_noncommutative():
    x, y = FreePoly.var("x"), FreePoly.var("y")
    assert x * y != y * x


@pytest.mark.parametrize("n", range(0, 9))
def test_binomial_brackets(n):
    x, y = FreePoly.var("x"), FreePoly.var("y")
    total = FreePoly.zero()
    for i in range(n + 1):
        total = total + bracket(i, n - i)
    assert (x + y) ** n == total


def test_bracket_counts():
    b = bracket(2, 3)
    assert len(b.terms) == 10
    assert b.coefficient("xxyyy") == 1
    with pytest.raises(ValueError):
        bracket(-1, 2)


@given(free_polys(max_len=9), st.integers(2, 5))
def test_exponent_reduction_idempotent(f, n):
    r = reduce_exponents_mod(f, n)
    assert reduce_exponents_mod(r, n) == r


def test_exponent_reduction_example():
    f = parse_free("x^7*y + x^3")
    assert reduce_exponents_mod(f, 3) == parse_free("x*y + x")


@given(free_polys(letters="XY", max_len=4))
def test_parse_roundtrip(f):
    assert parse_free(str(f), f.modulus) == f


def test_parse_examples():
    assert parse_free("(X+Y)^2") == parse_free("X^2 + X*Y + Y*X + Y^2")
    assert parse_free("2*X - 3", 5) == FreePoly({("X",): 2, (): 2}, 5)
    with pytest.raises(ValueError):
        parse_free("X +* Y")


@settings(max_examples=30)
@given(free_polys(), free_polys(letters="ab", max_len=2), free_polys(letters="ab", max_len=2))
def test_substitution_is_a_homomorphism(f, a, b):
    a = a.map_coefficients(f.modulus)
    b = b.map_coefficients(f.modulus)
    bind = {"x": a, "y": b}
    g = parse_free("x*y + y", f.modulus)
    assert nc_substitute(f * g, bind) == nc_substitute(f, bind) * nc_substitute(g, bind)
    assert nc_substitute(f + g, bind) == nc_substitute(f, bind) + nc_substitute(g, bind)


def test_substitute_unbound():
    with pytest.raises(KeyError):
        nc_substitute(parse_free("x*z"), {"x": FreePoly.one()})


def test_nc_arith():
    x, y = FreePoly.var("x"), FreePoly.var("y")
    assert nc_arith(x, y, "mul") == x * y
    assert nc_arith(x, y, "sub") == x - y
    with pytest.raises(ValueError):
        nc_arith(x, y, "div")


def test_modulus_rules():
    with pytest.raises(ValueError):
        FreePoly.var("x", 2) + FreePoly.var("x", 3)
    assert (FreePoly.var("x", 2) * 2).is_zero()


def test_format_word():
    assert format_word(("x", "x", "y", "x")) == "x^2*y*x"
