import re

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from qdissect.product_algebra import PochhammerFactor, ProductExpr, QMonomial, mono
from qdissect.spec_parser import ParamError, ParseError, parse_monomial, parse_params, parse_product, print_product

# independent acceptor for the surface grammar
_R = r"\d+(?:/\d+)?"
_QP = r"q(?:\^-?\d+)?"
_PRE = rf"(?:-?{_R}(?:\*{_QP})?|{_QP})"
_MON = rf"(?:-?(?:{_R}\*)?{_QP}|-?{_R})"
_GROUP = rf"\({_MON}(?:,{_MON})*;q(?:\^[1-9]\d*)?\)(?:_(?:inf|[1-9]\d*))?"
_TERM = rf"(?:{_PRE}|{_GROUP})"
GRAMMAR = re.compile(rf"{_TERM}(?:[*/]{_TERM})*")
TOKEN = re.compile(r"\d+|inf|q|[-*/^(),;_]")

coeffs = st.sampled_from([1, -1, 2, -2, 3, mpq(1, 2), mpq(-3, 4), mpq(5, 7), 12])
monomials = st.builds(QMonomial, coeffs, st.integers(-4, 12))
factors = st.builds(
    PochhammerFactor,
    monomials,
    st.integers(1, 12),
    st.none() | st.integers(1, 6),
    st.sampled_from([1, -1, 2, -2]),
)
exprs = st.builds(ProductExpr, monomials, st.lists(factors, max_size=5).map(tuple))


def test_single_group():
    p = parse_product("(q,q^7;q^8)")
    assert [(f.arg, f.base, f.length, f.power) for f in p.factors] == [(mono(1, 1), 8, None, 1), (mono(1, 7), 8, None, 1)]


def test_mod81():
    p = parse_product("(q^3,q^5;q^8)/(q,q^7;q^8)")
    assert [f.power for f in p.factors] == [1, 1, -1, -1]
    assert [f.arg.e for f in p.factors] == [3, 5, 1, 7]


def test_error_position():
    with pytest.raises(ParseError) as ei:
        parse_product("(q;;q)")
    e = ei.value
    assert e.offset == 3 and e.expected == {"monomial"} and e.found == "';'"
    assert "^" in str(e) and (e.line, e.column) == (1, 4)


def test_lengths_and_prefactor():
    p = parse_product("-3/2*q^-2*(2*q,-1;q^3)_4/(q;q)_inf")
    assert p.prefactor == QMonomial(mpq(-3, 2), -2)
    assert p.factors[0].length == 4 and p.factors[0].arg == QMonomial(2, 1)
    assert p.factors[1].arg == QMonomial(-1, 0)
    assert p.factors[2].length is None and p.factors[2].power == -1


@pytest.mark.parametrize("bad", ["", "(q;q", "(q;q^0)", "(q;q)_0", "(1/0*q;q)", "(q;q)*", "q^", "(;q)", "-q", "(q;q)x"])
def test_rejects(bad):
    with pytest.raises(ParseError):
        parse_product(bad)


def test_params():
    assert parse_params("p=3 a=q^2 z=q") == {"p": 3, "a": mono(1, 2), "z": mono(1, 1)}
    assert parse_params("k=4 m=2 r=7 s=3") == {"k": 4, "m": 2, "r": 7, "s": 3}
    with pytest.raises(ParamError):
        parse_params("p=0", {"p": "posint"})
    with pytest.raises(ParamError):
        parse_params("x=1", {"p": "posint"})
    assert parse_monomial("-2/3*q^4") == QMonomial(mpq(-2, 3), 4)


@settings(max_examples=1000)
@given(exprs)
def test_roundtrip(p):
    text = print_product(p)
    assert GRAMMAR.fullmatch(text), text
    assert parse_product(text).structurally_equal(p)
    assert print_product(parse_product(text)) == text


@settings(max_examples=200)
@given(exprs)
def test_token_deletions(p):
    text = print_product(p)
    spans = [m.span() for m in TOKEN.finditer(text)]
    for a, b in spans:
        mutated = text[:a] + text[b:]
        ok = GRAMMAR.fullmatch(mutated) is not None
        try:
            parse_product(mutated)
            parsed = True
        except ParseError:
            parsed = False
        assert parsed == ok, mutated
