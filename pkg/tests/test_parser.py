import pytest

from k3isogeny.parser import ParseError, parse_poly, parse_rational


@pytest.mark.parametrize("text,coeffs", [
    ("t^4 - 1", ["-1", "0", "0", "0", "1"]),
    ("(t-1)*(t+1)", ["-1", "0", "1"]),
    ("-t^2 + 3/2*t", ["0", "3/2", "-1"]),
    ("(t^2+1)^2", ["1", "0", "2", "0", "1"]),
    ("17/8", ["17/8"]),
    ("- -t", ["0", "1"]),
])
def test_parse(text, coeffs):
    p = parse_poly(text)
    assert [str(c) for c in p.coeffs] == coeffs


@pytest.mark.parametrize("text,fragment,pos", [
    ("0.5*t", "floating-point", 0),
    ("t + 1e3", "floating-point", 4),
    ("s + 1", "unknown variable", 0),
    ("t^", "exponent", 2),
    ("(t + 1", "expected ')'", 6),
    ("t / (t+1)", "non-constant", 2),
    ("t / 0", "division by zero", 2),
    ("", "empty", 0),
    ("t $ 1", "unexpected token", 2),
])
def test_errors_carry_position(text, fragment, pos):
    with pytest.raises(ParseError) as exc:
        parse_poly(text)
    assert fragment in str(exc.value)
    assert exc.value.pos == pos


def test_other_variable():
    assert parse_poly("u^2 - 1", "u").var == "u"


def test_reprint_stable():
    for text in ["t^4 - 16", "3/7*t^3 - t + 2", "-(t-2)^3"]:
        p = parse_poly(text)
        assert parse_poly(str(p)) == p
        assert str(parse_poly(str(p))) == str(p)


def test_parse_rational():
    assert str(parse_rational("-17/8")) == "-17/8"
    with pytest.raises(ParseError):
        parse_rational("t + 1")
