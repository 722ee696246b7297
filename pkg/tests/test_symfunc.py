import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nuframes.errors import (
    BadIndicatorBounds,
    ExprSyntaxError,
    NegativeSqrt,
    ThetaNotPositive,
    UnknownIdentifier,
    ZeroScale,
)
from nuframes.symfunc import (
    Abs2,
    Conj,
    Cos,
    ImaginaryUnit,
    Indicator,
    Negate,
    PositiveReciprocal,
    Product,
    RationalConst,
    RealConst,
    Scale,
    Sin,
    Sinc,
    Sqrt,
    Sum,
    Var,
    count_nodes,
    dilate_arg,
    essential_sup,
    evaluate,
    midpoint_chunks,
    parse,
    product_of,
    render,
    sum_of,
)

# ---------------------------------------------------------------------------
# parsing: golden trees for the built-in setup expressions


def test_parse_sinc_indicator():
    assert parse("sinc(g)*chi(0,1/8]") == Product(
        (Sinc(Var()), Indicator(F(0), F(1, 8), False, True))
    )


def test_parse_trig_filters():
    chi = Indicator(F(0), F(1, 32), False, True)
    two_g = Product((RationalConst(F(2)), Var()))
    assert parse("cos(g)*cos(2*g)*chi(0,1/32]") == Product(
        (Cos(Var()), Cos(two_g), chi)
    )
    assert parse("cos(2*g)*sin(g)*chi(0,1/32]") == Product(
        (Cos(two_g), Sin(Var()), chi)
    )
    assert parse("sin(2*g)*chi(0,1/32]") == Product((Sin(two_g), chi))


def test_parse_complement_filter():
    chi = Indicator(F(0), F(1, 32), False, True)
    assert parse("1 - chi(0,1/32]") == Sum((RationalConst(F(1)), Negate(chi)))


def test_parse_closed_indicator():
    assert parse("chi[0,1/8]") == Indicator(F(0), F(1, 8), True, True)
    assert parse("chi[1/4,1/2)") == Indicator(F(1, 4), F(1, 2), True, False)
    assert parse("chi(-1/2,3)") == Indicator(F(-1, 2), F(3), False, False)


def test_parse_numbers():
    assert parse("3/2") == RationalConst(F(3, 2))
    assert parse("-3/2") == RationalConst(F(-3, 2))
    assert parse("0.25") == RationalConst(F(1, 4))
    assert parse("2.5e-3") == RationalConst(F(1, 400))
    assert parse("1 - 1/2") == Sum((RationalConst(F(1)), RationalConst(F(-1, 2))))


def test_parse_functions_and_atoms():
    assert parse("i") == ImaginaryUnit()
    assert parse("g") == Var()
    assert parse("sqrt(g)") == Sqrt(Var())
    assert parse("abs2(i*g)") == Abs2(Product((ImaginaryUnit(), Var())))
    assert parse("conj(g)") == Conj(Var())
    assert parse("recip(g)") == PositiveReciprocal(Var())
    assert parse("-(g + 1)") == Negate(Sum((Var(), RationalConst(F(1)))))


def test_parse_whitespace_and_grouping():
    assert parse(" ( g + 1 ) * g ") == parse("(g+1)*g")
    assert parse("g - (1 - g)") == Sum(
        (Var(), Negate(Sum((RationalConst(F(1)), Negate(Var())))))
    )


@pytest.mark.parametrize(
    "text,offset",
    [
        ("sin(g", 5),
        ("2 +", 3),
        ("g g", 2),
        ("g @ g", 2),
        ("chi{0,1}", 3),
        ("1/0", 2),
        ("", 0),
        ("sqrt 4", 5),
        ("chi(0 1)", 6),
    ],
)
def test_parse_errors_carry_offsets(text, offset):
    with pytest.raises(ExprSyntaxError) as exc:
        parse(text)
    assert exc.value.offset == offset
    assert f"offset {offset}" in str(exc.value)


def test_unknown_identifier():
    with pytest.raises(UnknownIdentifier) as exc:
        parse("2*foo(g)")
    assert exc.value.name == "foo"
    assert exc.value.offset == 2


def test_bad_indicator_bounds():
    with pytest.raises(BadIndicatorBounds):
        parse("chi(1/2,1/4]")
    with pytest.raises(BadIndicatorBounds):
        parse("chi[1,1]")
    with pytest.raises(BadIndicatorBounds):
        Indicator(F(1), F(1), True, True)


def test_node_limit():
    text = "+".join(["g"] * 30)
    assert count_nodes(parse(text)) == 31
    with pytest.raises(ValueError, match="node limit"):
        parse(text, max_nodes=30)
    with pytest.raises(ValueError, match="node limit"):
        parse("+".join(["g"] * 10_001))


def test_depth_limit():
    deep = "(" * 250 + "g" + ")" * 250
    with pytest.raises(ExprSyntaxError, match="nesting too deep"):
        parse(deep)
    ok = "(" * 80 + "g" + ")" * 80
    assert parse(ok) == Var()


# ---------------------------------------------------------------------------
# evaluation


def test_eval_atoms():
    assert evaluate(RationalConst(F(3, 2)), 0.7) == 1.5
    assert evaluate(RealConst(0.25), 9.0) == 0.25
    assert evaluate(ImaginaryUnit(), 2.0) == 1j
    assert evaluate(Var(), 0.3) == 0.3


def test_eval_sinc():
    assert evaluate(Sinc(Var()), 0.0) == 1.0
    x = 0.7
    assert evaluate(Sinc(Var()), x) == math.sin(x) / x
    v = evaluate(Sinc(Var()), np.array([0.0, x]))
    assert v[0] == 1.0 and v[1] == math.sin(x) / x


def test_eval_indicator_endpoint_semantics():
    half_open = Indicator(F(0), F(1, 8), False, True)
    assert evaluate(half_open, 0.0) == 0.0
    assert evaluate(half_open, 0.125) == 1.0
    assert evaluate(half_open, 0.1) == 1.0
    assert evaluate(half_open, 0.2) == 0.0
    closed = Indicator(F(0), F(1, 8), True, True)
    assert evaluate(closed, 0.0) == 1.0
    open_hi = Indicator(F(0), F(1, 8), True, False)
    assert evaluate(open_hi, 0.125) == 0.0


def test_eval_complex_algebra():
    e = parse("conj(i*g)")
    assert evaluate(e, 2.0) == -2j
    assert evaluate(parse("abs2(i*g + 1)"), 2.0) == 5.0
    assert evaluate(parse("sqrt(4)"), 0.0) == 2.0
    assert evaluate(parse("recip(4)"), 0.0) == 0.25


def test_eval_scale_and_negate():
    assert evaluate(Scale(F(3, 2), Var()), 2.0) == 3.0
    assert evaluate(Negate(Var()), 2.0) == -2.0


def test_eval_guards():
    with pytest.raises(NegativeSqrt, match="sqrt"):
        evaluate(Sqrt(Var()), -1.0)
    with pytest.raises(NegativeSqrt):
        evaluate(parse("sqrt(i*g)"), 1.0)
    with pytest.raises(ThetaNotPositive, match="reciprocal"):
        evaluate(PositiveReciprocal(Var()), 0.0)
    with pytest.raises(ThetaNotPositive):
        evaluate(parse("recip(g - 1)"), 0.25)
    # tolerance absorbs tiny imaginary dust
    assert evaluate(Sqrt(RealConst(0.0)), 0.0) == 0.0


def test_eval_vectorized_matches_scalar():
    e = parse("sin(2*g)*chi(0,1/32] + conj(i*g)")
    pts = np.linspace(-0.1, 0.6, 23)
    vec = evaluate(e, pts)
    for x, v in zip(pts, vec):
        assert evaluate(e, float(x)) == v


def test_expressions_are_callable():
    e = parse("2*g")
    assert e(0.5) == 1.0


# ---------------------------------------------------------------------------
# constructors


def test_sum_product_constructors():
    a, b, c = Var(), RationalConst(F(1)), Sin(Var())
    assert sum_of(a) is a
    assert product_of(c) is c
    assert sum_of(a, sum_of(b, c)) == Sum((a, b, c))
    assert product_of(a, product_of(b, c)) == Product((a, b, c))
    with pytest.raises(ValueError, match="empty"):
        sum_of()
    with pytest.raises(ValueError, match="empty"):
        product_of()
    with pytest.raises(ValueError, match="two"):
        Sum((a,))
    with pytest.raises(ValueError, match="two"):
        Product((a,))


def test_nodes_are_immutable_and_hashable():
    e = parse("sin(g)*g")
    with pytest.raises(AttributeError):
        e.factors = ()
    assert hash(parse("sin(g)*g")) == hash(e)


# ---------------------------------------------------------------------------
# argument dilation


def test_dilate_indicator_exact():
    chi = Indicator(F(0), F(1, 8), False, True)
    assert dilate_arg(chi, F(1, 4)) == Indicator(F(0), F(1, 2), False, True)
    assert dilate_arg(chi, 4) == Indicator(F(0), F(1, 32), False, True)
    flipped = dilate_arg(Indicator(F(0), F(1), False, True), -1)
    assert flipped == Indicator(F(-1), F(0), True, False)


def test_dilate_identity_and_zero():
    e = parse("sin(g)")
    assert dilate_arg(e, 1) is e
    with pytest.raises(ZeroScale):
        dilate_arg(e, 0)


@pytest.mark.parametrize(
    "text",
    [
        "sinc(g)*chi(0,1/8]",
        "1 - chi(0,1/32]",
        "cos(2*g)*sin(g)*chi(0,1/32]",
        "conj(i*g) - 3/2*g",
        "abs2(sin(g) + i)",
    ],
)
@pytest.mark.parametrize("s", [F(4), F(1, 4), F(-2), F(3, 5)])
def test_dilate_evaluates_at_scaled_argument(text, s):
    e = parse(text)
    d = dilate_arg(e, s)
    pts = np.linspace(-0.9, 0.9, 41)
    got = evaluate(d, pts)
    want = evaluate(e, float(s) * pts)
    assert np.allclose(got, want, rtol=1e-14, atol=0)


def test_dilate_composes():
    e = parse("sin(g)*chi(0,1]")
    once = dilate_arg(dilate_arg(e, F(3, 2)), F(4, 3))
    direct = dilate_arg(e, F(2))
    pts = np.linspace(-1.0, 1.0, 29)
    assert np.allclose(evaluate(once, pts), evaluate(direct, pts), rtol=1e-14)


# ---------------------------------------------------------------------------
# rendering


@pytest.mark.parametrize(
    "text",
    [
        "sinc(g)*chi(0,1/8]",
        "chi[0,1/8]",
        "chi[0,1/32]",
        "1 - chi(0,1/32]",
        "cos(g)*cos(2*g)*chi(0,1/32]",
        "cos(2*g)*sin(g)*chi(0,1/32]",
        "sin(2*g)*chi(0,1/32]",
        "sqrt(1 + abs2(sin(g)))",
        "conj(i*g) - 3/2*g",
        "recip(1 + g*g)",
        "-(g + 1)*g",
        "g - (1 - g)",
        "-1/2 + g",
        "chi(-1/2,-1/4]",
        "i*sin(g)*(g + 2)",
    ],
)
def test_render_round_trip_structural(text):
    e = parse(text)
    r = render(e)
    assert parse(r) == e
    assert render(parse(r)) == r


def test_render_programmatic_nodes_eval_equal():
    pts = np.linspace(-2.0, 2.0, 37)
    for e in (
        Scale(F(3, 2), Sin(Var())),
        RealConst(0.1),
        RealConst(math.pi),
        RealConst(1e-20),
        Negate(RationalConst(F(2))),
        product_of(RealConst(2 * math.pi / 0.046875), sum_of(Var(), RationalConst(F(-1, 64)))),
    ):
        back = parse(render(e))
        assert np.allclose(evaluate(back, pts), evaluate(e, pts), rtol=1e-15, atol=0)


# hypothesis: random trees survive render -> parse with equal values

_points = np.linspace(-1.5, 1.5, 17)


def _exprs():
    atoms = st.one_of(
        st.builds(RationalConst, st.fractions(min_value=-8, max_value=8, max_denominator=64)),
        st.just(Var()),
        st.just(ImaginaryUnit()),
        st.builds(
            lambda lo, w, lc, hc: Indicator(lo, lo + w, lc, hc),
            st.fractions(min_value=-2, max_value=2, max_denominator=16),
            st.fractions(min_value=F(1, 16), max_value=2, max_denominator=16),
            st.booleans(),
            st.booleans(),
        ),
    )

    def extend(children):
        return st.one_of(
            st.builds(Sin, children),
            st.builds(Cos, children),
            st.builds(Sinc, children),
            st.builds(Abs2, children),
            st.builds(Conj, children),
            st.builds(Negate, children),
            st.builds(
                Scale,
                st.fractions(min_value=-4, max_value=4, max_denominator=32).filter(bool),
                children,
            ),
            st.builds(lambda ts: Sum(tuple(ts)), st.lists(children, min_size=2, max_size=4)),
            st.builds(lambda fs: Product(tuple(fs)), st.lists(children, min_size=2, max_size=4)),
        )

    return st.recursive(atoms, extend, max_leaves=25)


@settings(deadline=None, max_examples=120)
@given(e=_exprs())
def test_render_parse_preserves_values(e):
    back = parse(render(e))
    v1 = evaluate(e, _points)
    v2 = evaluate(back, _points)
    np.testing.assert_allclose(v2, v1, rtol=1e-12, atol=1e-15)


@settings(deadline=None, max_examples=120)
@given(e=_exprs(), s=st.fractions(min_value=-4, max_value=4, max_denominator=16).filter(bool))
def test_dilate_property(e, s):
    got = evaluate(dilate_arg(e, s), _points)
    want = evaluate(e, float(s) * _points)
    mag = np.max(np.abs(want)) + 1.0
    np.testing.assert_allclose(got, want, rtol=0, atol=1e-9 * mag)


# ---------------------------------------------------------------------------
# grid helpers


def test_midpoint_chunks_exact_dyadic():
    (pts,) = list(midpoint_chunks(0, F(1, 2), 10))
    assert len(pts) == 1024
    h = 0.5 / 1024
    assert pts[0] == 0.5 * h
    assert pts[-1] == 0.5 - 0.5 * h
    assert np.all(np.diff(pts) > 0)


def test_midpoint_chunks_blocks_concatenate():
    whole = np.concatenate(list(midpoint_chunks(F(-1), F(3), 10, chunk=100)))
    (one,) = list(midpoint_chunks(F(-1), F(3), 10))
    assert np.array_equal(whole, one)
    assert len(whole) == 1024


def test_essential_sup():
    assert essential_sup(Indicator(F(0), F(1, 4), False, True), (0, F(1, 2)), 12) == 1.0
    got = essential_sup(Scale(F(2), Var()), (0, 1), 10)
    assert got == 2.0 - 2.0**-10
    with pytest.raises(ValueError, match="empty interval"):
        essential_sup(Var(), (1, 1), 10)
