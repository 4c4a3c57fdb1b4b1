import pytest
from hypothesis import given, strategies as st

from meanlab import (
    EvaluationError,
    Interval,
    ParseError,
    ToleranceConfig,
    catalog_get,
    check_bisymmetric,
    check_reflexive,
    check_symmetric,
    evaluate,
    mean_from_expression,
    parse_mean_expr,
    unparse,
)
from meanlab.expr import Binary, Call, Num, Unary, Var


def ev(source, x, y):
    return evaluate(parse_mean_expr(source), x, y)


class TestParseAndEvaluate:
    def test_examples(self):
        assert ev("(x+y)/2", 0.2, 0.6) == pytest.approx(0.4, abs=1e-15)
        assert ev("sqrt(x*y)", 1.0, 16.0) == 4.0
        assert ev("(x^2+y^2)/(x+y)", 1.0, 2.0) == pytest.approx(5.0 / 3.0, abs=1e-15)

    def test_precedence(self):
        assert ev("x+y*x", 2.0, 3.0) == 8.0          # * binds tighter than +
        assert ev("-x^2", 2.0, 0.0) == -4.0          # ^ binds tighter than unary -
        assert ev("2^3^2", 0.0, 0.0) == 64.0         # left-associative ^
        assert ev("x-y-y", 10.0, 3.0) == 4.0         # left-associative -
        assert ev("x/y/y", 8.0, 2.0) == 2.0

    def test_functions(self):
        assert ev("pow(x, y)", 2.0, 10.0) == 1024.0
        assert ev("min(x, y)", 0.3, 0.7) == 0.3
        assert ev("max(x, y)", 0.3, 0.7) == 0.7
        assert ev("exp(log(x))", 5.0, 0.0) == pytest.approx(5.0, abs=1e-12)

    def test_unicode_aliases(self):
        assert ev("x×y", 3.0, 4.0) == 12.0
        assert ev("x÷y", 8.0, 2.0) == 4.0

    def test_number_formats(self):
        assert ev("1.5e2 + x", 1.0, 0.0) == 151.0
        assert ev(".5*x", 4.0, 0.0) == 2.0


class TestParseErrors:
    def test_position_reported(self):
        with pytest.raises(ParseError) as info:
            parse_mean_expr("x + * y")
        assert info.value.line == 1 and info.value.col == 5
        assert info.value.expected

    def test_unknown_identifier(self):
        with pytest.raises(ParseError, match="unknown identifier 'z'"):
            parse_mean_expr("z + x")

    def test_arity(self):
        with pytest.raises(ParseError, match="takes 1 argument"):
            parse_mean_expr("sqrt(x, y)")
        with pytest.raises(ParseError, match="takes 2 argument"):
            parse_mean_expr("min(x)")

    def test_trailing_garbage(self):
        with pytest.raises(ParseError):
            parse_mean_expr("x y")

    def test_unbalanced(self):
        with pytest.raises(ParseError):
            parse_mean_expr("(x + y")

    def test_bad_character(self):
        with pytest.raises(ParseError):
            parse_mean_expr("x @ y")


class TestEvaluationErrors:
    def test_division_by_zero(self):
        with pytest.raises(EvaluationError, match="division by zero"):
            ev("x/y", 1.0, 0.0)

    def test_log_of_nonpositive(self):
        with pytest.raises(EvaluationError, match="log"):
            ev("log(x)", 0.0, 1.0)

    def test_sqrt_of_negative(self):
        with pytest.raises(EvaluationError, match="sqrt"):
            ev("sqrt(x-y)", 0.0, 1.0)

    def test_fractional_power_of_negative(self):
        with pytest.raises(EvaluationError):
            ev("(x-y)^0.5", 0.0, 1.0)


def _nodes():
    leaves = st.one_of(
        st.floats(0.0, 100.0, allow_nan=False).map(Num),
        st.sampled_from(["x", "y"]).map(Var),
    )

    def extend(children):
        return st.one_of(
            st.tuples(st.sampled_from("+-*/^"), children, children).map(
                lambda t: Binary(t[0], t[1], t[2])
            ),
            children.map(lambda c: Unary("-", c)),
            st.tuples(st.sampled_from(["exp", "log", "sqrt"]), children).map(
                lambda t: Call(t[0], (t[1],))
            ),
            st.tuples(st.sampled_from(["pow", "min", "max"]), children, children).map(
                lambda t: Call(t[0], (t[1], t[2]))
            ),
        )

    return st.recursive(leaves, extend, max_leaves=25)


class TestRoundTrip:
    def test_examples(self):
        for source in [
            "(x+y)/2",
            "sqrt(x*y)",
            "-x^2 + min(x, y)",
            "x - y - 1.5",
            "pow(x, 2) / (1 + y)",
        ]:
            ast = parse_mean_expr(source)
            assert parse_mean_expr(unparse(ast)) == ast

    @given(_nodes())
    def test_print_parse_identity(self, ast):
        assert parse_mean_expr(unparse(ast)) == ast


class TestMeanFromExpression:
    def test_matches_catalog_verdicts(self):
        iv = Interval(0.0, 1.0)
        cfg = ToleranceConfig(samples=300)
        expr_mean = mean_from_expression("(x+y)/2", iv)
        catalog_mean = catalog_get("arithmetic", iv)
        for check in (check_reflexive, check_symmetric, check_bisymmetric):
            assert check(expr_mean, cfg).passed == check(catalog_mean, cfg).passed

    def test_label_and_provenance(self):
        F = mean_from_expression("sqrt(x*y)", Interval(1.0, 4.0))
        assert F.provenance == "expression"
        assert F.label == "expr:sqrt(x*y)"
