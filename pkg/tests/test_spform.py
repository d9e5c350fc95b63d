import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fnclass.kfun import KFunction
from fnclass.spform import SPSyntaxError, parse, to_sp


class TestParse:
    def test_worked_pair(self):
        assert parse("x1*x2 + x1^0*x3", 2).to_hex() == "d8"
        assert parse("x1*x2 + x1*x3", 2).to_hex() == "28"

    def test_parity_function(self):
        f = parse("x1 + x2 + x3", 2)
        assert f.eval((1, 1, 1)) == 1
        assert f.eval((1, 1, 0)) == 0
        from fnclass.diagrams import imp_count
        assert imp_count(f) == 48

    def test_unicode_plus(self):
        assert parse("x1 ⊕ x2", 2) == parse("x1 + x2", 2)

    def test_constant_alone(self):
        f = parse("1", 2)
        assert f.n == 0 and f.eval(()) == 1

    def test_constant_too_large(self):
        with pytest.raises(SPSyntaxError, match="constant 5 out of range"):
            parse("5", 2)

    def test_exponent_too_large(self):
        with pytest.raises(SPSyntaxError, match="exponent"):
            parse("x1^2", 2)

    def test_indicator_semantics(self):
        neg = parse("x1^0", 2)
        assert [neg.eval((a,)) for a in range(2)] == [1, 0]

    def test_ternary_indicator(self):
        f = parse("x1^2", 3)
        assert [f.eval((a,)) for a in range(3)] == [0, 0, 1]

    def test_plain_variable_is_ring_value(self):
        f = parse("x1", 3)
        assert [f.eval((a,)) for a in range(3)] == [0, 1, 2]
        assert parse("x1^1", 3) != f  # indicator differs from value for k > 2

    def test_coefficient(self):
        f = parse("2*x1", 3)
        assert [f.eval((a,)) for a in range(3)] == [0, 2, 1]

    def test_arity_inference_and_override(self):
        assert parse("x2", 2).n == 2
        assert parse("x2", 2, arity=4).n == 4
        with pytest.raises(ValueError, match="arity"):
            parse("x3", 2, arity=2)

    def test_syntax_error_position(self):
        with pytest.raises(SPSyntaxError) as err:
            parse("x1 + * x2", 2)
        assert err.value.position == 5

    def test_trailing_garbage(self):
        with pytest.raises(SPSyntaxError, match="trailing"):
            parse("x1 x2", 2)

    def test_empty_input(self):
        with pytest.raises(SPSyntaxError):
            parse("", 2)

    def test_bad_variable_index(self):
        with pytest.raises(SPSyntaxError):
            parse("x0", 2)


class TestPrint:
    def test_constant_zero(self):
        assert to_sp(KFunction.constant(2, 0, 0)) == "0"

    def test_single_variable_canonical(self):
        assert to_sp(KFunction(2, 1, [0, 1])) == "x1^1"

    def test_coefficient_rendered_for_k3(self):
        f = KFunction(3, 1, [0, 2, 0])
        assert to_sp(f) == "2*x1^1"
        assert parse(to_sp(f), 3, arity=1) == f

    def test_round_trip_exhaustive_small(self):
        for n in range(3):
            for ident in range(2 ** (2 ** n)):
                f = KFunction.from_id(ident, 2, n)
                assert parse(to_sp(f), 2, arity=n) == f


@settings(max_examples=300, deadline=None)
@given(st.integers(2, 4), st.integers(0, 2), st.data())
def test_round_trip_random(k, n, data):
    size = k ** n
    vals = data.draw(st.lists(st.integers(0, k - 1), min_size=size, max_size=size))
    f = KFunction(k, n, vals)
    assert parse(to_sp(f), k, arity=n) == f
