import pytest
from hypothesis import given

from maltsev.errors import (
    ArityMismatchError,
    BudgetExceededError,
    NameCollisionError,
    TermSyntaxError,
)
from maltsev.terms import (
    MALTSEV_SIGNATURE,
    App,
    Signature,
    Var,
    count_W,
    count_W_up_to,
    enumerate_level,
    enumerate_up_to,
    format_term,
    mu,
    parse_term,
    substitute,
    term_depth,
    term_size,
    validate_term,
    variables,
)

from conftest import term_strategy

X, Y, Z = Var("x"), Var("y"), Var("z")


class TestParse:
    def test_mu_application(self):
        assert parse_term("mu(x,y,y)") == mu(X, Y, Y)

    def test_single_variable(self):
        assert parse_term("x") == X

    def test_arity_mismatch(self):
        with pytest.raises(ArityMismatchError):
            parse_term("mu(x,y)")

    def test_whitespace_insensitive(self):
        assert parse_term(" mu( x ,y, z )  ") == mu(X, Y, Z)

    def test_nested(self):
        assert parse_term("mu(mu(x,y,z),x,x)") == mu(mu(X, Y, Z), X, X)

    def test_syntax_error_reports_position(self):
        with pytest.raises(TermSyntaxError) as exc:
            parse_term("mu(x,,y)")
        assert exc.value.position == 5

    def test_empty_input(self):
        with pytest.raises(TermSyntaxError):
            parse_term("   ")

    def test_trailing_garbage(self):
        with pytest.raises(TermSyntaxError):
            parse_term("x)")

    def test_symbol_as_variable_is_collision(self):
        with pytest.raises(NameCollisionError):
            parse_term("mu(mu,y,z)")

    def test_unknown_symbol_applied(self):
        with pytest.raises(TermSyntaxError):
            parse_term("f(x,y)")

    def test_constant_written_bare(self):
        sig = Signature((("mul", 2), ("e", 0)))
        assert parse_term("mul(e,x)", sig) == App("mul", (App("e", ()), X))

    def test_generic_signature(self):
        sig = Signature((("star", 2), ("ldiv", 2)))
        t = parse_term("star(x,ldiv(y,z))", sig)
        assert t == App("star", (X, App("ldiv", (Y, Z))))


class TestFormat:
    def test_direct_rendering(self):
        assert format_term(mu(X, Y, Z)) == "mu(x,y,z)"

    def test_variable(self):
        assert format_term(X) == "x"

    def test_nested(self):
        assert format_term(mu(mu(X, Y, Z), X, X)) == "mu(mu(x,y,z),x,x)"

    @given(term_strategy())
    def test_parse_format_round_trip(self, t):
        assert parse_term(format_term(t)) == t

    def test_format_parse_round_trip_on_canonical_strings(self):
        for text in ("x", "mu(x,y,z)", "mu(mu(x,y,y),z,mu(x,x,x))"):
            assert format_term(parse_term(text)) == text


class TestSubstitute:
    def test_basic(self):
        a, b = Var("a"), Var("b")
        assert substitute(mu(X, Y, Y), {"x": a, "y": b}) == mu(a, b, b)

    def test_identity(self):
        assert substitute(X, {}) == X

    def test_inner_term(self):
        assert substitute(mu(X, Y, Z), {"y": mu(X, X, X)}) == mu(X, mu(X, X, X), Z)

    @given(term_strategy())
    def test_renaming_preserves_depth(self, t):
        renamed = substitute(t, {"x": Var("u"), "y": Var("v"), "z": Var("w")})
        assert term_depth(renamed) == term_depth(t)


class TestDepth:
    def test_variable(self):
        assert term_depth(X) == 0

    def test_flat(self):
        assert term_depth(mu(X, Y, Z)) == 1

    def test_nested(self):
        assert term_depth(mu(mu(X, Y, Z), X, X)) == 2

    def test_constant_depth_zero(self):
        assert term_depth(App("e", ())) == 0


class TestValidate:
    def test_accepts_wellformed(self):
        validate_term(mu(X, Y, Z), MALTSEV_SIGNATURE)

    def test_rejects_bad_arity(self):
        with pytest.raises(ArityMismatchError):
            validate_term(App("mu", (X, Y)), MALTSEV_SIGNATURE)

    def test_rejects_variable_shadowing_symbol(self):
        with pytest.raises(NameCollisionError):
            validate_term(Var("mu"), MALTSEV_SIGNATURE)


class TestCounting:
    def test_two_generators_level_one(self):
        assert count_W(2, 1) == 8

    def test_two_generators_level_two(self):
        # (2 + 8)^3 - 2^3
        assert count_W(2, 2) == 992

    def test_one_generator_level_one(self):
        assert count_W(1, 1) == 1

    @pytest.mark.parametrize("m,n", [(1, 0), (1, 1), (1, 2), (2, 0), (2, 1), (2, 2), (3, 1)])
    def test_count_matches_enumeration(self, m, n):
        gens = tuple("abcdef"[:m])
        assert count_W(m, n) == len(enumerate_level(gens, n))

    def test_enumeration_depths_are_exact(self):
        for n in range(3):
            for t in enumerate_level(("x", "y"), n):
                assert term_depth(t) == n

    def test_enumeration_is_deterministic_and_duplicate_free(self):
        first = enumerate_level(("x", "y"), 2)
        second = enumerate_level(("x", "y"), 2)
        assert first == second
        assert len(set(first)) == len(first)

    def test_budget_guard(self):
        with pytest.raises(BudgetExceededError):
            enumerate_level(("x", "y"), 3, budget=10**4)

    def test_count_up_to(self):
        assert count_W_up_to(2, 2) == 2 + 8 + 992

    def test_enumerate_up_to_orders_by_level(self):
        terms = list(enumerate_up_to(("x", "y"), 1))
        assert [term_depth(t) for t in terms] == [0] * 2 + [1] * 8

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            count_W(0, 1)
        with pytest.raises(ValueError):
            count_W(2, -1)


class TestSignature:
    def test_duplicate_names_rejected(self):
        with pytest.raises(ValueError):
            Signature((("f", 1), ("f", 2)))

    def test_empty_name_rejected(self):
        with pytest.raises(ValueError):
            Signature((("", 1),))

    def test_negative_arity_rejected(self):
        with pytest.raises(ValueError):
            Signature((("f", -1),))

    def test_lookup(self):
        sig = Signature((("f", 2), ("c", 0)))
        assert sig.arity("f") == 2
        assert "c" in sig and "g" not in sig
        assert sig.names() == ("f", "c")


@given(term_strategy())
def test_size_positive_and_consistent(t):
    assert term_size(t) >= 1
    assert (term_size(t) == 1) == isinstance(t, Var)


@given(term_strategy())
def test_variables_are_first_occurrence_ordered(t):
    names = variables(t)
    assert len(set(names)) == len(names)
    rendered = format_term(t)
    positions = [rendered.index(n) for n in names]
    assert positions == sorted(positions)
