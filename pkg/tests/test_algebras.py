import itertools
import random

import pytest

from maltsev.algebras import (
    GROUP_AXIOMS,
    Identity,
    OperationTable,
    check_identity,
    dump_algebra,
    evaluate,
    is_latin_square,
    is_maltsev_operation,
    load_algebra,
    make_algebra,
    maltsev_from_group,
    maltsev_from_left_loop,
    maltsev_from_quasigroup,
    maltsev_from_retraction,
    parse_identity,
    product_algebra,
    table_from_function,
    with_operation,
)
from maltsev.catalog import (
    bundled_algebras,
    cyclic_group,
    nonassociative_loop_5,
    subtraction_quasigroup_3,
    symmetric_group_3,
)
from maltsev.errors import ArityMismatchError, AxiomError, SchemaError
from maltsev.homomorphisms import eval_term
from maltsev.terms import Var, mu


class TestLoadAlgebra:
    def test_round_trip(self):
        z2 = cyclic_group(2)
        assert load_algebra(dump_algebra(z2)) == z2

    def test_z2_document(self):
        doc = {
            "name": "Z2",
            "size": 2,
            "operations": [
                {"symbol": "mul", "arity": 2, "table": [0, 1, 1, 0]},
                {"symbol": "inv", "arity": 1, "table": [0, 1]},
                {"symbol": "e", "arity": 0, "table": [0]},
            ],
        }
        alg = load_algebra(doc)
        assert alg.size == 2
        assert alg.apply("mul", 1, 1) == 0

    def test_out_of_range_entry(self):
        doc = {
            "name": "bad",
            "size": 2,
            "operations": [{"symbol": "f", "arity": 1, "table": [0, 2]}],
        }
        with pytest.raises(SchemaError) as exc:
            load_algebra(doc)
        assert "table[1]" in str(exc.value)

    def test_wrong_table_length(self):
        doc = {
            "name": "bad",
            "size": 2,
            "operations": [{"symbol": "f", "arity": 2, "table": [0, 1, 0]}],
        }
        with pytest.raises(SchemaError) as exc:
            load_algebra(doc)
        assert "expected 4" in str(exc.value)

    def test_missing_size(self):
        with pytest.raises(SchemaError):
            load_algebra({"name": "x", "operations": []})

    def test_duplicate_symbol(self):
        doc = {
            "name": "bad",
            "size": 1,
            "operations": [
                {"symbol": "f", "arity": 0, "table": [0]},
                {"symbol": "f", "arity": 0, "table": [0]},
            ],
        }
        with pytest.raises(SchemaError):
            load_algebra(doc)


class TestOperationTable:
    def test_row_major_last_index_fastest(self):
        # table of (a, b) -> 2a + b over {0,1}: entries ordered
        # (0,0),(0,1),(1,0),(1,1)
        tab = OperationTable(2, (0, 1, 2, 3))
        assert tab.apply(2, 0, 1) == 1
        assert tab.apply(2, 1, 0) == 2

    def test_nullary(self):
        tab = OperationTable(0, (3,))
        assert tab.apply(5) == 3

    def test_wrong_argument_count(self):
        with pytest.raises(ArityMismatchError):
            OperationTable(2, (0, 0, 0, 0)).apply(2, 1)


def naive_check_identity(alg, ident):
    """Independent oracle: evaluate by explicit recursion over nested loops."""

    def ev(t, env):
        if isinstance(t, Var):
            return env[t.name]
        return alg.apply(t.symbol, *(ev(a, env) for a in t.args))

    failures = []
    for values in itertools.product(range(alg.size), repeat=len(ident.variables)):
        env = dict(zip(ident.variables, values))
        if ev(ident.lhs, env) != ev(ident.rhs, env):
            failures.append(env)
    return failures[0] if failures else None


class TestCheckIdentity:
    def test_commutativity_holds_on_z3(self):
        z3 = cyclic_group(3)
        ident = parse_identity("mul(x,y)=mul(y,x)", z3.signature)
        assert check_identity(z3, ident) is None

    def test_commutativity_fails_on_s3(self):
        s3 = symmetric_group_3()
        ident = parse_identity("mul(x,y)=mul(y,x)", s3.signature)
        failure = check_identity(s3, ident)
        assert failure is not None
        a, b = failure["x"], failure["y"]
        assert s3.apply("mul", a, b) != s3.apply("mul", b, a)

    def test_trivial_identity(self):
        ident = parse_identity("x=x", cyclic_group(4).signature)
        assert check_identity(cyclic_group(4), ident) is None

    def test_counterexample_is_lexicographically_first(self):
        s3 = symmetric_group_3()
        ident = parse_identity("mul(x,y)=mul(y,x)", s3.signature)
        assert check_identity(s3, ident) == naive_check_identity(s3, ident)

    def test_agrees_with_naive_oracle_on_random_algebras(self):
        rng = random.Random(9)
        texts = ("f(x,y)=f(y,x)", "f(f(x,y),z)=f(x,f(y,z))", "f(x,x)=x")
        for _ in range(20):
            n = rng.randrange(2, 5)
            alg = make_algebra(
                "rand",
                n,
                {"f": table_from_function(n, 2, lambda a, b: rng.randrange(n))},
            )
            for text in texts:
                ident = parse_identity(text, alg.signature)
                assert check_identity(alg, ident) == naive_check_identity(alg, ident)

    def test_identity_requires_quantified_variables(self):
        with pytest.raises(ValueError):
            Identity(Var("x"), Var("y"), ("x",))


class TestIsMaltsev:
    def test_group_difference_on_z4(self):
        z4 = cyclic_group(4)
        tab = table_from_function(4, 3, lambda p, q, r: (p - q + r) % 4)
        assert is_maltsev_operation(with_operation(z4, "m", tab), "m")

    def test_projection_fails(self):
        tab = table_from_function(2, 3, lambda p, q, r: p)
        alg = make_algebra("proj", 2, {"m": tab})
        assert not is_maltsev_operation(alg, "m")

    def test_xor_on_z2(self):
        tab = table_from_function(2, 3, lambda p, q, r: p ^ q ^ r)
        alg = make_algebra("xor", 2, {"m": tab})
        assert is_maltsev_operation(alg, "m")

    def test_requires_ternary(self):
        z4 = cyclic_group(4)
        with pytest.raises(ArityMismatchError):
            is_maltsev_operation(z4, "mul")


class TestMaltsevFromGroup:
    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_cyclic_groups(self, n):
        tab = maltsev_from_group(cyclic_group(n))
        expected = tuple(
            (a - b + c) % n
            for a in range(n)
            for b in range(n)
            for c in range(n)
        )
        assert tab.entries == expected
        assert is_maltsev_operation(
            with_operation(cyclic_group(n), "m", tab), "m"
        )

    def test_trivial_group(self):
        tab = maltsev_from_group(cyclic_group(1))
        assert tab.entries == (0,)

    def test_nonabelian(self):
        tab = maltsev_from_group(symmetric_group_3())
        assert is_maltsev_operation(
            with_operation(symmetric_group_3(), "m", tab), "m"
        )

    def test_axiom_failure_is_reported(self):
        bad = make_algebra(
            "notgroup",
            2,
            {
                "mul": table_from_function(2, 2, lambda a, b: 0),
                "inv": table_from_function(2, 1, lambda a: a),
                "e": OperationTable(0, (0,)),
            },
        )
        with pytest.raises(AxiomError):
            maltsev_from_group(bad)


class TestMaltsevFromLeftLoop:
    def test_group_in_disguise_matches_group_derivation(self):
        z4 = cyclic_group(4)
        as_loop = make_algebra(
            "z4loop",
            4,
            {
                "star": z4.table("mul"),
                "ldiv": table_from_function(4, 2, lambda x, y: (y - x) % 4),
                "e": OperationTable(0, (0,)),
            },
        )
        assert maltsev_from_left_loop(as_loop).entries == maltsev_from_group(z4).entries

    def test_one_element_loop(self):
        one = make_algebra(
            "one",
            1,
            {
                "star": OperationTable(2, (0,)),
                "ldiv": OperationTable(2, (0,)),
                "e": OperationTable(0, (0,)),
            },
        )
        assert maltsev_from_left_loop(one).entries == (0,)

    def test_nonassociative_order_five_loop(self):
        loop = nonassociative_loop_5()
        # genuinely non-associative
        assoc = parse_identity("star(star(x,y),z)=star(x,star(y,z))", loop.signature)
        assert check_identity(loop, assoc) is not None
        tab = maltsev_from_left_loop(loop)
        assert is_maltsev_operation(with_operation(loop, "m", tab), "m")

    def test_axiom_failure(self):
        bad = make_algebra(
            "notloop",
            2,
            {
                "star": table_from_function(2, 2, lambda a, b: 0),
                "ldiv": table_from_function(2, 2, lambda a, b: 0),
                "e": OperationTable(0, (0,)),
            },
        )
        with pytest.raises(AxiomError):
            maltsev_from_left_loop(bad)


class TestMaltsevFromQuasigroup:
    def test_subtraction_quasigroup(self):
        tab = maltsev_from_quasigroup(subtraction_quasigroup_3())
        expected = tuple(
            (a - b + c) % 3 for a in range(3) for b in range(3) for c in range(3)
        )
        assert tab.entries == expected

    def test_divisions_solved_from_latin_square(self):
        qg = subtraction_quasigroup_3()
        assert {sym for sym, _ in qg.tables} == {"star"}
        tab = maltsev_from_quasigroup(qg)
        assert is_maltsev_operation(
            with_operation(qg, "m", tab), "m"
        )

    def test_group_as_quasigroup_matches_group_derivation(self):
        z5 = cyclic_group(5)
        as_qg = make_algebra("z5qg", 5, {"star": z5.table("mul")})
        assert maltsev_from_quasigroup(as_qg).entries == maltsev_from_group(z5).entries

    def test_one_element(self):
        one = make_algebra("one", 1, {"star": OperationTable(2, (0,))})
        assert maltsev_from_quasigroup(one).entries == (0,)

    def test_non_latin_square_rejected(self):
        bad = make_algebra(
            "notqg", 2, {"star": table_from_function(2, 2, lambda a, b: 0)}
        )
        with pytest.raises(AxiomError):
            maltsev_from_quasigroup(bad)

    def test_explicit_divisions_are_honored(self):
        qg = subtraction_quasigroup_3()
        full = make_algebra(
            "qg3full",
            3,
            {
                "star": qg.table("star"),
                "ldiv": table_from_function(3, 2, lambda x, y: (x - y) % 3),
                "rdiv": table_from_function(3, 2, lambda y, x: (y + x) % 3),
            },
        )
        assert maltsev_from_quasigroup(full).entries == maltsev_from_quasigroup(qg).entries


class TestLatinSquare:
    def test_group_table_is_latin(self):
        assert is_latin_square(cyclic_group(4), "mul")

    def test_constant_is_not(self):
        alg = make_algebra("c", 2, {"star": table_from_function(2, 2, lambda a, b: 0)})
        assert not is_latin_square(alg, "star")


class TestMaltsevFromRetraction:
    def test_two_generators_identity_retraction(self):
        gens = ("x", "y")
        x, y = Var("x"), Var("y")
        r = {x: "x", y: "y", mu(x, y, x): "x", mu(y, x, y): "y"}
        tab = maltsev_from_retraction(gens, r)
        alg = make_algebra("retract", 2, {"m": tab})
        assert is_maltsev_operation(alg, "m")

    def test_one_generator_is_constant(self):
        tab = maltsev_from_retraction(("x",), {Var("x"): "x"})
        assert tab.entries == (0,)

    def test_xor_evaluation_retraction(self):
        gens = ("x", "y")
        x, y = Var("x"), Var("y")
        # retract each class by evaluating in the two-element group: the
        # depth-1 classes mu(x,y,x) and mu(y,x,y) evaluate to y and x.
        def by_xor(t):
            value = eval_term(t, {"x": 0, "y": 1}, lambda a, b, c: a ^ b ^ c)
            return "xy"[value]

        forms = {x, y, mu(x, y, x), mu(y, x, y)}
        r = {t: by_xor(t) for t in forms}
        tab = maltsev_from_retraction(gens, r)
        assert tab.entries == tuple(
            a ^ b ^ c for a in range(2) for b in range(2) for c in range(2)
        )

    def test_must_fix_generators(self):
        x, y = Var("x"), Var("y")
        r = {x: "y", y: "y", mu(x, y, x): "x", mu(y, x, y): "y"}
        with pytest.raises(AxiomError):
            maltsev_from_retraction(("x", "y"), r)

    def test_must_be_total(self):
        x, y = Var("x"), Var("y")
        with pytest.raises(AxiomError):
            maltsev_from_retraction(("x", "y"), {x: "x", y: "y"})


class TestProductAlgebra:
    def test_klein_four(self):
        z2 = cyclic_group(2)
        k4 = product_algebra(z2, z2)
        assert k4.size == 4
        # component-wise: (1,0) * (1,1) = (0,1)
        assert k4.apply("mul", 2, 3) == 1

    def test_signature_mismatch(self):
        with pytest.raises(ValueError):
            product_algebra(cyclic_group(2), subtraction_quasigroup_3())


class TestEvaluate:
    def test_simple(self):
        z3 = cyclic_group(3)
        from maltsev.terms import parse_term

        t = parse_term("mul(x,inv(y))", z3.signature)
        assert evaluate(z3, t, {"x": 1, "y": 2}) == (1 - 2) % 3


def test_every_derivation_passes_the_maltsev_check():
    algs = bundled_algebras()
    derived = [
        maltsev_from_group(algs["z2"]),
        maltsev_from_group(algs["z3"]),
        maltsev_from_group(algs["z4"]),
        maltsev_from_group(algs["z5"]),
        maltsev_from_group(algs["s3"]),
        maltsev_from_left_loop(algs["loop5"]),
        maltsev_from_quasigroup(algs["qg3"]),
    ]
    sizes = (2, 3, 4, 5, 6, 5, 3)
    for tab, n in zip(derived, sizes):
        probe = make_algebra("probe", n, {"m": tab})
        assert is_maltsev_operation(probe, "m")


def test_group_axiom_list_is_checkable():
    z6 = cyclic_group(6)
    for text in GROUP_AXIOMS:
        assert check_identity(z6, parse_identity(text, z6.signature)) is None
