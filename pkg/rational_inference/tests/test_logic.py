import pytest
from hypothesis import given, settings, strategies as st

from rational_inference.exceptions import (
    FormulaSyntaxError,
    LimitExceededError,
    UnknownAtomError,
    ValidationError,
)
from rational_inference.formats import format_formula
from rational_inference.logic import (
    BOT,
    TOP,
    And,
    Atom,
    AtomEnv,
    Context,
    Imp,
    Not,
    Or,
    SemClass,
    Theory,
    entails,
    enumerate_classes,
    evaluate,
    models_of,
    parse_formula,
)

ENV = AtomEnv.default(3)

leaves = st.one_of(st.integers(0, ENV.n - 1).map(Atom), st.just(TOP), st.just(BOT))
formulas = st.recursive(
    leaves,
    lambda children: st.one_of(
        children.map(Not),
        st.tuples(children, children).map(lambda p: And(*p)),
        st.tuples(children, children).map(lambda p: Or(*p)),
        st.tuples(children, children).map(lambda p: Imp(*p)),
    ),
    max_leaves=8,
)
contexts = st.integers(0, ENV.full).map(lambda m: Context(m, ENV))


class TestParse:
    def test_precedence(self, env3):
        a, b, c = Atom(0), Atom(1), Atom(2)
        assert parse_formula("a -> b | !c", env3) == Imp(a, Or(b, Not(c)))
        assert parse_formula("!(a&b) -> a", env3) == Imp(Not(And(a, b)), a)

    def test_implication_is_right_associative(self, env3):
        a, b, c = Atom(0), Atom(1), Atom(2)
        assert parse_formula("a -> b -> c", env3) == Imp(a, Imp(b, c))
        assert parse_formula("a & b & c", env3) == And(And(a, b), c)

    def test_constants(self, env1):
        assert parse_formula("true | false", env1) == Or(TOP, BOT)

    def test_unclosed_parenthesis(self, env3):
        with pytest.raises(FormulaSyntaxError) as exc:
            parse_formula("a & (b", env3)
        assert exc.value.offset == 6
        assert "offset 6" in str(exc.value)

    def test_unknown_atom(self, env3):
        with pytest.raises(UnknownAtomError) as exc:
            parse_formula("a & z", env3)
        assert exc.value.name == "z"
        assert exc.value.offset == 4

    def test_unexpected_character(self, env1):
        with pytest.raises(FormulaSyntaxError):
            parse_formula("a + a", env1)


class TestAtomEnv:
    def test_duplicates_rejected(self):
        with pytest.raises(ValidationError):
            AtomEnv(("a", "a"))

    def test_reserved_word_rejected(self):
        with pytest.raises(ValidationError):
            AtomEnv(("true",))

    def test_atom_cap(self):
        with pytest.raises(LimitExceededError):
            AtomEnv(tuple(f"p{i}" for i in range(17)))

    def test_valuation_order(self, env2):
        assert env2.valuation(2) == (True, False)
        assert env2.valuation(1) == (False, True)


class TestModels:
    def test_examples(self, env2):
        a, b = Atom(0), Atom(1)
        assert models_of(a, env2).valuations() == [2, 3]
        assert models_of(Imp(a, b), env2).valuations() == [0, 1, 3]
        assert models_of(And(a, Not(a)), env2).models == 0

    def test_semclass_algebra(self, env2):
        a = models_of(Atom(0), env2)
        b = models_of(Atom(1), env2)
        assert (a & b).valuations() == [3]
        assert (~a).valuations() == [0, 1]
        assert a.implies(b) == models_of(Imp(Atom(0), Atom(1)), env2)
        assert (a & b).entails(a)

    @given(formulas)
    def test_models_match_direct_evaluation(self, f):
        models = models_of(f, ENV)
        for v in range(ENV.size):
            assert bool(models.models >> v & 1) == evaluate(f, v, ENV)

    @given(formulas)
    def test_printed_formula_parses_back(self, f):
        assert parse_formula(format_formula(f, ENV), ENV) == f


class TestEntailment:
    def test_modus_ponens(self, env2):
        a, b = Atom(0), Atom(1)
        assert entails(Context.full(env2), [a, Imp(a, b)], b)

    def test_context_contradicts_assumption(self, env2):
        b = Atom(1)
        ctx = Context.from_formulas(env2, [Not(b)])
        assert entails(ctx, [b], BOT)

    def test_no_entailment(self, env2):
        assert not entails(Context.full(env2), [Atom(0)], Atom(1))

    def test_theory(self, env2):
        theory = Theory.from_axioms(env2, [Atom(0), Imp(Atom(0), Atom(1))])
        assert theory.consistent
        assert theory.entails(Atom(1))
        assert not Theory.inconsistent(env2).consistent
        assert Theory.inconsistent(env2).entails(BOT)

    @settings(max_examples=200)
    @given(contexts, st.lists(formulas, max_size=3), formulas, formulas)
    def test_deduction_theorem(self, ctx, xs, alpha, beta):
        assert entails(ctx, [*xs, alpha], beta) == entails(ctx, xs, Imp(alpha, beta))

    @given(contexts, st.lists(formulas, max_size=2), formulas, formulas, formulas)
    def test_disjunction_in_premises(self, ctx, xs, alpha, gamma, beta):
        if entails(ctx, [*xs, alpha], beta) and entails(ctx, [*xs, gamma], beta):
            assert entails(ctx, [*xs, Or(alpha, gamma)], beta)


class TestEnumerate:
    def test_counts(self, env1, env2):
        assert len(enumerate_classes(env1)) == 4
        assert len(enumerate_classes(env2)) == 16
        assert enumerate_classes(env1)[2] == SemClass(2, 1)

    def test_exhaustive_guard(self):
        with pytest.raises(LimitExceededError):
            enumerate_classes(AtomEnv.default(4))
