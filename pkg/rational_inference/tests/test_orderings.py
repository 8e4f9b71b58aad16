import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rational_inference.exceptions import ValidationError
from rational_inference.logic import BOT, TOP, And, Atom, Context, Imp, Not, Or, models_of
from rational_inference.orderings import (
    Comparison,
    RationalOrdering,
    compare,
    dump_ordering,
    is_expectation,
    normalize_levels,
    validate_rational,
)
from rational_inference.tables import class_tables

from .test_logic import ENV, formulas

# 与 f 等价但写法不同的公式
equivalent_pairs = st.tuples(
    formulas,
    st.sampled_from([
        lambda f: Not(Not(f)),
        lambda f: Or(f, BOT),
        lambda f: And(TOP, f),
        lambda f: Or(f, f),
        lambda f: Imp(Not(f), BOT),
    ]),
).map(lambda p: (p[0], p[1](p[0])))
random_orderings = st.lists(
    st.integers(0, 4), min_size=ENV.class_count, max_size=ENV.class_count
).map(lambda levels: RationalOrdering(ENV, levels))


def test_normalize_levels():
    assert normalize_levels([0, 0, 5, 9]).tolist() == [0, 0, 1, 2]


def test_levels_normalized_on_construction(env1):
    ordering = RationalOrdering(env1, [0, 0, 4, 7])
    assert ordering.levels.tolist() == [0, 0, 1, 2]
    assert ordering == RationalOrdering(env1, [1, 1, 2, 3])
    assert not ordering.levels.flags.writeable


def test_mapping_must_cover_all_classes(env1):
    with pytest.raises(ValidationError):
        RationalOrdering.from_mapping(env1, {0: 0, 3: 1})


class TestValidate:
    def test_rational(self, three_level):
        assert validate_rational(three_level).ok

    def test_conjunctiveness_violation(self, env1):
        ordering = RationalOrdering.from_mapping(env1, {0: 0, 1: 1, 2: 1, 3: 2})
        report = validate_rational(ordering)
        assert report.properties() == ["Conjunctiveness"]
        pairs = [tuple(w.models for w in v.witnesses) for v in report.violations]
        assert (1, 2) in pairs

    def test_dominance_violation(self, env1):
        ordering = RationalOrdering.from_mapping(env1, {0: 0, 1: 0, 2: 2, 3: 1})
        report = validate_rational(ordering)
        dominance = [
            tuple(w.models for w in v.witnesses)
            for v in report.violations
            if v.property == "Dominance"
        ]
        assert (2, 3) in dominance
        assert "Dominance" in report.summary()


class TestCompare:
    def test_examples(self, three_level, env1):
        a = Atom(0)
        assert compare(three_level, Not(a), a) is Comparison.LT
        assert compare(three_level, a, Or(a, BOT)) is Comparison.EQ
        assert compare(three_level, 3, a) is Comparison.GT

    @settings(max_examples=100, deadline=None)
    @given(equivalent_pairs, random_orderings)
    def test_equivalent_formulas_share_a_level(self, pair, ordering):
        alpha, beta = pair
        assert models_of(alpha, ENV) == models_of(beta, ENV)
        assert compare(ordering, alpha, beta) is Comparison.EQ

    @settings(max_examples=200, deadline=None)
    @given(formulas, formulas, random_orderings)
    def test_equal_models_compare_equal(self, alpha, beta, ordering):
        if models_of(alpha, ENV) == models_of(beta, ENV):
            assert compare(ordering, alpha, beta) is Comparison.EQ
        else:
            assert compare(ordering, alpha, beta) is compare(ordering, models_of(alpha, ENV), beta)


class TestExpectation:
    def test_top_is_tautology(self, three_level, env1):
        assert is_expectation(three_level, Context.full(env1))

    def test_atom_on_top(self, env1):
        ordering = RationalOrdering.from_mapping(env1, {0: 0, 1: 0, 2: 2, 3: 2})
        assert not is_expectation(ordering, Context.full(env1))
        assert is_expectation(ordering, Context(models_of(Atom(0), env1).models, env1))


def test_join_dominates(env2):
    t = class_tables(env2.n)
    # 只有 ⊤ 在高层
    ordering = RationalOrdering(env2, [bin(c).count("1") == 4 for c in range(16)])
    levels = ordering.levels
    assert validate_rational(ordering).ok
    assert np.all(levels[t.join] >= np.maximum(levels[:, None], levels[None, :]))


def test_dump(three_level):
    assert dump_ordering(three_level) == ["level 2: true", "level 1: a", "level 0: false, !a"]
