import itertools
import logging

import pytest
from hypothesis import given, settings, strategies as st

from rational_inference.correspondence import RATIONAL_RULES, check_postulates
from rational_inference.exceptions import (
    BaseFormatError,
    InvalidSubsetKeyError,
    LimitExceededError,
)
from rational_inference.defaults import (
    DefaultBase,
    ExtensionMode,
    SubsetKey,
    SubsetOrder,
    a_k,
    base_chain,
    cumulate_strict,
    extension,
    flatten_liberal,
    lex_subset_order,
    liberal_extension,
    ordering_from_base,
    parse_default_base,
    query,
    sorted_keys,
    strict_extension,
)
from rational_inference.formats import format_formula, minimal_dnf
from rational_inference.logic import And, Atom, AtomEnv, Not, models_of
from rational_inference.orderings import Comparison, dump_ordering
from rational_inference.ranked import RankedChain, assertion_rank, relation_from_chain

a, b, c = Atom(0), Atom(1), Atom(2)

# 三个原子上的模型集合, 第 v 位对应赋值 v (a 为最高位)
IMP_AB = 0b11001111
NOT_B = 0b00110011
IMP_BC = 0b10111011

ENV2 = AtomEnv.default(2)
random_bases = st.lists(
    st.lists(st.integers(0, ENV2.full), min_size=1, max_size=2), min_size=1, max_size=4
).map(
    lambda levels: DefaultBase(
        ENV2, tuple(tuple(minimal_dnf(m, ENV2) for m in level) for level in levels)
    )
)


def _label(theory):
    return format_formula(minimal_dnf(theory.models, theory.env), theory.env)


class TestBase:
    def test_parsed_levels(self, priority_base):
        assert priority_base.m == 3
        assert priority_base.env.names == ("a", "b", "c")
        assert [priority_base.level_models(i) for i in (1, 2, 3)] == [IMP_AB, NOT_B, IMP_BC]

    def test_prefix_models(self, priority_base):
        assert priority_base.prefix_models(1) == IMP_AB
        assert priority_base.prefix_models(2) == 0b00000011
        assert priority_base.prefix_models(3) == 0b00000011


class TestSubsetOrder:
    def test_mirrored_order(self):
        assert [str(k) for k in sorted_keys(3, SubsetOrder.MIRRORED)] == [
            "{3}", "{2}", "{2,3}", "{1}", "{1,3}", "{1,2}", "{1,2,3}",
        ]

    def test_literal_order(self):
        assert [str(k) for k in sorted_keys(3, SubsetOrder.LITERAL)] == [
            "{1,2,3}", "{1,2}", "{1,3}", "{1}", "{2,3}", "{2}", "{3}",
        ]

    def test_default_is_mirrored(self):
        assert sorted_keys(2) == sorted_keys(2, SubsetOrder.MIRRORED)

    def test_comparison(self):
        one, two = SubsetKey.of(3, [1]), SubsetKey.of(3, [2])
        assert lex_subset_order(one, two, SubsetOrder.MIRRORED) is Comparison.GT
        assert lex_subset_order(one, two, SubsetOrder.LITERAL) is Comparison.LT
        assert lex_subset_order(one, SubsetKey(1, 3)) is Comparison.EQ

    def test_invalid_keys(self):
        with pytest.raises(InvalidSubsetKeyError):
            SubsetKey(0, 3)
        with pytest.raises(InvalidSubsetKeyError):
            SubsetKey.of(3, [4])
        with pytest.raises(InvalidSubsetKeyError):
            lex_subset_order(SubsetKey(1, 2), SubsetKey(1, 3))

    def test_enumeration_cap(self):
        with pytest.raises(LimitExceededError):
            SubsetKey.all_keys(7)

    def test_a_k(self, priority_base):
        assert a_k(priority_base, SubsetKey.of(3, [3])).models == priority_base.env.full
        assert a_k(priority_base, SubsetKey.of(3, [1])).models == IMP_AB
        # {1,3}, {1,2}, {1,2,3} 三个交的并
        assert a_k(priority_base, SubsetKey.of(3, [1, 3])).models == 0b10001011
        assert a_k(priority_base, SubsetKey.of(3, [1, 2])).models == 0b00000011


class TestExtensions:
    def test_strict(self, priority_base):
        result = strict_extension(priority_base, a)
        assert _label(result) == "a & b"
        assert result.prefix == 1
        assert not result.degenerate

    def test_liberal(self, priority_base):
        result = liberal_extension(priority_base, a)
        assert _label(result) == "a & b & c"
        assert result.prefix == 5

    def test_literal_order(self, priority_base):
        result = liberal_extension(priority_base, a, SubsetOrder.LITERAL)
        assert result.models == models_of(a, priority_base.env).models & IMP_BC
        assert not result.entails(b)

    def test_mode_dispatch(self, priority_base):
        assert extension(priority_base, ExtensionMode.STRICT, a) == strict_extension(priority_base, a)
        assert extension(priority_base, ExtensionMode.LIBERAL, a) == liberal_extension(priority_base, a)

    def test_inconsistent_input(self, priority_base, caplog):
        with caplog.at_level(logging.WARNING, logger="rational_inference.defaults"):
            result = strict_extension(priority_base, 0)
        assert result.degenerate
        assert result.models == 0
        assert "No consistent extension" in caplog.text

    def test_input_against_first_level(self, priority_base):
        alpha = And(a, Not(b))
        result = strict_extension(priority_base, alpha)
        assert result.degenerate
        assert result.models == models_of(alpha, priority_base.env).models


class TestReductions:
    def test_cumulated_base(self, priority_base):
        cumulated = cumulate_strict(priority_base)
        assert cumulated.levels[2] == (*priority_base.levels[0], *priority_base.levels[1], *priority_base.levels[2])
        for alpha in range(priority_base.env.class_count):
            assert liberal_extension(cumulated, alpha) == strict_extension(priority_base, alpha)

    @pytest.mark.parametrize("order", list(SubsetOrder))
    def test_flattened_base(self, priority_base, order):
        flattened = flatten_liberal(priority_base, order)
        assert flattened.m == 7
        for alpha in range(priority_base.env.class_count):
            assert strict_extension(flattened, alpha) == liberal_extension(priority_base, alpha, order)

    @settings(max_examples=60, deadline=None)
    @given(random_bases)
    def test_random_bases(self, base):
        cumulated = cumulate_strict(base)
        flattened = flatten_liberal(base)
        for alpha in range(ENV2.class_count):
            assert liberal_extension(cumulated, alpha) == strict_extension(base, alpha)
            assert strict_extension(flattened, alpha) == liberal_extension(base, alpha)

    @pytest.mark.slow
    @settings(max_examples=100, deadline=None)
    @given(
        st.lists(
            st.lists(st.integers(0, 255), min_size=1, max_size=2), min_size=1, max_size=4
        )
    )
    def test_random_bases_three_atoms(self, level_masks):
        env = AtomEnv.default(3)
        base = DefaultBase(
            env, tuple(tuple(minimal_dnf(m, env) for m in level) for level in level_masks)
        )
        cumulated = cumulate_strict(base)
        flattened = flatten_liberal(base)
        for alpha in range(env.class_count):
            assert liberal_extension(cumulated, alpha) == strict_extension(base, alpha)
            assert strict_extension(flattened, alpha) == liberal_extension(base, alpha)


class TestOrderingAndQuery:
    def test_strict_ordering(self, priority_base):
        ordering = ordering_from_base(priority_base, ExtensionMode.STRICT)
        assert ordering.height == 4
        assert dump_ordering(ordering)[0] == "level 3: true"

    def test_liberal_ordering(self, priority_base):
        ordering = ordering_from_base(priority_base, ExtensionMode.LIBERAL)
        assert ordering.height == 5
        assert dump_ordering(ordering)[0] == "level 4: true"

    def test_base_chain_starts_with_tautologies(self, priority_base):
        chain = base_chain(priority_base, ExtensionMode.STRICT)
        assert chain.models == [priority_base.env.full, IMP_AB, 0b11, 0b11]

    def test_queries(self, priority_base):
        assert query(priority_base, ExtensionMode.STRICT, a, b)
        assert not query(priority_base, ExtensionMode.STRICT, a, c)
        assert query(priority_base, ExtensionMode.LIBERAL, a, c)
        assert not query(priority_base, ExtensionMode.LIBERAL, a, b, SubsetOrder.LITERAL)

    def test_every_query_cross_checks(self, priority_base):
        env = priority_base.env
        for alpha in range(0, env.class_count, 5):
            for beta in range(0, env.class_count, 3):
                query(priority_base, ExtensionMode.STRICT, alpha, beta)
                query(priority_base, ExtensionMode.LIBERAL, alpha, beta)

    def test_rank(self, priority_base):
        chain = base_chain(priority_base, ExtensionMode.STRICT)
        assert assertion_rank(chain, a, b).render() == "rank=1 range=[1,1]"

    @pytest.mark.slow
    @pytest.mark.parametrize("mode", list(ExtensionMode))
    def test_base_relations_are_rational(self, priority_base, mode):
        rel = relation_from_chain(base_chain(priority_base, mode))
        assert check_postulates(rel, RATIONAL_RULES) == []

    @settings(max_examples=40, deadline=None)
    @given(random_bases, st.sampled_from(list(ExtensionMode)))
    def test_random_base_relations_are_rational(self, base, mode):
        rel = relation_from_chain(base_chain(base, mode))
        assert check_postulates(rel, RATIONAL_RULES) == []

    def _assert_chain_equivalence(self, base, mode):
        """去掉 Cn(∅) 底后的阶段链, 在输入与首个阶段一致时给出同样的回答"""
        env = base.env
        stages = base_chain(base, mode).models[1:]
        if stages[0] == 0:
            return
        relation = relation_from_chain(RankedChain.from_models(env, stages))
        for alpha in range(env.class_count):
            if alpha & stages[0] == 0:
                continue
            for beta in range(env.class_count):
                assert query(base, mode, alpha, beta) == relation.infers(alpha, beta)

    @pytest.mark.parametrize("mode", list(ExtensionMode))
    def test_chain_equivalence_one_atom(self, mode):
        env = AtomEnv.default(1)
        for m in (1, 2):
            for masks in itertools.product(range(env.class_count), repeat=m):
                base = DefaultBase(env, tuple((minimal_dnf(mask, env),) for mask in masks))
                self._assert_chain_equivalence(base, mode)

    @settings(max_examples=40, deadline=None)
    @given(random_bases, st.sampled_from(list(ExtensionMode)))
    def test_chain_equivalence_two_atoms(self, base, mode):
        self._assert_chain_equivalence(base, mode)

    def test_many_atoms(self):
        names = " ".join(f"p{i}" for i in range(10))
        base = parse_default_base(
            f"atoms: {names}\n[level 1]\np0 -> p1\n[level 2]\n!p1\n[level 3]\np1 -> p9\n"
        )
        p0, p1, p9 = Atom(0), Atom(1), Atom(9)
        assert query(base, ExtensionMode.STRICT, p0, p1)
        assert not query(base, ExtensionMode.STRICT, p0, p9)
        assert query(base, ExtensionMode.LIBERAL, p0, p9)
        for mode in ExtensionMode:
            assert all(theory.origin == () for theory in base_chain(base, mode).theories)
        assert extension(base, ExtensionMode.STRICT, p0).origin == ()


class TestParse:
    def test_comments_and_blank_lines(self):
        base = parse_default_base("# demo\natoms: p q\n\n[level 1]\np -> q  # rule\n[level 2]\n!q\n")
        assert base.env.names == ("p", "q")
        assert base.m == 2
        assert len(base.levels[0]) == 1

    @pytest.mark.parametrize(
        "text, line",
        [
            ("[level 1]\na\n", 1),
            ("atoms: a\n[level 2]\na\n", 2),
            ("atoms: a\na\n", 2),
            ("atoms: a\n[level 1]\na &\n", 3),
            ("atoms: a\n[level one]\n", 2),
            ("atoms: a a\n", 1),
        ],
    )
    def test_format_errors(self, text, line):
        with pytest.raises(BaseFormatError) as exc:
            parse_default_base(text)
        assert exc.value.line == line

    def test_missing_levels(self):
        with pytest.raises(BaseFormatError):
            parse_default_base("atoms: a\n")
        with pytest.raises(BaseFormatError):
            parse_default_base("")

    def test_level_cap(self):
        text = "atoms: a\n" + "".join(f"[level {i}]\na\n" for i in range(1, 8))
        with pytest.raises(LimitExceededError):
            parse_default_base(text)
