"""验证检查定义模块

每个检查在通过时返回 None, 失败时返回一段见证文本。
逐试验检查接收一个 Trial, 整套检查接收 AtomEnv。
"""

from typing import List, Optional

import numpy as np

from rational_inference.correspondence import (
    DERIVED_RULES,
    RATIONAL_RULES,
    Counterexample,
    InferenceRelation,
    RuleId,
    Variant,
    check_postulate,
    check_postulates,
    classify_relation,
    ordering_from_relation,
    relation_from_ordering,
    shift_context,
)
from rational_inference.formats import class_label
from rational_inference.logic import AtomEnv, Context
from rational_inference.orderings import RationalOrdering, is_expectation, validate_rational
from rational_inference.ranked import (
    chain_from_ordering,
    complete_chain,
    ordering_from_chain,
    relation_from_chain,
)

from .oracle import Trial, brute_relation_from_ordering, gm_example_fixture
from .registry import CheckRegister


def _first_counterexample(counterexamples: List[Counterexample], env: AtomEnv) -> Optional[str]:
    if not counterexamples:
        return None
    first = counterexamples[0]
    labels = ", ".join(class_label(w.models, env) for w in first.witnesses)
    return f"{first.rule.value}: {labels}"


def relation_difference(left: InferenceRelation, right: InferenceRelation) -> Optional[str]:
    """两个关系的第一处差异"""
    if left.ctx != right.ctx:
        return "contexts differ"
    diff = np.argwhere(left.holds != right.holds)
    if not diff.size:
        return None
    a, b = (int(i) for i in diff[0])
    env = left.env
    return (
        f"{class_label(a, env)} |~ {class_label(b, env)}: "
        f"{bool(left.holds[a, b])} != {bool(right.holds[a, b])}"
    )


def ordering_difference(left: RationalOrdering, right: RationalOrdering) -> Optional[str]:
    diff = np.flatnonzero(left.levels != right.levels)
    if not diff.size:
        return None
    c = int(diff[0])
    return f"level({class_label(c, left.env)}): {left.levels[c]} != {right.levels[c]}"


@CheckRegister.register(
    name="rational_rules",
    description="链诱导的关系满足全部有理规则",
    tags=("rules",),
)
def rational_rules(trial: Trial) -> Optional[str]:
    return _first_counterexample(check_postulates(trial.relation, RATIONAL_RULES), trial.env)


@CheckRegister.register(
    name="derived_rules",
    description="Reciprocity, S 与三条 ⊥ 规则",
    tags=("rules",),
)
def derived_rules(trial: Trial) -> Optional[str]:
    return _first_counterexample(check_postulates(trial.relation, DERIVED_RULES), trial.env)


@CheckRegister.register(
    name="relation_roundtrip",
    description="C(O(rel)) = rel",
    tags=("roundtrip",),
)
def relation_roundtrip(trial: Trial) -> Optional[str]:
    relation = trial.relation
    restored = relation_from_ordering(ordering_from_relation(relation), relation.ctx)
    return relation_difference(restored, relation)


@CheckRegister.register(
    name="ordering_roundtrip",
    description="O(C(ord)) = ord",
    tags=("roundtrip",),
)
def ordering_roundtrip(trial: Trial) -> Optional[str]:
    ordering = trial.ordering
    return ordering_difference(ordering_from_relation(relation_from_ordering(ordering)), ordering)


@CheckRegister.register(
    name="chain_roundtrip",
    description="ordering_from_chain(chain_from_ordering(ord)) = ord",
    tags=("roundtrip",),
)
def chain_roundtrip(trial: Trial) -> Optional[str]:
    ordering = trial.ordering
    return ordering_difference(ordering_from_chain(chain_from_ordering(ordering)), ordering)


@CheckRegister.register(
    name="ranked_matches_ordering",
    description="C(ordering_from_chain(c)) = relation_from_chain(c)",
)
def ranked_matches_ordering(trial: Trial) -> Optional[str]:
    return relation_difference(relation_from_ordering(trial.ordering), trial.relation)


@CheckRegister.register(
    name="complete_chain_identity",
    description="有限链的闭包就是自身, 诱导关系不变",
)
def complete_chain_identity(trial: Trial) -> Optional[str]:
    completed = complete_chain(trial.chain)
    if completed != trial.chain:
        return "closure differs from the chain"
    return relation_difference(relation_from_chain(completed), relation_from_chain(trial.chain))


@CheckRegister.register(
    name="oracle_agreement",
    description="粗体 (C) 的层级捷径与逐字量化一致",
    max_atoms=2,
)
def oracle_agreement(trial: Trial) -> Optional[str]:
    ordering = trial.ordering
    return relation_difference(
        relation_from_ordering(ordering), brute_relation_from_ordering(ordering)
    )


@CheckRegister.register(
    name="generator_soundness",
    description="随机链诱导的序通过有理性校验",
)
def generator_soundness(trial: Trial) -> Optional[str]:
    report = validate_rational(trial.ordering)
    return None if report.ok else report.summary()


@CheckRegister.register(
    name="expectation_preservation",
    description="序是期望序 当且仅当 C(≤) 满足 Consistency Preservation",
)
def expectation_preservation(trial: Trial) -> Optional[str]:
    ordering = trial.ordering
    ctx = Context.full(trial.env)
    expected = is_expectation(ordering, ctx)
    preserved = not check_postulate(
        relation_from_ordering(ordering, ctx), RuleId.CONSISTENCY_PRESERVATION
    )
    if expected != preserved:
        return f"expectation ordering: {expected}, consistency preserved: {preserved}"
    return None


@CheckRegister.register(
    name="context_shift",
    description="平移上下文之后关系成为期望推理关系",
)
def context_shift(trial: Trial) -> Optional[str]:
    relation = trial.relation
    shifted = relation.with_context(shift_context(relation))
    flags = classify_relation(shifted)
    return None if flags.expectation else f"classified as {flags.label} after the shift"


@CheckRegister.register(
    name="gm_non_injectivity",
    description="两个不同的有理序在 GM 变体的 (C) 下给出同一关系",
    scope="suite",
)
def gm_non_injectivity(env: AtomEnv) -> Optional[str]:
    if "a" not in env.names:
        return None
    first, second = gm_example_fixture(env)
    if first == second:
        return "fixture orderings coincide"
    for ordering in (first, second):
        report = validate_rational(ordering)
        if not report.ok:
            return report.summary()
    return relation_difference(
        relation_from_ordering(first, variant=Variant.GM),
        relation_from_ordering(second, variant=Variant.GM),
    )
