"""对应关系模块

有理序与推理关系之间的 (C)/(O) 转换 (BOLD 与 GM 两种变体)、
规则检查器、关系分类以及一致性保持的上下文平移。

规则按语义类量化: 关系本身定义在类上, 表中每条规则对等价替换不变。
所有 ⊢ 都相对于关系所附带的上下文 ctx。
"""

import enum
import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .conf import get_setting
from .exceptions import (
    InvalidOrderingError,
    NonTotalPreorderError,
    ValidationError,
)
from .formats import class_label
from .logic import AtomEnv, Context, SemClass, check_exhaustive
from .orderings import ClassLike, RationalOrdering, _class_index, normalize_levels, validate_rational
from .tables import ClassTables, class_tables

logger = logging.getLogger(__name__)


class Variant(enum.Enum):
    BOLD = "bold"
    GM = "gm"


class RuleId(enum.Enum):
    SUPRACLASSICALITY = "Supraclassicality"
    LEFT_LOGICAL_EQUIVALENCE = "LeftLogicalEquivalence"
    RIGHT_WEAKENING = "RightWeakening"
    AND = "And"
    CUT = "Cut"
    CAUTIOUS_MONOTONICITY = "CautiousMonotonicity"
    OR = "Or"
    RATIONAL_MONOTONICITY = "RationalMonotonicity"
    CONSISTENCY_PRESERVATION = "ConsistencyPreservation"
    # 偏好关系中的导出规则
    RECIPROCITY = "Reciprocity"
    S = "S"
    BOT_AND = "BotAnd"
    AND_BOT = "AndBot"
    OR_BOT = "OrBot"


INFERENCE_RULES = (
    RuleId.SUPRACLASSICALITY,
    RuleId.LEFT_LOGICAL_EQUIVALENCE,
    RuleId.RIGHT_WEAKENING,
    RuleId.AND,
)
PREFERENTIAL_RULES = (RuleId.CUT, RuleId.CAUTIOUS_MONOTONICITY, RuleId.OR)
RATIONAL_RULES = INFERENCE_RULES + PREFERENTIAL_RULES + (RuleId.RATIONAL_MONOTONICITY,)
EXPECTATION_RULES = RATIONAL_RULES + (RuleId.CONSISTENCY_PRESERVATION,)
DERIVED_RULES = (
    RuleId.RECIPROCITY,
    RuleId.S,
    RuleId.BOT_AND,
    RuleId.AND_BOT,
    RuleId.OR_BOT,
)


@dataclass(frozen=True, eq=False)
class InferenceRelation:
    """语义类 × 语义类 上的布尔矩阵 |~, 与其所依据的上下文配对"""

    env: AtomEnv
    ctx: Context
    holds: np.ndarray

    def __post_init__(self):
        check_exhaustive(self.env)
        if self.ctx.env != self.env:
            raise ValidationError("Relation and context use different atom environments")
        matrix = np.array(self.holds, dtype=bool, copy=True)
        count = self.env.class_count
        if matrix.shape != (count, count):
            raise ValidationError(f"Relation matrix must be {count}x{count}, got {matrix.shape}")
        matrix.setflags(write=False)
        object.__setattr__(self, "holds", matrix)

    def infers(self, alpha: ClassLike, beta: ClassLike) -> bool:
        return bool(self.holds[_class_index(alpha, self.env), _class_index(beta, self.env)])

    def with_context(self, ctx: Context) -> "InferenceRelation":
        """同一矩阵, 换一个依据的上下文"""
        return InferenceRelation(self.env, ctx, self.holds)

    def __eq__(self, other) -> bool:
        if not isinstance(other, InferenceRelation):
            return NotImplemented
        return (
            self.env == other.env
            and self.ctx == other.ctx
            and np.array_equal(self.holds, other.holds)
        )

    def __hash__(self) -> int:
        return hash((self.env, self.ctx, self.holds.tobytes()))


@dataclass(frozen=True)
class Counterexample:
    """规则违例: 前提成立而结论不成立的类元组; total 为该规则的违例总数"""

    rule: RuleId
    witnesses: Tuple[SemClass, ...]
    total: int = 1

    def render(self, env: AtomEnv) -> str:
        """`rule<TAB>witness1<TAB>witness2<TAB>witness3`"""
        labels = [class_label(w.models, env) for w in self.witnesses]
        return "\t".join([self.rule.value, *labels])


@dataclass(frozen=True)
class RelationClass:
    inference: bool
    preferential: bool
    rational: bool
    expectation: bool

    @property
    def label(self) -> str:
        for name in ("expectation", "rational", "preferential", "inference"):
            if getattr(self, name):
                return name
        return "none"


def classical_relation(env: AtomEnv, ctx: Optional[Context] = None) -> InferenceRelation:
    """|~ 恰为 ⊢"""
    ctx = ctx or Context.full(env)
    check_exhaustive(env)
    return InferenceRelation(env, ctx, class_tables(env.n).entailment(ctx.models))


# ---------------------------------------------------------------- (C) / (O)


def relation_from_ordering(
    ordering: RationalOrdering,
    ctx: Optional[Context] = None,
    variant: Variant = Variant.BOLD,
) -> InferenceRelation:
    """条件 (C): 序 → 关系

    存在式 "∃β: ctx, α∧β ⊢ γ 且 ¬α < β" 取最弱见证 β = ¬ctx ∨ ¬α ∨ γ,
    完整上下文下即 α→γ, 于是化为 level(¬α) < level(α→γ)。
    """
    env = ordering.env
    ctx = ctx or Context.full(env)
    report = validate_rational(ordering)
    if not report.ok:
        raise InvalidOrderingError(report)

    t = class_tables(env.n)
    levels = ordering.levels
    weakest = t.arrow | (t.full ^ ctx.models)
    holds = levels[weakest] > levels[t.neg][:, None]
    if variant is Variant.BOLD:
        holds |= (levels[t.neg] == ordering.top)[:, None]
    else:
        holds |= t.entailment(ctx.models)
    return InferenceRelation(env, ctx, holds)


def ordering_from_relation(
    relation: InferenceRelation, variant: Variant = Variant.BOLD
) -> RationalOrdering:
    """条件 (O): 关系 → 序

    α ≤' β 当且仅当 ¬(α∧β)|~⊥ (GM: ⊢α∧β) 或 ¬(α∧β) |̸~ α。
    """
    env = relation.env
    t = class_tables(env.n)
    holds = relation.holds
    negated_meet = t.neg[t.meet]
    not_infers_alpha = ~holds[negated_meet, t.cls[:, None]]
    if variant is Variant.BOLD:
        le = holds[negated_meet, 0] | not_infers_alpha
    else:
        valid_meet = (relation.ctx.models & (t.full ^ t.meet)) == 0
        le = valid_meet | not_infers_alpha

    levels = normalize_levels(le.sum(axis=0))
    expected = levels[:, None] <= levels[None, :]
    mismatch = np.argwhere(le != expected)
    if mismatch.size:
        a, b = (int(x) for x in mismatch[0])
        logger.info(f"Relation does not induce a total preorder at ({a}, {b})")
        raise NonTotalPreorderError((a, b))
    return RationalOrdering(env, levels)


# ---------------------------------------------------------------- 规则


Kernel = Callable[[np.ndarray, ClassTables, np.ndarray, int, int], np.ndarray]


def _supraclassicality(h, t, ent, x, a):
    return ent[a] & ~h[a]


def _left_logical_equivalence(h, t, ent, x, a):
    equivalent = (t.cls & x) == (a & x)
    return equivalent[:, None] & h[a][None, :] & ~h


def _right_weakening(h, t, ent, x, a):
    row = h[a]
    return row[:, None] & ent & ~row[None, :]


def _and(h, t, ent, x, a):
    row = h[a]
    return row[:, None] & row[None, :] & ~row[t.meet]


def _cut(h, t, ent, x, a):
    row = h[a]
    return row[:, None] & h[a & t.cls] & ~row[None, :]


def _cautious_monotonicity(h, t, ent, x, a):
    row = h[a]
    return row[:, None] & row[None, :] & ~h[a & t.cls]


def _or(h, t, ent, x, a):
    return h[a][None, :] & h & ~h[a | t.cls]


def _rational_monotonicity(h, t, ent, x, a):
    row = h[a]
    return ~row[t.neg][:, None] & row[None, :] & ~h[a & t.cls]


def _consistency_preservation(h, t, ent, x, a):
    return np.asarray(bool(h[a, 0]) and (a & x) != 0)


def _reciprocity(h, t, ent, x, a):
    row = h[a]
    return (row & h[:, a])[:, None] & row[None, :] & ~h


def _s(h, t, ent, x, a):
    return h[a & t.cls] & ~h[a][t.arrow]


def _bot_and(h, t, ent, x, a):
    return h[a, 0] & ~h[a & t.cls, 0]


def _and_bot(h, t, ent, x, a):
    return h[a & t.cls, 0] & ~h[a][t.neg]


def _or_bot(h, t, ent, x, a):
    return h[a | t.cls, 0] & ~h[a, 0]


# 规则 → (元数, 以第一个类为切片的向量化违例核)
RULES: Dict[RuleId, Tuple[int, Kernel]] = {
    RuleId.SUPRACLASSICALITY: (2, _supraclassicality),
    RuleId.LEFT_LOGICAL_EQUIVALENCE: (3, _left_logical_equivalence),
    RuleId.RIGHT_WEAKENING: (3, _right_weakening),
    RuleId.AND: (3, _and),
    RuleId.CUT: (3, _cut),
    RuleId.CAUTIOUS_MONOTONICITY: (3, _cautious_monotonicity),
    RuleId.OR: (3, _or),
    RuleId.RATIONAL_MONOTONICITY: (3, _rational_monotonicity),
    RuleId.CONSISTENCY_PRESERVATION: (1, _consistency_preservation),
    RuleId.RECIPROCITY: (3, _reciprocity),
    RuleId.S: (3, _s),
    RuleId.BOT_AND: (2, _bot_and),
    RuleId.AND_BOT: (2, _and_bot),
    RuleId.OR_BOT: (2, _or_bot),
}


def rule_violated(relation: InferenceRelation, rule: RuleId, witnesses: Sequence[ClassLike]) -> bool:
    """逐条重新求值一个规则实例: 前提全成立且结论不成立时为真"""
    env = relation.env
    arity = RULES[rule][0]
    if len(witnesses) != arity:
        raise ValidationError(f"{rule.value} takes {arity} classes, got {len(witnesses)}")
    full, x = env.full, relation.ctx.models
    ws = [_class_index(w, env) for w in witnesses]

    def r(p: int, q: int) -> bool:
        return bool(relation.holds[p, q])

    def e(p: int, q: int) -> bool:
        return p & x & ~q == 0

    a = ws[0]
    b = ws[1] if arity > 1 else 0
    g = ws[2] if arity > 2 else 0
    match rule:
        case RuleId.SUPRACLASSICALITY:
            return e(a, b) and not r(a, b)
        case RuleId.LEFT_LOGICAL_EQUIVALENCE:
            return e(a, b) and e(b, a) and r(a, g) and not r(b, g)
        case RuleId.RIGHT_WEAKENING:
            return r(a, b) and e(b, g) and not r(a, g)
        case RuleId.AND:
            return r(a, b) and r(a, g) and not r(a, b & g)
        case RuleId.CUT:
            return r(a, b) and r(a & b, g) and not r(a, g)
        case RuleId.CAUTIOUS_MONOTONICITY:
            return r(a, b) and r(a, g) and not r(a & b, g)
        case RuleId.OR:
            return r(a, g) and r(b, g) and not r(a | b, g)
        case RuleId.RATIONAL_MONOTONICITY:
            return not r(a, full ^ b) and r(a, g) and not r(a & b, g)
        case RuleId.CONSISTENCY_PRESERVATION:
            return r(a, 0) and not e(a, 0)
        case RuleId.RECIPROCITY:
            return r(a, b) and r(b, a) and r(a, g) and not r(b, g)
        case RuleId.S:
            return r(a & b, g) and not r(a, (full ^ b) | g)
        case RuleId.BOT_AND:
            return r(a, 0) and not r(a & b, 0)
        case RuleId.AND_BOT:
            return r(a & b, 0) and not r(a, full ^ b)
        case RuleId.OR_BOT:
            return r(a | b, 0) and not r(a, 0)
    raise ValidationError(f"Unknown rule {rule}")


def check_postulate(
    relation: InferenceRelation,
    rule: RuleId,
    limit: Optional[int] = None,
    samples: Optional[int] = None,
    seed: Optional[int] = None,
) -> List[Counterexample]:
    """检查单条规则

    默认穷举全部类元组; 给出 samples 时按 seed 随机抽样元组。
    返回按类顺序最靠前的至多 limit 个反例, 每个都带违例总数。
    """
    env = relation.env
    limit = get_setting("COUNTEREXAMPLE_LIMIT") if limit is None else limit
    arity, kernel = RULES[rule]
    if samples is not None:
        return _sample_postulate(relation, rule, arity, limit, samples, seed)

    t = class_tables(env.n)
    x = relation.ctx.models
    ent = t.entailment(x)
    holds = relation.holds
    total = 0
    found: List[Tuple[int, ...]] = []
    for a in range(env.class_count):
        mask = kernel(holds, t, ent, x, a)
        hits = int(np.count_nonzero(mask))
        if not hits:
            continue
        total += hits
        if len(found) < limit:
            if mask.ndim == 0:
                found.append((a,))
            else:
                for rest in np.argwhere(mask)[: limit - len(found)]:
                    found.append((a, *(int(i) for i in rest)))
    return [
        Counterexample(rule, tuple(SemClass(c, env.n) for c in ws), total) for ws in found
    ]


def _sample_postulate(relation, rule, arity, limit, samples, seed) -> List[Counterexample]:
    env = relation.env
    rng = np.random.default_rng(seed)
    tuples = rng.integers(0, env.class_count, size=(samples, arity))
    hits = sorted({tuple(int(c) for c in ws) for ws in tuples if rule_violated(relation, rule, ws.tolist())})
    return [
        Counterexample(rule, tuple(SemClass(c, env.n) for c in ws), len(hits))
        for ws in hits[:limit]
    ]


def check_postulates(
    relation: InferenceRelation, rules: Sequence[RuleId] = RATIONAL_RULES, **options
) -> List[Counterexample]:
    counterexamples: List[Counterexample] = []
    for rule in rules:
        counterexamples.extend(check_postulate(relation, rule, **options))
    return counterexamples


def check_derived_rules(relation: InferenceRelation, **options) -> List[Counterexample]:
    """Reciprocity, S, 以及三条 ⊥ 规则"""
    return check_postulates(relation, DERIVED_RULES, **options)


def classify_relation(relation: InferenceRelation) -> RelationClass:
    """按规则组分类, 各组相对 relation.ctx 求值"""

    def holds_all(rules) -> bool:
        return all(not check_postulate(relation, rule, limit=1) for rule in rules)

    inference = holds_all(INFERENCE_RULES)
    preferential = inference and holds_all(PREFERENTIAL_RULES)
    rational = preferential and holds_all((RuleId.RATIONAL_MONOTONICITY,))
    expectation = rational and holds_all((RuleId.CONSISTENCY_PRESERVATION,))
    return RelationClass(inference, preferential, rational, expectation)


def shift_context(relation: InferenceRelation) -> Context:
    """Γ = {¬γ : γ|~⊥}; 返回 ctx ∩ models(Γ)"""
    t = class_tables(relation.env.n)
    absurd = t.cls[relation.holds[:, 0]]
    hard = int(np.bitwise_or.reduce(absurd)) if absurd.size else 0
    models = relation.ctx.models & (t.full ^ hard)
    logger.info(f"Shifted context removes {bin(hard).count('1')} valuations")
    return Context(models, relation.env)
