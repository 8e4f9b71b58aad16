"""秩序后承模块

由理论链 B₀ ⊆ B₁ ⊆ … 诱导的秩序后承算子, 语法链版本, 链的闭包,
链与有理序之间的互相转换, 以及断言的秩与范围。

链按模型集合存储: 理论越大模型越少, 因此链要求模型集合弱递减。
"""

import logging
from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .correspondence import InferenceRelation
from .exceptions import (
    BaseFormatError,
    InvalidChainError,
    NoConsistentTheoryError,
    NotAConsequenceError,
    ParseError,
)
from .formats import class_label, format_axioms, minimal_dnf
from .logic import (
    AtomEnv,
    Context,
    Formula,
    Imp,
    Not,
    Theory,
    check_exhaustive,
    parse_formula,
)
from .orderings import ClassLike, RationalOrdering, _class_index
from .tables import class_tables

logger = logging.getLogger(__name__)

CHAIN_HEADER = "chain:"


@dataclass(frozen=True)
class RankedChain:
    """理论链, 最低 (最弱) 的理论在前"""

    env: AtomEnv
    theories: Tuple[Theory, ...]

    def __post_init__(self):
        theories = tuple(self.theories)
        object.__setattr__(self, "theories", theories)
        if not theories:
            raise InvalidChainError("A ranked chain needs at least one theory")
        for i, theory in enumerate(theories):
            if theory.env != self.env:
                raise InvalidChainError(f"Theory {i} uses a different atom environment")
        for i in range(len(theories) - 1):
            if theories[i + 1].models & ~theories[i].models:
                raise InvalidChainError(f"Theory {i} is not included in theory {i + 1}")
        if not any(t.consistent for t in theories):
            raise NoConsistentTheoryError("Every theory of the chain is inconsistent")

    @classmethod
    def from_axiom_lists(
        cls, env: AtomEnv, axiom_lists: Iterable[Iterable[Formula]]
    ) -> "RankedChain":
        return cls(env, tuple(Theory.from_axioms(env, axioms) for axioms in axiom_lists))

    @classmethod
    def from_models(cls, env: AtomEnv, models: Iterable[int]) -> "RankedChain":
        return cls(env, tuple(Theory(int(m), env) for m in models))

    @property
    def depth(self) -> int:
        return len(self.theories)

    @property
    def models(self) -> List[int]:
        return [t.models for t in self.theories]

    def effective_models(self, ctx: Optional[Context] = None) -> List[int]:
        """在上下文中一致的成员的模型集合; 不一致的成员与推理无关"""
        mask = self.env.full if ctx is None else ctx.models
        return [w for w in (m & mask for m in self.models) if w]


def chain_infers(
    chain: RankedChain, alpha: ClassLike, beta: ClassLike, ctx: Optional[Context] = None
) -> bool:
    """单个查询 α|~β, 不构造矩阵, 适用于任意原子数"""
    a = _class_index(alpha, chain.env)
    b = _class_index(beta, chain.env)
    effective = chain.effective_models(ctx)
    if not effective:
        raise NoConsistentTheoryError("No theory of the chain is consistent with the context")
    for w in effective:
        if w & a and w & a & ~b == 0:
            return True
    return all(w & a == 0 for w in effective)


def relation_from_chain(chain: RankedChain, ctx: Optional[Context] = None) -> InferenceRelation:
    """α|~β 当且仅当 ∃i (Bᵢ ⊬ ¬α 且 Bᵢ, α ⊢ β), 或所有一致的 Bᵢ ⊢ ¬α"""
    env = chain.env
    check_exhaustive(env)
    ctx = ctx or Context.full(env)
    effective = chain.effective_models(ctx)
    if not effective:
        raise NoConsistentTheoryError("No theory of the chain is consistent with the context")

    t = class_tables(env.n)
    holds = np.zeros((env.class_count, env.class_count), dtype=bool)
    refuted = np.ones(env.class_count, dtype=bool)
    for w in effective:
        compatible = (t.cls & w) != 0
        proves = ((t.cls & w)[:, None] & t.neg[None, :]) == 0
        holds |= compatible[:, None] & proves
        refuted &= ~compatible
    holds |= refuted[:, None]
    return InferenceRelation(env, ctx, holds)


def ordering_from_chain(chain: RankedChain) -> RationalOrdering:
    """α ≤ β 当且仅当 ∀i (Bᵢ ⊢ α ⇒ Bᵢ ⊢ β)

    嵌套链上 {i : Bᵢ ⊢ α} 是后缀, 所以层级就是证明 α 的理论个数。
    """
    env = chain.env
    check_exhaustive(env)
    t = class_tables(env.n)
    levels = np.zeros(env.class_count, dtype=np.int64)
    for w in chain.models:
        levels += (w & t.neg) == 0
    return RationalOrdering(env, levels)


def chain_from_ordering(ordering: RationalOrdering) -> RankedChain:
    """Aℓ = {β : level(β) ≥ ℓ}, ℓ 从 m 到 1; 第 0 层的上闭包 (全部公式) 省略"""
    env = ordering.env
    t = class_tables(env.n)
    if ordering.top == 0:
        logger.warning("Single-level ordering has no chain representative, using [Cn(∅)]")
        return RankedChain(env, (Theory.tautologies(env),))

    models = []
    for level in range(ordering.top, 0, -1):
        members = t.cls[ordering.levels >= level]
        models.append(int(np.bitwise_and.reduce(members)))
    return RankedChain.from_models(env, models)


def complete_chain(chain: RankedChain) -> RankedChain:
    """任意并与交下的闭包; 有限链已经闭合, 这里验证后原样返回"""
    present = set(chain.models)
    for w in chain.models:
        for v in chain.models:
            if w | v not in present or w & v not in present:
                raise InvalidChainError("Chain is not closed under unions and intersections")
    return RankedChain(chain.env, chain.theories)


@dataclass(frozen=True)
class AssertionRank:
    rank: int
    range: Tuple[int, int]
    degenerate: bool = False

    def render(self) -> str:
        if self.degenerate:
            return "degenerate"
        return f"rank={self.rank} range=[{self.range[0]},{self.range[1]}]"


def assertion_rank(
    chain: RankedChain, alpha: ClassLike, beta: ClassLike, ctx: Optional[Context] = None
) -> AssertionRank:
    """断言 α|~β 的秩 (最早生效的下标) 与生效范围"""
    env = chain.env
    if not chain_infers(chain, alpha, beta, ctx):
        raise NotAConsequenceError("The assertion does not hold in the chain")
    a = _class_index(alpha, env)
    b = _class_index(beta, env)
    mask = env.full if ctx is None else ctx.models
    fired = [
        i for i, m in enumerate(chain.models) if (m & mask & a) and (m & mask & a & ~b) == 0
    ]
    if not fired:
        return AssertionRank(0, (0, chain.depth - 1), degenerate=True)
    return AssertionRank(min(fired), (min(fired), max(fired)))


# ---------------------------------------------------------------- 语法链


@dataclass(frozen=True)
class SyntacticChain:
    """显式公式集合链, 成员关系按字面 (AST) 判断, 不做演绎闭包"""

    env: AtomEnv
    sets: Tuple[FrozenSet[Formula], ...]

    def __post_init__(self):
        sets = tuple(frozenset(s) for s in self.sets)
        object.__setattr__(self, "sets", sets)
        if not sets:
            raise InvalidChainError("A syntactic chain needs at least one set")
        for i in range(len(sets) - 1):
            if not sets[i] <= sets[i + 1]:
                raise InvalidChainError(f"Set {i} is not included in set {i + 1}")

    def infers(self, alpha: Formula, beta: Formula) -> bool:
        negation = Not(alpha)
        conditional = Imp(alpha, beta)
        if any(negation not in s and conditional in s for s in self.sets):
            return True
        return all(negation in s for s in self.sets)


def relation_from_syntactic_chain(chain: SyntacticChain, env: AtomEnv) -> InferenceRelation:
    """逐对用最小析取范式代表元做字面求值, 结果仅为存储而提升到类上"""
    check_exhaustive(env)
    representatives = [minimal_dnf(c, env) for c in range(env.class_count)]
    holds = np.array(
        [[chain.infers(alpha, beta) for beta in representatives] for alpha in representatives],
        dtype=bool,
    )
    return InferenceRelation(env, Context.full(env), holds)


# ---------------------------------------------------------------- 链字面量


def parse_chain(text: str, env: AtomEnv) -> RankedChain:
    """`chain:` 后每行一个理论 (逗号分隔的公理), 最低的理论在前; `true` 表示空理论"""
    lines = [(no, line.strip()) for no, line in enumerate(text.splitlines(), 1)]
    lines = [(no, line) for no, line in lines if line and not line.startswith("#")]
    if not lines or lines[0][1] != CHAIN_HEADER:
        first_line = lines[0][0] if lines else 1
        raise BaseFormatError(f"Chain literal must start with '{CHAIN_HEADER}'", first_line)
    axiom_lists: List[Sequence[Formula]] = []
    for no, line in lines[1:]:
        try:
            axiom_lists.append([parse_formula(part, env) for part in line.split(",")])
        except ParseError as exc:
            raise BaseFormatError(str(exc), no) from exc
    return RankedChain.from_axiom_lists(env, axiom_lists)


def dump_chain(chain: RankedChain) -> str:
    lines = [CHAIN_HEADER]
    for theory in chain.theories:
        if theory.origin:
            lines.append(format_axioms(theory.origin, chain.env))
        else:
            lines.append(class_label(theory.models, chain.env))
    return "\n".join(lines)
