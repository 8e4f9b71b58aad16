"""预言机模块

随机生成器与独立的暴力实现, 用来在优化路径之外验证各条表示定理。
随机有理序只经由随机链生成, 构造上保证有理。
"""

import enum
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from rational_inference.conf import get_setting
from rational_inference.correspondence import InferenceRelation
from rational_inference.exceptions import InferenceError, ValidationError
from rational_inference.logic import Atom, AtomEnv, Context, Theory, check_exhaustive
from rational_inference.orderings import RationalOrdering
from rational_inference.ranked import RankedChain, ordering_from_chain, relation_from_chain

from .registry import CheckConfig, CheckRegister

logger = logging.getLogger(__name__)

Mutation = Callable[[InferenceRelation], InferenceRelation]


class ChainBottom(enum.Enum):
    """随机链最低理论的取法"""

    RANDOM = "random"
    # Cn(∅): 诱导期望推理关系
    TAUTOLOGIES = "tautologies"
    # 一致且非平凡: 存在 γ|~⊥ 而 ⊬¬γ
    PROPER = "proper"


def _drop_some(rng: np.random.Generator, models: int, size: int) -> int:
    """每个赋值以 1/2 概率去掉, 结果为空时随机保留一个"""
    valuations = [i for i in range(size) if models >> i & 1]
    keep = rng.random(len(valuations)) >= 0.5
    if not keep.any():
        keep[rng.integers(len(valuations))] = True
    return sum(1 << v for v, kept in zip(valuations, keep) if kept)


def _proper_subset(rng: np.random.Generator, env: AtomEnv) -> int:
    models = _drop_some(rng, env.full, env.size)
    if models == env.full:
        models &= ~(1 << int(rng.integers(env.size)))
    return models


def random_chain(
    env: AtomEnv,
    depth: Optional[int] = None,
    seed: Optional[int] = None,
    bottom: ChainBottom = ChainBottom.RANDOM,
) -> RankedChain:
    """模型集合弱递减的随机链 W₀ ⊇ … ⊇ W_{k−1}, 全部非空"""
    depth = get_setting("DEFAULT_CHAIN_DEPTH") if depth is None else depth
    if depth < 1:
        raise ValidationError(f"Chain depth must be at least 1, got {depth}")
    rng = np.random.default_rng(seed)

    if bottom is ChainBottom.TAUTOLOGIES:
        current = env.full
    elif bottom is ChainBottom.PROPER:
        current = _proper_subset(rng, env)
    else:
        current = _drop_some(rng, env.full, env.size)

    models = [current]
    for _ in range(depth - 1):
        current = _drop_some(rng, current, env.size)
        models.append(current)
    return RankedChain.from_models(env, models)


def all_chains(env: AtomEnv) -> Iterator[RankedChain]:
    """全部严格递减的非空模型集合链"""
    check_exhaustive(env, "BRUTE_MAX_ATOMS")

    def extend(prefix: List[int]) -> Iterator[List[int]]:
        yield prefix
        last = prefix[-1]
        sub = (last - 1) & last
        while sub:
            yield from extend(prefix + [sub])
            sub = (sub - 1) & last

    for start in range(1, env.full + 1):
        for models in extend([start]):
            yield RankedChain.from_models(env, models)


def brute_relation_from_ordering(
    ordering: RationalOrdering, ctx: Optional[Context] = None
) -> InferenceRelation:
    """逐字求值粗体 (C): 对全部类量化 β, 不用层级捷径"""
    env = ordering.env
    check_exhaustive(env, "BRUTE_MAX_ATOMS")
    ctx = ctx or Context.full(env)
    level = ordering.levels.tolist()
    count = env.class_count
    x = ctx.models
    holds = np.zeros((count, count), dtype=bool)
    for a in range(count):
        not_a = env.full ^ a
        maximal = all(level[b] <= level[not_a] for b in range(count))
        for g in range(count):
            if maximal:
                holds[a, g] = True
                continue
            holds[a, g] = any(
                x & a & b & ~g == 0 and level[not_a] < level[b] for b in range(count)
            )
    return InferenceRelation(env, ctx, holds)


def flip_entry(relation: InferenceRelation, alpha: int, gamma: int) -> InferenceRelation:
    """翻转矩阵中的一项, 用于构造被破坏的关系"""
    holds = relation.holds.copy()
    holds[alpha, gamma] = not holds[alpha, gamma]
    return InferenceRelation(relation.env, relation.ctx, holds)


def gm_example_fixture(env: AtomEnv) -> Tuple[RationalOrdering, RationalOrdering]:
    """由 D₁ = {{⊤}, {⊤, a}} 与 D₂ = {{a}} 诱导的两个有理序"""
    a = Atom(env.index("a"))
    first = RankedChain(env, (Theory.tautologies(env), Theory.from_axioms(env, [a])))
    second = RankedChain(env, (Theory.from_axioms(env, [a]),))
    return ordering_from_chain(first), ordering_from_chain(second)


# ---------------------------------------------------------------- 定理验证


@dataclass
class Trial:
    """一次随机试验: 一条随机链以及由它诱导的关系与序"""

    index: int
    seed: int
    env: AtomEnv
    chain: RankedChain
    mutate: Optional[Mutation] = None

    @cached_property
    def relation(self) -> InferenceRelation:
        relation = relation_from_chain(self.chain)
        return self.mutate(relation) if self.mutate else relation

    @cached_property
    def ordering(self) -> RationalOrdering:
        return ordering_from_chain(self.chain)


@dataclass(frozen=True)
class Failure:
    trial: str
    seed: str
    check: str
    witness: str

    def render(self) -> str:
        # 见证文本只占一个字段
        witness = " ".join(self.witness.split("\t"))
        return "\t".join((self.trial, self.seed, self.check, witness))


@dataclass
class VerificationReport:
    trials: int
    failures: List[Failure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def failed_trials(self) -> int:
        return len({f.trial for f in self.failures if f.trial.isdigit()})

    def lines(self) -> List[str]:
        return [f.render() for f in self.failures]

    def summary(self) -> str:
        if self.ok:
            return f"OK {self.trials}/{self.trials}"
        return f"FAILED {self.failed_trials}/{self.trials}"

    def render(self) -> str:
        return "\n".join([*self.lines(), self.summary()])


def trial_seeds(seed: int, trials: int) -> List[int]:
    """由主种子确定性地派生每次试验的种子"""
    children = np.random.SeedSequence(seed).spawn(trials)
    return [int(child.generate_state(1, dtype=np.uint64)[0]) for child in children]


def _run_check(config: CheckConfig, subject) -> Optional[str]:
    try:
        return config.handler(subject)
    except InferenceError as exc:
        return f"{type(exc).__name__}: {exc}"


def verify_theorems(
    env: AtomEnv,
    trials: int,
    seed: int,
    checks: Optional[Sequence[str]] = None,
    mutate: Optional[Mutation] = None,
) -> VerificationReport:
    """对随机链逐一运行已注册的检查, 失败项带试验号与种子"""
    check_exhaustive(env)
    selected = CheckRegister.select(checks)
    per_trial = [c for c in selected if c.scope == "trial" and CheckRegister.applies(c, env)]
    per_suite = [c for c in selected if c.scope == "suite" and CheckRegister.applies(c, env)]
    report = VerificationReport(trials)
    if trials <= 0:
        return report

    depth_cap = get_setting("DEFAULT_CHAIN_DEPTH")
    logger.info(f"Verifying {len(per_trial)} checks over {trials} trials at n={env.n}")
    for index, trial_seed in enumerate(trial_seeds(seed, trials)):
        chain = random_chain(env, 1 + trial_seed % depth_cap, trial_seed)
        trial = Trial(index, trial_seed, env, chain, mutate)
        for config in per_trial:
            witness = _run_check(config, trial)
            if witness is not None:
                report.failures.append(Failure(str(index), str(trial_seed), config.name, witness))

    for config in per_suite:
        witness = _run_check(config, env)
        if witness is not None:
            report.failures.append(Failure("suite", str(seed), config.name, witness))

    if report.ok:
        logger.info(f"All {trials} trials passed")
    else:
        logger.warning(f"{len(report.failures)} check failures in {trials} trials")
    return report
