"""优先级默认库模块

默认库 D = A₁ … A_m (下标越小优先级越高) 的严格扩展与宽松扩展,
子集字典序, A_K 理论, 两种归约, 以及由默认库诱导的有理序。

严格扩展: 输入加上最长的一致优先级前缀。
宽松扩展: 按子集字典序累加 A_K, 取最长的一致前缀。
"""

import enum
import logging
from dataclasses import dataclass, field
from functools import reduce
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .conf import get_setting
from .exceptions import (
    BaseFormatError,
    CrossCheckError,
    InvalidSubsetKeyError,
    LimitExceededError,
    ParseError,
    ValidationError,
)
from .formats import minimal_dnf
from .logic import AtomEnv, Formula, Theory, models_of, parse_formula
from .orderings import ClassLike, Comparison, RationalOrdering, _class_index
from .ranked import RankedChain, chain_infers, ordering_from_chain

logger = logging.getLogger(__name__)


class ExtensionMode(enum.Enum):
    STRICT = "strict"
    LIBERAL = "liberal"


class SubsetOrder(enum.Enum):
    # 与书面定义方向相反, 能复现优先级默认的标准例子
    MIRRORED = "mirrored"
    # 按书面定义的方向, {1..m} 为最小元
    LITERAL = "literal"


@dataclass(frozen=True)
class DefaultBase:
    env: AtomEnv
    levels: Tuple[Tuple[Formula, ...], ...]

    def __post_init__(self):
        levels = tuple(tuple(level) for level in self.levels)
        object.__setattr__(self, "levels", levels)
        if not levels:
            raise ValidationError("A default base needs at least one level")

    @property
    def m(self) -> int:
        return len(self.levels)

    def level_models(self, i: int) -> int:
        """第 i 层 (从 1 开始) 的模型集合"""
        models = self.env.full
        for f in self.levels[i - 1]:
            models &= models_of(f, self.env).models
        return models

    def prefix_models(self, i: int) -> int:
        """⋃_{j≤i} A_j 的模型集合"""
        models = self.env.full
        for j in range(1, i + 1):
            models &= self.level_models(j)
        return models


@dataclass(frozen=True)
class SubsetKey:
    """{1..m} 的非空子集, 第 i 个下标对应第 i-1 位"""

    mask: int
    m: int

    def __post_init__(self):
        if self.mask <= 0 or self.mask >= 1 << self.m:
            raise InvalidSubsetKeyError(f"Subset key {self.mask:#b} is empty or outside 1..{self.m}")

    @classmethod
    def of(cls, m: int, indices: Iterable[int]) -> "SubsetKey":
        mask = 0
        for i in indices:
            if not 1 <= i <= m:
                raise InvalidSubsetKeyError(f"Index {i} outside 1..{m}")
            mask |= 1 << (i - 1)
        return cls(mask, m)

    @classmethod
    def all_keys(cls, m: int) -> List["SubsetKey"]:
        cap = get_setting("MAX_DEFAULT_LEVELS")
        if m > cap:
            raise LimitExceededError(f"{m} default levels exceed the cap of {cap}")
        return [cls(mask, m) for mask in range(1, 1 << m)]

    @property
    def indices(self) -> Tuple[int, ...]:
        return tuple(i for i in range(1, self.m + 1) if self.mask >> (i - 1) & 1)

    def __str__(self) -> str:
        return "{" + ",".join(str(i) for i in self.indices) + "}"


def _resolve_order(order: Optional[SubsetOrder]) -> SubsetOrder:
    return SubsetOrder(get_setting("SUBSET_ORDER")) if order is None else order


def _order_key(key: SubsetKey, order: SubsetOrder) -> int:
    # 把下标 1..m 当作从高到低的二进制位
    weight = sum(1 << (key.m - i) for i in key.indices)
    return weight if order is SubsetOrder.MIRRORED else -weight


def lex_subset_order(
    k: SubsetKey, l: SubsetKey, order: Optional[SubsetOrder] = None
) -> Comparison:
    if k.m != l.m:
        raise InvalidSubsetKeyError("Subset keys range over different index sets")
    order = _resolve_order(order)
    left, right = _order_key(k, order), _order_key(l, order)
    if left < right:
        return Comparison.LT
    if left > right:
        return Comparison.GT
    return Comparison.EQ


def sorted_keys(m: int, order: Optional[SubsetOrder] = None) -> List[SubsetKey]:
    order = _resolve_order(order)
    return sorted(SubsetKey.all_keys(m), key=lambda key: _order_key(key, order))


def _meet_models(base: DefaultBase, key: SubsetKey) -> int:
    return reduce(lambda acc, i: acc & base.level_models(i), key.indices, base.env.full)


def a_k(base: DefaultBase, key: SubsetKey, order: Optional[SubsetOrder] = None) -> Theory:
    """A_K = ⋂_{K≤L} Cn(⋃_{i∈L} Aᵢ); 模型集合为 ⋃_{K≤L} ⋂_{i∈L} models(Aᵢ)"""
    order = _resolve_order(order)
    threshold = _order_key(key, order)
    models = 0
    for other in SubsetKey.all_keys(base.m):
        if _order_key(other, order) >= threshold:
            models |= _meet_models(base, other)
    return Theory(models, base.env)


def _a_k_sequence(base: DefaultBase, order: SubsetOrder) -> List[int]:
    """按子集序排列的 A_K 模型集合"""
    keys = sorted_keys(base.m, order)
    meets = [_meet_models(base, key) for key in keys]
    # A_K 是排在 K 之后 (含 K) 的全部交的并
    sequence = []
    tail = 0
    for meet in reversed(meets):
        tail |= meet
        sequence.append(tail)
    return list(reversed(sequence))


@dataclass(frozen=True)
class Extension(Theory):
    """扩展结果; prefix 为用上的一致前缀长度, degenerate 表示没有一致的前缀"""

    prefix: int = field(default=0, compare=False)
    degenerate: bool = field(default=False, compare=False)


def _consistent_prefix(alpha: int, stages: Sequence[int]) -> int:
    """一致阶段构成前缀, 返回其长度"""
    flags = [alpha & stage != 0 for stage in stages]
    length = flags.index(False) if False in flags else len(flags)
    if any(flags[length:]):
        raise CrossCheckError("Consistent extensions do not form a prefix")
    return length


def _extension(base: DefaultBase, alpha: ClassLike, stages: Sequence[int]) -> Extension:
    env = base.env
    a = _class_index(alpha, env)
    length = _consistent_prefix(a, stages)
    if length:
        models = a & stages[length - 1]
        return Extension(models, env, prefix=length)
    logger.warning("No consistent extension stage, falling back to the input alone")
    return Extension(a, env, prefix=0, degenerate=True)


def strict_extension(base: DefaultBase, alpha: ClassLike) -> Extension:
    """Eˢᵢ = Cn({α} ∪ ⋃_{j≤i} A_j) 中最大的一致者"""
    stages = [base.prefix_models(i) for i in range(1, base.m + 1)]
    return _extension(base, alpha, stages)


def liberal_extension(
    base: DefaultBase, alpha: ClassLike, order: Optional[SubsetOrder] = None
) -> Extension:
    """E^l_L = Cn({α} ∪ ⋃_{K≤L} A_K) 中最大的一致者"""
    cumulative = []
    models = base.env.full
    for stage in _a_k_sequence(base, _resolve_order(order)):
        models &= stage
        cumulative.append(models)
    return _extension(base, alpha, cumulative)


def extension(
    base: DefaultBase,
    mode: ExtensionMode,
    alpha: ClassLike,
    order: Optional[SubsetOrder] = None,
) -> Extension:
    if mode is ExtensionMode.STRICT:
        return strict_extension(base, alpha)
    return liberal_extension(base, alpha, order)


def cumulate_strict(base: DefaultBase) -> DefaultBase:
    """Cᵢ = ⋃_{j≤i} A_j; 其宽松扩展与原库的严格扩展一致"""
    levels = []
    seen: Dict[Formula, None] = {}
    for level in base.levels:
        for f in level:
            seen.setdefault(f, None)
        levels.append(tuple(seen))
    return DefaultBase(base.env, tuple(levels))


def flatten_liberal(base: DefaultBase, order: Optional[SubsetOrder] = None) -> DefaultBase:
    """D′ = {A_K} 按子集序排列; 其严格扩展与原库的宽松扩展一致"""
    env = base.env
    levels = [(minimal_dnf(models, env),) for models in _a_k_sequence(base, _resolve_order(order))]
    return DefaultBase(env, tuple(levels))


def base_chain(
    base: DefaultBase, mode: ExtensionMode, order: Optional[SubsetOrder] = None
) -> RankedChain:
    """默认库对应的理论链, 以 Cn(∅) 为底 (不用任何默认)

    严格: Cn(∅), C₁ … C_m; 宽松: Cn(∅) 之后按子集序累加 A_K。
    """
    env = base.env
    models = [env.full]
    if mode is ExtensionMode.STRICT:
        models.extend(base.prefix_models(i) for i in range(1, base.m + 1))
    else:
        current = env.full
        for stage in _a_k_sequence(base, _resolve_order(order)):
            current &= stage
            models.append(current)
    return RankedChain.from_models(env, models)


def ordering_from_base(
    base: DefaultBase, mode: ExtensionMode, order: Optional[SubsetOrder] = None
) -> RationalOrdering:
    """≤ˢ / ≤ˡ: α ≤ β 当且仅当 每个阶段证明 α 时也证明 β"""
    return ordering_from_chain(base_chain(base, mode, order))


def query(
    base: DefaultBase,
    mode: ExtensionMode,
    alpha: ClassLike,
    beta: ClassLike,
    order: Optional[SubsetOrder] = None,
) -> bool:
    """β 是否属于 α 的扩展; 经秩序算子计算并与直接扩展核对"""
    chain = base_chain(base, mode, order)
    answer = chain_infers(chain, alpha, beta)
    direct = extension(base, mode, alpha, order).entails(_class_index(beta, base.env))
    if answer != direct:
        raise CrossCheckError(
            f"Ranked operator answered {answer} but the {mode.value} extension answered {direct}"
        )
    return answer


# ---------------------------------------------------------------- 文件格式


def parse_default_base(text: str) -> DefaultBase:
    """解析默认库文件

    `atoms: a b c` 一行, 之后是 `[level k]` 段, 每行一个公式; 空行与 `#` 注释忽略。
    """
    env: Optional[AtomEnv] = None
    levels: List[List[Formula]] = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if env is None:
            if not line.startswith("atoms:"):
                raise BaseFormatError("Expected 'atoms:' declaration", no)
            try:
                env = AtomEnv(tuple(line[len("atoms:"):].split()))
            except ValidationError as exc:
                raise BaseFormatError(str(exc), no) from exc
            continue
        if line.startswith("[") and line.endswith("]"):
            words = line[1:-1].split()
            if len(words) != 2 or words[0] != "level" or not words[1].isdigit():
                raise BaseFormatError(f"Malformed level header {line!r}", no)
            if int(words[1]) != len(levels) + 1:
                raise BaseFormatError(f"Expected level {len(levels) + 1}, got {words[1]}", no)
            levels.append([])
            continue
        if not levels:
            raise BaseFormatError("Formula outside of a level section", no)
        try:
            levels[-1].append(parse_formula(line, env))
        except ParseError as exc:
            raise BaseFormatError(str(exc), no) from exc

    if env is None:
        raise BaseFormatError("Missing 'atoms:' declaration")
    if not levels:
        raise BaseFormatError("Default base has no levels")
    cap = get_setting("MAX_DEFAULT_LEVELS")
    if len(levels) > cap:
        raise LimitExceededError(f"{len(levels)} default levels exceed the cap of {cap}")
    return DefaultBase(env, tuple(tuple(level) for level in levels))
