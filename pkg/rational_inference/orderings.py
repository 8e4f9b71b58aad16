"""有理序模块

有理序与期望序, 以语义类上的层级映射表示 (层级越大越被期望)。
层级在构造时规范化为 0..k 且每层非空, 因此序的相等即层级数组相等。
"""

import enum
import logging
from dataclasses import dataclass
from typing import List, Mapping, Sequence, Tuple, Union

import numpy as np

from .formats import class_label
from .logic import AtomEnv, Context, Formula, SemClass, check_exhaustive, models_of
from .tables import class_tables
from .exceptions import ValidationError

logger = logging.getLogger(__name__)

ClassLike = Union[SemClass, Formula, int]


class Comparison(enum.Enum):
    LT = "<"
    EQ = "="
    GT = ">"


def _class_index(x: ClassLike, env: AtomEnv) -> int:
    if isinstance(x, SemClass):
        return x.models
    if isinstance(x, Formula):
        return models_of(x, env).models
    return int(x)


def normalize_levels(levels: Sequence[int]) -> np.ndarray:
    """保序地压缩为 0..k"""
    _, dense = np.unique(np.asarray(levels, dtype=np.int64), return_inverse=True)
    return dense.reshape(-1).astype(np.int64)


@dataclass(frozen=True, eq=False)
class RationalOrdering:
    """语义类上的全预序"""

    env: AtomEnv
    levels: np.ndarray

    def __post_init__(self):
        check_exhaustive(self.env)
        raw = np.asarray(self.levels, dtype=np.int64)
        if raw.shape != (self.env.class_count,):
            raise ValidationError(
                f"Level map must cover all {self.env.class_count} classes, got shape {raw.shape}"
            )
        if raw.size and raw.min() < 0:
            raise ValidationError("Levels must be non-negative")
        dense = normalize_levels(raw)
        dense.setflags(write=False)
        object.__setattr__(self, "levels", dense)

    @classmethod
    def from_mapping(cls, env: AtomEnv, mapping: Mapping[ClassLike, int]) -> "RationalOrdering":
        """由 类 → 层级 映射构造; 映射必须覆盖全部类"""
        levels = np.full(env.class_count, -1, dtype=np.int64)
        for key, level in mapping.items():
            levels[_class_index(key, env)] = level
        missing = np.flatnonzero(levels < 0)
        if missing.size:
            raise ValidationError(f"Level map misses classes {missing.tolist()}")
        return cls(env, levels)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalOrdering):
            return NotImplemented
        return self.env == other.env and np.array_equal(self.levels, other.levels)

    def __hash__(self) -> int:
        return hash((self.env, self.levels.tobytes()))

    @property
    def top(self) -> int:
        return int(self.levels.max())

    @property
    def height(self) -> int:
        """层数"""
        return self.top + 1

    def level(self, x: ClassLike) -> int:
        return int(self.levels[_class_index(x, self.env)])

    def classes_at(self, level: int) -> List[SemClass]:
        return [SemClass(int(c), self.env.n) for c in np.flatnonzero(self.levels == level)]


@dataclass(frozen=True)
class Violation:
    property: str
    witnesses: Tuple[SemClass, ...]


@dataclass(frozen=True)
class OrderingReport:
    violations: Tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def properties(self) -> List[str]:
        return sorted({v.property for v in self.violations})

    def summary(self) -> str:
        if self.ok:
            return "rational"
        counts = {}
        for v in self.violations:
            counts[v.property] = counts.get(v.property, 0) + 1
        return ", ".join(f"{name}×{count}" for name, count in sorted(counts.items()))


def validate_rational(ordering: RationalOrdering) -> OrderingReport:
    """检查 Dominance 与 Conjunctiveness (数值形式), 报告全部违例"""
    env = ordering.env
    t = class_tables(env.n)
    levels = ordering.levels
    violations: List[Violation] = []

    dominance = t.subset & (levels[:, None] > levels[None, :])
    for a, b in np.argwhere(dominance):
        violations.append(
            Violation("Dominance", (SemClass(int(a), env.n), SemClass(int(b), env.n)))
        )

    conjunctive = levels[t.meet] != np.minimum(levels[:, None], levels[None, :])
    for a, b in np.argwhere(np.triu(conjunctive, k=1)):
        violations.append(
            Violation("Conjunctiveness", (SemClass(int(a), env.n), SemClass(int(b), env.n)))
        )
    if violations:
        logger.info(f"Ordering over {env.n} atoms has {len(violations)} violations")
    return OrderingReport(tuple(violations))


def compare(ordering: RationalOrdering, alpha: ClassLike, beta: ClassLike) -> Comparison:
    left, right = ordering.level(alpha), ordering.level(beta)
    if left < right:
        return Comparison.LT
    if left > right:
        return Comparison.GT
    return Comparison.EQ


def is_expectation(ordering: RationalOrdering, ctx: Context) -> bool:
    """最高层的每个类都在上下文中有效"""
    top_classes = np.flatnonzero(ordering.levels == ordering.top)
    return all(ctx.models & ~int(c) == 0 for c in top_classes)


def dump_ordering(ordering: RationalOrdering) -> List[str]:
    """每层一行, 从高到低: `level k: <代表元>`"""
    lines = []
    for level in range(ordering.top, -1, -1):
        labels = [class_label(c.models, ordering.env) for c in ordering.classes_at(level)]
        lines.append(f"level {level}: {', '.join(labels)}")
    return lines
