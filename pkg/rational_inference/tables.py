"""语义类查找表

类编号即模型位集, 连接词在编号上是按位运算; 这里缓存 numpy 查找表。
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np


@dataclass(frozen=True, eq=False)
class ClassTables:
    full: int
    cls: np.ndarray  # (C,) 类编号
    neg: np.ndarray  # (C,) ¬
    meet: np.ndarray  # (C, C) ∧
    join: np.ndarray  # (C, C) ∨
    arrow: np.ndarray  # (C, C) →
    subset: np.ndarray  # (C, C) 经典 ⊢

    def entailment(self, ctx_models: int) -> np.ndarray:
        """相对上下文的蕴涵矩阵 ent[b, g] = ctx, b ⊢ g"""
        return _entailment(self.full, ctx_models)


@lru_cache(maxsize=8)
def class_tables(n: int) -> ClassTables:
    count = 1 << (1 << n)
    full = count - 1
    cls = np.arange(count, dtype=np.int64)
    neg = full ^ cls
    meet = cls[:, None] & cls[None, :]
    join = cls[:, None] | cls[None, :]
    arrow = neg[:, None] | cls[None, :]
    subset = (cls[:, None] & neg[None, :]) == 0
    for array in (cls, neg, meet, join, arrow, subset):
        array.setflags(write=False)
    return ClassTables(full, cls, neg, meet, join, arrow, subset)


@lru_cache(maxsize=64)
def _entailment(full: int, ctx_models: int) -> np.ndarray:
    cls = np.arange(full + 1, dtype=np.int64)
    ent = (cls[:, None] & ctx_models & (full ^ cls)[None, :]) == 0
    ent.setflags(write=False)
    return ent
