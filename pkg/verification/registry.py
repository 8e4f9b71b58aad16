"""检查注册器模块

提供 CheckRegister 单例类，用于注册和管理验证检查。
支持装饰器方式注册; 检查分为逐试验 (trial) 与整套 (suite) 两种。
"""

import logging
from dataclasses import dataclass
from functools import wraps
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from rational_inference.exceptions import ValidationError
from rational_inference.logic import AtomEnv

logger = logging.getLogger(__name__)

SCOPES = ("trial", "suite")


@dataclass
class CheckConfig:
    """检查配置"""

    name: str  # 检查名称
    handler: Callable  # 处理函数, 通过返回 None, 失败返回见证文本
    description: str = ""  # 检查描述
    scope: str = "trial"  # trial: 每条随机链一次; suite: 每次运行一次
    max_atoms: Optional[int] = None  # 原子数上限, None 表示不限
    tags: Tuple[str, ...] = ()


class CheckRegister:
    """验证检查注册器 - 单例模式"""

    _instance = None
    _checks: Dict[str, CheckConfig] = {}

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    @classmethod
    def register(
        cls,
        name: str,
        description: str = "",
        scope: str = "trial",
        max_atoms: Optional[int] = None,
        tags: Tuple[str, ...] = (),
    ):
        """
        装饰器方式注册检查

        使用示例:
        @CheckRegister.register(
            name='relation_roundtrip',
            description='C(O(rel)) = rel',
        )
        def relation_roundtrip(trial: Trial) -> Optional[str]:
            ...
        """
        if scope not in SCOPES:
            raise ValueError(f"Unknown check scope: {scope}")

        def decorator(func: Callable):
            cls._checks[name] = CheckConfig(
                name=name,
                handler=func,
                description=description,
                scope=scope,
                max_atoms=max_atoms,
                tags=tuple(tags),
            )
            logger.info(f"Registered check: {name}")

            @wraps(func)
            def wrapper(*args, **kwargs):
                return func(*args, **kwargs)

            return wrapper

        return decorator

    @classmethod
    def get_check(cls, name: str) -> Optional[CheckConfig]:
        """获取检查配置"""
        return cls._checks.get(name)

    @classmethod
    def get_all_checks(cls) -> Dict[str, CheckConfig]:
        """获取所有注册的检查"""
        return cls._checks.copy()

    @classmethod
    def select(cls, names: Optional[Sequence[str]] = None) -> List[CheckConfig]:
        """按名称选取检查, 保持注册顺序; names 为空时返回全部"""
        if not names:
            return list(cls._checks.values())
        unknown = [n for n in names if n not in cls._checks]
        if unknown:
            raise ValidationError(f"Unknown checks: {', '.join(unknown)}")
        return [config for name, config in cls._checks.items() if name in names]

    @classmethod
    def applies(cls, config: CheckConfig, env: AtomEnv) -> bool:
        """检查是否适用于该原子数"""
        return config.max_atoms is None or env.n <= config.max_atoms
