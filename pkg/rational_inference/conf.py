"""配置读取模块

所有可调参数集中在 settings.RATIONAL_INFERENCE 中；未配置 Django 时使用默认值。
"""

from typing import Any, Dict

from django.conf import settings

DEFAULTS: Dict[str, Any] = {
    "MAX_ATOMS": 16,
    "EXHAUSTIVE_MAX_ATOMS": 3,
    "BRUTE_MAX_ATOMS": 2,
    "MAX_DEFAULT_LEVELS": 6,
    "SUBSET_ORDER": "mirrored",
    "COUNTEREXAMPLE_LIMIT": 1,
    "DEFAULT_CHAIN_DEPTH": 4,
    "VERIFICATION_QUEUE": "verification",
}


def get_setting(name: str) -> Any:
    """读取单个配置项"""
    if name not in DEFAULTS:
        raise KeyError(f"Unknown setting: {name}")
    if not settings.configured:
        return DEFAULTS[name]
    return getattr(settings, "RATIONAL_INFERENCE", {}).get(name, DEFAULTS[name])
