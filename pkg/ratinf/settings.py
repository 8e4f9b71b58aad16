"""
Django settings for the ratinf project.

推理库本身不依赖数据库；数据库只用于保存验证运行记录。
"""

import os
from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = os.environ.get("DJANGO_SECRET_KEY", "ratinf-local-only-not-a-secret")

DEBUG = os.environ.get("DJANGO_DEBUG", "0") == "1"

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    "rational_inference",
    "verification",
]


# Database

DATABASES = {
    "default": {
        "ENGINE": "django.db.backends.sqlite3",
        "NAME": os.environ.get("RATINF_DB", BASE_DIR / "db.sqlite3"),
    }
}

LANGUAGE_CODE = "en-us"

TIME_ZONE = "UTC"

USE_TZ = True

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"


# ============== 推理配置 ==============

RATIONAL_INFERENCE = {
    "MAX_ATOMS": 16,  # AtomEnv 原子数上限
    "EXHAUSTIVE_MAX_ATOMS": 3,  # 穷举语义类 / 关系矩阵的原子数上限
    "BRUTE_MAX_ATOMS": 2,  # 暴力 (C) 预言机的原子数上限 (代价为 classes³)
    "MAX_DEFAULT_LEVELS": 6,  # 默认库层数上限 (liberal 模式枚举 2^m - 1 个子集)
    "SUBSET_ORDER": "mirrored",  # 子集字典序读法: mirrored / literal
    "COUNTEREXAMPLE_LIMIT": 1,  # 每条规则返回的反例个数
    "DEFAULT_CHAIN_DEPTH": 4,  # 随机链最大深度
    "VERIFICATION_QUEUE": "verification",
}


# ============== 日志配置 ==============

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "plain": {"format": "%(levelname)s %(name)s: %(message)s"},
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "plain",
        },
    },
    "loggers": {
        "rational_inference": {
            "handlers": ["console"],
            "level": os.environ.get("RATINF_LOG_LEVEL", "WARNING"),
        },
        "verification": {
            "handlers": ["console"],
            "level": os.environ.get("RATINF_LOG_LEVEL", "WARNING"),
        },
    },
}


# ============== Celery 配置 ==============

# Broker 配置 (Redis)
CELERY_BROKER_URL = os.environ.get("CELERY_BROKER_URL", "redis://localhost:6379/0")
CELERY_RESULT_BACKEND = os.environ.get(
    "CELERY_RESULT_BACKEND", "redis://localhost:6379/1"
)

# 序列化配置
CELERY_ACCEPT_CONTENT = ["json"]
CELERY_TASK_SERIALIZER = "json"
CELERY_RESULT_SERIALIZER = "json"

CELERY_TIMEZONE = "UTC"
CELERY_ENABLE_UTC = True

# Worker 配置
CELERY_WORKER_CONCURRENCY = 4  # 并发worker数
CELERY_WORKER_PREFETCH_MULTIPLIER = 1  # 预取任务数
CELERY_WORKER_MAX_TASKS_PER_CHILD = 100  # 每个worker处理的最大任务数

# 任务配置: n=3 的穷举验证可能需要几分钟
CELERY_TASK_SOFT_TIME_LIMIT = 1500  # 软超时 (秒)
CELERY_TASK_TIME_LIMIT = 1800  # 硬超时 (秒)
CELERY_TASK_ACKS_LATE = True  # 任务完成后确认
CELERY_TASK_REJECT_ON_WORKER_LOST = True  # worker丢失时拒绝任务

# 结果配置
CELERY_RESULT_EXPIRES = 86400  # 结果过期时间 (24小时)
CELERY_TASK_TRACK_STARTED = True  # 跟踪任务开始状态

# 任务路由配置
CELERY_TASK_ROUTES = {
    "verification.celery_tasks.execute_verification_run": {
        "queue": RATIONAL_INFERENCE["VERIFICATION_QUEUE"]
    },
}

# 测试或本地调试时可以同步执行
CELERY_TASK_ALWAYS_EAGER = os.environ.get("CELERY_TASK_ALWAYS_EAGER", "0") == "1"
