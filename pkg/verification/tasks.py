"""Celery 任务模块入口

Celery Worker 自动发现任务时加载此模块。
实际的 Celery 任务定义在 celery_tasks.py 中。
"""

from .celery_tasks import execute_verification_run

__all__ = ["execute_verification_run"]
