"""Celery 任务模块

定义验证运行的 Celery 任务，包括执行、错误处理和状态更新。
"""

import json
import logging
import traceback

from celery import shared_task
from celery.exceptions import SoftTimeLimitExceeded
from django.utils import timezone

from rational_inference.logic import AtomEnv

from .models import RunState, VerificationRun
from .oracle import VerificationReport, verify_theorems

logger = logging.getLogger(__name__)


def perform_run(run: VerificationRun) -> VerificationReport:
    """执行一次验证运行并保存报告; 同步 (--record) 与 Celery 路径共用

    出错时运行记录标记为 FAILED 后重新抛出异常。
    """
    run.state = RunState.RUNNING
    run.start_at = timezone.now()
    run.error_message = ""
    run.save(update_fields=["state", "start_at", "error_message"])

    try:
        env = AtomEnv.default(run.atoms)
        checks = json.loads(run.checks) or None
        logger.info(f"Executing verification run {run.id}: n={run.atoms} trials={run.trials}")
        report = verify_theorems(env, run.trials, run.seed, checks)
    except Exception as e:
        _mark_run_failed(run.id, f"{type(e).__name__}: {str(e)}\n{traceback.format_exc()}")
        logger.error(f"Verification run {run.id} failed: {type(e).__name__}: {e}")
        raise

    run.state = RunState.FINISHED
    run.finish_at = timezone.now()
    run.report = report.render()
    run.failure_count = len(report.failures)
    run.save(update_fields=["state", "finish_at", "report", "failure_count"])
    logger.info(f"Verification run {run.id} finished: {report.summary()}")
    return report


@shared_task(
    bind=True,
    autoretry_for=(ConnectionError, TimeoutError),
    retry_backoff=True,
    retry_backoff_max=600,
    retry_jitter=True,
    max_retries=3,
)
def execute_verification_run(self, run_id: int):
    """
    执行验证运行的Celery任务

    Args:
        run_id: VerificationRun模型的ID
    """
    try:
        run = VerificationRun.objects.get(id=run_id)
        run.celery_task_id = self.request.id or ""
        run.save(update_fields=["celery_task_id"])

        report = perform_run(run)
        return {"run_id": run_id, "status": "success", "failures": len(report.failures)}

    except SoftTimeLimitExceeded:
        logger.warning(f"Verification run {run_id} soft time limit exceeded")
        _mark_run_failed(run_id, "Verification time limit exceeded")
        raise

    except (ConnectionError, TimeoutError) as e:
        if self.request.retries < self.max_retries:
            # 交给 Celery 重试
            raise
        error_msg = f"{type(e).__name__}: {str(e)} (gave up after {self.request.retries} retries)"
        _mark_run_failed(run_id, error_msg)
        logger.error(f"Verification run {run_id} failed: {error_msg}")
        return {"run_id": run_id, "status": "failed", "error": str(e)}

    except Exception as e:
        error_msg = f"{type(e).__name__}: {str(e)}\n{traceback.format_exc()}"
        _mark_run_failed(run_id, error_msg)
        logger.error(f"Verification run {run_id} failed: {error_msg}")
        return {"run_id": run_id, "status": "failed", "error": str(e)}


def _mark_run_failed(run_id: int, error_message: str):
    """标记运行为失败状态"""
    try:
        run = VerificationRun.objects.get(id=run_id)
        run.state = RunState.FAILED
        run.finish_at = timezone.now()
        run.error_message = error_message
        run.save(update_fields=["state", "finish_at", "error_message"])
    except VerificationRun.DoesNotExist:
        logger.error(f"Verification run {run_id} not found when marking as failed")
