from django.db import models


class RunState(models.TextChoices):
    """运行状态枚举"""

    PENDING = "PENDING", "等待执行"
    RUNNING = "RUNNING", "正在执行"
    FINISHED = "FINISHED", "已完成"
    FAILED = "FAILED", "执行失败"


class VerificationRun(models.Model):
    """定理验证运行记录"""

    id = models.BigAutoField(primary_key=True)

    # Celery任务ID, 同步运行时为空
    celery_task_id = models.CharField(
        max_length=255,
        default="",
        blank=True,
        db_index=True,
        verbose_name="Celery任务ID",
    )

    # 运行参数
    atoms = models.PositiveSmallIntegerField(verbose_name="原子数")
    trials = models.PositiveIntegerField(verbose_name="试验次数")
    seed = models.BigIntegerField(verbose_name="主种子")
    checks = models.TextField(default="[]", verbose_name="检查列表")  # JSON, 空列表表示全部

    state = models.CharField(
        max_length=20,
        choices=RunState.choices,
        default=RunState.PENDING,
        db_index=True,
        verbose_name="运行状态",
    )

    # 报告文本: 失败行加最后的汇总行
    report = models.TextField(null=True, blank=True, verbose_name="验证报告")
    failure_count = models.PositiveIntegerField(default=0, verbose_name="失败项数")

    create_at = models.DateTimeField(
        auto_now_add=True, db_index=True, verbose_name="创建时间"
    )
    start_at = models.DateTimeField(null=True, blank=True, verbose_name="开始执行时间")
    finish_at = models.DateTimeField(null=True, blank=True, verbose_name="完成时间")

    error_message = models.TextField(null=True, blank=True, verbose_name="错误信息")

    class Meta:
        db_table = "verification_run"
        verbose_name = "验证运行"
        verbose_name_plural = "验证运行"
        ordering = ["-create_at"]
        indexes = [
            models.Index(fields=["state", "create_at"], name="verification_state_idx"),
        ]

    def __str__(self):
        return f"verification#{self.id} n={self.atoms} - {self.state}"
