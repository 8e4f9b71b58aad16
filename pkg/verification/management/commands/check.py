import json

from django.core.management.base import CommandError

from rational_inference.conf import get_setting
from rational_inference.management.commands._base import InferenceCommand
from verification.celery_tasks import execute_verification_run, perform_run
from verification.models import RunState, VerificationRun
from verification.oracle import verify_theorems
from verification.registry import CheckRegister

from ._options import add_run_arguments, validate_run_options


class Command(InferenceCommand):
    help = "在随机链上验证表示定理, 输出失败行与 OK x/y 或 FAILED x/y"

    def add_arguments(self, parser):
        add_run_arguments(parser, trials=100)
        parser.add_argument(
            "--checks",
            default="",
            help="逗号分隔的检查名称, 默认全部: " + ", ".join(CheckRegister.get_all_checks()),
        )
        target = parser.add_mutually_exclusive_group()
        target.add_argument("--record", action="store_true", help="同步执行并保存运行记录")
        target.add_argument("--queue", action="store_true", help="提交到 Celery worker 执行")

    def run(self, *args, **options) -> str:
        env = validate_run_options(options)
        names = [n.strip() for n in options["checks"].split(",") if n.strip()]
        CheckRegister.select(names)

        if options["queue"] or options["record"]:
            run = VerificationRun.objects.create(
                atoms=env.n,
                trials=options["trials"],
                seed=options["seed"],
                checks=json.dumps(names),
                state=RunState.PENDING,
            )
            if options["queue"]:
                result = execute_verification_run.apply_async(
                    args=[run.id], queue=get_setting("VERIFICATION_QUEUE")
                )
                run.celery_task_id = result.id
                run.save(update_fields=["celery_task_id"])
                return f"QUEUED run={run.id}"
            report = perform_run(run)
        else:
            report = verify_theorems(env, options["trials"], options["seed"], names or None)

        if not report.ok:
            self.stdout.write(report.render())
            raise CommandError(f"{len(report.failures)} check failures", returncode=1)
        return report.render()
