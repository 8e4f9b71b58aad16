from django.core.management.base import CommandError

from rational_inference.management.commands._base import InferenceCommand
from verification.oracle import verify_theorems
from verification.registry import CheckRegister

from ._options import add_run_arguments, validate_run_options


class Command(InferenceCommand):
    help = "只运行往返检查: 关系 ↔ 序 ↔ 链"

    def add_arguments(self, parser):
        add_run_arguments(parser, trials=100)

    def run(self, *args, **options) -> str:
        env = validate_run_options(options)
        names = [
            name
            for name, config in CheckRegister.get_all_checks().items()
            if "roundtrip" in config.tags
        ]
        report = verify_theorems(env, options["trials"], options["seed"], names)
        if not report.ok:
            self.stdout.write(report.render())
            raise CommandError(f"{len(report.failures)} round-trip failures", returncode=1)
        return report.render()
