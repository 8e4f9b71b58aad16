from rational_inference.defaults import extension
from rational_inference.formats import class_label
from rational_inference.logic import parse_formula

from ._base import BaseFileCommand


class Command(BaseFileCommand):
    help = "输出输入公式的扩展 (最小析取范式), 不一致时输出 INCONSISTENT"

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("formula")

    def run(self, *args, **options) -> str:
        base = self.load_base(options["base"])
        alpha = parse_formula(options["formula"], base.env)
        result = extension(base, self.mode(options), alpha, self.subset_order(options))
        if not result.consistent:
            return "INCONSISTENT"
        return class_label(result.models, base.env)
