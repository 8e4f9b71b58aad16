from rational_inference.defaults import ordering_from_base
from rational_inference.orderings import dump_ordering

from ._base import BaseFileCommand


class Command(BaseFileCommand):
    help = "输出默认库诱导的有理序, 每层一行, 从高到低"

    def run(self, *args, **options) -> str:
        base = self.load_base(options["base"])
        ordering = ordering_from_base(base, self.mode(options), self.subset_order(options))
        return "\n".join(dump_ordering(ordering))
