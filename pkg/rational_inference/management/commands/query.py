from rational_inference.cli import parse_assertion
from rational_inference.defaults import query

from ._base import BaseFileCommand


class Command(BaseFileCommand):
    help = '回答 "α |~ β" 是否属于 α 的扩展, 输出 yes / no'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("assertion", help='形如 "a |~ b"')

    def run(self, *args, **options) -> str:
        base = self.load_base(options["base"])
        alpha, beta = parse_assertion(options["assertion"], base.env)
        answer = query(base, self.mode(options), alpha, beta, self.subset_order(options))
        return "yes" if answer else "no"
