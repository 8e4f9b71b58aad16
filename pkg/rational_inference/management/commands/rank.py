from rational_inference.cli import parse_assertion
from rational_inference.defaults import base_chain
from rational_inference.ranked import assertion_rank

from ._base import BaseFileCommand


class Command(BaseFileCommand):
    help = "输出断言在默认库链上的秩与范围: rank=i range=[i1,i2] 或 degenerate"

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("assertion", help='形如 "a |~ b"')

    def run(self, *args, **options) -> str:
        base = self.load_base(options["base"])
        alpha, beta = parse_assertion(options["assertion"], base.env)
        chain = base_chain(base, self.mode(options), self.subset_order(options))
        return assertion_rank(chain, alpha, beta).render()
