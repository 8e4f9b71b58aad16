"""命令公共部分

库异常统一在这里转换为 CommandError, 退出码由异常类别决定。
"""

import logging
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from rational_inference.defaults import DefaultBase, ExtensionMode, SubsetOrder, parse_default_base
from rational_inference.exceptions import InferenceError

logger = logging.getLogger(__name__)

# 文件无法读取时的退出码, 与解析错误相同
UNREADABLE_EXIT_CODE = 2


class InferenceCommand(BaseCommand):
    """推理命令基类, 子类实现 run() 并返回输出文本"""

    requires_system_checks = []

    def handle(self, *args, **options):
        try:
            return self.run(*args, **options)
        except InferenceError as exc:
            logger.info(f"{type(exc).__name__} in {self.__module__}: {exc}")
            raise CommandError(str(exc), returncode=exc.exit_code) from exc

    def run(self, *args, **options) -> str:
        raise NotImplementedError


class BaseFileCommand(InferenceCommand):
    """读取默认库文件的命令: --base / --mode / --subset-order"""

    def add_arguments(self, parser):
        parser.add_argument("--base", required=True, help="默认库文件路径")
        parser.add_argument(
            "--mode",
            choices=[mode.value for mode in ExtensionMode],
            default=ExtensionMode.STRICT.value,
        )
        parser.add_argument(
            "--subset-order",
            choices=[order.value for order in SubsetOrder],
            default=None,
            help="子集字典序的读法, 默认取 RATIONAL_INFERENCE['SUBSET_ORDER']",
        )

    def load_base(self, path: str) -> DefaultBase:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise CommandError(f"Cannot read base file {path}: {exc}", returncode=UNREADABLE_EXIT_CODE)
        return parse_default_base(text)

    @staticmethod
    def mode(options) -> ExtensionMode:
        return ExtensionMode(options["mode"])

    @staticmethod
    def subset_order(options):
        value = options.get("subset_order")
        return SubsetOrder(value) if value else None
