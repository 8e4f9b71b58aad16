"""命令行入口

`python manage.py <command>` 与 `ratinf <command>` 共用同一组管理命令;
run() 供程序内调用, 返回 (退出码, 输出文本)。
"""

import logging
import os
import re
import sys
from io import StringIO
from typing import Sequence, Tuple

from .exceptions import QuerySyntaxError
from .logic import AtomEnv, Formula, parse_formula

logger = logging.getLogger(__name__)

COMMANDS = ("query", "extension", "ordering", "rank", "check", "roundtrip")

# argparse 用法错误的退出码, 与解析错误相同
USAGE_EXIT_CODE = 2

_ASSERTION_TOKEN = "|~"
_ASSERTION_SPLIT = re.compile(r"\s\|~\s")


def parse_assertion(text: str, env: AtomEnv) -> Tuple[Formula, Formula]:
    """解析 `α |~ β`, 记号两侧必须有空白"""
    count = text.count(_ASSERTION_TOKEN)
    if count == 0:
        raise QuerySyntaxError(f"Missing '{_ASSERTION_TOKEN}' in {text!r}")
    if count > 1:
        raise QuerySyntaxError(f"More than one '{_ASSERTION_TOKEN}' in {text!r}")
    parts = _ASSERTION_SPLIT.split(text)
    if len(parts) != 2:
        raise QuerySyntaxError(f"'{_ASSERTION_TOKEN}' must be surrounded by whitespace")
    return parse_formula(parts[0], env), parse_formula(parts[1], env)


def run(argv: Sequence[str]) -> Tuple[int, str]:
    """执行一条命令, 返回退出码与合并后的输出"""
    from django.core.management import call_command
    from django.core.management.base import CommandError

    if not argv or argv[0] not in COMMANDS:
        name = argv[0] if argv else ""
        return USAGE_EXIT_CODE, f"Unknown command {name!r}, expected one of {', '.join(COMMANDS)}\n"

    stdout, stderr = StringIO(), StringIO()
    try:
        call_command(argv[0], *argv[1:], stdout=stdout, stderr=stderr)
    except CommandError as exc:
        code = exc.returncode
        # call_command 把 argparse 错误包装成 "Error: ..." 且退出码为 1
        if str(exc).startswith("Error: ") and code == 1:
            code = USAGE_EXIT_CODE
        logger.info(f"Command {argv[0]} exited with {code}: {exc}")
        return code, stdout.getvalue() + stderr.getvalue() + f"{exc}\n"
    return 0, stdout.getvalue() + stderr.getvalue()


def main() -> None:
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "ratinf.settings")
    import django

    django.setup()
    code, text = run(sys.argv[1:])
    sys.stdout.write(text)
    sys.exit(code)
