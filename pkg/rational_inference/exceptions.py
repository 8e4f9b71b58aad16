"""异常模块

所有推理错误都继承自 InferenceError；命令行根据异常类别决定退出码。
"""

from typing import Optional, Tuple


class InferenceError(Exception):
    """推理库错误基类"""

    exit_code = 3


class ParseError(InferenceError, ValueError):
    """输入文本无法解析"""

    exit_code = 2


class FormulaSyntaxError(ParseError):
    """公式语法错误, offset 为字节偏移"""

    def __init__(self, message: str, offset: int):
        self.offset = offset
        super().__init__(f"{message} at offset {offset}")


class UnknownAtomError(ParseError):
    """公式引用了未声明的原子"""

    def __init__(self, name: str, offset: int):
        self.name = name
        self.offset = offset
        super().__init__(f"Unknown atom '{name}' at offset {offset}")


class BaseFormatError(ParseError):
    """默认库文件或链字面量格式错误"""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class QuerySyntaxError(ParseError):
    """查询中缺少或重复 |~ 记号"""


class LimitExceededError(InferenceError):
    """超过配置的规模上限"""


class ValidationError(InferenceError, ValueError):
    """输入对象不满足不变式"""


class InvalidOrderingError(ValidationError):
    """层级映射不是有理序"""

    def __init__(self, report):
        self.report = report
        super().__init__(f"Ordering is not rational: {report.summary()}")


class NonTotalPreorderError(ValidationError):
    """(O) 得到的关系不是全预序"""

    def __init__(self, witness: Tuple[int, int]):
        self.witness = witness
        super().__init__(f"Relation does not induce a total preorder, witness {witness}")


class NoConsistentTheoryError(ValidationError):
    """链中所有理论都不一致"""


class InvalidChainError(ValidationError):
    """链不满足包含关系"""


class InvalidSubsetKeyError(ValidationError):
    """子集键为空或越界"""


class NotAConsequenceError(InferenceError):
    """断言 α|~β 不成立, 无法求秩"""


class CrossCheckError(InferenceError):
    """秩序算子路径与直接扩展计算结果不一致"""
