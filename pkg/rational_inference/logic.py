"""命题逻辑核心模块

命题语言、公式解析、模型语义与经典蕴涵 ⊢。

赋值编号约定: 赋值 v 的编号中第 k 位 (原子 0 为最高位) 是原子 k 的真值。
语义类 / 理论 / 上下文都用长度为 2ⁿ 的位集 (Python int) 表示其模型集合。
蕴涵是语义的 (模型集合包含)，有限语言下紧致性是平凡成立的。
"""

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, List, Optional, Tuple, Union

from .conf import get_setting
from .exceptions import (
    FormulaSyntaxError,
    LimitExceededError,
    UnknownAtomError,
    ValidationError,
)

ATOM_PATTERN = re.compile(r"[a-z_][a-z0-9_]*")
RESERVED_WORDS = frozenset({"true", "false"})
DEFAULT_ATOM_NAMES = "abcdefghijklmnop"


@lru_cache(maxsize=None)
def _atom_mask(n: int, k: int) -> int:
    """原子 k 在 n 个原子下的模型位集"""
    run = 1 << (n - 1 - k)
    block = ((1 << run) - 1) << run
    mask = 0
    for start in range(0, 1 << n, 2 * run):
        mask |= block << start
    return mask


@dataclass(frozen=True)
class AtomEnv:
    """原子环境: 有序的原子名列表"""

    names: Tuple[str, ...]

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if not names:
            raise ValidationError("Atom environment needs at least one atom")
        if len(set(names)) != len(names):
            raise ValidationError(f"Duplicate atom names: {names}")
        for name in names:
            if not ATOM_PATTERN.fullmatch(name) or name in RESERVED_WORDS:
                raise ValidationError(f"Invalid atom name: {name!r}")
        cap = get_setting("MAX_ATOMS")
        if len(names) > cap:
            raise LimitExceededError(f"{len(names)} atoms exceed the cap of {cap}")

    @classmethod
    def default(cls, n: int) -> "AtomEnv":
        """前 n 个字母命名的环境"""
        if n < 1 or n > len(DEFAULT_ATOM_NAMES):
            raise LimitExceededError(f"Cannot name {n} atoms")
        return cls(tuple(DEFAULT_ATOM_NAMES[:n]))

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def size(self) -> int:
        """赋值个数 2ⁿ"""
        return 1 << self.n

    @property
    def full(self) -> int:
        """全部赋值的位集"""
        return (1 << self.size) - 1

    @property
    def class_count(self) -> int:
        """语义类个数 2^(2ⁿ)"""
        return 1 << self.size

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownAtomError(name, 0) from None

    def atom_mask(self, k: int) -> int:
        return _atom_mask(self.n, k)

    def valuation(self, i: int) -> Tuple[bool, ...]:
        """编号 i 的赋值, 按原子顺序给出真值"""
        return tuple(bool(i >> (self.n - 1 - k) & 1) for k in range(self.n))


# ---------------------------------------------------------------- 公式 AST


class Formula:
    """公式节点基类"""

    __slots__ = ()


@dataclass(frozen=True)
class Atom(Formula):
    index: int


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bot(Formula):
    pass


@dataclass(frozen=True)
class Not(Formula):
    operand: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Imp(Formula):
    left: Formula
    right: Formula


TOP = Top()
BOT = Bot()


def conjunction(formulas: Iterable[Formula]) -> Formula:
    """左结合合取; 空序列为 ⊤"""
    result: Optional[Formula] = None
    for f in formulas:
        result = f if result is None else And(result, f)
    return TOP if result is None else result


def disjunction(formulas: Iterable[Formula]) -> Formula:
    """左结合析取; 空序列为 ⊥"""
    result: Optional[Formula] = None
    for f in formulas:
        result = f if result is None else Or(result, f)
    return BOT if result is None else result


# ---------------------------------------------------------------- 语义对象


@dataclass(frozen=True)
class SemClass:
    """语义类: 公式模 ⊢ 等价的规范表示"""

    models: int
    n: int

    @property
    def size(self) -> int:
        return 1 << self.n

    @property
    def full(self) -> int:
        return (1 << self.size) - 1

    def __and__(self, other: "SemClass") -> "SemClass":
        return SemClass(self.models & other.models, self.n)

    def __or__(self, other: "SemClass") -> "SemClass":
        return SemClass(self.models | other.models, self.n)

    def __invert__(self) -> "SemClass":
        return SemClass(self.full ^ self.models, self.n)

    def implies(self, other: "SemClass") -> "SemClass":
        return SemClass((self.full ^ self.models) | other.models, self.n)

    def entails(self, other: "SemClass") -> bool:
        return self.models & ~other.models == 0

    def valuations(self) -> List[int]:
        return [i for i in range(self.size) if self.models >> i & 1]


@dataclass(frozen=True)
class Context:
    """背景假设集合, 以其模型集合表示"""

    models: int
    env: AtomEnv

    @classmethod
    def full(cls, env: AtomEnv) -> "Context":
        """经典上下文: 全部赋值"""
        return cls(env.full, env)

    @classmethod
    def from_formulas(cls, env: AtomEnv, formulas: Iterable[Formula]) -> "Context":
        models = env.full
        for f in formulas:
            models &= models_of(f, env).models
        return cls(models, env)


@dataclass(frozen=True)
class Theory:
    """演绎闭包理论, 以模型集合表示; origin 仅用于显示"""

    models: int
    env: AtomEnv
    origin: Tuple[Formula, ...] = field(default=(), compare=False)

    @classmethod
    def from_axioms(cls, env: AtomEnv, axioms: Iterable[Formula]) -> "Theory":
        axioms = tuple(axioms)
        models = env.full
        for f in axioms:
            models &= models_of(f, env).models
        return cls(models, env, axioms)

    @classmethod
    def tautologies(cls, env: AtomEnv) -> "Theory":
        """Cn(∅)"""
        return cls(env.full, env)

    @classmethod
    def inconsistent(cls, env: AtomEnv) -> "Theory":
        return cls(0, env, (BOT,))

    @property
    def consistent(self) -> bool:
        return self.models != 0

    def entails(
        self, goal: Union[Formula, SemClass], ctx: Optional[Context] = None
    ) -> bool:
        """Theory ⊢ goal (相对于 ctx)"""
        models = self.models if ctx is None else self.models & ctx.models
        return models & ~_models(goal, self.env) == 0


def _models(x: Union[Formula, SemClass, Theory, Context, int], env: AtomEnv) -> int:
    if isinstance(x, int):
        return x
    if isinstance(x, Formula):
        return models_of(x, env).models
    return x.models


# ---------------------------------------------------------------- 解析


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    offset: int


class FormulaParser:
    """递归下降公式解析器

    优先级 ! > & > | > ->, 其中 -> 右结合; 常量 true / false。
    """

    def __init__(self, text: str, env: AtomEnv):
        self.text = text
        self.env = env
        self.tokens = self._tokenize(text)
        self.pos = 0

    def _byte_offset(self, char_pos: int) -> int:
        return len(self.text[:char_pos].encode("utf-8"))

    def _tokenize(self, text: str) -> List[_Token]:
        tokens = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            if text.startswith("->", i):
                tokens.append(_Token("->", "->", self._byte_offset(i)))
                i += 2
                continue
            if ch in "!&|()":
                tokens.append(_Token(ch, ch, self._byte_offset(i)))
                i += 1
                continue
            match = ATOM_PATTERN.match(text, i)
            if match:
                tokens.append(_Token("name", match.group(), self._byte_offset(i)))
                i = match.end()
                continue
            raise FormulaSyntaxError(f"Unexpected character {ch!r}", self._byte_offset(i))
        tokens.append(_Token("end", "", self._byte_offset(len(text))))
        return tokens

    def _peek(self) -> _Token:
        return self.tokens[self.pos]

    def _consume(self, kind: str) -> _Token:
        token = self._peek()
        if token.kind != kind:
            found = "end of input" if token.kind == "end" else repr(token.text)
            raise FormulaSyntaxError(f"Expected '{kind}' but found {found}", token.offset)
        self.pos += 1
        return token

    def parse(self) -> Formula:
        formula = self._implication()
        token = self._peek()
        if token.kind != "end":
            raise FormulaSyntaxError(f"Unexpected token {token.text!r}", token.offset)
        return formula

    def _implication(self) -> Formula:
        left = self._disjunction()
        if self._peek().kind == "->":
            self.pos += 1
            return Imp(left, self._implication())
        return left

    def _disjunction(self) -> Formula:
        result = self._conjunction()
        while self._peek().kind == "|":
            self.pos += 1
            result = Or(result, self._conjunction())
        return result

    def _conjunction(self) -> Formula:
        result = self._unary()
        while self._peek().kind == "&":
            self.pos += 1
            result = And(result, self._unary())
        return result

    def _unary(self) -> Formula:
        if self._peek().kind == "!":
            self.pos += 1
            return Not(self._unary())
        return self._primary()

    def _primary(self) -> Formula:
        token = self._peek()
        if token.kind == "(":
            self.pos += 1
            inner = self._implication()
            self._consume(")")
            return inner
        if token.kind == "name":
            self.pos += 1
            if token.text == "true":
                return TOP
            if token.text == "false":
                return BOT
            if token.text not in self.env.names:
                raise UnknownAtomError(token.text, token.offset)
            return Atom(self.env.names.index(token.text))
        found = "end of input" if token.kind == "end" else repr(token.text)
        raise FormulaSyntaxError(f"Expected a formula but found {found}", token.offset)


def parse_formula(text: str, env: AtomEnv) -> Formula:
    return FormulaParser(text, env).parse()


# ---------------------------------------------------------------- 语义


def models_of(f: Formula, env: AtomEnv) -> SemClass:
    """公式的模型位集"""
    return SemClass(_eval_mask(f, env), env.n)


def _eval_mask(f: Formula, env: AtomEnv) -> int:
    match f:
        case Atom(index):
            if not 0 <= index < env.n:
                raise ValidationError(f"Atom index {index} outside environment")
            return env.atom_mask(index)
        case Top():
            return env.full
        case Bot():
            return 0
        case Not(operand):
            return env.full ^ _eval_mask(operand, env)
        case And(left, right):
            return _eval_mask(left, env) & _eval_mask(right, env)
        case Or(left, right):
            return _eval_mask(left, env) | _eval_mask(right, env)
        case Imp(left, right):
            return (env.full ^ _eval_mask(left, env)) | _eval_mask(right, env)
    raise TypeError(f"Not a formula: {f!r}")


def evaluate(f: Formula, valuation: int, env: AtomEnv) -> bool:
    """逐赋值直接求值 (models_of 的参照实现)"""
    match f:
        case Atom(index):
            return bool(valuation >> (env.n - 1 - index) & 1)
        case Top():
            return True
        case Bot():
            return False
        case Not(operand):
            return not evaluate(operand, valuation, env)
        case And(left, right):
            return evaluate(left, valuation, env) and evaluate(right, valuation, env)
        case Or(left, right):
            return evaluate(left, valuation, env) or evaluate(right, valuation, env)
        case Imp(left, right):
            return not evaluate(left, valuation, env) or evaluate(right, valuation, env)
    raise TypeError(f"Not a formula: {f!r}")


def entails(
    ctx: Context,
    assumptions: Iterable[Union[Formula, SemClass]],
    goal: Union[Formula, SemClass],
) -> bool:
    """ctx, assumptions ⊢ goal"""
    env = ctx.env
    models = ctx.models
    for a in assumptions:
        models &= _models(a, env)
    return models & ~_models(goal, env) == 0


def check_exhaustive(env: AtomEnv, cap_name: str = "EXHAUSTIVE_MAX_ATOMS") -> None:
    cap = get_setting(cap_name)
    if env.n > cap:
        raise LimitExceededError(
            f"{env.n} atoms exceed the exhaustive limit of {cap} ({cap_name})"
        )


def enumerate_classes(env: AtomEnv) -> List[SemClass]:
    """全部 2^(2ⁿ) 个语义类, 按位模式升序"""
    check_exhaustive(env)
    return [SemClass(m, env.n) for m in range(env.class_count)]
