"""公式显示模块

按语法输出公式 (最少括号)，以及语义类的最小析取范式代表元。
"""

from functools import lru_cache
from itertools import combinations
from typing import FrozenSet, List, Sequence, Tuple

from .logic import (
    BOT,
    TOP,
    And,
    Atom,
    AtomEnv,
    Bot,
    Formula,
    Imp,
    Not,
    Or,
    Top,
    conjunction,
    disjunction,
)

# 精确覆盖搜索的素蕴涵项个数上限, 超过时退回贪心
EXACT_COVER_LIMIT = 16

_PRECEDENCE = {Imp: 1, Or: 2, And: 3, Not: 4}


def _precedence(f: Formula) -> int:
    return _PRECEDENCE.get(type(f), 5)


def format_formula(f: Formula, env: AtomEnv) -> str:
    """按 ! > & > | > -> 的优先级输出, 只加必要的括号"""

    def wrap(child: Formula, minimum: int) -> str:
        text = format_formula(child, env)
        return f"({text})" if _precedence(child) < minimum else text

    match f:
        case Atom(index):
            return env.names[index]
        case Top():
            return "true"
        case Bot():
            return "false"
        case Not(operand):
            return "!" + wrap(operand, 4)
        case And(left, right):
            return f"{wrap(left, 3)} & {wrap(right, 4)}"
        case Or(left, right):
            return f"{wrap(left, 2)} | {wrap(right, 3)}"
        case Imp(left, right):
            return f"{wrap(left, 2)} -> {wrap(right, 1)}"
    raise TypeError(f"Not a formula: {f!r}")


Implicant = Tuple[int, int]  # (取值, 无关位)


def _prime_implicants(minterms: Sequence[int]) -> List[Implicant]:
    current = {(m, 0) for m in minterms}
    primes = set()
    while current:
        merged = set()
        used = set()
        items = sorted(current)
        for i, (v1, d1) in enumerate(items):
            for v2, d2 in items[i + 1:]:
                if d1 != d2:
                    continue
                diff = v1 ^ v2
                if diff & (diff - 1) == 0:
                    merged.add((v1 & ~diff, d1 | diff))
                    used.add((v1, d1))
                    used.add((v2, d2))
        primes |= current - used
        current = merged
    return sorted(primes)


def _covers(implicant: Implicant, m: int) -> bool:
    value, dc = implicant
    return m & ~dc == value


def _literal_count(implicant: Implicant, n: int) -> int:
    return n - bin(implicant[1]).count("1")


def _cover(primes: List[Implicant], minterms: Sequence[int], n: int) -> List[Implicant]:
    remaining = set(minterms)
    chosen: List[Implicant] = []
    # 必要素蕴涵项
    for m in minterms:
        covering = [p for p in primes if _covers(p, m)]
        if len(covering) == 1 and covering[0] not in chosen:
            chosen.append(covering[0])
    for p in chosen:
        remaining -= {m for m in remaining if _covers(p, m)}
    if not remaining:
        return chosen

    candidates = [p for p in primes if p not in chosen and any(_covers(p, m) for m in remaining)]
    if len(candidates) <= EXACT_COVER_LIMIT:
        for size in range(1, len(candidates) + 1):
            best = None
            for combo in combinations(candidates, size):
                if all(any(_covers(p, m) for p in combo) for m in remaining):
                    cost = sum(_literal_count(p, n) for p in combo)
                    if best is None or cost < best[0]:
                        best = (cost, combo)
            if best is not None:
                return chosen + list(best[1])

    # 贪心: 每次选覆盖剩余最多 (其次文字最少) 的项
    while remaining:
        p = max(
            candidates,
            key=lambda c: (
                sum(1 for m in remaining if _covers(c, m)),
                -_literal_count(c, n),
                tuple(-x for x in c),
            ),
        )
        chosen.append(p)
        remaining -= {m for m in remaining if _covers(p, m)}
    return chosen


def _term_formula(implicant: Implicant, n: int) -> Formula:
    value, dc = implicant
    literals = []
    for k in range(n):
        bit = 1 << (n - 1 - k)
        if dc & bit:
            continue
        literals.append(Atom(k) if value & bit else Not(Atom(k)))
    return conjunction(literals)


def _term_key(implicant: Implicant, n: int) -> Tuple[int, Tuple[int, ...]]:
    value, dc = implicant
    shape = []
    for k in range(n):
        bit = 1 << (n - 1 - k)
        shape.append(2 if dc & bit else (0 if value & bit else 1))
    return _literal_count(implicant, n), tuple(shape)


@lru_cache(maxsize=4096)
def _minimal_terms(models: int, n: int) -> Tuple[Implicant, ...]:
    minterms = [i for i in range(1 << n) if models >> i & 1]
    primes = _prime_implicants(minterms)
    terms = _cover(primes, minterms, n)
    return tuple(sorted(terms, key=lambda t: _term_key(t, n)))


def minimal_dnf(models: int, env: AtomEnv) -> Formula:
    """模型集合的最小析取范式 (确定性的代表元)"""
    if models == 0:
        return BOT
    if models == env.full:
        return TOP
    terms = _minimal_terms(models, env.n)
    return disjunction(_term_formula(t, env.n) for t in terms)


def class_label(models: int, env: AtomEnv) -> str:
    """语义类的显示文本"""
    return format_formula(minimal_dnf(models, env), env)


def format_axioms(formulas: FrozenSet[Formula] | Sequence[Formula], env: AtomEnv) -> str:
    return ", ".join(format_formula(f, env) for f in formulas)
