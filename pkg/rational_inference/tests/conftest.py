from pathlib import Path

import pytest

from rational_inference.defaults import parse_default_base
from rational_inference.logic import AtomEnv, parse_formula
from rational_inference.orderings import RationalOrdering

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture
def env1():
    return AtomEnv.default(1)


@pytest.fixture
def env2():
    return AtomEnv.default(2)


@pytest.fixture
def env3():
    return AtomEnv.default(3)


@pytest.fixture
def parse():
    def _parse(text, env):
        return parse_formula(text, env)

    return _parse


@pytest.fixture
def base_path():
    return DATA_DIR / "priorities.db"


@pytest.fixture
def priority_base(base_path):
    """A₁ = {a→b}, A₂ = {¬b}, A₃ = {b→c}"""
    return parse_default_base(base_path.read_text(encoding="utf-8"))


@pytest.fixture
def three_level(env1):
    """{⊥:0, ¬a:0, a:1, ⊤:2}"""
    return RationalOrdering.from_mapping(env1, {0: 0, 1: 0, 2: 1, 3: 2})
