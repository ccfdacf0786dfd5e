from __future__ import annotations

import random
import sys
from pathlib import Path

import pytest

from lpalg import QQ, LeavittAlgebra, PrimeField
from lpalg.textio import load_quiver, parse_expr

QUIVER_DIR = Path(__file__).resolve().parent.parent / "quivers"
GF = PrimeField(32003)


def quiver_path(name: str) -> Path:
    return QUIVER_DIR / f"{name}.quiver"


def leavitt(name: str, field=QQ) -> LeavittAlgebra:
    return LeavittAlgebra(load_quiver(quiver_path(name)), field)


def random_free_word(q, rng: random.Random, max_len: int):
    """A random composable word in the double quiver, not normalized."""
    letters = q.letters()
    v = rng.choice(q.vertices)
    n = rng.randint(0, max_len)
    out = []
    for _ in range(n):
        choices = [l for l in letters if q.source(l) == v]
        if not choices:
            break
        l = rng.choice(choices)
        out.append(l)
        v = q.target(l)
    if out:
        return q.word(out)
    return q.word([], v)


@pytest.fixture
def a2():
    return leavitt("a2")


@pytest.fixture
def rose2():
    return leavitt("rose2")


@pytest.fixture
def loop():
    return leavitt("loop")


def ex(alg, src: str):
    """Parse and normalize."""
    return alg.normal_form(parse_expr(src, alg.free))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
