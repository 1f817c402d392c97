import random
from fractions import Fraction
from pathlib import Path

import pytest

from tamecert import Fixture, load_fixture

FIXTURES_DIR = Path(__file__).resolve().parent.parent / "fixtures"

CORPUS_NAMES = [
    "abelian_r2",
    "abelian_r4",
    "abelian_r6",
    "abelian_r8",
    "aff_r",
    "aff_r2",
    "h3_r",
    "inoue_s0",
    "iwasawa",
    "sol3_r_nonint",
    "sol4_1",
]

# fixtures that ship a verified tamed (omega, J) pair
TAMED_NAMES = ["abelian_r2", "abelian_r4", "abelian_r6", "abelian_r8", "aff_r", "aff_r2"]


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES_DIR


@pytest.fixture(scope="session")
def corpus() -> dict[str, Fixture]:
    return {name: load_fixture(FIXTURES_DIR / f"{name}.json") for name in CORPUS_NAMES}


def random_rational_vector(rng: random.Random, dim: int, span: int = 6) -> tuple[Fraction, ...]:
    return tuple(
        Fraction(rng.randint(-span, span), rng.randint(1, span)) for _ in range(dim)
    )


def rational_sampler(seed: int) -> random.Random:
    return random.Random(seed)
