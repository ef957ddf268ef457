"""Shared fixtures: model files, random generators, boolean CTL reference."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product
from pathlib import Path

from gpoctl import FuzzyMatrix, FuzzyVector, Gpks, load_model

MODELS_DIR = Path(__file__).resolve().parent.parent / "models"

GRID3 = (Fraction(0), Fraction(1, 2), Fraction(1))
GRID5 = (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1))


def load_fixture(name: str) -> Gpks:
    return load_model((MODELS_DIR / f"{name}.json").read_text())


def degrees(vec) -> tuple[Fraction, ...]:
    return tuple(vec)


def fractions(*values) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in values)


def make_gpks(rows, init=None, labels=None, states=None) -> Gpks:
    """Build a structure from raw grids; labels maps prop -> per-state values."""
    n = len(rows)
    state_names = tuple(states) if states else tuple(f"q{i}" for i in range(n))
    labels = labels or {}
    return Gpks(
        states=state_names,
        transitions=FuzzyMatrix.of(rows),
        init=FuzzyVector.of(init if init is not None else [1] * n),
        props=tuple(labels),
        labels=tuple(FuzzyVector.of(v) for v in labels.values()),
    )


def random_matrix(rng: random.Random, n: int, values=GRID5) -> FuzzyMatrix:
    return FuzzyMatrix(
        tuple(tuple(rng.choice(values) for _ in range(n)) for _ in range(n))
    )


def random_normal_matrix(rng: random.Random, n: int, values=GRID5) -> FuzzyMatrix:
    rows = [[rng.choice(values) for _ in range(n)] for _ in range(n)]
    for row in rows:
        row[rng.randrange(n)] = Fraction(1)
    return FuzzyMatrix(tuple(tuple(row) for row in rows))


def random_nonnormal_matrix(rng: random.Random, n: int, values=GRID5) -> FuzzyMatrix:
    below_one = tuple(v for v in values if v != 1)
    rows = [[rng.choice(values) for _ in range(n)] for _ in range(n)]
    weak = rng.randrange(n)
    rows[weak] = [rng.choice(below_one) for _ in range(n)]
    return FuzzyMatrix(tuple(tuple(row) for row in rows))


def random_gpks(rng: random.Random, n: int | None = None, values=GRID5,
                props=("a", "b")) -> Gpks:
    n = n or rng.choice((2, 3, 4))
    return Gpks(
        states=tuple(f"q{i}" for i in range(n)),
        transitions=random_matrix(rng, n, values),
        init=FuzzyVector(tuple(rng.choice(values) for _ in range(n))),
        props=tuple(props),
        labels=tuple(
            FuzzyVector(tuple(rng.choice(values) for _ in range(n))) for _ in props
        ),
    )


def random_crisp_pks(rng: random.Random, n: int | None = None, props=("a", "b")) -> Gpks:
    """Normal transition rows and initial distribution, {0,1} everywhere."""
    n = n or rng.choice((2, 3, 4))
    zero_one = (Fraction(0), Fraction(1))
    rows = [[rng.choice(zero_one) for _ in range(n)] for _ in range(n)]
    for row in rows:
        row[rng.randrange(n)] = Fraction(1)
    init = [rng.choice(zero_one) for _ in range(n)]
    init[rng.randrange(n)] = Fraction(1)
    return Gpks(
        states=tuple(f"q{i}" for i in range(n)),
        transitions=FuzzyMatrix(tuple(tuple(row) for row in rows)),
        init=FuzzyVector(tuple(init)),
        props=tuple(props),
        labels=tuple(
            FuzzyVector(tuple(rng.choice(zero_one) for _ in range(n))) for _ in props
        ),
    )


def exhaustive_two_state_models():
    """Every 2-state transition matrix over {0, 1/2, 1} crossed with every
    labelling of one proposition; the second proposition is its complement."""
    one = Fraction(1)
    for p in product(GRID3, repeat=4):
        matrix = FuzzyMatrix(((p[0], p[1]), (p[2], p[3])))
        for la in product(GRID3, repeat=2):
            yield Gpks(
                states=("u", "v"),
                transitions=matrix,
                init=FuzzyVector((one, Fraction(1, 2))),
                props=("a", "b"),
                labels=(
                    FuzzyVector(la),
                    FuzzyVector((one - la[0], one - la[1])),
                ),
            )


def operator_battery(n_states: int, a: str = "a", b: str = "b") -> list[str]:
    """Every core path operator at depth 1 plus depth-2 nestings and sugar."""
    return [
        f"Po[X {a}]",
        f"Po[X ({a} & {b})]",
        f"Po[{a} U {b}]",
        f"Po[{a} U<=0 {b}]",
        f"Po[{a} U<=1 {b}]",
        f"Po[{a} U<={n_states} {b}]",
        f"Po[G {a}]",
        f"Po[G<=1 {a}]",
        f"Po[F {b}]",
        f"Po[X Po[{a} U {b}]]",
        f"Po[{a} U Po[G {b}]]",
        f"Po[G Po[X {a}]]",
        f"Ne[X {a}]",
        f"Ne[{a} U {b}]",
        f"Ne[{a} U<=1 {b}]",
        f"Ne[G {a}]",
        f"Ne[F {a}]",
        f"!Po[G {a}] & Po[X {b}]",
        f"{a} | !{b}",
    ]


# -- boolean CTL reference for crisp structures ------------------------------

def crisp_successors(m: Gpks) -> list[set[int]]:
    one = Fraction(1)
    return [
        {j for j in range(m.dim) if m.transitions.entry(i, j) == one}
        for i in range(m.dim)
    ]


def crisp_states(vec) -> set[int]:
    one = Fraction(1)
    return {i for i, v in enumerate(vec) if v == one}


def ex_set(succ: list[set[int]], target: set[int]) -> set[int]:
    return {i for i in range(len(succ)) if succ[i] & target}


def eu_set(succ: list[set[int]], hold: set[int], goal: set[int]) -> set[int]:
    reached = set(goal)
    while True:
        grown = reached | {i for i in hold if succ[i] & reached}
        if grown == reached:
            return reached
        reached = grown


def bounded_eu_set(
    succ: list[set[int]], hold: set[int], goal: set[int], bound: int
) -> set[int]:
    reached = set(goal)
    for _ in range(bound):
        grown = reached | {i for i in hold if succ[i] & reached}
        if grown == reached:
            break
        reached = grown
    return reached


def eg_set(succ: list[set[int]], hold: set[int]) -> set[int]:
    core = set(hold)
    while True:
        trimmed = {i for i in core if succ[i] & core}
        if trimmed == core:
            return core
        core = trimmed
