"""Synthetic sequences with known temporal structure.

The robot walk has a deterministic forward relation (next position
follows from current position and chosen action) and an ambiguous
backward one; the periodic series is perfectly predictable in both
directions, so forward and backward tests tie.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .dataset import AttributeSchema, EventSequence

ACTIONS = ("L", "R", "U", "D")


@dataclass(frozen=True)
class RobotWorldConfig:
    """A bounded board random walk: dimensions, length, and seed."""

    width: int = 8
    height: int = 8
    steps: int = 3000
    seed: int = 0

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise ValueError("board dimensions must be at least 1x1")
        if self.steps < 1:
            raise ValueError(f"steps must be >= 1, got {self.steps}")


def generate_robot_walk(config: RobotWorldConfig) -> EventSequence:
    """Random walk on a 1-indexed board, recorded as (x, y, a) per step.

    Each record holds the position before the step's uniformly chosen
    action takes effect; moves that would leave the board leave the
    position unchanged. The next x is therefore a function of the current
    (x, a), and likewise for y.
    """
    rng = random.Random(config.seed)
    x = rng.randint(1, config.width)
    y = rng.randint(1, config.height)
    rows = []
    for _ in range(config.steps):
        action = ACTIONS[rng.randrange(len(ACTIONS))]
        rows.append((str(x), str(y), action))
        if action == "L":
            x = max(1, x - 1)
        elif action == "R":
            x = min(config.width, x + 1)
        elif action == "U":
            y = max(1, y - 1)
        else:
            y = min(config.height, y + 1)
    return _discrete_sequence(("x", "y", "a"), rows)


def generate_periodic(period: int, steps: int) -> EventSequence:
    """A single attribute cycling 0..period-1, equally predictable both ways."""
    if period < 2:
        raise ValueError(f"period must be >= 2, got {period}")
    if steps < period:
        raise ValueError(f"steps must cover one full period, got {steps} < {period}")
    rows = [(str(i % period),) for i in range(steps)]
    return _discrete_sequence(("x",), rows)


def _discrete_sequence(
    names: tuple[str, ...], rows: list[tuple[str, ...]]
) -> EventSequence:
    schema = []
    for j, name in enumerate(names):
        domain = tuple(dict.fromkeys(row[j] for row in rows))
        schema.append(AttributeSchema(name, "discrete", domain))
    return EventSequence(schema=tuple(schema), records=tuple(rows))
