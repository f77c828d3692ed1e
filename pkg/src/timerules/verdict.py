"""Window/position sweep, confidence intervals, and the final verdict.

One run evaluates the instantaneous rule set plus every (w, pos) in the
requested window range, buckets the outcomes by the actual temporal kind
of their rules, and lets the best representatives compete: overlapping
accuracy intervals favour the conceptually simpler kind (when it is also
no larger), disjoint intervals favour raw accuracy.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from statistics import NormalDist
from typing import Mapping, Sequence

from .dataset import DataError, EventSequence, as_discrete, split_chronological
from .induction import EvalResult, evaluate, induce
from .semantics import (
    RelationKind,
    classify_rule_set,
    declared_kind,
    is_simpler,
    simplicity_rank,
)
from .temporalise import TemporalisationSpec, temporalise

PREFERENCES = ("higher_accuracy", "simpler_method")
ACCURACY_MODES = ("predictive", "training")
INTERVAL_METHODS = ("normal", "wilson")

COMPETING_KINDS = (
    RelationKind.INSTANTANEOUS,
    RelationKind.ACAUSAL,
    RelationKind.P_CAUSAL,
)


@dataclass(frozen=True)
class RunSpec:
    """Everything one analysis run needs besides the data itself."""

    d: str
    alpha: int = 2
    beta: int = 5
    ac_th: float = 0.5
    cl: float = 0.90
    preference: str = "higher_accuracy"
    test_count: int = 0
    accuracy_mode: str = "predictive"
    interval_method: str = "normal"

    def __post_init__(self) -> None:
        if not 0 < self.alpha <= self.beta:
            raise ValueError(
                f"window range must satisfy 0 < alpha <= beta, got {self.alpha}..{self.beta}"
            )
        if not 0.0 <= self.ac_th <= 1.0:
            raise ValueError(f"accuracy threshold must lie in [0, 1], got {self.ac_th}")
        if not 0.0 < self.cl < 1.0:
            raise ValueError(f"confidence level must lie in (0, 1), got {self.cl}")
        if self.preference not in PREFERENCES:
            raise ValueError(f"preference must be one of {PREFERENCES}")
        if self.test_count < 0:
            raise ValueError(f"test_count must be non-negative, got {self.test_count}")
        if self.accuracy_mode not in ACCURACY_MODES:
            raise ValueError(f"accuracy_mode must be one of {ACCURACY_MODES}")
        if self.interval_method not in INTERVAL_METHODS:
            raise ValueError(f"interval_method must be one of {INTERVAL_METHODS}")


@dataclass(frozen=True)
class AccuracyInterval:
    """A two-sided confidence interval around an observed accuracy."""

    center: float
    lo: float
    hi: float
    n: int
    cl: float

    def overlaps(self, other: "AccuracyInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def render(self) -> str:
        return f"[{self.lo * 100:.1f}%, {self.hi * 100:.1f}%]"


def compute_accuracy_interval(
    accuracy: float, n: int, cl: float, method: str = "normal"
) -> AccuracyInterval:
    """Confidence interval for an accuracy measured on n records.

    The default is the normal-approximation binomial interval clamped to
    [0, 1]; "wilson" selects the Wilson score interval instead.
    """
    if n < 1:
        raise DataError(f"interval requires a positive evaluation count, got {n}")
    if not 0.0 <= accuracy <= 1.0:
        raise ValueError(f"accuracy must lie in [0, 1], got {accuracy}")
    if not 0.0 < cl < 1.0:
        raise ValueError(f"confidence level must lie in (0, 1), got {cl}")
    if method not in INTERVAL_METHODS:
        raise ValueError(f"interval method must be one of {INTERVAL_METHODS}")
    z = NormalDist().inv_cdf((1.0 + cl) / 2.0)
    if method == "normal":
        half = z * math.sqrt(accuracy * (1.0 - accuracy) / n)
        lo, hi = accuracy - half, accuracy + half
    else:
        denom = 1.0 + z * z / n
        center = (accuracy + z * z / (2 * n)) / denom
        margin = (z / denom) * math.sqrt(
            accuracy * (1.0 - accuracy) / n + z * z / (4 * n * n)
        )
        lo, hi = center - margin, center + margin
    return AccuracyInterval(
        center=accuracy, lo=max(0.0, lo), hi=min(1.0, hi), n=n, cl=cl
    )


@dataclass(frozen=True)
class TestOutcome:
    """One (w, pos) experiment with its declared and actual rule kinds."""

    w: int
    pos: int
    declared_kind: RelationKind
    actual_kind: RelationKind
    eval: EvalResult

    def accuracy(self, mode: str) -> float:
        if mode == "predictive" and self.eval.predictive_accuracy is not None:
            return self.eval.predictive_accuracy
        return self.eval.training_accuracy

    def evaluation_count(self, mode: str) -> int:
        if mode == "predictive" and self.eval.predictive_accuracy is not None:
            return self.eval.test_set_size
        return self.eval.training_set_size


@dataclass(frozen=True)
class Candidate:
    """One relation kind's best showing, ready for the selection step."""

    kind: RelationKind
    accuracy: float
    rule_size: int
    interval: AccuracyInterval


@dataclass(frozen=True)
class SelectionStep:
    challenger: RelationKind
    overlap: bool
    took_over: bool
    winner_after: RelationKind


@dataclass(frozen=True)
class Selection:
    winner: RelationKind
    order: tuple[RelationKind, ...]
    steps: tuple[SelectionStep, ...]


def select_relation(candidates: Sequence[Candidate], preference: str) -> Selection:
    """Pick the winning relation kind among the competing candidates.

    Candidates are visited in accuracy order (ascending when the caller
    prefers accuracy, descending when they prefer simplicity; accuracy
    ties visit the less simple kind first so the order of the inputs
    never matters). A challenger takes the win either by being simpler
    and no larger while its interval overlaps the current winner's, or by
    plain higher accuracy when the intervals are disjoint.
    """
    if preference not in PREFERENCES:
        raise ValueError(f"preference must be one of {PREFERENCES}")
    if not candidates:
        raise DataError("relation selection needs at least one candidate")
    sign = 1.0 if preference == "higher_accuracy" else -1.0
    ordered = sorted(
        candidates, key=lambda c: (sign * c.accuracy, -simplicity_rank(c.kind))
    )
    winner = ordered[0]
    steps = []
    for challenger in ordered[1:]:
        overlap = challenger.interval.overlaps(winner.interval)
        took_over = False
        if overlap:
            if (
                is_simpler(challenger.kind, winner.kind)
                and challenger.rule_size <= winner.rule_size
            ):
                winner = challenger
                took_over = True
        elif challenger.accuracy > winner.accuracy:
            winner = challenger
            took_over = True
        steps.append(
            SelectionStep(
                challenger=challenger.kind,
                overlap=overlap,
                took_over=took_over,
                winner_after=winner.kind,
            )
        )
    return Selection(
        winner=winner.kind,
        order=tuple(c.kind for c in ordered),
        steps=tuple(steps),
    )


def relation_type(
    cl: float,
    instantaneous: tuple[float, int, int],
    acausal: tuple[float, int, int],
    p_causal: tuple[float, int, int],
    preference: str = "higher_accuracy",
    interval_method: str = "normal",
) -> RelationKind:
    """Select among three (accuracy, rule_size, n) outcomes at level cl."""
    candidates = [
        Candidate(kind, ac, size, compute_accuracy_interval(ac, n, cl, interval_method))
        for kind, (ac, size, n) in zip(
            COMPETING_KINDS, (instantaneous, acausal, p_causal)
        )
    ]
    return select_relation(candidates, preference).winner


def rule_generator_run_count(alpha: int, beta: int) -> int:
    """How many rule-generator invocations a full sweep performs."""
    if not 0 < alpha <= beta:
        raise ValueError(
            f"window range must satisfy 0 < alpha <= beta, got {alpha}..{beta}"
        )
    return 1 + (beta * (beta + 1) - (alpha - 1) * alpha) // 2


NO_VERDICT = "no-verdict"


@dataclass(frozen=True)
class VerdictReport:
    """Everything one run produced: outcomes, best per kind, final call."""

    d: str
    spec: RunSpec
    outcomes: tuple[TestOutcome, ...]
    best: Mapping[RelationKind, TestOutcome | None]
    intervals: Mapping[RelationKind, AccuracyInterval | None]
    final: str
    generator_runs: int
    selection: Selection | None = field(default=None, compare=False)

    @property
    def verdict_line(self) -> str:
        if self.final == NO_VERDICT:
            return "No verdict"
        return f"for attribute {self.d}, the relation is {self.final}"

    def render_text(self) -> str:
        def pct(value: float | None) -> str:
            if value is None:
                return "-"
            return f"{round(value * 100, 1):g}%"

        header = ("Win", "Pos", "T Acc", "P Acc", "Type of test", "Actual rules")
        rows = [header]
        for outcome in self.outcomes:
            rows.append(
                (
                    str(outcome.w),
                    str(outcome.pos),
                    pct(outcome.eval.training_accuracy),
                    pct(outcome.eval.predictive_accuracy),
                    str(outcome.declared_kind),
                    str(outcome.actual_kind),
                )
            )
        widths = [max(len(row[i]) for row in rows) for i in range(len(header))]
        lines = [
            "  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip()
            for row in rows
        ]
        lines.append("")
        for kind in COMPETING_KINDS:
            outcome = self.best.get(kind)
            if outcome is None:
                lines.append(f"best {kind}: no qualifying rule set")
                continue
            interval = self.intervals[kind]
            lines.append(
                f"best {kind}: {pct(outcome.accuracy(self.spec.accuracy_mode))}"
                f" (w={outcome.w}, pos={outcome.pos},"
                f" {outcome.eval.rule_size} rules,"
                f" interval {interval.render() if interval else '-'})"
            )
        lines.append("")
        lines.append(self.verdict_line)
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "decision_attribute": self.d,
            "spec": {
                "alpha": self.spec.alpha,
                "beta": self.spec.beta,
                "ac_th": self.spec.ac_th,
                "cl": self.spec.cl,
                "preference": self.spec.preference,
                "test_count": self.spec.test_count,
                "accuracy_mode": self.spec.accuracy_mode,
                "interval_method": self.spec.interval_method,
            },
            "outcomes": [
                {
                    "w": o.w,
                    "pos": o.pos,
                    "training_accuracy": o.eval.training_accuracy,
                    "predictive_accuracy": o.eval.predictive_accuracy,
                    "rule_size": o.eval.rule_size,
                    "declared": str(o.declared_kind),
                    "actual": str(o.actual_kind),
                }
                for o in self.outcomes
            ],
            "best": {
                str(kind): (
                    None
                    if self.best.get(kind) is None
                    else {
                        "w": self.best[kind].w,
                        "pos": self.best[kind].pos,
                        "accuracy": self.best[kind].accuracy(self.spec.accuracy_mode),
                        "rule_size": self.best[kind].eval.rule_size,
                        "interval": (
                            None
                            if self.intervals.get(kind) is None
                            else {
                                "lo": self.intervals[kind].lo,
                                "hi": self.intervals[kind].hi,
                                "n": self.intervals[kind].n,
                            }
                        ),
                    }
                )
                for kind in COMPETING_KINDS
            },
            "generator_runs": self.generator_runs,
            "final": self.final,
            "verdict_line": self.verdict_line,
        }


def _run_single(
    train: EventSequence, test: EventSequence, d: str, w: int, pos: int
) -> TestOutcome:
    spec = TemporalisationSpec(w=w, pos=pos, d=d)
    train_set = temporalise(spec, train)
    rule_set = induce(train_set)
    training_accuracy = evaluate(rule_set, train_set)
    predictive_accuracy = None
    test_size = 0
    if test.n >= w:
        test_set = temporalise(spec, test)
        predictive_accuracy = evaluate(rule_set, test_set)
        test_size = test_set.n
    declared = declared_kind(w, pos)
    if any(rule.conditions for rule in rule_set.rules):
        actual = classify_rule_set(rule_set)
    else:
        # a bare majority rule carries no temporal evidence either way
        actual = declared
    return TestOutcome(
        w=w,
        pos=pos,
        declared_kind=declared,
        actual_kind=actual,
        eval=EvalResult(
            training_accuracy=training_accuracy,
            predictive_accuracy=predictive_accuracy,
            rule_size=rule_set.size,
            test_set_size=test_size,
            training_set_size=train_set.n,
        ),
    )


def _run_job(args: tuple) -> tuple[tuple[int, int], TestOutcome]:
    train, test, d, w, pos = args
    return (w, pos), _run_single(train, test, d, w, pos)


def run_timers(spec: RunSpec, data: EventSequence, workers: int = 1) -> VerdictReport:
    """Sweep the window range over `data` and render a verdict for spec.d.

    The decision attribute's values are treated as class labels; numeric
    columns are relabelled accordingly before the sweep. The sweep is
    deterministic regardless of worker count.
    """
    data.attribute(spec.d)
    data = as_discrete(data, spec.d)
    train, test = split_chronological(data, spec.test_count)
    if spec.beta >= train.n:
        raise DataError(
            f"window range up to {spec.beta} needs more than {train.n} training records"
        )

    jobs = [(train, test, spec.d, 1, 1)]
    jobs += [
        (train, test, spec.d, w, pos)
        for w in range(spec.alpha, spec.beta + 1)
        for pos in range(1, w + 1)
    ]

    generator_runs = 0
    outcomes: dict[tuple[int, int], TestOutcome] = {}
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(_run_job, jobs))
    else:
        results = [_run_job(job) for job in jobs]
    for key, outcome in results:
        generator_runs += 1
        outcomes.setdefault(key, outcome)

    ordered = tuple(outcomes[key] for key in sorted(outcomes))
    mode = spec.accuracy_mode
    best: dict[RelationKind, TestOutcome | None] = {}
    for kind in COMPETING_KINDS:
        bucket = [o for o in ordered if o.actual_kind == kind]
        best[kind] = min(
            bucket,
            key=lambda o: (-o.accuracy(mode), o.eval.rule_size, o.w, o.pos),
            default=None,
        )

    present = [kind for kind in COMPETING_KINDS if best[kind] is not None]
    intervals: dict[RelationKind, AccuracyInterval | None] = {
        kind: None for kind in COMPETING_KINDS
    }
    for kind in present:
        outcome = best[kind]
        intervals[kind] = compute_accuracy_interval(
            outcome.accuracy(mode),
            outcome.evaluation_count(mode),
            spec.cl,
            spec.interval_method,
        )

    selection = None
    if max(best[kind].accuracy(mode) for kind in present) < spec.ac_th:
        final = NO_VERDICT
    else:
        candidates = [
            Candidate(
                kind=kind,
                accuracy=best[kind].accuracy(mode),
                rule_size=best[kind].eval.rule_size,
                interval=intervals[kind],
            )
            for kind in present
        ]
        selection = select_relation(candidates, spec.preference)
        final = str(selection.winner)

    return VerdictReport(
        d=spec.d,
        spec=spec,
        outcomes=ordered,
        best=best,
        intervals=intervals,
        final=final,
        generator_runs=generator_runs,
        selection=selection,
    )
