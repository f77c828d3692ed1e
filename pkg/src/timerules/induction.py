"""Gain-ratio decision tree induction and rule-list classification.

The learner grows a tree over a temporalised dataset: discrete columns
split multiway on their full domain (value-absent branches become leaves
carrying the node majority), numeric columns split at midpoints between
consecutive observed values. Root-to-leaf paths are extracted as rules
sharing one decision column; classification is first-match over that
list with a global default class as fallback.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from statistics import NormalDist
from typing import Mapping

from .dataset import DataError
from .temporalise import TemporalisedDataset, column_name

_GAIN_EPS = 1e-12


@dataclass(frozen=True)
class Condition:
    """One test on a time-indexed column: `= symbol` or a threshold test."""

    attribute: str
    time: int
    op: str  # "=", "<=", ">"
    value: object

    @property
    def column(self) -> str:
        return column_name(self.attribute, self.time)

    def holds(self, observed: object) -> bool:
        if self.op == "=":
            return observed == self.value
        if self.op == "<=":
            return observed <= self.value  # type: ignore[operator]
        return observed > self.value  # type: ignore[operator]

    def render(self) -> str:
        return f"{self.column}{self.op}{_format_value(self.value)}"


@dataclass(frozen=True)
class Rule:
    """A conjunction of conditions implying one decision value."""

    conditions: tuple[Condition, ...]
    decision_attribute: str
    decision_time: int
    decision_value: object

    def render(self) -> str:
        decision = (
            f"{column_name(self.decision_attribute, self.decision_time)}"
            f"={_format_value(self.decision_value)}"
        )
        if not self.conditions:
            return f"IF TRUE THEN {decision}"
        ordered = sorted(self.conditions, key=lambda c: (c.time, c.attribute))
        return "IF " + " AND ".join(c.render() for c in ordered) + f" THEN {decision}"


@dataclass(frozen=True)
class RuleSet:
    """All leaf-path rules of one induced tree, in extraction order.

    The optional tree is an equivalent fast matcher: for tree-derived
    rules exactly one rule fires per in-domain record, so traversal and
    first-match scanning agree (property-tested).
    """

    rules: tuple[Rule, ...]
    default_class: object
    decision_attribute: str
    decision_time: int
    tree: object | None = field(default=None, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not self.rules:
            raise DataError("a rule set must contain at least one rule")
        for rule in self.rules:
            if (rule.decision_attribute, rule.decision_time) != (
                self.decision_attribute,
                self.decision_time,
            ):
                raise DataError("all rules in a set must share the decision column")

    @property
    def size(self) -> int:
        return len(self.rules)

    def render(self) -> str:
        return "\n".join(rule.render() for rule in self.rules)


@dataclass(frozen=True)
class EvalResult:
    """Accuracies and size for one induced rule set."""

    training_accuracy: float
    predictive_accuracy: float | None
    rule_size: int
    test_set_size: int
    training_set_size: int


def _format_value(value: object) -> str:
    if isinstance(value, float):
        return f"{value:g}"
    return str(value)


@dataclass
class _Leaf:
    value: object


@dataclass
class _DiscreteSplit:
    attribute: str
    time: int
    branches: dict  # symbol -> node, covering the source domain


@dataclass
class _NumericSplit:
    attribute: str
    time: int
    threshold: float
    low: object
    high: object


def _entropy(counts: Counter, total: int) -> float:
    h = 0.0
    for c in counts.values():
        p = c / total
        h -= p * math.log2(p)
    return h


def _majority(counts: Counter, class_rank: dict) -> object:
    best = max(counts.values())
    return min(
        (value for value, c in counts.items() if c == best),
        key=lambda value: class_rank[value],
    )


class _TreeBuilder:
    def __init__(self, train: TemporalisedDataset, min_leaf: int):
        self.records = train.records
        self.classes = [record[-1] for record in self.records]
        self.min_leaf = min_leaf
        self.class_rank = {
            symbol: i for i, symbol in enumerate(train.decision_schema.domain or ())
        }
        # column scan order fixes gain-ratio ties: lowest (attribute, time) wins
        cols = []
        for k, (attr, time) in enumerate(train.condition_columns):
            schema = train.attribute(attr)
            cols.append((attr, time, k, schema.kind, schema.domain))
        cols.sort(key=lambda c: (c[0], c[1]))
        self.columns = cols

    def build(self, indices: list[int]):
        counts = Counter(self.classes[i] for i in indices)
        if len(counts) == 1:
            return _Leaf(next(iter(counts)))
        if len(indices) < self.min_leaf:
            return _Leaf(_majority(counts, self.class_rank))

        parent_entropy = _entropy(counts, len(indices))
        best = self._best_split(indices, counts, parent_entropy)
        if best is None:
            return _Leaf(_majority(counts, self.class_rank))

        if best["kind"] == "discrete":
            majority = _majority(counts, self.class_rank)
            branches = {}
            for symbol in best["domain"]:
                group = best["groups"].get(symbol)
                if group:
                    branches[symbol] = self.build(group)
                else:
                    branches[symbol] = _Leaf(majority)
            return _DiscreteSplit(best["attribute"], best["time"], branches)
        return _NumericSplit(
            best["attribute"],
            best["time"],
            best["threshold"],
            self.build(best["low"]),
            self.build(best["high"]),
        )

    def _best_split(self, indices, counts, parent_entropy):
        total = len(indices)
        best = None
        best_key = (-1, -math.inf)  # (positive-gain flag, gain ratio)
        for attr, time, k, kind, domain in self.columns:
            if kind == "discrete":
                groups: dict = {}
                for i in indices:
                    groups.setdefault(self.records[i][k], []).append(i)
                if len(groups) < 2:
                    continue
                children = 0.0
                split_info = 0.0
                for group in groups.values():
                    p = len(group) / total
                    children += p * _entropy(
                        Counter(self.classes[i] for i in group), len(group)
                    )
                    split_info -= p * math.log2(p)
                gain = parent_entropy - children
                ratio = gain / split_info
                key = (1 if gain > _GAIN_EPS else 0, ratio)
                if key > best_key:
                    best_key = key
                    best = {
                        "kind": "discrete",
                        "attribute": attr,
                        "time": time,
                        "groups": groups,
                        "domain": domain,
                    }
            else:
                ordered = sorted(indices, key=lambda i: self.records[i][k])
                low_counts: Counter = Counter()
                for cut in range(1, total):
                    i_prev, i_here = ordered[cut - 1], ordered[cut]
                    low_counts[self.classes[i_prev]] += 1
                    v_prev = self.records[i_prev][k]
                    v_here = self.records[i_here][k]
                    if v_prev == v_here:
                        continue
                    high_counts = counts - low_counts
                    p_low = cut / total
                    p_high = 1.0 - p_low
                    children = p_low * _entropy(low_counts, cut) + p_high * _entropy(
                        high_counts, total - cut
                    )
                    gain = parent_entropy - children
                    split_info = -(
                        p_low * math.log2(p_low) + p_high * math.log2(p_high)
                    )
                    ratio = gain / split_info
                    key = (1 if gain > _GAIN_EPS else 0, ratio)
                    if key > best_key:
                        best_key = key
                        best = {
                            "kind": "numeric",
                            "attribute": attr,
                            "time": time,
                            "threshold": (v_prev + v_here) / 2,
                            "low": ordered[:cut],
                            "high": ordered[cut:],
                        }
        return best


def _upper_error_bound(errors: int, n: int, z: float) -> float:
    p = errors / n
    denom = 1.0 + z * z / n
    center = p + z * z / (2 * n)
    margin = z * math.sqrt(p * (1.0 - p) / n + z * z / (4 * n * n))
    return (center + margin) / denom


class _Pruner:
    """Bottom-up subtree replacement by pessimistic error estimates."""

    def __init__(self, builder: _TreeBuilder, confidence: float):
        self.records = builder.records
        self.classes = builder.classes
        self.class_rank = builder.class_rank
        self.positions = {
            (attr, time): k for attr, time, k, _, _ in builder.columns
        }
        self.z = NormalDist().inv_cdf(1.0 - confidence)

    def prune(self, node, indices):
        pruned, _ = self._prune(node, indices)
        return pruned

    def _prune(self, node, indices):
        counts = Counter(self.classes[i] for i in indices)
        if isinstance(node, _Leaf):
            errors = len(indices) - counts.get(node.value, 0)
            if not indices:
                return node, 0.0
            return node, len(indices) * _upper_error_bound(errors, len(indices), self.z)

        if isinstance(node, _DiscreteSplit):
            k = self.positions[(node.attribute, node.time)]
            groups: dict = {symbol: [] for symbol in node.branches}
            for i in indices:
                groups[self.records[i][k]].append(i)
            subtree_estimate = 0.0
            new_branches = {}
            for symbol, child in node.branches.items():
                new_child, estimate = self._prune(child, groups[symbol])
                new_branches[symbol] = new_child
                subtree_estimate += estimate
            node = _DiscreteSplit(node.attribute, node.time, new_branches)
        else:
            k = self.positions[(node.attribute, node.time)]
            low = [i for i in indices if self.records[i][k] <= node.threshold]
            high = [i for i in indices if self.records[i][k] > node.threshold]
            new_low, low_estimate = self._prune(node.low, low)
            new_high, high_estimate = self._prune(node.high, high)
            subtree_estimate = low_estimate + high_estimate
            node = _NumericSplit(
                node.attribute, node.time, node.threshold, new_low, new_high
            )

        if indices:
            majority = _majority(counts, self.class_rank)
            leaf_errors = len(indices) - counts[majority]
            leaf_estimate = len(indices) * _upper_error_bound(
                leaf_errors, len(indices), self.z
            )
            if leaf_estimate <= subtree_estimate:
                return _Leaf(majority), leaf_estimate
        return node, subtree_estimate


def _extract_rules(node, path, out, decision_attribute, decision_time):
    if isinstance(node, _Leaf):
        out.append(
            Rule(tuple(path), decision_attribute, decision_time, node.value)
        )
        return
    if isinstance(node, _DiscreteSplit):
        for symbol, child in node.branches.items():
            path.append(Condition(node.attribute, node.time, "=", symbol))
            _extract_rules(child, path, out, decision_attribute, decision_time)
            path.pop()
        return
    path.append(Condition(node.attribute, node.time, "<=", node.threshold))
    _extract_rules(node.low, path, out, decision_attribute, decision_time)
    path.pop()
    path.append(Condition(node.attribute, node.time, ">", node.threshold))
    _extract_rules(node.high, path, out, decision_attribute, decision_time)
    path.pop()


def induce(
    train: TemporalisedDataset,
    min_leaf: int = 1,
    prune: bool = False,
    prune_confidence: float = 0.25,
) -> RuleSet:
    """Grow a gain-ratio tree over `train` and extract its leaf paths."""
    if train.n == 0:
        raise DataError("empty training data")
    decision = train.decision_schema
    if decision.kind != "discrete":
        raise DataError("classification requires discrete decision")
    if min_leaf < 1:
        raise ValueError(f"min_leaf must be >= 1, got {min_leaf}")

    builder = _TreeBuilder(train, min_leaf)
    indices = list(range(train.n))
    tree = builder.build(indices)
    if prune:
        tree = _Pruner(builder, prune_confidence).prune(tree, indices)

    rules: list[Rule] = []
    d, pos = train.decision_column
    _extract_rules(tree, [], rules, d, pos)
    default = _majority(Counter(builder.classes), builder.class_rank)
    return RuleSet(
        rules=tuple(rules),
        default_class=default,
        decision_attribute=d,
        decision_time=pos,
        tree=tree,
    )


def _required_columns(rule_set: RuleSet) -> set[str]:
    return {
        condition.column
        for rule in rule_set.rules
        for condition in rule.conditions
    }


def _traverse(node, lookup):
    """Follow the tree; None means the record left the covered space."""
    while not isinstance(node, _Leaf):
        value = lookup(node.attribute, node.time)
        if isinstance(node, _DiscreteSplit):
            node = node.branches.get(value)
            if node is None:
                return None
        elif value <= node.threshold:
            node = node.low
        else:
            node = node.high
    return node.value


def _first_match(rule_set: RuleSet, record: Mapping[str, object]) -> object:
    for rule in rule_set.rules:
        if all(c.holds(record[c.column]) for c in rule.conditions):
            return rule.decision_value
    return rule_set.default_class


def classify(rule_set: RuleSet, record: Mapping[str, object]) -> object:
    """Apply the first rule whose conditions all hold, else the default.

    The record maps column names like "x@t1" to values and must carry
    every column the rules test.
    """
    missing = sorted(c for c in _required_columns(rule_set) if c not in record)
    if missing:
        raise DataError(f"record is missing tested column(s): {', '.join(missing)}")
    if rule_set.tree is not None:
        result = _traverse(
            rule_set.tree, lambda a, t: record[column_name(a, t)]
        )
        return rule_set.default_class if result is None else result
    return _first_match(rule_set, record)


def evaluate(rule_set: RuleSet, data: TemporalisedDataset) -> float:
    """Fraction of records whose recorded decision the rule set reproduces."""
    if data.n == 0:
        raise DataError("cannot evaluate on an empty dataset")
    positions = {
        column_name(attr, time): k
        for k, (attr, time) in enumerate(data.condition_columns)
    }
    missing = sorted(c for c in _required_columns(rule_set) if c not in positions)
    if missing:
        raise DataError(f"dataset is missing tested column(s): {', '.join(missing)}")

    hits = 0
    if rule_set.tree is not None:
        for record in data.records:
            result = _traverse(
                rule_set.tree,
                lambda a, t, r=record: r[positions[column_name(a, t)]],
            )
            predicted = rule_set.default_class if result is None else result
            hits += predicted == record[-1]
    else:
        names = [column_name(attr, time) for attr, time in data.condition_columns]
        for record in data.records:
            mapping = dict(zip(names, record))
            hits += _first_match(rule_set, mapping) == record[-1]
    return hits / data.n
