"""Temporal character of rule sets: instantaneous, p-causal, acausal, mixed.

A rule set is judged by where its condition times sit relative to the
decision time t0: all at t0 (instantaneous), all strictly before
(p-causal), none at t0 with at least one after (acausal), anything else
mixed. Conceptual simplicity orders the first three:
instantaneous < acausal < p-causal.
"""

from __future__ import annotations

from enum import Enum

from .dataset import DataError
from .induction import RuleSet


class RelationKind(Enum):
    INSTANTANEOUS = "instantaneous"
    P_CAUSAL = "p-causal"
    ACAUSAL = "acausal"
    MIXED = "mixed"

    def __str__(self) -> str:
        return self.value


_SIMPLICITY_RANK = {
    RelationKind.INSTANTANEOUS: 0,
    RelationKind.ACAUSAL: 1,
    RelationKind.P_CAUSAL: 2,
}


def simplicity_rank(kind: RelationKind) -> int:
    """Position in the simplicity order; mixed kinds have no rank."""
    try:
        return _SIMPLICITY_RANK[kind]
    except KeyError:
        raise ValueError(f"{kind} has no place in the simplicity order") from None


def is_simpler(left: RelationKind, right: RelationKind) -> bool:
    return simplicity_rank(left) < simplicity_rank(right)


def declared_kind(w: int, pos: int) -> RelationKind:
    """The relation kind a (w, pos) test is set up to probe."""
    if w == 1:
        return RelationKind.INSTANTANEOUS
    if pos == w:
        return RelationKind.P_CAUSAL
    return RelationKind.ACAUSAL


def classify_rule_set(rule_set: RuleSet) -> RelationKind:
    """Judge a rule set by its condition times relative to the decision time.

    Rules with no conditions carry no temporal evidence and are ignored;
    a set with no conditioned rule at all cannot be judged.
    """
    t0 = rule_set.decision_time
    conditioned = [rule for rule in rule_set.rules if rule.conditions]
    if not conditioned:
        raise DataError("unclassifiable: no conditions")
    times = [c.time for rule in conditioned for c in rule.conditions]
    if all(t == t0 for t in times):
        return RelationKind.INSTANTANEOUS
    if all(t < t0 for t in times):
        return RelationKind.P_CAUSAL
    if all(t != t0 for t in times) and any(t > t0 for t in times):
        return RelationKind.ACAUSAL
    return RelationKind.MIXED


def reclassify_outcome(declared: RelationKind, rule_set: RuleSet) -> RelationKind:
    """The "actual rules" kind reported beside a test's declared kind.

    A test aimed at one kind can produce rules of a simpler temporal
    shape (for example a retrodiction test whose rules only ever use
    earlier records); the verdict competition uses this actual kind.
    """
    del declared  # the declared kind does not constrain the answer
    return classify_rule_set(rule_set)
