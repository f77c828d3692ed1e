"""Sliding-position window merging.

A window of w consecutive records is flattened into one record whose
fields carry window-relative time indices 1..w. The decision value is
taken from the record at the chosen in-window position; no condition
field is taken from that record, so the flat record holds (w-1)*m
condition values plus the single decision value. Field order is the
preceding records, then the following records, then the decision value.

Window size 1 is the degenerate instantaneous case: the original data,
with every other attribute serving as a same-time condition.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

from .dataset import AttributeSchema, DataError, EventSequence, format_cell


@dataclass(frozen=True)
class TemporalisationSpec:
    """Window geometry: size w, decision position pos, decision attribute d.

    pos-1 records precede the decision record and w-pos follow it.
    """

    w: int
    pos: int
    d: str

    def __post_init__(self) -> None:
        if self.w < 1:
            raise ValueError(f"window size must be >= 1, got {self.w}")
        if not 1 <= self.pos <= self.w:
            raise ValueError(
                f"position must be within 1..{self.w}, got {self.pos}"
            )

    @property
    def preceding(self) -> int:
        return self.pos - 1

    @property
    def following(self) -> int:
        return self.w - self.pos


def column_name(attribute: str, time: int) -> str:
    return f"{attribute}@t{time}"


@dataclass(frozen=True)
class TemporalisedDataset:
    """Flat records with time-indexed columns and one decision value each.

    `condition_columns` lists (attribute, time) pairs aligned with the
    leading fields of every record; the decision value is the last field.
    `source_schema` is kept so downstream consumers can resolve a column's
    kind and domain.
    """

    condition_columns: tuple[tuple[str, int], ...]
    decision_column: tuple[str, int]
    records: tuple[tuple[object, ...], ...]
    provenance: TemporalisationSpec
    source_schema: tuple[AttributeSchema, ...]

    @property
    def n(self) -> int:
        return len(self.records)

    @property
    def field_count(self) -> int:
        return len(self.condition_columns) + 1

    def attribute(self, name: str) -> AttributeSchema:
        for a in self.source_schema:
            if a.name == name:
                return a
        raise DataError(f"unknown attribute {name!r}")

    @property
    def decision_schema(self) -> AttributeSchema:
        return self.attribute(self.decision_column[0])

    def decision_values(self) -> list[object]:
        return [record[-1] for record in self.records]

    def to_csv(self, path: str | Path) -> None:
        """Debug dump with `attr@t<k>` headers, decision column last."""
        with open(path, "w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow(
                [column_name(a, t) for a, t in self.condition_columns]
                + [column_name(*self.decision_column)]
            )
            for record in self.records:
                writer.writerow([format_cell(v) for v in record])


def temporalised_record_count(n: int, w: int) -> int:
    """Number of flat records produced from n source records at window w."""
    if w < 1:
        raise ValueError(f"window size must be >= 1, got {w}")
    if n < w:
        raise DataError(f"sequence shorter than window: n={n}, w={w}")
    return n - w + 1


def _reject_missing(data: EventSequence) -> None:
    for i, record in enumerate(data.records):
        if any(value is None for value in record):
            raise DataError(
                f"record {i + 1} contains a missing value; "
                "records with '?' cells cannot be temporalised"
            )


def temporalise(spec: TemporalisationSpec, data: EventSequence) -> TemporalisedDataset:
    """Merge every run of w consecutive records into one flat record."""
    d_index = data.column_index(spec.d)
    temporalised_record_count(data.n, spec.w)
    _reject_missing(data)

    names = data.attribute_names
    if spec.w == 1:
        condition_columns = tuple(
            (name, 1) for name in names if name != spec.d
        )
        keep = [j for j, name in enumerate(names) if name != spec.d]
        records = tuple(
            tuple(record[j] for j in keep) + (record[d_index],)
            for record in data.records
        )
    else:
        times = [t for t in range(1, spec.w + 1) if t != spec.pos]
        condition_columns = tuple((name, t) for t in times for name in names)
        records = tuple(
            tuple(
                value
                for t in times
                for value in data.records[i + t - 1]
            )
            + (data.records[i + spec.pos - 1][d_index],)
            for i in range(data.n - spec.w + 1)
        )

    return TemporalisedDataset(
        condition_columns=condition_columns,
        decision_column=(spec.d, spec.pos),
        records=records,
        provenance=spec,
        source_schema=data.schema,
    )
