"""Curated store of known van der Waerden numbers with provenance.

Ground truth for the bound checks and the oracle the search results are
reconciled against. The bundled seed file carries the six classical
values the report tooling reproduces; search results are appended with
their own provenance token and never silently overwrite stored values.
"""

from __future__ import annotations

import csv
import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

SOURCES = ("paper-table1", "literature", "computed-by-search")
_HEADER = ["r", "k", "w", "source", "note"]

ENV_REGISTRY = "VDW_REGISTRY"


class RegistryError(ValueError):
    """Malformed registry file or invariant-violating record."""


@dataclass(frozen=True)
class VdwRecord:
    r: int
    k: int
    w: int
    source: str
    note: str = ""

    def __post_init__(self) -> None:
        if self.r < 2:
            raise RegistryError(f"record ({self.r},{self.k}): r must be >= 2")
        if self.k < 1:
            raise RegistryError(f"record ({self.r},{self.k}): k must be >= 1")
        if self.w < 1:
            raise RegistryError(f"record ({self.r},{self.k}): w must be >= 1")
        if self.source not in SOURCES:
            raise RegistryError(
                f"record ({self.r},{self.k}): source {self.source!r} not one of {SOURCES}"
            )
        if self.k >= 3 and self.w <= max(self.r, self.k):
            raise RegistryError(
                f"record ({self.r},{self.k}): w={self.w} must exceed max(r, k)"
            )


class Registry:
    """Ordered collection of records, unique per (r, k)."""

    def __init__(self, records: tuple[VdwRecord, ...] | list[VdwRecord] = ()):
        self._records: list[VdwRecord] = []
        self._index: dict[tuple[int, int], VdwRecord] = {}
        for rec in records:
            self.add(rec)

    def add(self, rec: VdwRecord) -> None:
        key = (rec.r, rec.k)
        if key in self._index:
            raise RegistryError(f"duplicate record for (r={rec.r}, k={rec.k})")
        self._index[key] = rec
        self._records.append(rec)

    def lookup(self, r: int, k: int) -> VdwRecord | None:
        return self._index.get((r, k))

    def __iter__(self):
        return iter(self._records)

    def __len__(self) -> int:
        return len(self._records)

    @classmethod
    def load(cls, path: str | Path) -> "Registry":
        """Parse a registry CSV; empty files give an empty registry."""
        reg = cls()
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header is None:
                return reg
            if header != _HEADER:
                raise RegistryError(
                    f"{path}: line 1: expected header {','.join(_HEADER)}"
                )
            for row in reader:
                if not row:
                    continue
                line = reader.line_num
                if len(row) != 5:
                    raise RegistryError(f"{path}: line {line}: expected 5 fields, got {len(row)}")
                try:
                    r, k, w = int(row[0]), int(row[1]), int(row[2])
                except ValueError as exc:
                    raise RegistryError(f"{path}: line {line}: {exc}") from None
                try:
                    reg.add(VdwRecord(r, k, w, row[3], row[4]))
                except RegistryError as exc:
                    raise RegistryError(f"{path}: line {line}: {exc}") from None
        return reg

    def save(self, path: str | Path) -> None:
        """Write the canonical form: header, LF endings, decimal integers."""
        with open(path, "w", newline="", encoding="utf-8") as fh:
            fh.write(self.to_csv())

    def to_csv(self) -> str:
        import io

        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(_HEADER)
        for rec in self._records:
            writer.writerow([rec.r, rec.k, rec.w, rec.source, rec.note])
        return buf.getvalue()


def bundled_registry_path() -> Path:
    return Path(str(resources.files("vdwlab").joinpath("data/table1.csv")))


def default_registry_path() -> Path:
    """Bundled seed file unless the VDW_REGISTRY environment variable points
    elsewhere; an explicit CLI flag overrides both."""
    env = os.environ.get(ENV_REGISTRY)
    if env:
        return Path(env)
    return bundled_registry_path()


def load_default() -> Registry:
    return Registry.load(default_registry_path())


def reconcile(record: VdwRecord, outcome) -> bool:
    """True iff a completed search agrees with the stored value.

    A mismatch is a finding, not an error; callers decide how loudly to
    fail. Key mismatches and incomplete outcomes are errors.
    """
    if outcome.w_value is None:
        raise ValueError("search outcome carries no W value to reconcile")
    if (record.r, record.k) != (outcome.r, outcome.k):
        raise ValueError(
            f"key mismatch: record ({record.r},{record.k}) vs outcome ({outcome.r},{outcome.k})"
        )
    return record.w == outcome.w_value
