"""Shared report emission: deterministic JSON and RFC-4180 CSV."""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Any, Iterable, Sequence


def json_dumps(obj: Any) -> str:
    """Serialize with stable key ordering so identical runs emit identical bytes."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def write_json(path: str | Path, obj: Any) -> None:
    Path(path).write_text(json_dumps(obj), encoding="utf-8")


def write_csv(path: str | Path, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    """Write a CSV table with a header row; quoting follows RFC 4180."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow(row)
