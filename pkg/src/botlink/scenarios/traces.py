"""CSV trace output.

One file per record kind, fixed column order, newline-terminated rows.
Floats are written with repr-stable %.9g formatting and rows within one
timestamp are ordered by (subject, emission order), so a repeated run of
the same scenario produces byte-identical files.
"""

from __future__ import annotations

import csv
from pathlib import Path
from typing import IO, Iterable, Mapping

from botlink.timebase import format_float

KIND_COLUMNS: dict[str, tuple[str, ...]] = {
    "pose": ("t_ns", "subject", "x", "y", "theta", "v", "w"),
    "rssi": ("t_ns", "subject", "rssi_dbm", "ap", "x", "y"),
    "assoc": (
        "t_ns",
        "subject",
        "from_state",
        "to_state",
        "from_ap",
        "to_ap",
        "reason",
        "x",
    ),
    "packet": (
        "t_ns",
        "subject",
        "packet_id",
        "dst",
        "size_bytes",
        "status",
        "sent_ns",
        "observed_delay_ns",
        "reason",
    ),
    "control": ("t_ns", "subject", "theta", "theta_dot", "x", "x_dot", "force"),
}


def _render(value: object) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, int):
        return str(value)
    if value is None:
        return ""
    return str(value)


class TraceSink:
    """Writes enabled trace kinds under out_dir as <kind>.csv."""

    def __init__(self, out_dir: str | Path, kinds: Iterable[str] | None = None) -> None:
        selected = tuple(kinds) if kinds is not None else tuple(KIND_COLUMNS)
        unknown = [k for k in selected if k not in KIND_COLUMNS]
        if unknown:
            raise ValueError(f"unknown trace kinds: {unknown}")
        self.out_dir = Path(out_dir)
        self.out_dir.mkdir(parents=True, exist_ok=True)
        self._files: dict[str, IO[str]] = {}
        self._writers: dict[str, csv.writer] = {}
        self._pending: dict[str, tuple[int, list[tuple[str, int, list[str]]]]] = {}
        for kind in selected:
            fh = open(self.out_dir / f"{kind}.csv", "w", newline="")
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(KIND_COLUMNS[kind])
            self._files[kind] = fh
            self._writers[kind] = writer

    def emit(self, kind: str, t_ns: int, subject: str, fields: Mapping[str, object]) -> None:
        writer = self._writers.get(kind)
        if writer is None:
            return
        columns = KIND_COLUMNS[kind]
        row = [str(t_ns), subject] + [_render(fields[c]) for c in columns[2:]]
        buffered = self._pending.get(kind)
        if buffered is not None and buffered[0] != t_ns:
            self._flush_kind(kind)
            buffered = None
        if buffered is None:
            self._pending[kind] = (t_ns, [])
        bucket = self._pending[kind][1]
        bucket.append((subject, len(bucket), row))

    def _flush_kind(self, kind: str) -> None:
        buffered = self._pending.pop(kind, None)
        if buffered is None:
            return
        _, rows = buffered
        rows.sort(key=lambda r: (r[0], r[1]))
        for _, _, row in rows:
            self._writers[kind].writerow(row)

    def flush(self) -> None:
        for kind in list(self._pending):
            self._flush_kind(kind)
        for fh in self._files.values():
            fh.flush()

    def close(self) -> None:
        self.flush()
        for fh in self._files.values():
            fh.close()
        self._files.clear()
        self._writers.clear()

    def __enter__(self) -> "TraceSink":
        return self

    def __exit__(self, *exc: object) -> None:
        self.close()


def read_trace(path: str | Path) -> list[dict[str, str]]:
    """Load one trace CSV as a list of column->text dicts."""
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))
