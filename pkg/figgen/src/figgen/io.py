"""Parsing of the scan CSV schema."""

import csv
import math
from dataclasses import dataclass
from typing import List

HEADER = ["a", "value", "err_est", "n_evals", "converged"]


class ScanFileError(ValueError):
    pass


@dataclass(frozen=True)
class ScanRow:
    a: float
    value: float
    err_est: float
    n_evals: int
    converged: bool


@dataclass(frozen=True)
class ScanFile:
    path: str
    rows: List[ScanRow]

    @classmethod
    def load(cls, path: str) -> "ScanFile":
        try:
            with open(path, newline="") as fh:
                reader = csv.reader(fh)
                try:
                    header = next(reader)
                except StopIteration:
                    raise ScanFileError(f"{path}: empty file") from None
                if header != HEADER:
                    raise ScanFileError(f"{path}: bad header {header!r}")
                rows = []
                for lineno, rec in enumerate(reader, start=2):
                    if not rec:
                        continue
                    if len(rec) != 5:
                        raise ScanFileError(f"{path}:{lineno}: expected 5 fields")
                    try:
                        a, value, err = (float(rec[0]), float(rec[1]),
                                         float(rec[2]))
                        n_evals = int(rec[3])
                    except ValueError as exc:
                        raise ScanFileError(f"{path}:{lineno}: {exc}") from None
                    if rec[4] not in ("true", "false"):
                        raise ScanFileError(
                            f"{path}:{lineno}: bad converged flag {rec[4]!r}")
                    if not all(math.isfinite(v) for v in (a, value, err)):
                        raise ScanFileError(f"{path}:{lineno}: non-finite value")
                    rows.append(ScanRow(a, value, err, n_evals,
                                        rec[4] == "true"))
        except OSError as exc:
            raise ScanFileError(f"{path}: {exc}") from None
        if not rows:
            raise ScanFileError(f"{path}: no data rows")
        return cls(path, rows)
