"""Rating records and the response-table parser."""

from __future__ import annotations

import csv
import re
from dataclasses import dataclass
from pathlib import Path

from ..errors import CountMismatch, NonInteger, RatingOutOfRange

__all__ = ["RatingPair", "parse_ratings", "write_ratings_csv", "read_ratings_csv"]

RATING_MIN = 1
RATING_MAX = 7
RATING_BATCH_LIMIT = 30

_NUMBER_TOKEN = re.compile(r"[-+]?\d+(?:\.\d+)?")


@dataclass(frozen=True)
class RatingPair:
    opportunity_id: str
    novelty: int
    usefulness: int
    rater_tag: str
    rated_at: str

    def to_dict(self) -> dict:
        return {
            "opportunity_id": self.opportunity_id,
            "novelty": self.novelty,
            "usefulness": self.usefulness,
            "rater_tag": self.rater_tag,
            "rated_at": self.rated_at,
        }

    @staticmethod
    def from_dict(d: dict) -> "RatingPair":
        return RatingPair(
            opportunity_id=d["opportunity_id"],
            novelty=d["novelty"],
            usefulness=d["usefulness"],
            rater_tag=d.get("rater_tag", ""),
            rated_at=d.get("rated_at", ""),
        )


def _check_range(value: int) -> int:
    if not RATING_MIN <= value <= RATING_MAX:
        raise RatingOutOfRange(f"rating {value} outside {RATING_MIN}..{RATING_MAX}")
    return value


def parse_ratings(response: str, expected_n: int) -> list[tuple[int, int]]:
    """Extract exactly ``expected_n`` (novelty, usefulness) integer pairs.

    Accepts pipe tables or delimiter-separated rows; header and separator
    rows (no digits) are ignored. A row may carry a leading 1-based index.
    """
    pairs: list[tuple[int, int]] = []
    row_number = 0
    for line in (response or "").splitlines():
        tokens = _NUMBER_TOKEN.findall(line)
        if not tokens:
            continue  # header, separator or prose row
        row_number += 1
        values = []
        for tok in tokens:
            if "." in tok:
                raise NonInteger(f"non-integer rating {tok!r}")
            values.append(int(tok))
        if len(values) == 3 and values[0] == row_number:
            values = values[1:]
        if len(values) != 2:
            raise NonInteger(
                f"row {row_number} does not contain an integer pair: {line.strip()!r}"
            )
        pairs.append((_check_range(values[0]), _check_range(values[1])))
    if len(pairs) != expected_n:
        raise CountMismatch(f"expected {expected_n} rating rows, found {len(pairs)}")
    return pairs


def write_ratings_csv(path: str | Path, ratings: list[RatingPair]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(["opportunity_id", "novelty", "usefulness", "rater_tag"])
        for r in ratings:
            writer.writerow([r.opportunity_id, r.novelty, r.usefulness, r.rater_tag])


def read_ratings_csv(path: str | Path) -> list[RatingPair]:
    out = []
    with open(path, newline="", encoding="utf-8") as f:
        for row in csv.DictReader(f):
            out.append(
                RatingPair(
                    opportunity_id=row["opportunity_id"],
                    novelty=_check_range(int(row["novelty"])),
                    usefulness=_check_range(int(row["usefulness"])),
                    rater_tag=row.get("rater_tag", ""),
                    rated_at=row.get("rated_at", ""),
                )
            )
    return out
