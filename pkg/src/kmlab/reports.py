"""Report records and serialization shared by the CLI and the suites."""

from __future__ import annotations

import json
from dataclasses import dataclass

from kmlab.gcm import GeneralizedCartanMatrix
from kmlab.nilpotency import DegreeReport, SweepSummary

SCHEMA_VERSION = 1
TOOL_VERSION = "0.1.0"

CSV_COLUMNS = ("word", "length", "invset_size", "degree", "max_chain", "witness")


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one verification suite on one matrix."""

    check: str
    gcm: dict
    params: dict
    counterexample: dict | None
    scanned_count: int
    undecided_count: int = 0
    notes: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return self.counterexample is None

    def to_json(self) -> str:
        payload = {
            "check": self.check,
            "gcm": self.gcm,
            "params": self.params,
            "counterexample": self.counterexample,
            "scanned_count": self.scanned_count,
        }
        if self.undecided_count:
            payload["undecided_count"] = self.undecided_count
        if self.notes:
            payload["notes"] = list(self.notes)
        return json.dumps(payload, sort_keys=True, indent=2)


def gcm_summary(A: GeneralizedCartanMatrix) -> dict:
    return {"name": A.name, "hash": A.hash()}


def _word_str(word) -> str:
    return ",".join(str(s) for s in word)


def _witness_json(report: DegreeReport) -> str:
    return json.dumps(
        [list(t.root) for t in report.witness.terms], separators=(",", ":")
    )


def sweep_csv_lines(reports) -> list[str]:
    """Semicolon-separated sweep rows, one per element, plus header."""
    lines = [";".join(CSV_COLUMNS)]
    for rep in reports:
        lines.append(
            ";".join(
                (
                    _word_str(rep.word),
                    str(rep.length),
                    str(rep.invset_size),
                    str(rep.degree),
                    str(rep.max_chain),
                    _witness_json(rep),
                )
            )
        )
    return lines


def sweep_json_lines(reports, A: GeneralizedCartanMatrix) -> list[str]:
    """One JSON record per element, schema-versioned."""
    out = []
    for rep in reports:
        out.append(
            json.dumps(
                {
                    "schema": SCHEMA_VERSION,
                    "version": TOOL_VERSION,
                    "gcm_hash": A.hash(),
                    "word": list(rep.word),
                    "length": rep.length,
                    "invset_size": rep.invset_size,
                    "degree": rep.degree,
                    "max_chain": rep.max_chain,
                    "witness": [list(t.root) for t in rep.witness.terms],
                },
                sort_keys=True,
                separators=(",", ":"),
            )
        )
    return out


def summary_json(summary: SweepSummary, A: GeneralizedCartanMatrix) -> str:
    return json.dumps(
        {
            "schema": SCHEMA_VERSION,
            "version": TOOL_VERSION,
            "gcm": gcm_summary(A),
            "max_length": summary.max_length,
            "count": summary.count,
            "per_length_max": list(summary.per_length_max),
            "global_max": summary.global_max,
            "plateau": summary.plateau,
        },
        sort_keys=True,
        indent=2,
    )
