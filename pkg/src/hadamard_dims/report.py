"""Machine-readable command reports (JSON) and their published schema."""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Any

SCHEMA_ID = "hadamard-dims/report/v1"


def load_schema() -> dict:
    text = (resources.files("hadamard_dims") / "schema" / "report-v1.json").read_text(encoding="utf-8")
    return json.loads(text)


def validate(report: dict) -> None:
    import jsonschema

    jsonschema.validate(report, load_schema())


def make_report(
    command: str,
    seed: int,
    prime: int | None,
    prime_bits: int,
    inputs: list[dict],
    verdict: str,
    result: dict,
    trials: list[dict] | None = None,
) -> dict[str, Any]:
    return {
        "schema": SCHEMA_ID,
        "command": command,
        "seed": seed,
        "prime": prime,
        "prime_bits": prime_bits,
        "inputs": inputs,
        "trials": trials or [],
        "verdict": verdict,
        "result": result,
    }


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def write(report: dict, path: str | Path) -> None:
    Path(path).write_text(dumps(report), encoding="utf-8")
