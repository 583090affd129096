"""
Payload loading and validation.

Payloads are JSON objects checked against the schema shipped for their
command; schema violations name the offending field path.
"""

import json
import logging
from functools import cache
from pathlib import Path

from jsonschema import Draft202012Validator

from freiheit.algebra import Mat2
from freiheit.errors import FreiheitError
from freiheit.models.groups import GroupDescriptor
from freiheit.models.hyperbolic import MoebiusNumeric, UHPoint
from freiheit.models.words import FreeWord

logger = logging.getLogger(__name__)

SCHEMA_DIR = Path(__file__).parent / "schemas"


class PayloadError(FreiheitError):
    """Input does not match the command's schema."""

    def __init__(self, message: str, path: str = "$"):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.detail = message


def _render_path(parts) -> str:
    path = "$"
    for part in parts:
        path += f"[{part}]" if isinstance(part, int) else f".{part}"
    return path


@cache
def load_schema(command: str) -> dict:
    schema_file = SCHEMA_DIR / f"{command}.json"
    if not schema_file.exists():
        raise PayloadError(f"No schema shipped for command '{command}'")
    with open(schema_file) as f:
        return json.load(f)


def validate(command: str, payload) -> None:
    """
    Validate a payload against the command schema.

    Raises:
        PayloadError: With the path of the first violation, in document order
    """
    validator = Draft202012Validator(load_schema(command))
    errors = sorted(validator.iter_errors(payload), key=lambda e: list(map(str, e.absolute_path)))
    if errors:
        error = errors[0]
        raise PayloadError(error.message, _render_path(error.absolute_path))


def read_json(text: str, source: str = "input"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise PayloadError(f"Malformed JSON in {source}: {e.msg} (line {e.lineno})") from e


def matrices(payload: dict, key: str = "matrices") -> list[MoebiusNumeric]:
    result = []
    for i, rows in enumerate(payload.get(key, [])):
        try:
            result.append(MoebiusNumeric.from_dict(rows))
        except (TypeError, ValueError) as e:
            raise PayloadError(str(e), f"$.{key}[{i}]") from e
    return result


def exact_matrices(payload: dict, key: str = "generators") -> list[Mat2]:
    result = []
    for i, rows in enumerate(payload.get(key, [])):
        try:
            result.append(Mat2.parse(rows))
        except ValueError as e:
            raise PayloadError(str(e), f"$.{key}[{i}]") from e
    return result


def words(payload: dict, key: str = "words") -> list[FreeWord]:
    result = []
    for i, text in enumerate(payload.get(key, [])):
        try:
            result.append(FreeWord.parse(text))
        except ValueError as e:
            raise PayloadError(str(e), f"$.{key}[{i}]") from e
    return result


def group(payload: dict, key: str = "group") -> GroupDescriptor:
    try:
        return GroupDescriptor.from_dict(payload[key])
    except (TypeError, ValueError) as e:
        raise PayloadError(str(e), f"$.{key}") from e


def basepoint(payload: dict, key: str = "basepoint") -> UHPoint:
    if key not in payload:
        return UHPoint.j()
    try:
        return UHPoint.from_dict(payload[key])
    except (TypeError, ValueError) as e:
        raise PayloadError(str(e), f"$.{key}") from e


def generator_indices(values) -> list[int]:
    """Generators given as indices or letters ("b" is 1)."""
    result = []
    for value in values:
        if isinstance(value, int):
            result.append(value)
        else:
            result.append(FreeWord.parse(value).max_generator())
    return result
