from __future__ import annotations

from typing import Any, Dict, Iterable, Iterator

import orjson

from .errors import InvalidSpecError

INT64_MIN = -(2 ** 63)
INT64_MAX = 2 ** 63 - 1
_DUMP_OPTS = orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS


def encode_int(value: int) -> Any:
    """Integers outside the signed 64-bit range travel as decimal strings."""
    if INT64_MIN <= value <= INT64_MAX:
        return value
    return str(value)


def decode_int(value: Any, path: str) -> int:
    if isinstance(value, bool):
        raise InvalidSpecError(f"expected an integer, got {value!r}", path=path)
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value.strip())
        except ValueError:
            pass
    raise InvalidSpecError(f"expected an integer, got {value!r}", path=path)


def wide_ints(obj: Any) -> Any:
    """Copy of a JSON-ready tree with every out-of-range integer as a decimal string."""
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, int):
        return encode_int(obj)
    if isinstance(obj, dict):
        return {k: wide_ints(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [wide_ints(v) for v in obj]
    return obj


def dumps(obj: Any) -> str:
    return orjson.dumps(wide_ints(obj), option=_DUMP_OPTS).decode("utf-8")


def _read_bytes(path: str) -> bytes:
    try:
        with open(path, "rb") as f:
            return f.read()
    except OSError as e:
        raise InvalidSpecError(f"cannot read file: {e.strerror or e}", path=path) from e


def _open_for_write(path: str):
    try:
        return open(path, "wb")
    except OSError as e:
        raise InvalidSpecError(f"cannot write file: {e.strerror or e}", path=path) from e


def read_json(path: str) -> Any:
    raw = _read_bytes(path)
    try:
        return orjson.loads(raw)
    except orjson.JSONDecodeError as e:
        raise InvalidSpecError(f"not valid JSON: {e}", path=path) from e


def write_json(path: str, obj: Any) -> None:
    with _open_for_write(path) as f:
        f.write(orjson.dumps(wide_ints(obj), option=_DUMP_OPTS))
        f.write(b"\n")


def read_jsonl(path: str) -> Iterator[Dict[str, Any]]:
    for i, line in enumerate(_read_bytes(path).splitlines()):
        if not line.strip():
            continue
        try:
            yield orjson.loads(line)
        except orjson.JSONDecodeError as e:
            raise InvalidSpecError(f"line {i + 1} is not valid JSON: {e}", path=path) from e


def write_jsonl(path: str, records: Iterable[Dict[str, Any]]) -> None:
    with _open_for_write(path) as f:
        for rec in records:
            f.write(orjson.dumps(wide_ints(rec), option=orjson.OPT_SORT_KEYS))
            f.write(b"\n")
