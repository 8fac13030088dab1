"""Edit script parser.

One operation per line, positions 1-based against the text as it stands
when the line is applied:

    I <pos> <hex>          insert the bytes spelled in hex (e.g. ``6162``)
    I <pos> "<string>"     insert the UTF-8 bytes of a quoted string
    D <pos> <len>          delete len bytes starting at pos
    # ...                  comment

Blank lines are ignored. A one-byte insertion becomes an insert_char op.
"""

import logging
import shlex
from collections.abc import Iterator
from pathlib import Path

from src.index.edits import EditOp
from src.utils.errors import ScriptParseError

logger = logging.getLogger(__name__)


def _parse_int(token: str, line_number: int, what: str) -> int:
    try:
        value = int(token)
    except ValueError as e:
        raise ScriptParseError(line_number, f"{what} must be an integer, got {token!r}") from e
    if value < 1:
        raise ScriptParseError(line_number, f"{what} must be positive, got {value}")
    return value


def _parse_payload(raw: str, line_number: int) -> bytes:
    raw = raw.strip()
    if raw[:1] in {'"', "'"}:
        try:
            parts = shlex.split(raw)
        except ValueError as e:
            raise ScriptParseError(line_number, f"bad quoted string: {e}") from e
        if len(parts) != 1:
            raise ScriptParseError(line_number, f"expected one quoted string, got {raw!r}")
        return parts[0].encode("utf-8")
    try:
        return bytes.fromhex(raw)
    except ValueError as e:
        raise ScriptParseError(line_number, f"payload is neither hex nor quoted: {raw!r}") from e


def parse_line(line: str, line_number: int) -> EditOp | None:
    """Parse one script line; None for blank and comment lines.

    Raises:
        ScriptParseError: If the line is malformed
    """
    stripped = line.strip()
    if not stripped or stripped.startswith("#"):
        return None
    fields = stripped.split(maxsplit=2)
    verb = fields[0].upper()
    if verb == "I":
        if len(fields) != 3:
            raise ScriptParseError(line_number, "insertion needs a position and a payload")
        payload = _parse_payload(fields[2], line_number)
        if not payload:
            raise ScriptParseError(line_number, "insertion payload is empty")
        i = _parse_int(fields[1], line_number, "position")
        if len(payload) == 1:
            return EditOp.insert_char(i, payload)
        return EditOp.insert_string(i, payload)
    if verb == "D":
        if len(fields) != 3:
            raise ScriptParseError(line_number, "deletion needs a position and a length")
        return EditOp.delete(
            _parse_int(fields[1], line_number, "position"),
            _parse_int(fields[2], line_number, "length"),
        )
    raise ScriptParseError(line_number, f"unknown operation {fields[0]!r}")


def iter_script(text: str) -> Iterator[tuple[int, EditOp]]:
    """Yield (line number, op) for every operation line."""
    for line_number, line in enumerate(text.splitlines(), start=1):
        op = parse_line(line, line_number)
        if op is not None:
            yield line_number, op


def parse_script(text: str) -> list[EditOp]:
    """Parse a whole script up front, so a bad line fails before any edit."""
    ops = [op for _, op in iter_script(text)]
    logger.debug(f"Parsed {len(ops)} edit operations")
    return ops


def load_script(path: Path | str) -> list[EditOp]:
    return parse_script(Path(path).read_text(encoding="utf-8"))
