"""Exceptions shared across the file-format parsers."""

from __future__ import annotations


class ParseError(ValueError):
    """A malformed ``.qtt``/``.qbc``/table-dump file; carries the 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)
