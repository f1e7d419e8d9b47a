"""Text file formats shared by the command-line tools.

Coefficient, point, and value files carry one quaternion literal per line
(index order 0, 1, 2, ...); blank lines are skipped.  Pole files hold real
numbers, parsed as quaternion literals that must have no imaginary part.
"""

from __future__ import annotations

from .errors import ParseError
from .quaternion import Quaternion, format_quaternion, parse_quaternion


def parse_quaternion_lines(text: str, origin: str = "<input>") -> list[Quaternion]:
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.strip()
        if not body:
            continue
        try:
            out.append(parse_quaternion(body))
        except ParseError as err:
            raise ParseError(f"{origin}:{lineno}: {err.args[0]}") from None
    return out


def read_quaternion_file(path: str) -> list[Quaternion]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_quaternion_lines(fh.read(), origin=path)


def read_reals_file(path: str) -> list[float]:
    values = []
    for lineno, q in enumerate(read_quaternion_file(path), start=1):
        if q.im_i != 0.0 or q.im_j != 0.0 or q.im_k != 0.0:
            raise ParseError(f"{path}: line {lineno} must be a real number")
        values.append(q.re)
    return values


def format_quaternion_lines(qs, digits: int = 17) -> str:
    return "".join(format_quaternion(q, digits=digits) + "\n" for q in qs)
