import os
from fractions import Fraction

from lib.errors import MalformedLines
from lib.line_config import ProjLine


def _rational(token, line_number):
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise MalformedLines(f"not a rational number: {token!r}", line=line_number)


def parse_line(text, line_number=0):
    """One record: `P x y z D dx dy dz` or `INF a b c`."""
    tokens = text.split()
    if tokens[0] == "INF" and len(tokens) == 4:
        return ProjLine.at_infinity([_rational(t, line_number) for t in tokens[1:]])
    if len(tokens) == 8 and tokens[0] == "P" and tokens[4] == "D":
        point = [_rational(t, line_number) for t in tokens[1:4]]
        direction = [_rational(t, line_number) for t in tokens[5:8]]
        if not any(direction):
            raise MalformedLines("direction must be nonzero", line=line_number)
        return ProjLine.affine(point, direction)
    raise MalformedLines("expected `P x y z D dx dy dz` or `INF a b c`", line=line_number, text=text)


def parse_lines(text):
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        raw = raw.split("#", 1)[0].strip()
        if not raw:
            continue
        lines.append(parse_line(raw, number))
    return lines


def read_lines_file(path):
    if not os.path.exists(path):
        raise MalformedLines("lines file not found", path=path)
    with open(path, "r", encoding="utf-8") as f:
        return parse_lines(f.read())


def format_line(line):
    if line.is_at_infinity:
        return "INF " + " ".join(str(v) for v in line.normal())
    point, direction = line.affine_form()
    return "P {} D {}".format(" ".join(str(v) for v in point), " ".join(str(v) for v in direction))


def write_lines_file(path, lines):
    with open(path, "w", encoding="utf-8") as f:
        for line in lines:
            f.write(format_line(line) + "\n")
