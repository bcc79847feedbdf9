"""Plant files: a sectioned key = value format with a small expression grammar.

Example::

    # Anantharam's plant over Z[sqrt(-5)]
    [ring]
    kind = quadratic

    [plant]
    m = 1
    n = 1
    N = 1 + s
    D = 2

Matrices are written row-major with ``,`` between entries and ``;`` between
rows; a value may continue on following indented lines.  Expressions use
integers, variables, ``+ - * /``, ``^`` with a nonnegative integer exponent and
parentheses.  ``s`` denotes sqrt(-5) in the quadratic ring.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .matrices import FractionElement, Matrix, det
from .plant import DEFAULT_MAX_SIZE, Plant, PlantError, SizeLimitExceeded, plant_from_right_fraction
from .rings import Ideal, RingElement, RingKind, RingSpec


class ParseError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


# expressions --------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


@dataclass
class _Tok:
    kind: str  # "num", "id", "op", "end"
    text: str
    col: int


def _tokenize(text: str, line: Optional[int], col0: int) -> List[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        num, ident, op = m.groups()
        start = m.start(m.lastindex)
        col = col0 + start
        if num is not None:
            toks.append(_Tok("num", num, col))
        elif ident is not None:
            toks.append(_Tok("id", ident, col))
        elif op in "+-*/^()":
            toks.append(_Tok("op", op, col))
        else:
            raise ParseError(f"unexpected character {op!r}", line, col)
        pos = m.end()
    toks.append(_Tok("end", "", col0 + len(text.rstrip())))
    return toks


class _ExprParser:
    def __init__(self, spec: RingSpec, text: str, line: Optional[int], col0: int):
        self.spec = spec
        self.line = line
        self.toks = _tokenize(text, line, col0)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg: str, tok: Optional[_Tok] = None):
        tok = tok or self.peek()
        return ParseError(msg, self.line, tok.col)

    def parse(self) -> FractionElement:
        if self.peek().kind == "end":
            raise self.error("empty expression")
        value = self.expr()
        if self.peek().kind != "end":
            raise self.error(f"unexpected {self.peek().text!r}")
        return value

    def expr(self) -> FractionElement:
        value = self.term()
        while self.peek().text in ("+", "-") and self.peek().kind == "op":
            op = self.take().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> FractionElement:
        value = self.unary()
        while self.peek().text in ("*", "/") and self.peek().kind == "op":
            tok = self.take()
            rhs = self.unary()
            if tok.text == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise self.error("division by zero", tok)
                value = value / rhs
        return value

    def unary(self) -> FractionElement:
        tok = self.peek()
        if tok.kind == "op" and tok.text in ("+", "-"):
            self.take()
            value = self.unary()
            return -value if tok.text == "-" else value
        return self.power()

    def power(self) -> FractionElement:
        base = self.atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.take()
            tok = self.peek()
            if tok.kind != "num":
                raise self.error("exponent must be a nonnegative integer")
            self.take()
            k = int(tok.text)
            out = FractionElement(self.spec.one())
            for _ in range(k):
                out = out * base
            return out
        return base

    def atom(self) -> FractionElement:
        tok = self.take()
        if tok.kind == "num":
            return FractionElement(self.spec.from_int(int(tok.text)))
        if tok.kind == "id":
            return FractionElement(self._symbol(tok))
        if tok.kind == "op" and tok.text == "(":
            value = self.expr()
            close = self.take()
            if close.text != ")":
                raise self.error("expected ')'", close)
            return value
        if tok.kind == "end":
            prev = self.toks[self.i - 2] if self.i >= 2 else None
            if prev is not None and prev.kind == "op" and prev.text != ")":
                raise self.error(f"dangling operator {prev.text!r}", prev)
            raise self.error("unexpected end of expression", tok)
        raise self.error(f"unexpected {tok.text!r}", tok)

    def _symbol(self, tok: _Tok) -> RingElement:
        spec = self.spec
        if spec.kind is RingKind.QUADRATIC and tok.text == "s":
            return spec.quad(0, 1)
        if spec.is_polynomial and tok.text in spec.variables:
            return spec.var(tok.text)
        raise self.error(f"unknown variable {tok.text!r}", tok)


def parse_fraction(spec: RingSpec, text: str, line: Optional[int] = None, col: int = 1) -> FractionElement:
    return _ExprParser(spec, text, line, col).parse()


def parse_element(spec: RingSpec, text: str, line: Optional[int] = None, col: int = 1) -> RingElement:
    f = parse_fraction(spec, text, line, col)
    x = f.to_ring()
    if x is None:
        raise ParseError(f"{text.strip()!r} is not an element of {spec}", line, col)
    return x


# sectioned file ----------------------------------------------------------------------


@dataclass
class _Value:
    pieces: List[Tuple[int, int, str]]  # (line, column, text)

    @property
    def line(self) -> int:
        return self.pieces[0][0]

    @property
    def text(self) -> str:
        return " ".join(t for _, _, t in self.pieces).strip()

    @property
    def column(self) -> int:
        return self.pieces[0][1]


def _strip_comment(line: str) -> str:
    i = line.find("#")
    return line if i < 0 else line[:i]


def read_sections(text: str) -> Dict[str, Dict[str, _Value]]:
    sections: Dict[str, Dict[str, _Value]] = {}
    current: Optional[Dict[str, _Value]] = None
    last: Optional[_Value] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).rstrip()
        if not line.strip():
            continue
        if line[0] in " \t" and last is not None:
            col = len(line) - len(line.lstrip()) + 1
            last.pieces.append((lineno, col, line.strip()))
            continue
        stripped = line.strip()
        if stripped.startswith("["):
            if not stripped.endswith("]"):
                raise ParseError("unterminated section header", lineno, len(line))
            name = stripped[1:-1].strip().lower()
            if name in sections:
                raise ParseError(f"duplicate section [{name}]", lineno, 1)
            current = sections[name] = {}
            last = None
            continue
        if current is None:
            raise ParseError("key outside of any section", lineno, 1)
        if "=" not in line:
            raise ParseError("expected 'key = value'", lineno, 1)
        raw_key, _, value = line.partition("=")
        key = raw_key.strip()
        if key in current:
            raise ParseError(f"duplicate key {key!r}", lineno, 1)
        # 1-based column of the first value character
        col = len(raw_key) + 2 + (len(value) - len(value.lstrip()))
        last = current[key] = _Value([(lineno, col, value.strip())])
    return sections


def _split_list(value: _Value, sep: str):
    """Split a value on ``sep`` keeping (line, column, text) for every item."""
    items: List[List[Tuple[int, int, str]]] = [[]]
    for line, col, text in value.pieces:
        start = 0
        for i, ch in enumerate(text):
            if ch == sep:
                items[-1].append((line, col + start, text[start:i]))
                items.append([])
                start = i + 1
        items[-1].append((line, col + start, text[start:]))
    out = []
    for item in items:
        parts = [(l, c, t) for l, c, t in item if t.strip()]
        out.append(_Value(parts) if parts else None)
    return out


def _entry_position(v: _Value) -> Tuple[int, int]:
    line, col, text = v.pieces[0]
    return line, col + (len(text) - len(text.lstrip()))


def _locate(v: _Value, offset: int) -> Tuple[int, int]:
    """(line, column) of a 0-based offset into ``v.text``."""
    pos = 0
    for i, (line, col, text) in enumerate(v.pieces):
        if i == 0:
            lead = len(text) - len(text.lstrip())
            text, col = text.lstrip(), col + lead
        if offset <= pos + len(text):
            return line, col + offset - pos
        pos += len(text) + 1
    line, col, text = v.pieces[-1]
    return line, col + len(text)


def _parse_matrix(spec: RingSpec, value: _Value, name: str, in_ring: bool):
    rows = []
    for row in _split_list(value, ";"):
        if row is None:
            raise ParseError(f"empty row in {name}", value.line, value.column)
        entries = []
        for item in _split_list(row, ","):
            if item is None:
                raise ParseError(f"empty entry in {name}", row.line, row.column)
            line, col = _entry_position(item)
            parse = parse_element if in_ring else parse_fraction
            try:
                entries.append(parse(spec, item.text, line, col))
            except ParseError as exc:
                if exc.column is None or len(item.pieces) == 1:
                    raise
                # the entry continues over several lines: report the real position
                raise ParseError(exc.message, *_locate(item, exc.column - col)) from None
        rows.append(entries)
    if any(len(r) != len(rows[0]) for r in rows):
        raise ParseError(f"rows of {name} have different lengths", value.line, value.column)
    return Matrix(spec, rows)


@dataclass
class PlantFile:
    spec: RingSpec
    plant: Plant
    controller: Optional[Matrix] = None


def _require(section: Dict[str, _Value], key: str, name: str) -> _Value:
    if key not in section:
        raise ParseError(f"missing key {key!r} in [{name}]")
    return section[key]


def _parse_ring(sections) -> RingSpec:
    if "ring" not in sections:
        raise ParseError("missing [ring] section")
    sec = sections["ring"]
    kind_v = _require(sec, "kind", "ring")
    kind = kind_v.text.lower()
    try:
        rk = RingKind(kind)
    except ValueError:
        choices = ", ".join(k.value for k in RingKind)
        raise ParseError(f"unknown ring kind {kind!r} (expected one of {choices})", kind_v.line)
    names: Tuple[str, ...] = ()
    if "variables" in sec:
        names = tuple(t.strip() for t in sec["variables"].text.split(",") if t.strip())
        for nm in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", nm):
                raise ParseError(f"bad variable name {nm!r}", sec["variables"].line)
    try:
        if rk is RingKind.POLYNOMIAL:
            return RingSpec.polynomial(*names)
        if rk is RingKind.CUSPIDAL:
            return RingSpec.cuspidal()
        if names:
            raise ParseError(f"ring kind {kind} takes no variables", sec["variables"].line)
        return RingSpec(rk)
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc), kind_v.line)


def parse_plant_file(text: str, max_size: int = DEFAULT_MAX_SIZE) -> PlantFile:
    sections = read_sections(text)
    unknown = set(sections) - {"ring", "plant", "causality", "controller"}
    if unknown:
        raise ParseError(f"unknown section [{sorted(unknown)[0]}]")
    spec = _parse_ring(sections)
    if "plant" not in sections:
        raise ParseError("missing [plant] section")
    sec = sections["plant"]
    N = _parse_matrix(spec, _require(sec, "N", "plant"), "N", True)
    Dv = _require(sec, "D", "plant")
    D = _parse_matrix(spec, Dv, "D", True)
    for key, actual in (("m", N.ncols), ("n", N.nrows)):
        if key in sec:
            v = sec[key]
            try:
                declared = int(v.text)
            except ValueError:
                raise ParseError(f"{key} must be an integer", v.line, v.column)
            if declared != actual:
                raise ParseError(f"{key} = {declared} but N is {N.nrows}x{N.ncols}", v.line, v.column)
    if D.shape != (N.ncols, N.ncols):
        raise ParseError(f"D must be {N.ncols}x{N.ncols}, got {D.nrows}x{D.ncols}", Dv.line)
    if det(D).is_zero():
        raise ParseError("denominator matrix D is singular", Dv.line)
    Z = None
    if "causality" in sections:
        zv = _require(sections["causality"], "Z", "causality")
        gens = []
        for item in _split_list(zv, ","):
            if item is None:
                raise ParseError("empty generator in Z", zv.line, zv.column)
            line, col = _entry_position(item)
            gens.append(parse_element(spec, item.text, line, col))
        Z = Ideal(spec, gens)
    try:
        plant = plant_from_right_fraction(N, D, Z, max_size=max_size)
    except SizeLimitExceeded:
        raise
    except PlantError as exc:
        raise ParseError(str(exc)) from exc
    C = None
    if "controller" in sections:
        cv = _require(sections["controller"], "C", "controller")
        C = _parse_matrix(spec, cv, "C", False)
        if C.shape != (plant.m, plant.n):
            raise ParseError(f"C must be {plant.m}x{plant.n}, got {C.nrows}x{C.ncols}", cv.line)
    return PlantFile(spec, plant, C)


def load_plant_file(path: str, max_size: int = DEFAULT_MAX_SIZE) -> PlantFile:
    with open(path, encoding="utf-8") as fh:
        return parse_plant_file(fh.read(), max_size=max_size)
