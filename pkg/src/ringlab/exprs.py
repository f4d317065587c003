"""Ring-expression parsing and evaluation.

Grammar (whitespace and case insensitive):

    expr := term { "x" term }
    term := "Z" INT
          | ("M" | "T" | "S") INT "(" expr ")"
          | "ex22" "(" INT ")"
          | "corner" "(" expr "," INT ")"

Product binds loosest and associates left.  parse -> print -> parse is a
fixed point, and evaluation caches built rings by canonical text.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import constructors
from .errors import ParseError
from .rings import RING_SIZE_CAP, FiniteRing

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9]*)|([(),]))")

_MATRIX_BUILDERS = {
    "M": constructors.make_matrix,
    "T": constructors.make_upper_triangular,
    "S": constructors.make_skew_triangular,
}


@dataclass(frozen=True)
class RingExprPlan:
    """Parsed form of a ring expression; a nested tuple tree.

    Nodes: ("zn", n) | ("mat", fam, k, sub) | ("ex22", p)
         | ("corner", sub, handle) | ("product", (sub, ...)).
    """

    node: tuple

    def canonical(self) -> str:
        return _print_node(self.node)

    def build(self, cap: int = RING_SIZE_CAP) -> FiniteRing:
        key = (self.canonical(), cap)
        ring = _build_cache.get(key)
        if ring is None:
            ring = _build_node(self.node, cap)
            _build_cache[key] = ring
        return ring


_build_cache: dict[tuple, FiniteRing] = {}


def _print_node(node) -> str:
    tag = node[0]
    if tag == "zn":
        return f"Z{node[1]}"
    if tag == "mat":
        return f"{node[1]}{node[2]}({_print_node(node[3])})"
    if tag == "ex22":
        return f"ex22({node[1]})"
    if tag == "corner":
        return f"corner({_print_node(node[1])},{node[2]})"
    return " x ".join(_print_node(t) for t in node[1])


def _build_node(node, cap) -> FiniteRing:
    tag = node[0]
    if tag == "zn":
        return constructors.make_zn(node[1], cap=cap)
    if tag == "mat":
        base = _build_node(node[3], cap)
        return _MATRIX_BUILDERS[node[1]](base, node[2], cap=cap)
    if tag == "ex22":
        return constructors.make_ex22(node[1], cap=cap)
    if tag == "corner":
        return constructors.make_corner(_build_node(node[1], cap), node[2], cap=cap)
    rings = [_build_node(t, cap) for t in node[1]]
    out = rings[0]
    for nxt in rings[1:]:
        out = constructors.make_product(out, nxt, cap=cap)
    return out


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.items: list[tuple[str, str, int]] = []  # (kind, value, position)
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if m is None or m.end() == pos:
                if text[pos:].strip():
                    bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
                    raise ParseError(f"unexpected character {text[bad]!r}", bad)
                break
            num, word, punct = m.groups()
            start = m.end() - len(num or word or punct)
            if num is not None:
                self.items.append(("num", num, start))
            elif word is not None:
                self.items.append(("word", word, start))
            else:
                self.items.append((punct, punct, start))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.items[self.i] if self.i < len(self.items) else ("end", "", len(self.text))

    def next(self, expect: str | None = None):
        kind, value, pos = self.peek()
        if expect is not None and kind != expect:
            raise ParseError(f"expected {expect!r}, found {value or 'end of input'!r}", pos)
        self.i += 1
        return kind, value, pos


def parse_ring_expr(text: str) -> RingExprPlan:
    if not text or not text.strip():
        raise ParseError("empty ring expression", 0)
    toks = _Tokens(text)
    node = _parse_expr(toks)
    kind, value, pos = toks.peek()
    if kind != "end":
        raise ParseError(f"trailing input starting at {value!r}", pos)
    return RingExprPlan(node)


def _parse_expr(toks) -> tuple:
    terms = [_parse_term(toks)]
    while True:
        kind, value, _ = toks.peek()
        if kind == "word" and value.lower() == "x":
            toks.next()
            terms.append(_parse_term(toks))
        else:
            break
    if len(terms) == 1:
        return terms[0]
    return ("product", tuple(terms))


def _parse_int(toks) -> int:
    _, value, _ = toks.next("num")
    return int(value)


def _parse_term(toks) -> tuple:
    kind, value, pos = toks.next()
    if kind != "word":
        raise ParseError(f"expected a constructor name, found {value or 'end of input'!r}", pos)
    word = value.lower()
    if word == "ex22":
        toks.next("(")
        p = _parse_int(toks)
        toks.next(")")
        return ("ex22", p)
    if word == "corner":
        toks.next("(")
        sub = _parse_expr(toks)
        toks.next(",")
        handle = _parse_int(toks)
        toks.next(")")
        return ("corner", sub, handle)
    m = re.fullmatch(r"([zmts])(\d*)", word)
    if m is None:
        raise ParseError(f"unknown constructor {value!r}", pos)
    head, digits = m.groups()
    n = int(digits) if digits else _parse_int(toks)
    if head == "z":
        return ("zn", n)
    fam = head.upper()
    toks.next("(")
    sub = _parse_expr(toks)
    toks.next(")")
    return ("mat", fam, n, sub)
