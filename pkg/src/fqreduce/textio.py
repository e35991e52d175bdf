"""Line format ``q=<prime> f=<c0>,<c1>,...,<cn>`` (ascending decimal coefficients)."""
from __future__ import annotations

import re

from .errors import ParseError
from .field import PrimeField
from .poly import Factorization, Poly

_LINE = re.compile(r"^\s*q\s*=\s*(\d+)\s+f\s*=\s*([0-9,\s]+?)\s*(?:\^\s*(\d+))?\s*$")


def format_poly(f: Poly, mult: int = 1) -> str:
    body = ",".join(str(c) for c in f.coeffs()) or "0"
    return f"q={f.p} f={body}" + (f"^{mult}" if mult > 1 else "")


def parse_line(line: str, with_mult: bool = False):
    """Parse one line; returns a Poly, or (Poly, multiplicity) when with_mult."""
    m = _LINE.match(line)
    if not m:
        raise ParseError(f"cannot parse {line.strip()!r}")
    try:
        field = PrimeField(int(m.group(1)))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    raw = [t.strip() for t in m.group(2).split(",")]
    if not raw or any(not t for t in raw):
        raise ParseError("empty coefficient")
    coeffs = [int(t) for t in raw]
    if any(c >= field.p for c in coeffs):
        raise ParseError(f"coefficient not reduced mod {field.p}")
    if coeffs[-1] == 0:
        raise ParseError("leading coefficient is zero")
    f = Poly(field, coeffs)
    mult = int(m.group(3)) if m.group(3) else 1
    if m.group(3) and not with_mult:
        raise ParseError("unexpected multiplicity suffix")
    return (f, mult) if with_mult else f


def parse_poly(text: str) -> Poly:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) != 1:
        raise ParseError(f"expected one polynomial line, got {len(lines)}")
    return parse_line(lines[0])


def format_factorization(fac: Factorization) -> str:
    return "\n".join(format_poly(g, e) for g, e in fac)
