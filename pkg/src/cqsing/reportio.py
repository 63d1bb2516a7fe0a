"""Parsing of germ polynomials, report serialization, and SVG rendering.

The germ grammar is two-variable polynomials over the rationals:

    expr    := ['-'] term (('+'|'-') term)*
    term    := factor (('*')? factor)*          adjacency multiplies
    factor  := atom ('^' integer)?
    atom    := number | 'x' | 'y' | '(' expr ')'
    number  := integer ('/' integer)?

Parenthesized products are expanded exactly; coefficients are Fractions.
Serialization never emits floats: rationals travel as {"num":..,"den":..}
pairs in JSON and as "num/den" strings in CSV.  SVG output is
byte-deterministic: fixed ordering, fixed 3-decimal coordinate
formatting, no timestamps.
"""

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidInputError
from .germs import GermSupport
from .lattice import ClassLattice


@dataclass(frozen=True)
class ParsedGerm:
    """A parsed quasi-invariant polynomial: support, class, coefficients."""

    support: GermSupport
    k: int
    coefficients: dict


class _Parser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def error(self, msg):
        raise InvalidInputError(f"syntax error at position {self.pos}: {msg}")

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def parse(self):
        poly = self.expr()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return poly

    def expr(self):
        sign = 1
        if self.peek() == "-":
            self.pos += 1
            sign = -1
        poly = _scale(self.term(), sign)
        while self.peek() and self.peek() in "+-":
            op = self.peek()
            self.pos += 1
            rhs = self.term()
            poly = _add(poly, _scale(rhs, -1 if op == "-" else 1))
        return poly

    def term(self):
        poly = self.factor()
        while True:
            c = self.peek()
            if c == "*":
                self.pos += 1
                poly = _mul(poly, self.factor())
            elif c and (c in "xy(" or c.isdigit()):
                poly = _mul(poly, self.factor())
            else:
                return poly

    def factor(self):
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            e = self.integer()
            out = {(0, 0): Fraction(1)}
            for _ in range(e):
                out = _mul(out, base)
            return out
        return base

    def atom(self):
        c = self.peek()
        if c == "(":
            self.pos += 1
            poly = self.expr()
            self.take(")")
            return poly
        if c == "x":
            self.pos += 1
            return {(1, 0): Fraction(1)}
        if c == "y":
            self.pos += 1
            return {(0, 1): Fraction(1)}
        if c.isdigit():
            num = self.integer()
            if self.peek() == "/":
                self.pos += 1
                den = self.integer()
                if den == 0:
                    self.error("zero denominator")
                return {(0, 0): Fraction(num, den)}
            return {(0, 0): Fraction(num)}
        self.error(f"expected a monomial, number or '(', found {c!r}" if c else
                   "unexpected end of input")

    def integer(self):
        c = self.peek()
        if not c.isdigit():
            self.error("expected an integer")
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        return int(self.text[start : self.pos])


def _add(p1, p2):
    out = dict(p1)
    for key, c in p2.items():
        out[key] = out.get(key, Fraction(0)) + c
    return {key: c for key, c in out.items() if c != 0}


def _scale(p, s):
    return {key: c * s for key, c in p.items()} if s != 1 else p


def _mul(p1, p2):
    out = {}
    for (r1, s1), c1 in p1.items():
        for (r2, s2), c2 in p2.items():
            key = (r1 + r2, s1 + s2)
            out[key] = out.get(key, Fraction(0)) + c1 * c2
    return {key: c for key, c in out.items() if c != 0}


def parse_germ(text, X):
    """Parse a polynomial in x, y and check quasi-invariance on X.

    The divisor class is inferred from the first monomial (in canonical
    order) and every other monomial must agree with it.
    """
    poly = _Parser(text).parse()
    if not poly:
        raise InvalidInputError("the zero polynomial defines no divisor")
    monomials = sorted(poly, key=lambda p: (-p[1], -p[0]))
    classes = [(r + X.q * s) % X.d for r, s in monomials]
    k = classes[0]
    for (r, s), cls in zip(monomials, classes):
        if cls != k:
            r0, s0 = monomials[0]
            raise InvalidInputError(
                f"mixed classes: x^{r0} y^{s0} has class {k} but "
                f"x^{r} y^{s} has class {cls} on {X}"
            )
    support = GermSupport(X, k, frozenset(monomials))
    return ParsedGerm(support, k, poly)


def format_polynomial(coefficients):
    """Render a coefficient map in canonical monomial order.

    Monomials are ordered lexicographically by (s, r), descending in s;
    parse_germ(format_polynomial(p)) reproduces p exactly.
    """
    if not coefficients:
        raise InvalidInputError("the zero polynomial has no canonical form")
    parts = []
    for (r, s) in sorted(coefficients, key=lambda p: (-p[1], -p[0])):
        c = Fraction(coefficients[(r, s)])
        sign = "-" if c < 0 else "+"
        c = abs(c)
        factors = []
        if c != 1 or (r == 0 and s == 0):
            factors.append(str(c.numerator) if c.denominator == 1 else
                           f"{c.numerator}/{c.denominator}")
        if r:
            factors.append("x" if r == 1 else f"x^{r}")
        if s:
            factors.append("y" if s == 1 else f"y^{s}")
        parts.append((sign, "*".join(factors)))
    head_sign, head = parts[0]
    out = (head_sign if head_sign == "-" else "") + head
    for sign, body in parts[1:]:
        out += sign + body
    return out


def encode_rational(value):
    f = Fraction(value)
    return {"num": f.numerator, "den": f.denominator}


def decode_rational(obj):
    return Fraction(obj["num"], obj["den"])


def _report_dict(report):
    X = report.X
    return {
        "d": X.d,
        "q": X.q,
        "k": report.k,
        "mu": encode_rational(report.mu),
        "delta": encode_rational(report.delta),
        "kappa": report.kappa,
        "Delta": encode_rational(report.Delta),
        "mnul": list(report.mnul.entries),
        "greedy": list(report.greedy.entries),
        "qseq": list(X.qseq),
        "cseq": list(X.cseq),
        "qbarseq": list(X.qbarseq),
        "discrepancy": [encode_rational(e) for e in report.discrepancy],
    }


REPORT_KEYS = (
    "d", "q", "k", "mu", "delta", "kappa", "Delta", "mnul", "greedy",
    "qseq", "cseq", "qbarseq", "discrepancy",
)


def serialize_report(report, fmt="json"):
    """One report as JSON (stable key order) or a one-row CSV document."""
    if fmt == "json":
        return json.dumps(_report_dict(report), indent=None, sort_keys=False)
    if fmt == "csv":
        return serialize_table([report])
    raise InvalidInputError(f"unknown format {fmt!r}")


def serialize_table(reports, fmt="csv"):
    """Serialize several reports: a CSV document or a JSON array."""
    if fmt == "json":
        return json.dumps([_report_dict(r) for r in reports])
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(REPORT_KEYS)
    for report in reports:
        d = _report_dict(report)
        row = []
        for key in REPORT_KEYS:
            val = d[key]
            if isinstance(val, dict):
                row.append(_frac_str(val))
            elif isinstance(val, list):
                if val and isinstance(val[0], dict):
                    row.append(" ".join(_frac_str(v) for v in val))
                else:
                    row.append(" ".join(str(v) for v in val))
            else:
                row.append(str(val))
        writer.writerow(row)
    return buf.getvalue()


def _frac_str(obj):
    return f"{obj['num']}/{obj['den']}"


def _parse_frac_str(s):
    num, den = s.split("/")
    return {"num": int(num), "den": int(den)}


def deserialize_report(text, fmt="json"):
    """Inverse of serialize_report, back to the plain dict form."""
    if fmt == "json":
        data = json.loads(text)
        if isinstance(data, list):
            return data
        return data
    rows = list(csv.reader(io.StringIO(text)))
    header, body = rows[0], rows[1:]
    out = []
    for row in body:
        d = {}
        for key, cell in zip(header, row):
            if key in ("d", "q", "k", "kappa"):
                d[key] = int(cell)
            elif key in ("mu", "delta", "Delta"):
                d[key] = _parse_frac_str(cell)
            elif key == "discrepancy":
                d[key] = [_parse_frac_str(c) for c in cell.split()] if cell else []
            else:
                d[key] = [int(c) for c in cell.split()] if cell else []
        out.append(d)
    return out if len(out) > 1 else out[0]


SVG_SCALE = 28
SVG_MARGIN = 40
_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd")


def render_svg(polygons, lattice, path, labels=None):
    """Write polygons and a lattice-point grid to a deterministic SVG file.

    ``polygons`` is a non-empty list of NewtonPolygon; ``lattice`` may be
    None to skip the point overlay.  Output bytes depend only on the
    inputs: fixed viewport from the polygon extents, coordinates printed
    with three decimals, no metadata.
    """
    if not polygons:
        raise InvalidInputError("nothing to render")
    rmax = max(max(v[0] for v in p.vertices) for p in polygons) + 2
    smax = max(max(v[1] for v in p.vertices) for p in polygons) + 2
    width = rmax * SVG_SCALE + 2 * SVG_MARGIN
    height = smax * SVG_SCALE + 2 * SVG_MARGIN

    def sx(r):
        return f"{SVG_MARGIN + r * SVG_SCALE:.3f}"

    def sy(s):
        return f"{height - SVG_MARGIN - s * SVG_SCALE:.3f}"

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{sx(0)}" y1="{sy(0)}" x2="{sx(rmax)}" y2="{sy(0)}" '
        'stroke="#444" stroke-width="1"/>',
        f'<line x1="{sx(0)}" y1="{sy(0)}" x2="{sx(0)}" y2="{sy(smax)}" '
        'stroke="#444" stroke-width="1"/>',
    ]
    if lattice is not None:
        for r, s in sorted(lattice.points_in_box(rmax, smax)):
            parts.append(
                f'<circle cx="{sx(r)}" cy="{sy(s)}" r="2.500" fill="#999"/>'
            )
    labels = labels or [f"P{i}" for i in range(len(polygons))]
    for idx, poly in enumerate(polygons):
        color = _COLORS[idx % len(_COLORS)]
        chain = list(poly.vertices)
        # implicit rays, clipped to the viewport
        pts = [(chain[0][0], smax)] + chain + [(rmax, chain[-1][1])]
        points_attr = " ".join(f"{sx(r)},{sy(s)}" for r, s in pts)
        parts.append(
            f'<polyline points="{points_attr}" fill="none" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        for r, s in chain:
            parts.append(
                f'<circle cx="{sx(r)}" cy="{sy(s)}" r="3.500" fill="{color}"/>'
            )
        parts.append(
            f'<text x="{sx(chain[0][0])}" y="{sy(chain[0][1] + 1)}" '
            f'font-size="14" fill="{color}">{labels[idx]}</text>'
        )
    parts.append("</svg>")
    data = "\n".join(parts) + "\n"
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(data)
    return data
