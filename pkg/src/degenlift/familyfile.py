"""Plain-text family files.

A family file has four sections::

    [ambient]
    n = 3
    coords = x y z w
    chart = w          # optional
    d = 4              # optional, checked against the number of factors
    name = example     # optional

    [factors]
    x
    y
    ...

    [f]
    1 x^4
    -2 z*w^3
    (a + b) x*y*z*w    # coefficients may be parameter expressions in parentheses
    3/2 y^4

    [params]
    a b

Lines starting with ``#`` and blank lines are ignored; ``#`` also starts a
trailing comment.  Terms with the same monomial are added.
"""

from __future__ import annotations

from importlib import resources

from .errors import DegreeMismatch, FamilyFileError, NonHomogeneous
from .exactalg import ExpressionError, Poly, parse_poly
from .exactalg.poly import grlex_key
from .family import FamilySpec

__all__ = ["parse_family", "serialize_family", "load_family", "load_shipped", "shipped_names"]

SECTIONS = ("ambient", "factors", "f", "params")


def _strip(line):
    i = line.find("#")
    return line if i < 0 else line[:i]


def _sections(text):
    current = None
    out = {name: [] for name in SECTIONS}
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw).rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        if stripped.startswith("["):
            if not stripped.endswith("]"):
                raise FamilyFileError("unterminated section header", lineno, raw.index("[") + 1)
            name = stripped[1:-1].strip()
            if name not in SECTIONS:
                raise FamilyFileError(f"unknown section [{name}]", lineno, raw.index("[") + 1)
            if name in seen:
                raise FamilyFileError(f"duplicate section [{name}]", lineno, raw.index("[") + 1)
            seen.add(name)
            current = name
            continue
        if current is None:
            raise FamilyFileError("content before the first section header", lineno, 1)
        col = len(line) - len(line.lstrip()) + 1
        out[current].append((lineno, col, stripped))
    for name in ("ambient", "factors", "f"):
        if name not in seen:
            raise FamilyFileError(f"missing section [{name}]")
    return out


def _parse_expr(text, lineno, col):
    try:
        return parse_poly(text)
    except ExpressionError as exc:
        raise FamilyFileError(str(exc).split(": ", 1)[-1], lineno, col + exc.column - 1) from None


def _split_term(text, lineno, col):
    """Split 'coeff monomial' into (coeff text, coeff col, monomial text, monomial col)."""
    if text.startswith("("):
        depth = 0
        for i, ch in enumerate(text):
            depth += ch == "("
            depth -= ch == ")"
            if depth == 0:
                break
        else:
            raise FamilyFileError("unbalanced parenthesis in coefficient", lineno, col)
        end = i + 1
    else:
        end = text.find(" ")
        if end < 0:
            raise FamilyFileError("expected 'coefficient monomial'", lineno, col)
    rest = text[end:]
    mono = rest.strip()
    if not mono:
        raise FamilyFileError("missing monomial after the coefficient", lineno, col + end)
    mono_col = col + end + (len(rest) - len(rest.lstrip()))
    return text[:end], col, mono, mono_col


def parse_family(text):
    """Parse a family file into a FamilySpec."""
    if hasattr(text, "read"):
        text = text.read()
    sec = _sections(text)
    amb = {}
    for lineno, col, line in sec["ambient"]:
        if "=" not in line:
            raise FamilyFileError("expected 'key = value'", lineno, col)
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in ("n", "coords", "chart", "d", "name"):
            raise FamilyFileError(f"unknown ambient key {key!r}", lineno, col)
        amb[key] = (value, lineno, col + line.index("=") + 2)
    if "n" not in amb or "coords" not in amb:
        raise FamilyFileError("[ambient] needs n and coords")
    try:
        n = int(amb["n"][0])
    except ValueError:
        raise FamilyFileError("n must be an integer", amb["n"][1], amb["n"][2]) from None
    coords = tuple(amb["coords"][0].split())
    if len(coords) != n + 1:
        raise FamilyFileError(f"expected {n + 1} coordinates for P^{n}", amb["coords"][1], amb["coords"][2])
    params = tuple(p for _, _, line in sec["params"] for p in line.split())
    factors = []
    for lineno, col, line in sec["factors"]:
        a = _parse_expr(line, lineno, col)
        if not set(a.occurring()) <= set(coords) or a.total_degree() != 1 or not a.is_homogeneous():
            raise FamilyFileError(f"factor {line!r} is not a linear form in the coordinates", lineno, col)
        factors.append(a)
    d = len(factors)
    if "d" in amb:
        value, lineno, col = amb["d"]
        if int(value) != d:
            raise DegreeMismatch(f"d = {value} but {d} linear factors are listed", lineno, col)
    f = Poly()
    for lineno, col, line in sec["f"]:
        ctext, ccol, mtext, mcol = _split_term(line, lineno, col)
        coeff = _parse_expr(ctext, lineno, ccol)
        bad = set(coeff.occurring()) - set(params)
        if bad:
            raise FamilyFileError(f"coefficient uses undeclared parameters {sorted(bad)}", lineno, ccol)
        mono = _parse_expr(mtext, lineno, mcol)
        if len(mono.terms) != 1 or mono.leading_coeff() != 1 or not set(mono.occurring()) <= set(coords):
            raise FamilyFileError(f"{mtext!r} is not a monomial in the coordinates", lineno, mcol)
        if mono.total_degree() != d:
            raise NonHomogeneous(
                f"monomial {mtext} has degree {mono.total_degree()}, expected {d}", lineno, mcol
            )
        f = f + coeff * mono
    chart = amb["chart"][0] if "chart" in amb else None
    if chart is not None and chart not in coords:
        raise FamilyFileError(f"chart {chart!r} is not a coordinate", amb["chart"][1], amb["chart"][2])
    name = amb["name"][0] if "name" in amb else ""
    try:
        return FamilySpec(n, coords, factors, f, params, chart, name)
    except ValueError as exc:
        raise FamilyFileError(str(exc)) from None


def _coeff_text(c):
    if c.is_constant:
        v = c.constant_value()
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return f"({c})"


def _mono_text(coords, exps):
    parts = []
    for v, e in zip(coords, exps):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def serialize_family(spec):
    """Canonical text for a FamilySpec; parse_family(serialize_family(s)) == s."""
    lines = ["[ambient]", f"n = {spec.n}", f"coords = {' '.join(spec.coords)}"]
    if spec.chart:
        lines.append(f"chart = {spec.chart}")
    lines.append(f"d = {spec.d}")
    if spec.name:
        lines.append(f"name = {spec.name}")
    lines += ["", "[factors]"]
    lines += [str(a) for a in spec.factors]
    lines += ["", "[f]"]
    f = spec.f.extend(spec.coords)
    parts = f.collect(list(spec.coords))
    for exps in sorted(parts, key=grlex_key, reverse=True):
        c = parts[exps]
        lines.append(f"{_coeff_text(c)} {_mono_text(spec.coords, exps)}")
    if spec.params:
        lines += ["", "[params]", " ".join(spec.params)]
    return "\n".join(lines) + "\n"


def load_family(path):
    with open(path, encoding="utf-8") as fh:
        return parse_family(fh.read())


def shipped_names():
    root = resources.files("degenlift") / "data"
    return sorted(p.name[:-4] for p in root.iterdir() if p.name.endswith(".fam"))


def load_shipped(name):
    """Load one of the family files bundled with the package."""
    path = resources.files("degenlift") / "data" / f"{name}.fam"
    if not path.is_file():
        raise FileNotFoundError(f"no shipped family named {name!r}; available: {shipped_names()}")
    return parse_family(path.read_text(encoding="utf-8"))
