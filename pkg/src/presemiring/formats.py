"""Text formats: structure files, function files and modular spec files.

All three are line based, ``#`` starts a comment, and numbers are ASCII
decimal.  Errors carry the 1-based line and column of the offending token.
"""

from __future__ import annotations

import os
from fractions import Fraction

from .algebra import FiniteStructure
from .codomains import Codomain, Integers, parse_codomain
from .dedekind import ModularSpec, is_prime
from .errors import PresemiringError, StructureError
from .functions import MappedFunction, counting_measure, uniform_probability
from .instances import make_symbolic, parse_builtin
from .sets import FiniteCofiniteSet

STRUCTURE_HEADER = "semiring v1"
FUNCTION_HEADER = "function v1"


class ParseError(PresemiringError, ValueError):
    def __init__(self, source, line, col, msg):
        self.source, self.line, self.col = source, line, col
        super().__init__(f"{source}:{line}:{col}: {msg}")


def _tokens(text):
    """``(line_no, [(col, token), ...])`` for every non-blank, comment-stripped line."""
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        toks = []
        col = 0
        for part in line.split():
            col = line.index(part, col)
            toks.append((col + 1, part))
            col += len(part)
        if toks:
            yield no, toks


def _read(path):
    try:
        with open(path, encoding="ascii") as fh:
            return fh.read()
    except UnicodeDecodeError as e:
        raise ParseError(path, 1, 1, f"not ASCII: {e.reason}") from None


def _int(source, no, col, tok, what="integer"):
    try:
        v = int(tok)
    except ValueError:
        raise ParseError(source, no, col, f"expected {what}, got {tok!r}") from None
    if tok.startswith("+"):
        raise ParseError(source, no, col, f"expected {what}, got {tok!r}")
    return v


def _expect_header(source, lines, header):
    if not lines:
        raise ParseError(source, 1, 1, "empty file")
    no, toks = lines[0]
    got = " ".join(t for _, t in toks)
    if got != header:
        raise ParseError(source, no, toks[0][0], f"expected header {header!r}, got {got!r}")


# --- structures --------------------------------------------------------------------


def parse_structure_text(text: str, source: str = "<string>") -> FiniteStructure:
    lines = list(_tokens(text))
    _expect_header(source, lines, STRUCTURE_HEADER)
    seen: dict[str, int] = {}
    n = None
    names = zero = one = None
    tables: dict[str, list] = {}
    i = 1
    while i < len(lines):
        no, toks = lines[i]
        col, key = toks[0]
        if key in seen:
            raise ParseError(source, no, col, f"duplicate section {key!r} (first at line {seen[key]})")
        seen[key] = no
        args = toks[1:]
        if key == "n":
            if len(args) != 1:
                raise ParseError(source, no, col, "n takes one value")
            n = _int(source, no, args[0][0], args[0][1], "size")
            if n < 1:
                raise ParseError(source, no, args[0][0], "size must be positive")
        elif key in ("zero", "one", "names", "add", "mul") and n is None:
            raise ParseError(source, no, col, f"{key!r} before 'n'")
        elif key == "names":
            if len(args) != n:
                raise ParseError(source, no, col, f"{len(args)} names for n={n}")
            names = [t for _, t in args]
            if len(set(names)) != n:
                raise ParseError(source, no, col, "names must be distinct")
        elif key in ("zero", "one"):
            if len(args) != 1:
                raise ParseError(source, no, col, f"{key} takes one index")
            v = _int(source, no, args[0][0], args[0][1], "index")
            if not 0 <= v < n:
                raise ParseError(source, no, args[0][0], f"index {v} out of range for n={n}")
            if key == "zero":
                zero = v
            else:
                one = v
        elif key in ("add", "mul"):
            if args:
                raise ParseError(source, no, args[0][0], f"unexpected token after {key!r}")
            rows = []
            for r in range(n):
                i += 1
                if i >= len(lines):
                    raise ParseError(source, no, col, f"{key} table has {r} rows, expected {n}")
                rno, rtoks = lines[i]
                if len(rtoks) != n:
                    raise ParseError(source, rno, rtoks[0][0],
                                     f"row has {len(rtoks)} entries, expected {n}")
                row = []
                for c, t in rtoks:
                    v = _int(source, rno, c, t, "index")
                    if not 0 <= v < n:
                        raise ParseError(source, rno, c, f"index {v} out of range for n={n}")
                    row.append(v)
                rows.append(row)
            tables[key] = rows
        else:
            raise ParseError(source, no, col, f"unknown section {key!r}")
        i += 1
    for key in ("n", "add", "mul"):
        if key not in seen:
            raise ParseError(source, len(text.splitlines()) or 1, 1, f"missing section {key!r}")
    try:
        return FiniteStructure(n, tables["add"], tables["mul"], zero=zero, one=one,
                               names=names, label=os.path.basename(source))
    except StructureError as e:
        raise ParseError(source, seen.get("zero") or seen.get("one") or seen["n"], 1,
                         str(e)) from None


def parse_structure(path: str) -> FiniteStructure:
    return parse_structure_text(_read(path), path)


def emit_structure(S: FiniteStructure) -> str:
    out = [STRUCTURE_HEADER, f"n {S.size}", "names " + " ".join(S.names)]
    if S.zero is not None:
        out.append(f"zero {S.zero}")
    if S.one is not None:
        out.append(f"one {S.one}")
    for key, table in (("add", S.add_table), ("mul", S.mul_table)):
        out.append(key)
        out += [" ".join(map(str, row)) for row in table]
    return "\n".join(out) + "\n"


def resolve_domain(ref: str, base_dir: str = "."):
    """``builtin:<kind>`` or a path (relative to the referring file)."""
    if ref.startswith("builtin:"):
        return parse_builtin(ref[len("builtin:"):])
    path = ref if os.path.isabs(ref) else os.path.normpath(os.path.join(base_dir, ref))
    return parse_structure(path)


# --- functions --------------------------------------------------------------------


def _parse_value(T: Codomain, source, no, col, tok):
    try:
        if "/" in tok or T.name in ("rational", "mulrational"):
            return T.coerce(Fraction(tok))
        return T.coerce(int(tok))
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(source, no, col, f"bad value {tok!r}: {e}") from None


def parse_function_text(text: str, source: str = "<string>", base_dir: str = ".") -> MappedFunction:
    lines = list(_tokens(text))
    _expect_header(source, lines, FUNCTION_HEADER)
    fields: dict = {}
    for no, toks in lines[1:]:
        col, key = toks[0]
        if key in fields:
            raise ParseError(source, no, col, f"duplicate section {key!r}")
        if key not in ("domain", "codomain", "values", "name"):
            raise ParseError(source, no, col, f"unknown section {key!r}")
        if len(toks) < 2:
            raise ParseError(source, no, col, f"{key!r} needs a value")
        fields[key] = (no, toks[1:])
    for key in ("domain", "codomain", "values"):
        if key not in fields:
            raise ParseError(source, len(text.splitlines()) or 1, 1, f"missing section {key!r}")
    no, toks = fields["domain"]
    try:
        S = resolve_domain(toks[0][1], base_dir)
    except ParseError:
        raise
    except (PresemiringError, OSError, ValueError) as e:
        raise ParseError(source, no, toks[0][0], f"cannot resolve domain: {e}") from None
    if not S.is_finite:
        raise ParseError(source, no, toks[0][0], "function files need a finite domain")
    no, toks = fields["codomain"]
    try:
        T = parse_codomain(" ".join(t for _, t in toks))
    except ValueError as e:
        raise ParseError(source, no, toks[0][0], str(e)) from None
    no, toks = fields["values"]
    if len(toks) != S.size:
        raise ParseError(source, no, toks[0][0],
                         f"{len(toks)} values for a domain of size {S.size}")
    values = [_parse_value(T, source, no, c, t) for c, t in toks]
    name = fields["name"][1][0][1] if "name" in fields else os.path.basename(source)
    return MappedFunction(S, T, values, name=name)


def parse_function(path: str) -> MappedFunction:
    return parse_function_text(_read(path), path, os.path.dirname(path) or ".")


def emit_function(f: MappedFunction, domain_ref: str) -> str:
    T = f.codomain
    codomain = f"zmod {T.m}" if T.name.startswith("zmod") else T.name
    return "\n".join([FUNCTION_HEADER, f"domain {domain_ref}", f"codomain {codomain}",
                      "values " + " ".join(T.fmt(v) for v in f.values)]) + "\n"


def _builtin_function(spec: str) -> MappedFunction:
    """``count@powerset(3)``, ``uniform@cube(2)``, ``indicator@finitecofinite``."""
    kind, _, dom = spec.partition("@")
    if kind == "indicator":
        S = make_symbolic("finitecofinite")
        return MappedFunction(S, Integers(), rule=lambda x: 1 if x.cofinite else 0,
                              name="indicator")
    S = parse_builtin(dom)
    if kind == "count":
        return counting_measure(S)
    if kind == "uniform":
        return uniform_probability(S)
    raise PresemiringError(f"unknown builtin function {kind!r}")


def load_function(ref: str) -> MappedFunction:
    if ref.startswith("builtin:"):
        return _builtin_function(ref[len("builtin:"):])
    return parse_function(ref)


# --- modular specs ---------------------------------------------------------------


def parse_spec_text(text: str, source: str = "<string>") -> ModularSpec:
    """Lines ``p v``, ``D v``, ``zero v``, optional ``default v`` and ``codomain ...``."""
    codomain: Codomain = Integers()
    raw: dict = {}
    primes: dict = {}
    for no, toks in _tokens(text):
        col, key = toks[0]
        if key == "codomain":
            try:
                codomain = parse_codomain(" ".join(t for _, t in toks[1:]))
            except ValueError as e:
                raise ParseError(source, no, col, str(e)) from None
            continue
        if len(toks) != 2:
            raise ParseError(source, no, col, "expected '<key> <value>'")
        vcol, vtok = toks[1]
        value = _int(source, no, vcol, vtok, "value")
        if key in ("D", "zero", "default"):
            if key in raw:
                raise ParseError(source, no, col, f"duplicate {key!r}")
            raw[key] = value
            continue
        p = _int(source, no, col, key, "prime, 'D', 'zero' or 'default'")
        if not is_prime(p):
            raise ParseError(source, no, col, f"{p} is not prime")
        if p in primes:
            raise ParseError(source, no, col, f"duplicate prime {p}")
        primes[p] = value
    for key in ("D", "zero"):
        if key not in raw:
            raise ParseError(source, 1, 1, f"missing {key!r} line")
    return ModularSpec(raw["zero"], raw["D"], primes, default=raw.get("default", 0),
                       codomain=codomain)


def parse_spec(path: str) -> ModularSpec:
    return parse_spec_text(_read(path), path)


def parse_element(S, token: str):
    """An element token in the structure's own notation."""
    if S.is_finite:
        return S.index(token)
    if S.label == "finitecofinite":
        return FiniteCofiniteSet.parse(token)
    return S.index(token)
