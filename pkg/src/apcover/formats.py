"""Text formats for instances and solutions."""
from __future__ import annotations

import json
import re

from .below import TUSCInstance
from .errors import APCoverError, PreconditionError
from .modular import ZpAP, ZpInstance
from .progressions import AP, Instance


class ParseError(APCoverError, ValueError):
    pass


def _content_lines(text: str):
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            yield lineno, stripped


def _ints(tokens, lineno):
    out = []
    for tok in tokens:
        try:
            out.append(int(tok, 10))
        except ValueError:
            raise ParseError(f"line {lineno}: {tok!r} is not a decimal integer") from None
    return out


def parse_instance(text: str) -> Instance:
    values = []
    for lineno, line in _content_lines(text):
        values.extend(_ints(line.split(), lineno))
    if len(set(values)) != len(values):
        dup = next(v for v in values if values.count(v) > 1)
        raise ParseError(f"duplicate value {dup}")
    return Instance(values)


def format_instance(X: Instance) -> str:
    return "".join(f"{x}\n" for x in X)


def parse_zp_instance(text: str) -> ZpInstance:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty file; expected a 'p=<prime>' line")
    lineno, head = lines[0]
    m = re.fullmatch(r"p\s*=\s*(\d+)", head)
    if not m:
        raise ParseError(f"line {lineno}: expected 'p=<prime>', got {head!r}")
    p = int(m.group(1))
    values = []
    for lineno, line in lines[1:]:
        values.extend(_ints(line.split(), lineno))
    if len(set(values)) != len(values):
        raise ParseError("duplicate residue")
    try:
        return ZpInstance(p, frozenset(values))
    except PreconditionError as exc:
        raise ParseError(str(exc)) from None


def format_zp_instance(inst: ZpInstance) -> str:
    body = " ".join(str(r) for r in inst.sorted())
    return f"p={inst.p}\n{body}\n" if body else f"p={inst.p}\n"


def parse_tusc(text: str) -> tuple[TUSCInstance, int | None]:
    """Header ``n=<int> t=<int> [k=<int>]`` followed by one set per line."""
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty file; expected an 'n=.. t=.. k=..' header")
    lineno, head = lines[0]
    fields = {}
    for tok in head.split():
        m = re.fullmatch(r"([ntk])=(-?\d+)", tok)
        if not m:
            raise ParseError(f"line {lineno}: bad header token {tok!r}")
        fields[m.group(1)] = int(m.group(2))
    if "n" not in fields or "t" not in fields:
        raise ParseError(f"line {lineno}: header needs n= and t=")
    sets = [frozenset(_ints(line.split(), no)) for no, line in lines[1:]]
    try:
        inst = TUSCInstance(fields["n"], fields["t"], tuple(sets))
    except PreconditionError as exc:
        raise ParseError(str(exc)) from None
    return inst, fields.get("k")


def format_tusc(inst: TUSCInstance, k: int | None = None) -> str:
    head = f"n={inst.n} t={inst.t}" + (f" k={k}" if k is not None else "")
    rows = [" ".join(map(str, sorted(s))) for s in inst.explicit_sets]
    return "\n".join([head, *rows]) + "\n"


def _triples_from_text(text: str) -> list[tuple[int, int, int]]:
    stripped = text.strip()
    if stripped.startswith("{") or stripped.startswith("["):
        try:
            doc = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
        raw = doc.get("witness") if isinstance(doc, dict) else doc
        if raw is None:
            raise ParseError("report carries no witness")
        try:
            return [tuple(int(v) for v in item) for item in raw]
        except (TypeError, ValueError):
            raise ParseError("witness entries must be [first, diff, length] triples") from None
    out = []
    for lineno, line in _content_lines(text):
        vals = _ints(line.split(), lineno)
        if len(vals) != 3:
            raise ParseError(f"line {lineno}: expected 'first diff length'")
        out.append(tuple(vals))
    return out


def parse_solution(text: str) -> list[AP]:
    """A solution is a JSON report with a ``witness`` list or lines ``first diff length``."""
    try:
        return [AP.of(*t) for t in _triples_from_text(text)]
    except PreconditionError as exc:
        raise ParseError(str(exc)) from None


def parse_zp_solution(text: str, p: int) -> list[ZpAP]:
    try:
        return [ZpAP(p, *t) for t in _triples_from_text(text)]
    except PreconditionError as exc:
        raise ParseError(str(exc)) from None


def parse_tusc_solution(text: str) -> list[tuple[int | None, frozenset]]:
    try:
        doc = json.loads(text)
        return [(item["set"], frozenset(item["elements"])) for item in doc["witness"]]
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise ParseError(f"expected a tusc JSON report with a witness: {exc}") from None
