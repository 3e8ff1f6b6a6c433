"""Text formats for lattices (.lat), frames (.frm) and valuations (.val).

All formats are line based, UTF-8, with ``#`` starting a comment.  Relation
tuples in .frm files list the output point first, as in memory.
"""

from __future__ import annotations

import re

from .bits import iter_bits
from .frame import FrameError, SortedFrame, build_frame
from .nle import DistributionType, FiniteNLE, LatticeError, build_lattice, build_nle


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _key_value(line: str, no: int) -> tuple[str, str]:
    if ":" not in line:
        raise FormatError(f"expected 'key: value', got {line!r}", no)
    k, v = line.split(":", 1)
    return k.strip(), v.strip()


# ------------------------------------------------------------------- .lat

_OP_LINE = re.compile(r"^op\s+(\w+)\s+(\d+)\s+(\(\s*[1d]?(?:\s*,\s*[1d])*\s*;\s*[1d]\s*\))$")


def parse_lat(text: str) -> FiniteNLE:
    elements = None
    leq: list[tuple[str, str]] = []
    decls: dict[str, tuple[int, DistributionType, int]] = {}
    tables: dict[str, dict] = {}
    for no, line in _lines(text):
        if line.startswith("op ") or line.startswith("op\t"):
            m = _OP_LINE.match(line)
            if not m:
                raise FormatError(f"bad op declaration {line!r}", no)
            name, arity = m.group(1), int(m.group(2))
            try:
                dtype = DistributionType.parse(m.group(3).replace(" ", ""))
            except ValueError as exc:
                raise FormatError(str(exc), no) from None
            if len(dtype.args) != arity:
                raise FormatError(f"op {name}: arity {arity} does not match {m.group(3)}", no)
            if name in decls:
                raise FormatError(f"op {name} declared twice", no)
            decls[name] = (arity, dtype, no)
            tables[name] = {}
        elif "=" in line and ":" not in line:
            lhs, rhs = (s.strip() for s in line.split("=", 1))
            parts = lhs.split()
            if not parts or parts[0] not in decls:
                raise FormatError(f"value line for undeclared op: {line!r}", no)
            name, args = parts[0], tuple(parts[1:])
            if len(args) != decls[name][0] or len(rhs.split()) != 1:
                raise FormatError(f"value line has wrong shape: {line!r}", no)
            if args in tables[name]:
                raise FormatError(f"duplicate value for {name} {' '.join(args)}", no)
            tables[name][args] = rhs
        else:
            key, val = _key_value(line, no)
            if key == "elements":
                if elements is not None:
                    raise FormatError("elements given twice", no)
                elements = val.split()
            elif key == "leq":
                for tok in val.split():
                    if tok.count("<=") != 1:
                        raise FormatError(f"bad order pair {tok!r}", no)
                    a, b = tok.split("<=")
                    leq.append((a, b))
            else:
                raise FormatError(f"unknown key {key!r}", no)
    if not elements:
        raise FormatError("missing or empty 'elements' line")
    known = set(elements)
    for a, b in leq:
        for e in (a, b):
            if e not in known:
                raise FormatError(f"unknown element {e!r} in leq")
    for name, tab in tables.items():
        for args, val in tab.items():
            for e in args + (val,):
                if e not in known:
                    raise FormatError(f"unknown element {e!r} in op {name}", decls[name][2])
    try:
        L = build_lattice(elements, leq)
        return build_nle(L, [(name, d[1], tables[name]) for name, d in decls.items()])
    except LatticeError as exc:
        raise FormatError(str(exc)) from None


def write_lat(N: FiniteNLE) -> str:
    L = N.lattice
    names = L.names
    covers = []
    for a in range(L.size):
        for b in range(L.size):
            if a != b and L.leq[a][b] and not any(
                    c not in (a, b) and L.leq[a][c] and L.leq[c][b] for c in range(L.size)):
                covers.append(f"{names[a]}<={names[b]}")
    out = [f"elements: {' '.join(names)}", "leq: " + " ".join(covers)]
    for name, f in N.ops.items():
        out.append(f"op {name} {f.arity} {f.dtype}")
        for args in sorted(f.table):
            out.append(" ".join((name,) + tuple(names[a] for a in args)) + f" = {names[f.table[args]]}")
    return "\n".join(out) + "\n"


# ------------------------------------------------------------------- .frm

_FRM_RELATIONS = {"I": 2, "Rbox": 2, "Rdia": 2, "T": 3}


def parse_frm(text: str) -> SortedFrame:
    fields: dict[str, object] = {}
    for no, line in _lines(text):
        key, val = _key_value(line, no)
        if key in fields:
            raise FormatError(f"{key} given twice", no)
        if key in ("sort1", "sortd"):
            fields[key] = val.split()
        elif key in _FRM_RELATIONS:
            width = _FRM_RELATIONS[key]
            tuples = []
            for chunk in val.split("|"):
                pts = chunk.split()
                if not pts:
                    if val.strip():
                        raise FormatError(f"empty tuple in {key}", no)
                    continue
                if len(pts) != width:
                    raise FormatError(f"{key} tuples need {width} points, got {chunk.strip()!r}", no)
                tuples.append(tuple(pts))
            fields[key] = tuples
        else:
            raise FormatError(f"unknown key {key!r}", no)
    for k in ("sort1", "sortd"):
        if k not in fields:
            raise FormatError(f"missing '{k}' line")
    try:
        return build_frame(fields["sort1"], fields["sortd"], fields.get("I", ()),
                           fields.get("Rbox"), fields.get("Rdia"), fields.get("T"))
    except FrameError as exc:
        raise FormatError(str(exc)) from None


def write_frm(F: SortedFrame) -> str:
    names = {"1": F.z1, "d": F.zd}
    out = [f"sort1: {' '.join(F.z1)}", f"sortd: {' '.join(F.zd)}"]

    def rel(label, tuples, sorts):
        body = " | ".join(" ".join(names[s][p] for p, s in zip(tup, sorts)) for tup in sorted(tuples))
        out.append(f"{label}: {body}".rstrip())

    rel("I", F.I, ("1", "d"))
    for label, tuples, sorts in (("Rbox", F.rbox, ("d", "d")), ("Rdia", F.rdia, ("1", "1")),
                                 ("T", F.t, ("d", "1", "d"))):
        if tuples is not None:
            rel(label, tuples, sorts)
    return "\n".join(out) + "\n"


# ------------------------------------------------------------------- .val

_VAR_KEY = re.compile(r"^p(\d+)$")


def parse_val(text: str, F: SortedFrame) -> dict[int, int]:
    """Variable index -> mask over Z1.  Stability is checked by ``build_model``."""
    idx = {a: i for i, a in enumerate(F.z1)}
    out: dict[int, int] = {}
    for no, line in _lines(text):
        key, val = _key_value(line, no)
        m = _VAR_KEY.match(key)
        if not m:
            raise FormatError(f"expected a variable p<i>, got {key!r}", no)
        var = int(m.group(1))
        if var in out:
            raise FormatError(f"p{var} given twice", no)
        mask = 0
        for p in val.split():
            if p not in idx:
                raise FormatError(f"{p!r} is not a sort-1 point", no)
            mask |= 1 << idx[p]
        out[var] = mask
    return out


def write_val(F: SortedFrame, valuation: dict[int, int]) -> str:
    return "".join(f"p{v}: {' '.join(F.z1[i] for i in iter_bits(m))}".rstrip() + "\n"
                   for v, m in sorted(valuation.items()))


__all__ = ["FormatError", "parse_frm", "parse_lat", "parse_val", "write_frm", "write_lat",
           "write_val"]
