"""Finite two-sorted frames and their Galois machinery.

Points of each sort are indexed from 0 and point sets are int bitmasks.
``x ⊥ y`` is the complement of ``I``; priming sends ``U ⊆ Z1`` to
``{y | x ⊥ y for all x in U}`` and dually.  Relations are stored as sets
of tuples with the output place first: ``(y, v)`` for ``y Rbox v``,
``(z, x)`` for ``z Rdia x`` and ``(y, x, v)`` for ``y T x v``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .bits import full, iter_bits, mask_of, subset

S1 = "1"
SD = "d"

RELATION_SORTS: dict[str, tuple[str, ...]] = {
    "Rbox": (SD, SD),
    "Rdia": (S1, S1),
    "T": (SD, S1, SD),
}

DEFAULT_CAP = 4096


class FrameError(ValueError):
    pass


class SizeGuardError(RuntimeError):
    pass


def flip(sort: str) -> str:
    return SD if sort == S1 else S1


@dataclass(frozen=True, eq=False)
class SortedFrame:
    z1: tuple[str, ...]
    zd: tuple[str, ...]
    I: frozenset
    rbox: frozenset | None = None
    rdia: frozenset | None = None
    t: frozenset | None = None

    # ------------------------------------------------------------- basics
    @property
    def n1(self) -> int:
        return len(self.z1)

    @property
    def nd(self) -> int:
        return len(self.zd)

    def size(self, sort: str) -> int:
        return self.n1 if sort == S1 else self.nd

    def full(self, sort: str) -> int:
        return full(self.size(sort))

    def names(self, sort: str) -> tuple[str, ...]:
        return self.z1 if sort == S1 else self.zd

    def relation(self, rel: str) -> frozenset | None:
        return {"Rbox": self.rbox, "Rdia": self.rdia, "T": self.t}[rel]

    def has(self, rel: str) -> bool:
        return self.relation(rel) is not None

    def require(self, rel: str) -> frozenset:
        r = self.relation(rel)
        if r is None:
            raise FrameError(f"relation {rel} is absent")
        return r

    def label(self, mask: int, sort: str) -> str:
        names = self.names(sort)
        return "{" + ",".join(names[i] for i in iter_bits(mask)) + "}"

    # ------------------------------------------------------------- priming
    @cached_property
    def perp1(self) -> tuple[int, ...]:
        """Row x: the set {x}' of y with x ⊥ y."""
        fd = full(self.nd)
        return tuple(fd & ~mask_of(y for (x2, y) in self.I if x2 == x) for x in range(self.n1))

    @cached_property
    def perpd(self) -> tuple[int, ...]:
        """Row y: the set {y}' of x with x ⊥ y."""
        f1 = full(self.n1)
        return tuple(f1 & ~mask_of(x for (x, y2) in self.I if y2 == y) for y in range(self.nd))

    def prime(self, mask: int, sort: str) -> int:
        rows = self.perp1 if sort == S1 else self.perpd
        out = full(self.size(flip(sort)))
        i = 0
        while mask:
            if mask & 1:
                out &= rows[i]
            mask >>= 1
            i += 1
        return out

    def close(self, mask: int, sort: str) -> int:
        return self.prime(self.prime(mask, sort), flip(sort))

    def is_stable(self, mask: int, sort: str) -> bool:
        return self.close(mask, sort) == mask

    @cached_property
    def _gamma(self) -> dict[str, tuple[int, ...]]:
        return {s: tuple(self.close(1 << u, s) for u in range(self.size(s))) for s in (S1, SD)}

    def gamma(self, point: int, sort: str) -> int:
        """Γu = {u}'' (the principal up-set)."""
        return self._gamma[sort][point]

    @cached_property
    def _order(self) -> dict[str, tuple[tuple[bool, ...], ...]]:
        out = {}
        for s in (S1, SD):
            rows = self.perp1 if s == S1 else self.perpd
            n = self.size(s)
            out[s] = tuple(tuple(subset(rows[u], rows[w]) for w in range(n)) for u in range(n))
        return out

    def leq(self, sort: str) -> tuple[tuple[bool, ...], ...]:
        """Specialization preorder: u ⪯ w iff {u}' ⊆ {w}'."""
        return self._order[sort]

    # ---------------------------------------------------------- sections
    @cached_property
    def box_sec(self) -> tuple[int, ...]:
        """Rbox v = {y | y Rbox v}, indexed by v."""
        r = self.require("Rbox")
        return tuple(mask_of(y for (y, v2) in r if v2 == v) for v in range(self.nd))

    @cached_property
    def dia_sec(self) -> tuple[int, ...]:
        """Rdia x = {z | z Rdia x}, indexed by x."""
        r = self.require("Rdia")
        return tuple(mask_of(z for (z, x2) in r if x2 == x) for x in range(self.n1))

    @cached_property
    def t_sec(self) -> dict[tuple[int, int], int]:
        """T x v = {y | y T x v}."""
        r = self.require("T")
        out = {(x, v): 0 for x in range(self.n1) for v in range(self.nd)}
        for (y, x, v) in r:
            out[(x, v)] |= 1 << y
        return out

    @cached_property
    def box_dual(self) -> tuple[int, ...]:
        """R'box v = (Rbox v)' ⊆ Z1."""
        return tuple(self.prime(m, SD) for m in self.box_sec)

    @cached_property
    def box_dual_row(self) -> tuple[int, ...]:
        """x R'box = {v | x in R'box v} ⊆ Zd."""
        return tuple(mask_of(v for v in range(self.nd) if (self.box_dual[v] >> x) & 1)
                     for x in range(self.n1))

    @cached_property
    def box_dd(self) -> tuple[int, ...]:
        """x R''box = (x R'box)' ⊆ Z1."""
        return tuple(self.prime(m, SD) for m in self.box_dual_row)

    @cached_property
    def dia_dual(self) -> tuple[int, ...]:
        """R'dia x = (Rdia x)' ⊆ Zd."""
        return tuple(self.prime(m, S1) for m in self.dia_sec)

    @cached_property
    def dia_dual_row(self) -> tuple[int, ...]:
        """y R'dia = {x | y in R'dia x} ⊆ Z1."""
        return tuple(mask_of(x for x in range(self.n1) if (self.dia_dual[x] >> y) & 1)
                     for y in range(self.nd))

    @cached_property
    def dia_dd(self) -> tuple[int, ...]:
        """y R''dia = (y R'dia)' ⊆ Zd."""
        return tuple(self.prime(m, S1) for m in self.dia_dual_row)

    @cached_property
    def t_dual(self) -> dict[tuple[int, int], int]:
        """T'(z, v) = (T z v)' ⊆ Z1."""
        return {k: self.prime(m, SD) for k, m in self.t_sec.items()}

    @cached_property
    def r111(self) -> dict[tuple[int, int], int]:
        """R111(z, x) = {u | u R111 z x} ⊆ Z1, via the chain T' -> R^{d11} -> R111."""
        out = {}
        for z in range(self.n1):
            for x in range(self.n1):
                rd11 = mask_of(v for v in range(self.nd) if (self.t_dual[(z, v)] >> x) & 1)
                out[(z, x)] = self.prime(rd11, SD)
        return out

    @cached_property
    def s11(self) -> tuple[int, ...]:
        """S11box x = {z | z R''box ⊆ Γx}."""
        return tuple(mask_of(z for z in range(self.n1) if subset(self.box_dd[z], self.gamma(x, S1)))
                     for x in range(self.n1))

    def sections(self, rel: str) -> dict[tuple[int, ...], int]:
        """Sections of a base relation keyed by argument tuples."""
        if rel == "Rbox":
            return {(v,): m for v, m in enumerate(self.box_sec)}
        if rel == "Rdia":
            return {(x,): m for x, m in enumerate(self.dia_sec)}
        if rel == "T":
            return dict(self.t_sec)
        raise FrameError(f"unknown relation {rel!r}")


# ------------------------------------------------------------ construction

def build_frame(z1, zd, I=(), rbox=None, rdia=None, t=None) -> SortedFrame:
    """Build a frame from point names and relation tuples (names or indices)."""
    z1, zd = tuple(z1), tuple(zd)
    if not z1 or not zd:
        raise FrameError("both sorts must be nonempty")
    for names, label in ((z1, "sort1"), (zd, "sortd")):
        if len(set(names)) != len(names):
            raise FrameError(f"duplicate point names in {label}")
    idx = {S1: {a: i for i, a in enumerate(z1)}, SD: {a: i for i, a in enumerate(zd)}}

    def point(p, sort):
        table = idx[sort]
        if isinstance(p, int):
            if not 0 <= p < len(table):
                raise FrameError(f"point index {p} out of range for sort {sort}")
            return p
        if p not in table:
            raise FrameError(f"point {p!r} is not in sort {sort}")
        return table[p]

    def rel(tuples, sorts, label):
        if tuples is None:
            return None
        out = set()
        for tup in tuples:
            if len(tup) != len(sorts):
                raise FrameError(f"{label} tuple {tup!r} has wrong length")
            out.add(tuple(point(p, s) for p, s in zip(tup, sorts)))
        return frozenset(out)

    return SortedFrame(z1, zd, rel(I, (S1, SD), "I"),
                       rel(rbox, RELATION_SORTS["Rbox"], "Rbox"),
                       rel(rdia, RELATION_SORTS["Rdia"], "Rdia"),
                       rel(t, RELATION_SORTS["T"], "T"))


def with_relations(F: SortedFrame, **changes) -> SortedFrame:
    """Copy of ``F`` with some relations replaced (index tuples)."""
    kw = dict(z1=F.z1, zd=F.zd, I=F.I, rbox=F.rbox, rdia=F.rdia, t=F.t)
    for k, v in changes.items():
        kw[k] = None if v is None else frozenset(v)
    return SortedFrame(**kw)


# ------------------------------------------------------------- polarity

def polarity(F: SortedFrame, S: int, direction: str) -> int:
    """Priming: ``right`` maps Z1-sets to Zd-sets, ``left`` maps Zd-sets to Z1-sets."""
    if direction == "right":
        return F.prime(S, S1)
    if direction == "left":
        return F.prime(S, SD)
    raise ValueError("direction must be 'right' or 'left'")


def closure(F: SortedFrame, S: int, sort: str) -> int:
    return F.close(S, sort)


def specialization(F: SortedFrame, sort: str) -> set[tuple[int, int]]:
    m = F.leq(sort)
    n = F.size(sort)
    return {(u, w) for u in range(n) for w in range(n) if m[u][w]}


def separation_witness(F: SortedFrame) -> tuple | None:
    for s in (S1, SD):
        m = F.leq(s)
        names = F.names(s)
        for u in range(F.size(s)):
            for w in range(u + 1, F.size(s)):
                if m[u][w] and m[w][u]:
                    return (names[u], names[w])
    return None


def is_separated(F: SortedFrame) -> bool:
    return separation_witness(F) is None


def lam(F: SortedFrame, U: int) -> int:
    """λU = {y | some x in U has x I y}."""
    out = 0
    for (x, y) in F.I:
        if (U >> x) & 1:
            out |= 1 << y
    return out


def rho(F: SortedFrame, V: int) -> int:
    """ρV = {x | every y with x I y lies in V}."""
    out = full(F.n1)
    for (x, y) in F.I:
        if not (V >> y) & 1:
            out &= ~(1 << x)
    return out


# -------------------------------------------------------- stable lattices

class StableLattice:
    """All Galois-stable sets of one sort, sorted by bitmask."""

    def __init__(self, frame: SortedFrame, sort: str, sets):
        self.frame = frame
        self.sort = sort
        self.sets: tuple[int, ...] = tuple(sorted(sets))
        self.index: dict[int, int] = {m: i for i, m in enumerate(self.sets)}
        self.top = self.index[frame.full(sort)]
        self.bottom = self.index[frame.close(0, sort)]

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    def __contains__(self, mask: int) -> bool:
        return mask in self.index

    def meet(self, a: int, b: int) -> int:
        return a & b

    def join(self, a: int, b: int) -> int:
        return self.frame.close(a | b, self.sort)

    @cached_property
    def meet_table(self) -> tuple[tuple[int, ...], ...]:
        ix = self.index
        return tuple(tuple(ix[a & b] for b in self.sets) for a in self.sets)

    @cached_property
    def join_table(self) -> tuple[tuple[int, ...], ...]:
        ix = self.index
        return tuple(tuple(ix[self.join(a, b)] for b in self.sets) for a in self.sets)

    @cached_property
    def leq_table(self) -> tuple[tuple[bool, ...], ...]:
        return tuple(tuple(subset(a, b) for b in self.sets) for a in self.sets)


def stable_sets(F: SortedFrame, sort: str, cap: int = DEFAULT_CAP) -> set[int]:
    """All intersections of open sets {w}' (w of the other sort), plus the whole sort."""
    opens = F.perpd if sort == S1 else F.perp1
    sets = {F.full(sort)}
    for row in opens:
        new = {s & row for s in sets}
        sets |= new
        if len(sets) > cap:
            raise SizeGuardError(f"more than {cap} stable sets")
    return sets


def stable_lattice(F: SortedFrame, sort: str = S1, cap: int = DEFAULT_CAP) -> StableLattice:
    cache = F.__dict__.setdefault("_stable_cache", {})
    if sort not in cache:
        cache[sort] = StableLattice(F, sort, stable_sets(F, sort, cap))
    return cache[sort]


# --------------------------------------------------- generic sorted relations

def relation_sections(F: SortedFrame, sorts: tuple[str, ...], tuples) -> dict[tuple[int, ...], int]:
    """Sections R(args) of a relation with output place first."""
    out = {args: 0 for args in itertools.product(*(range(F.size(s)) for s in sorts[1:]))}
    for tup in tuples:
        out[tuple(tup[1:])] |= 1 << tup[0]
    return out


def dual_sections(F: SortedFrame, sorts: tuple[str, ...], secs) -> dict[tuple[int, ...], int]:
    """Sections of the Galois dual: R'(args) = (R(args))'."""
    return {args: F.prime(m, sorts[0]) for args, m in secs.items()}


def smoothness_witness(F: SortedFrame, sorts: tuple[str, ...], tuples) -> tuple | None:
    """First section of R' (in an argument place) that is not Galois, else None.

    The witness is ``(place, w, other args...)`` with ``w`` the fixed
    output point of R' and place counted from 1.
    """
    dual = dual_sections(F, sorts, relation_sections(F, sorts, tuples))
    out_sort = flip(sorts[0])
    arg_sorts = sorts[1:]
    for k, sk in enumerate(arg_sorts):
        rest_ranges = [range(F.size(s)) for j, s in enumerate(arg_sorts) if j != k]
        for w in range(F.size(out_sort)):
            for rest in itertools.product(*rest_ranges):
                sec = 0
                for u in range(F.size(sk)):
                    args = list(rest)
                    args.insert(k, u)
                    if (dual[tuple(args)] >> w) & 1:
                        sec |= 1 << u
                if not F.is_stable(sec, sk):
                    names = [F.names(s)[p] for s, p in
                             zip([a for j, a in enumerate(arg_sorts) if j != k], rest)]
                    return (k + 1, F.names(out_sort)[w], *names)
    return None


def galois_dual(F: SortedFrame, rel: str) -> frozenset:
    """Tuples ``(w, args...)`` of R' with w in the flipped output sort."""
    sorts = RELATION_SORTS[rel]
    dual = dual_sections(F, sorts, relation_sections(F, sorts, F.require(rel)))
    return frozenset((w, *args) for args, m in dual.items() for w in iter_bits(m))


def is_smooth(F: SortedFrame, rel: str) -> tuple[bool, tuple | None]:
    wit = smoothness_witness(F, RELATION_SORTS[rel], F.require(rel))
    return wit is None, wit


DERIVED_SORTS = {
    "Tprime": (S1, S1, SD),
    "T11d": (S1, S1, SD),
    "Rd11": (SD, S1, S1),
    "R111": (S1, S1, S1),
    "RboxDD": (S1, S1),
    "RdiaDD": (SD, SD),
    "Rleq": (S1, S1, S1),
    "S11box": (S1, S1),
}


def derived_relation(F: SortedFrame, kind: str) -> frozenset:
    """Derived relations as tuples with the output place first.

    Tprime/T11d: (x, z, v) iff x in (T z v)'.  Rd11: (v, z, x) iff x T11d z v.
    R111: (u, z, x) iff u ⊥ v for every v with v Rd11 z x.
    RboxDD: (x, z) iff z in x R''box.  RdiaDD: (y, v) iff v in y R''dia.
    Rleq: (u, x, z) iff x ⪯ u and z ⪯ u.  S11box: (z, x) iff z R''box ⊆ Γx.
    """
    if kind in ("Tprime", "T11d"):
        return frozenset((x, z, v) for (z, v), m in F.t_dual.items() for x in iter_bits(m))
    if kind == "Rd11":
        return frozenset((v, z, x) for (z, v), m in F.t_dual.items() for x in iter_bits(m))
    if kind == "R111":
        return frozenset((u, z, x) for (z, x), m in F.r111.items() for u in iter_bits(m))
    if kind == "RboxDD":
        return frozenset((x, z) for x, m in enumerate(F.box_dd) for z in iter_bits(m))
    if kind == "RdiaDD":
        return frozenset((y, v) for y, m in enumerate(F.dia_dd) for v in iter_bits(m))
    if kind == "Rleq":
        le = F.leq(S1)
        n = F.n1
        return frozenset((u, x, z) for u in range(n) for x in range(n) for z in range(n)
                         if le[x][u] and le[z][u])
    if kind == "S11box":
        return frozenset((z, x) for x, m in enumerate(F.s11) for z in iter_bits(m))
    raise FrameError(f"unknown derived relation {kind!r}")
