"""Finite bounded lattices with normal operators (NLEs).

Elements are indexed ``0..n-1``; operator tables map argument index tuples
to result indices.  The modal signature uses the names ``box`` (type
``(d;d)``), ``dia`` (``(1;1)``) and ``imp`` (``(1,d;d)``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

from . import formula as fm
from .bits import mask_of, iter_bits
from .logics import AXIOMS
from .report import Check, Report, verdict


class LatticeError(ValueError):
    def __init__(self, message: str, witness: tuple = ()):
        super().__init__(message + (f" (witness {witness})" if witness else ""))
        self.witness = witness


class MissingOperator(KeyError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteLattice:
    names: tuple[str, ...]
    leq: tuple[tuple[bool, ...], ...]
    meet: tuple[tuple[int, ...], ...]
    join: tuple[tuple[int, ...], ...]
    bottom: int
    top: int

    @property
    def size(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise LatticeError(f"unknown element {name!r}") from None

    def le(self, a: int, b: int) -> bool:
        return self.leq[a][b]

    @property
    def pairs(self) -> set[tuple[int, int]]:
        n = self.size
        return {(a, b) for a in range(n) for b in range(n) if self.leq[a][b]}

    def up(self, a: int) -> int:
        return mask_of(b for b in range(self.size) if self.leq[a][b])

    def down(self, a: int) -> int:
        return mask_of(b for b in range(self.size) if self.leq[b][a])

    def meet_all(self, items) -> int:
        out = self.top
        for a in items:
            out = self.meet[out][a]
        return out

    def join_all(self, items) -> int:
        out = self.bottom
        for a in items:
            out = self.join[out][a]
        return out


def build_lattice(names, leq_pairs) -> FiniteLattice:
    """Build a lattice from element names and generating ``a <= b`` pairs.

    The reflexive-transitive closure of the generators is taken; the
    result must be antisymmetric and have all binary meets and joins.
    """
    names = tuple(names)
    n = len(names)
    if n == 0:
        raise LatticeError("a lattice needs at least one element")
    if len(set(names)) != n:
        raise LatticeError("duplicate element names")
    pos = {a: i for i, a in enumerate(names)}
    le = [[i == j for j in range(n)] for i in range(n)]
    for a, b in leq_pairs:
        ia = pos[a] if isinstance(a, str) else a
        ib = pos[b] if isinstance(b, str) else b
        le[ia][ib] = True
    for k in range(n):
        for i in range(n):
            if le[i][k]:
                for j in range(n):
                    if le[k][j]:
                        le[i][j] = True
    for i in range(n):
        for j in range(i + 1, n):
            if le[i][j] and le[j][i]:
                raise LatticeError("order is not antisymmetric", (names[i], names[j]))

    def best(cands, better):
        for c in cands:
            if all(better(c, d) for d in cands):
                return c
        return None

    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            lower = [k for k in range(n) if le[k][i] and le[k][j]]
            upper = [k for k in range(n) if le[i][k] and le[j][k]]
            m = best(lower, lambda c, d: le[d][c])
            s = best(upper, lambda c, d: le[c][d])
            if m is None:
                raise LatticeError("not a lattice: no meet", (names[i], names[j]))
            if s is None:
                raise LatticeError("not a lattice: no join", (names[i], names[j]))
            meet[i][j] = m
            join[i][j] = s
    bottom = best(list(range(n)), lambda c, d: le[c][d])
    top = best(list(range(n)), lambda c, d: le[d][c])
    return FiniteLattice(names, tuple(map(tuple, le)), tuple(map(tuple, meet)),
                         tuple(map(tuple, join)), bottom, top)


@dataclass(frozen=True)
class DistributionType:
    """Argument and output types over {'1', 'd'}; 'd' marks the order dual."""
    args: tuple[str, ...]
    out: str

    def __post_init__(self):
        if not self.args:
            raise ValueError("distribution type needs at least one argument")
        if any(t not in ("1", "d") for t in self.args + (self.out,)):
            raise ValueError("distribution type entries must be 1 or d")

    def __str__(self) -> str:
        return f"({','.join(self.args)};{self.out})"

    @classmethod
    def parse(cls, text: str) -> "DistributionType":
        t = text.strip().replace(" ", "")
        if not (t.startswith("(") and t.endswith(")") and t.count(";") == 1):
            raise ValueError(f"bad distribution type {text!r}")
        args, out = t[1:-1].split(";")
        return cls(tuple(a for a in args.split(",")), out)


BOX_TYPE = DistributionType(("d",), "d")
DIA_TYPE = DistributionType(("1",), "1")
IMP_TYPE = DistributionType(("1", "d"), "d")
STANDARD_TYPES = {"box": BOX_TYPE, "dia": DIA_TYPE, "imp": IMP_TYPE}


@dataclass(frozen=True)
class Operator:
    name: str
    dtype: DistributionType
    table: dict

    @property
    def arity(self) -> int:
        return len(self.dtype.args)

    def __call__(self, *args: int) -> int:
        return self.table[args]


@dataclass(frozen=True, eq=False)
class FiniteNLE:
    lattice: FiniteLattice
    ops: dict[str, Operator] = field(default_factory=dict)

    def op(self, name: str) -> Operator:
        try:
            return self.ops[name]
        except KeyError:
            raise MissingOperator(name) from None


def build_nle(lattice: FiniteLattice, ops=()) -> FiniteNLE:
    """Attach operator tables to a lattice.

    ``ops`` is an iterable of ``(name, dtype, table)`` with ``table`` a
    mapping from argument tuples (indices or names) to a result, or a
    callable on indices.
    """
    out: dict[str, Operator] = {}
    n = lattice.size
    for name, dtype, table in ops:
        if isinstance(dtype, str):
            dtype = DistributionType.parse(dtype)
        arity = len(dtype.args)
        if arity > 2:
            raise LatticeError(f"operator {name} has arity {arity} > 2")
        resolved = {}
        for args in itertools.product(range(n), repeat=arity):
            if callable(table):
                val = table(*args)
            else:
                key = args if args in table else tuple(lattice.names[a] for a in args)
                if key not in table and arity == 1 and lattice.names[args[0]] in table:
                    key = lattice.names[args[0]]
                if key not in table:
                    raise LatticeError(f"operator {name} table is not total",
                                       tuple(lattice.names[a] for a in args))
                val = table[key]
            resolved[args] = lattice.index(val) if isinstance(val, str) else int(val)
        if name in out:
            raise LatticeError(f"operator {name} declared twice")
        out[name] = Operator(name, dtype, resolved)
    return FiniteNLE(lattice, out)


# ------------------------------------------------------------- validation

def _law_checks(N: FiniteNLE, f: Operator, k: int) -> list[tuple[str, tuple | None]]:
    """Distribution and normality of ``f`` in argument place ``k``."""
    L = N.lattice
    n = L.size
    jk, out = f.dtype.args[k], f.dtype.out
    arg_join = L.join if jk == "1" else L.meet
    out_join = L.join if out == "1" else L.meet
    arg_unit = L.bottom if jk == "1" else L.top
    out_unit = L.bottom if out == "1" else L.top
    others = list(itertools.product(range(n), repeat=f.arity - 1))
    dist = None
    for rest in others:
        for a, b in itertools.product(range(n), repeat=2):
            def at(x):
                args = list(rest)
                args.insert(k, x)
                return f.table[tuple(args)]
            if at(arg_join[a][b]) != out_join[at(a)][at(b)]:
                wit = list(rest)
                wit[k:k] = [a, b]
                dist = tuple(L.names[x] for x in wit)
                break
        if dist:
            break
    norm = None
    for rest in others:
        args = list(rest)
        args.insert(k, arg_unit)
        if f.table[tuple(args)] != out_unit:
            norm = tuple(L.names[x] for x in rest)
            break
    return [("dist", dist), ("norm", norm)]


def validate_nle(N: FiniteNLE) -> Report:
    """Check every declared operator for distribution and normality.

    The standard operators get the usual names: A1/A2/N for ``imp``,
    M[]/N[] for ``box`` and M<>/N<> for ``dia``; any other operator gets
    ``<name>:dist<k>`` and ``<name>:norm<k>``.
    """
    checks: list[Check] = []
    L = N.lattice
    for name, f in N.ops.items():
        if name == "imp" and f.dtype == IMP_TYPE:
            (_, a1), (_, n1) = _law_checks(N, f, 0)
            (_, a2), (_, n2) = _law_checks(N, f, 1)
            checks.append(verdict("A1", a1))
            checks.append(verdict("A2", a2))
            norm = None
            if n1 is not None:
                norm = ("0->" + n1[0],)
            elif n2 is not None:
                norm = (n2[0] + "->1",)
            checks.append(verdict("N", norm))
        elif name in ("box", "dia") and f.dtype == STANDARD_TYPES[name]:
            sym = "[]" if name == "box" else "<>"
            (_, dist), (_, norm) = _law_checks(N, f, 0)
            unit = L.top if name == "box" else L.bottom
            checks.append(verdict("M" + sym, dist))
            checks.append(verdict("N" + sym, None if norm is None else (L.names[unit],)))
        else:
            for k in range(f.arity):
                (_, dist), (_, norm) = _law_checks(N, f, k)
                checks.append(verdict(f"{name}:dist{k + 1}", dist))
                checks.append(verdict(f"{name}:norm{k + 1}", norm))
    return Report(checks)


# ------------------------------------------------------------- evaluation

def evaluate_term(N: FiniteNLE, phi: fm.Formula, assignment) -> int:
    """Evaluate a formula bottom-up; ``assignment`` maps variable index to element."""
    L = N.lattice
    memo: dict = {}

    def ev(f):
        if f in memo:
            return memo[f]
        if isinstance(f, fm.Var):
            try:
                r = assignment[f.index]
            except KeyError:
                raise KeyError(f"unassigned variable p{f.index}") from None
            if isinstance(r, str):
                r = L.index(r)
        elif isinstance(f, fm.Top):
            r = L.top
        elif isinstance(f, fm.Bot):
            r = L.bottom
        elif isinstance(f, fm.And):
            r = L.meet[ev(f.left)][ev(f.right)]
        elif isinstance(f, fm.Or):
            r = L.join[ev(f.left)][ev(f.right)]
        elif isinstance(f, fm.Imp):
            r = N.op("imp").table[(ev(f.left), ev(f.right))]
        elif isinstance(f, fm.Box):
            r = N.op("box").table[(ev(f.arg),)]
        else:
            r = N.op("dia").table[(ev(f.arg),)]
        memo[f] = r
        return r

    return ev(phi)


_EXTRA_EQUATIONS: dict[str, tuple[tuple[str, str], ...]] = {
    "A3": (("p1 /\\ (p2 \\/ p3)", "(p1 /\\ p2) \\/ (p1 /\\ p3)"),
           ("(p1 /\\ p2) \\/ (p1 /\\ p3)", "p1 /\\ (p2 \\/ p3)")),
    "H1H2": (("p1 /\\ (p1 -> p2)", "p2"), ("p2", "p1 -> (p1 /\\ p2)")),
}

EQUATION_IDS = tuple(AXIOMS) + tuple(_EXTRA_EQUATIONS) + ("INT",)


def equation_sequents(axiom_id: str) -> tuple[fm.Sequent, ...]:
    if axiom_id in AXIOMS:
        return AXIOMS[axiom_id]
    if axiom_id in _EXTRA_EQUATIONS:
        return tuple(fm.Sequent(fm.parse_formula(a), fm.parse_formula(b))
                     for a, b in _EXTRA_EQUATIONS[axiom_id])
    raise ValueError(f"unknown equation id {axiom_id!r}")


def _needed_ops(phi: fm.Formula) -> set[str]:
    conns = fm.connectives(phi)
    return {name for name, t in (("box", fm.Box), ("dia", fm.Dia), ("imp", fm.Imp)) if t in conns}


def holds_inequality(N: FiniteNLE, s: fm.Sequent) -> tuple | None:
    """Return None if left <= right under every assignment, else the least failing tuple."""
    L = N.lattice
    vs = sorted(fm.variables(s.left) | fm.variables(s.right))
    for combo in itertools.product(range(L.size), repeat=len(vs)):
        asg = dict(zip(vs, combo))
        a = evaluate_term(N, s.left, asg)
        b = evaluate_term(N, s.right, asg)
        if not L.leq[a][b]:
            return tuple(L.names[c] for c in combo)
    return None


def check_equation(N: FiniteNLE, axiom_id: str) -> Report:
    """Check an axiom (inequality or equation) for all element tuples."""
    L = N.lattice
    if axiom_id == "INT":
        imp = N.op("imp")
        wit = None
        for a, b in itertools.product(range(L.size), repeat=2):
            if L.leq[a][b] != (imp.table[(a, b)] == L.top):
                wit = (L.names[a], L.names[b])
                break
        return Report([verdict("INT", wit)])
    seqs = equation_sequents(axiom_id)
    for s in seqs:
        for name in _needed_ops(s.left) | _needed_ops(s.right):
            N.op(name)
    for s in seqs:
        wit = holds_inequality(N, s)
        if wit is not None:
            return Report([verdict(axiom_id, wit, note=str(s))])
    return Report([verdict(axiom_id, None)])


# -------------------------------------------------------- filters, ideals

@dataclass(frozen=True)
class FilterOrIdeal:
    kind: str
    mask: int

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(iter_bits(self.mask))


def filters_ideals(L: FiniteLattice) -> tuple[list[FilterOrIdeal], list[FilterOrIdeal]]:
    """All nonempty filters and ideals, each list sorted by member bitmask.

    In a finite lattice every nonempty filter is the up-set of the meet of
    its members, so the principal sets are exactly the filters.
    """
    filt = sorted({L.up(a) for a in range(L.size)})
    idl = sorted({L.down(a) for a in range(L.size)})
    return ([FilterOrIdeal("filter", m) for m in filt], [FilterOrIdeal("ideal", m) for m in idl])


def is_filter(L: FiniteLattice, mask: int) -> bool:
    els = list(iter_bits(mask))
    if not els:
        return False
    return all(L.meet[a][b] in els for a in els for b in els) and \
        all((mask >> b) & 1 for a in els for b in range(L.size) if L.leq[a][b])


def is_ideal(L: FiniteLattice, mask: int) -> bool:
    els = list(iter_bits(mask))
    if not els:
        return False
    return all(L.join[a][b] in els for a in els for b in els) and \
        all((mask >> b) & 1 for a in els for b in range(L.size) if L.leq[b][a])
