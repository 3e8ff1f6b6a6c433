"""Enumeration of small frames in a class and countermodel search.

Frames are streamed in canonical order: by (|Z1|, |Zd|), then by the
bitmask of I (bit ``x*|Zd| + y``), then by relation candidates in the
order Rbox, Rdia, T.  When the class contains F3 each relation is given
by a monotone point operator (``Rbox v = Γ(⊟v)``, ``Rdia x = Γ(◆x)``,
``T x v = Γ(x▷v)``) and candidates are its tables in lexicographic
order; otherwise raw relation subsets are enumerated.

Only the relations a query needs are enumerated: the ones occurring in
the sequent plus those the class axioms mention.  Validity of a sequent
depends on nothing else, and the class conditions couple relations only
through Rbox (FK with T; FD, FB, FS5 with Rdia), so the projection is
exact.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import formula as fm
from .axioms import check_frame_axiom, in_class
from .bits import subset
from .frame import RELATION_SORTS, S1, SD, SizeGuardError, SortedFrame, stable_lattice
from .logics import parse_class
from .report import NA
from .semantics import check_sequent_frame, check_sequent_model, Model

REL_ORDER = ("Rbox", "Rdia", "T")
REL_FIELD = {"Rbox": "rbox", "Rdia": "rdia", "T": "t"}
CONNECTIVE_RELATION = {fm.Box: "Rbox", fm.Dia: "Rdia", fm.Imp: "T"}

AXIOM_RELATIONS = {
    "FK": ("Rbox", "T"), "FD": ("Rbox", "Rdia"), "FB": ("Rbox", "Rdia"), "FS5": ("Rbox", "Rdia"),
    "FTbox": ("Rbox",), "FS4box": ("Rbox",), "FTdia": ("Rdia",), "FS4dia": ("Rdia",),
    "FHEYT": ("T",),
}
FRAME_LEVEL = ("F1", "FDIST")
PER_RELATION = {
    "Rbox": ("F5", "F6", "FTbox", "FS4box"),
    "Rdia": ("FTdia", "FS4dia"),
    "T": ("FHEYT",),
}
COUPLED = ("FK", "FD", "FB", "FS5")

MAX_TABLES = 2_000_000
EVAL_CHUNK = 1 << 21   # array cells per batched evaluation step


class BudgetExhausted(RuntimeError):
    """Raised when a run examines more I-bitmasks than its budget; ``cursor`` resumes it."""

    def __init__(self, cursor: tuple[int, int, int]):
        super().__init__(f"budget exhausted at (|Z1|, |Zd|, I) = {cursor}")
        self.cursor = cursor


@dataclass(frozen=True)
class SearchBounds:
    max1: int
    maxd: int
    axioms: tuple[str, ...] = ("F1",)
    budget: int | None = None           # number of I-bitmasks examined
    relations: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.max1 < 1 or self.maxd < 1:
            raise ValueError("bounds must be at least 1")
        ax = parse_class(self.axioms) if isinstance(self.axioms, str) else tuple(self.axioms)
        object.__setattr__(self, "axioms", ax)
        if self.relations is not None:
            bad = [r for r in self.relations if r not in REL_ORDER]
            if bad:
                raise ValueError(f"unknown relation(s) {bad}")

    @property
    def point_mode(self) -> bool:
        return "F3" in self.axioms


def relations_used(s: fm.Sequent) -> tuple[str, ...]:
    conns = fm.connectives(s.left) | fm.connectives(s.right)
    return tuple(r for r in REL_ORDER if any(CONNECTIVE_RELATION[c] == r for c in conns
                                              if c in CONNECTIVE_RELATION))


def relations_required(axioms) -> tuple[str, ...]:
    need = {r for a in axioms for r in AXIOM_RELATIONS.get(a, ())}
    return tuple(r for r in REL_ORDER if r in need)


def _ordered(rels) -> tuple[str, ...]:
    rels = set(rels)
    return tuple(r for r in REL_ORDER if r in rels)


def size_pairs(max1: int, maxd: int):
    return [(n1, nd) for n1 in range(1, max1 + 1) for nd in range(1, maxd + 1)]


def frame_of(n1: int, nd: int, imask: int, **rels) -> SortedFrame:
    I = frozenset((x, y) for x in range(n1) for y in range(nd) if (imask >> (x * nd + y)) & 1)
    return SortedFrame(tuple(f"x{i + 1}" for i in range(n1)), tuple(f"y{i + 1}" for i in range(nd)),
                       I, **{REL_FIELD[r]: v for r, v in rels.items()})


# ------------------------------------------------------------ per-I context

class _Context:
    """Lookup arrays for one polarity."""

    def __init__(self, n1: int, nd: int, imask: int):
        self.n1, self.nd, self.imask = n1, nd, imask
        self.frame = F = frame_of(n1, nd, imask)
        self.G = stable_lattice(F, S1)
        self.g = len(self.G)
        self.perp1 = np.array(F.perp1, dtype=np.int64)
        self.perpd = np.array(F.perpd, dtype=np.int64)
        self.gamma = {s: np.array([F.gamma(u, s) for u in range(F.size(s))], dtype=np.int64)
                      for s in (S1, SD)}
        self.leq = {s: np.array(F.leq(s), dtype=bool) for s in (S1, SD)}
        close1 = np.array([F.close(m, S1) for m in range(1 << n1)], dtype=np.int64)
        self.close1 = close1
        self.stable = {s: np.array([F.is_stable(m, s) for m in range(1 << F.size(s))], dtype=bool)
                       for s in (S1, SD)}
        gidx = np.full(1 << n1, -1, dtype=np.int32)
        for i, m in enumerate(self.G.sets):
            gidx[m] = i
        self.gidx = gidx
        self.sets = list(self.G.sets)
        self.primes = [F.prime(a, S1) for a in self.sets]
        self.full1 = F.full(S1)
        tabs = self.G
        self.meet = np.array(tabs.meet_table, dtype=np.int32)
        self.join = np.array(tabs.join_table, dtype=np.int32)
        self.leqG = np.array(tabs.leq_table, dtype=bool)
        self.primed_d = np.array([F.prime(m, SD) for m in range(1 << nd)], dtype=np.int64)

    # ---------------------------------------------------- candidate tables
    def domain(self, rel: str) -> tuple[list[tuple[int, ...]], str]:
        if rel == "Rbox":
            return [(v,) for v in range(self.nd)], SD
        if rel == "Rdia":
            return [(x,) for x in range(self.n1)], S1
        return [(x, v) for x in range(self.n1) for v in range(self.nd)], SD

    def monotone_tables(self, rel: str) -> np.ndarray:
        args, out = self.domain(rel)
        nout = self.nd if out == SD else self.n1
        if nout ** len(args) > MAX_TABLES:
            raise SizeGuardError(f"{nout ** len(args)} candidate {rel} tables")
        tabs = np.indices((nout,) * len(args), dtype=np.int8).reshape(len(args), -1).T
        arg_sorts = RELATION_SORTS[rel][1:]
        ok = np.ones(len(tabs), dtype=bool)
        lo = self.leq[out]
        for i, a in enumerate(args):
            for j, b in enumerate(args):
                if i != j and all(self.leq[s][p, q] for s, p, q in zip(arg_sorts, a, b)):
                    ok &= lo[tabs[:, i], tabs[:, j]]
        return tabs[ok]

    def relation(self, rel: str, table) -> frozenset:
        args, out = self.domain(rel)
        gam = self.gamma[out]
        tuples = set()
        for a, p in zip(args, table):
            m = int(gam[int(p)])
            w = 0
            while m:
                if m & 1:
                    tuples.add((w,) + a)
                m >>= 1
                w += 1
        return frozenset(tuples)

    # ------------------------------------------------------- smoothness
    def smooth(self, rel: str, tabs: np.ndarray) -> np.ndarray:
        """F4 for point-operator relations: the dual sections are the perp rows of the outputs."""
        args, out = self.domain(rel)
        perp = self.perpd if out == SD else self.perp1
        dual = perp[tabs.astype(np.int64)]            # (M, nargs), masks over the flipped sort
        nflip = self.n1 if out == SD else self.nd
        arg_sorts = RELATION_SORTS[rel][1:]
        ok = np.ones(len(tabs), dtype=bool)
        for w in range(nflip):
            bitw = (dual >> w) & 1
            if len(arg_sorts) == 1:
                sec = (bitw << np.arange(len(args), dtype=np.int64)).sum(axis=1)
                ok &= self.stable[arg_sorts[0]][sec]
            else:
                b3 = bitw.reshape(-1, self.n1, self.nd)
                sec_x = (b3 << np.arange(self.n1, dtype=np.int64)[None, :, None]).sum(axis=1)
                sec_v = (b3 << np.arange(self.nd, dtype=np.int64)[None, None, :]).sum(axis=2)
                ok &= self.stable[S1][sec_x].all(axis=1)
                ok &= self.stable[SD][sec_v].all(axis=1)
        return ok

    def heyting(self, tabs: np.ndarray) -> np.ndarray:
        """FHEYT per ▷ table: each R111 section equals the meet of two principal up-sets."""
        P = self.perpd[tabs.astype(np.int64)].reshape(len(tabs), self.n1, self.nd)
        primed = self.primed_d
        g1 = self.gamma[S1]
        ok = np.ones(len(tabs), dtype=bool)
        for z in range(self.n1):
            for x in range(self.n1):
                rd11 = (((P[:, z, :] >> x) & 1) << np.arange(self.nd, dtype=np.int64)).sum(axis=1)
                ok &= primed[rd11] == (g1[z] & g1[x])
        return ok

    # ---------------------------------------------------- operator tables
    def op_tables(self, rel: str, tabs: np.ndarray) -> np.ndarray:
        t = tabs.astype(np.int64)
        M = len(t)
        if rel == "Rbox":
            P = self.perpd[t]                             # (M, nd)
            out = np.empty((M, self.g), dtype=np.int32)
            for i, ap in enumerate(self.primes):
                vs = [v for v in range(self.nd) if (ap >> v) & 1]
                m = np.bitwise_and.reduce(P[:, vs], axis=1) if vs else np.full(M, self.full1)
                out[:, i] = self.gidx[m & self.full1]
            return out
        if rel == "Rdia":
            Gm = self.gamma[S1][t]                        # (M, n1)
            out = np.empty((M, self.g), dtype=np.int32)
            for i, a in enumerate(self.sets):
                xs = [x for x in range(self.n1) if (a >> x) & 1]
                m = np.bitwise_or.reduce(Gm[:, xs], axis=1) if xs else np.zeros(M, dtype=np.int64)
                out[:, i] = self.gidx[self.close1[m]]
            return out
        P = self.perpd[t].reshape(M, self.n1, self.nd)
        out = np.empty((M, self.g, self.g), dtype=np.int32)
        for i, a in enumerate(self.sets):
            xs = [x for x in range(self.n1) if (a >> x) & 1]
            for j, cp in enumerate(self.primes):
                vs = [v for v in range(self.nd) if (cp >> v) & 1]
                if xs and vs:
                    m = np.bitwise_and.reduce(P[:, xs][:, :, vs].reshape(M, -1), axis=1)
                else:
                    m = np.full(M, self.full1)
                out[:, i, j] = self.gidx[m & self.full1]
        return out


@dataclass
class _Cands:
    """Point-operator candidates of one relation that pass its own class checks."""
    rel: str
    tables: np.ndarray          # (M, nargs)
    optab: np.ndarray           # (M, g) or (M, g, g)
    extra: list = field(default_factory=list)   # per-candidate data for coupling checks
    _uniq: tuple | None = None

    def unique(self) -> tuple[np.ndarray, np.ndarray]:
        """Distinct operator tables and the map from candidates to them."""
        if self._uniq is None and not len(self.optab):
            self._uniq = (self.optab, np.zeros(0, dtype=np.int64))
        if self._uniq is None:
            flat = self.optab.reshape(len(self.optab), -1)
            u, inv = np.unique(flat, axis=0, return_inverse=True)
            self._uniq = (u.reshape((-1,) + self.optab.shape[1:]), inv.reshape(-1))
        return self._uniq


@dataclass
class _Universe:
    ctx: _Context
    rels: tuple[str, ...]
    cands: dict
    fk: np.ndarray | None = None     # (Mbox, Mimp)
    bd: np.ndarray | None = None     # (Mbox, Mdia)

    def allowed(self, rel: str, choice: dict) -> np.ndarray:
        n = len(self.cands[rel].tables)
        ok = np.ones(n, dtype=bool)
        if "Rbox" in choice and choice["Rbox"] is not None:
            b = choice["Rbox"]
            if rel == "T" and self.fk is not None:
                ok &= self.fk[b]
            if rel == "Rdia" and self.bd is not None:
                ok &= self.bd[b]
        return np.flatnonzero(ok)

    def frame(self, choice: dict) -> SortedFrame:
        c = self.ctx
        rels = {r: c.relation(r, self.cands[r].tables[i]) for r, i in choice.items()}
        return frame_of(c.n1, c.nd, c.imask, **rels)


def _frame_level_ok(ctx: _Context, axioms) -> bool:
    if "FB" in axioms and not check_frame_axiom(ctx.frame, "F1").passed:
        return False   # FB is n/a on frames that are not separated
    for a in FRAME_LEVEL:
        if a in axioms and not check_frame_axiom(ctx.frame, a).passed:
            return False
    return True


def _box_extra(ctx: _Context, table) -> dict:
    """Masks used by the coupling checks: s11 rows, box1 point map (or None)."""
    F = frame_of(ctx.n1, ctx.nd, ctx.imask, Rbox=ctx.relation("Rbox", table))
    inv = {}
    for u in range(ctx.n1):
        inv.setdefault(F.gamma(u, S1), u)
    s11 = F.s11
    b1 = [inv.get(m) for m in s11]
    return {"s11": s11, "box1": None if None in b1 else b1, "box_dd": F.box_dd}


def _candidates(ctx: _Context, r: str, axioms) -> _Cands:
    tabs = ctx.monotone_tables(r)
    if "F4" in axioms or "FB" in axioms:
        tabs = tabs[ctx.smooth(r, tabs)]
    if r == "T" and "FHEYT" in axioms and len(tabs):
        tabs = tabs[ctx.heyting(tabs)]
    checks = [a for a in PER_RELATION[r] if a in axioms and a != "FHEYT"]
    if checks and len(tabs):
        keep = []
        for k, row in enumerate(tabs):
            F = frame_of(ctx.n1, ctx.nd, ctx.imask, **{r: ctx.relation(r, row)})
            status = [check_frame_axiom(F, a).status for a in checks]
            if all(st != "fail" and (st != NA or a in ("F5", "F6"))
                   for a, st in zip(checks, status)):
                keep.append(k)
        tabs = tabs[keep]
    extra = [_box_extra(ctx, row) for row in tabs] if r == "Rbox" else []
    optab = ctx.op_tables(r, tabs) if len(tabs) else \
        np.zeros((0,) + (ctx.g,) * (2 if r == "T" else 1), dtype=np.int32)
    return _Cands(r, tabs, optab, extra)


def build_universe(ctx: _Context, rels, axioms, shared: dict | None = None) -> _Universe | None:
    """Per-relation candidates and coupling matrices, or None if the polarity is excluded.

    ``shared`` caches candidates and coupling matrices between universes
    over the same polarity and class.
    """
    if not _frame_level_ok(ctx, axioms):
        return None
    shared = {} if shared is None else shared
    cands = {}
    for r in rels:
        if r not in shared:
            shared[r] = _candidates(ctx, r, axioms)
        cands[r] = shared[r]
    U = _Universe(ctx, tuple(rels), cands)
    if "FK" in axioms:
        if "fk" not in shared:
            shared["fk"] = _fk_matrix(ctx, cands["Rbox"], cands["T"])
        U.fk = shared["fk"]
    if any(a in axioms for a in ("FD", "FB", "FS5")):
        if "bd" not in shared:
            shared["bd"] = _bd_matrix(ctx, cands["Rbox"], cands["Rdia"], axioms)
        U.bd = shared["bd"]
    return U


def _fk_matrix(ctx: _Context, box: _Cands, imp: _Cands) -> np.ndarray:
    """FK literally: w ⪯ x▷y implies ⊟w ⪯ (⊟x)▷(⊟y), with ⊟x the S11box point map on Z1."""
    M = len(imp.tables)
    T = imp.tables.astype(np.int64).reshape(M, ctx.n1, ctx.nd)
    led = ctx.leq[SD]
    out = np.zeros((len(box.tables), M), dtype=bool)
    for bi, (row, ex) in enumerate(zip(box.tables, box.extra)):
        b1 = ex["box1"]
        if b1 is None:
            continue
        b = row.astype(np.int64)
        Ub = T[:, b1][:, :, b]                               # (⊟x)▷(⊟y)
        ok = np.ones(M, dtype=bool)
        for w in range(ctx.nd):
            ok &= (~led[w][T] | led[b[w]][Ub]).all(axis=(1, 2))
        out[bi] = ok
    return out


def _bd_matrix(ctx: _Context, box: _Cands, dia: _Cands, axioms) -> np.ndarray:
    g1 = ctx.gamma[S1]
    out = np.zeros((len(box.tables), len(dia.tables)), dtype=bool)
    n1, nd = ctx.n1, ctx.nd
    for bi, (brow, ex) in enumerate(zip(box.tables, box.extra)):
        s11, b1, bdd = ex["s11"], ex["box1"], ex["box_dd"]
        box_dual = [int(ctx.perpd[int(brow[v])]) for v in range(nd)]
        for di, drow in enumerate(dia.tables):
            dsec = [int(g1[int(drow[x])]) for x in range(n1)]
            ok = True
            if "FD" in axioms:
                ok = all(subset(s11[x], dsec[x]) for x in range(n1))
            if ok and "FB" in axioms:
                dia_dual = [int(ctx.perp1[int(drow[x])]) for x in range(n1)]
                ok = all(((box_dual[y] >> x) & 1) == ((dia_dual[x] >> y) & 1)
                         for x in range(n1) for y in range(nd))
            if ok and "FS5" in axioms:
                ok = b1 is not None and all(
                    subset(bdd[int(drow[x])], dsec[x]) and subset(dsec[b1[x]], s11[x])
                    for x in range(n1))
            out[bi, di] = ok
    return out


# ------------------------------------------------------ batched evaluation

def _eval(ctx: _Context, phi, env, fixed: dict, batch_rel: str | None, batch_tab):
    """Evaluate with env arrays of shape (1, V); ``fixed`` maps relations to single tables.

    Subterms free of the batched relation stay at shape (1, V); the others
    have one row per batched table.
    """
    memo: dict = {}
    g = ctx.g
    V = next(iter(env.values())).shape[1] if env else 1
    meet, join = ctx.meet.ravel(), ctx.join.ravel()
    flat = batch_tab.reshape(len(batch_tab), -1) if batch_tab is not None else None
    conn_rel = {fm.Box: "Rbox", fm.Dia: "Rdia", fm.Imp: "T"}

    def pair(f):
        a, b = ev(f.left), ev(f.right)
        return a * g + b

    def ev(f):
        if f in memo:
            return memo[f]
        if isinstance(f, fm.Var):
            r = env[f.index]
        elif isinstance(f, fm.Top):
            r = np.full((1, V), ctx.G.top, dtype=np.intp)
        elif isinstance(f, fm.Bot):
            r = np.full((1, V), ctx.G.bottom, dtype=np.intp)
        elif isinstance(f, fm.And):
            r = meet[pair(f)]
        elif isinstance(f, fm.Or):
            r = join[pair(f)]
        else:
            rel = conn_rel[type(f)]
            idx = pair(f) if rel == "T" else ev(f.arg)
            if rel == batch_rel:
                if idx.shape[0] != flat.shape[0]:
                    idx = np.broadcast_to(idx, (flat.shape[0], idx.shape[1]))
                r = np.take_along_axis(flat, idx, axis=1)
            else:
                r = fixed[rel].ravel()[idx]
        memo[f] = r
        return r

    return ev(phi)


def _fail_vector(ctx: _Context, s: fm.Sequent, fixed: dict, batch_rel: str | None,
                 tabs: np.ndarray | None) -> np.ndarray:
    """Whether the sequent fails, per batched table (or a length-1 array without a batch)."""
    vs = sorted(fm.variables(s.left) | fm.variables(s.right))
    k = len(vs)
    V = ctx.g ** k
    grid = np.indices((ctx.g,) * k, dtype=np.intp).reshape(k, -1) if k else np.zeros((0, 1), np.intp)
    env = {v: grid[i][None, :] for i, v in enumerate(vs)}
    leq = ctx.leqG.ravel()
    if batch_rel is None:
        left = _eval(ctx, s.left, env, fixed, None, None)
        right = _eval(ctx, s.right, env, fixed, None, None)
        return np.array([bool((~leq[left * ctx.g + right]).any())])
    M = len(tabs)
    out = np.zeros(M, dtype=bool)
    step = max(1, EVAL_CHUNK // max(V, 1))
    for lo in range(0, M, step):
        part = tabs[lo:lo + step].astype(np.intp, copy=False)
        m = len(part)
        left = _eval(ctx, s.left, env, fixed, batch_rel, part)
        right = _eval(ctx, s.right, env, fixed, batch_rel, part)
        bad = ~leq[left * ctx.g + right]
        out[lo:lo + m] = np.broadcast_to(bad, (m, bad.shape[1])).any(axis=1)
    return out


class _Failures:
    """Memoized failure vectors for the sequent's relations."""

    def __init__(self, U: _Universe, s: fm.Sequent, used: tuple[str, ...]):
        self.U, self.s, self.used = U, s, used
        self.last = used[-1] if used else None
        self.memo: dict = {}

    def vector(self, choice: dict) -> np.ndarray:
        """Failure flags for every candidate of the last used relation (or a single flag)."""
        outer = tuple(r for r in self.used if r != self.last)
        fixed = {r: self.U.cands[r].optab[choice[r]] for r in outer}
        key = tuple(fixed[r].tobytes() for r in outer)
        if key not in self.memo:
            if self.last is None:
                self.memo[key] = _fail_vector(self.U.ctx, self.s, fixed, None, None)
            elif not len(self.U.cands[self.last].tables):
                self.memo[key] = np.zeros(0, dtype=bool)
            else:
                tabs, inv = self.U.cands[self.last].unique()
                self.memo[key] = _fail_vector(self.U.ctx, self.s, fixed, self.last, tabs)[inv]
        return self.memo[key]


def _first_failure_in_universe(U: _Universe, s: fm.Sequent) -> dict | None:
    """Least candidate choice (in canonical order) whose frame refutes ``s``."""
    used = tuple(r for r in U.rels if r in relations_used(s))
    fails = _Failures(U, s, used)
    rels = U.rels
    if fails.last is None and not fails.vector({})[0]:
        return None

    def rec(pos: int, choice: dict):
        if pos == len(rels):
            if fails.last is None:
                return dict(choice) if fails.vector(choice)[0] else None
            return dict(choice)
        r = rels[pos]
        allowed = U.allowed(r, choice)
        if not len(allowed):
            return None
        if r == fails.last:
            vec = fails.vector(choice)[allowed]
            for idx in np.flatnonzero(vec):
                choice[r] = int(allowed[idx])
                res = rec(pos + 1, choice)
                del choice[r]
                if res is not None:
                    return res
                if r != "Rbox":   # later relations do not depend on this choice
                    return None
            return None
        if r in used or r == "Rbox":
            for a in allowed:
                choice[r] = int(a)
                res = rec(pos + 1, choice)
                del choice[r]
                if res is not None:
                    return res
            return None
        choice[r] = int(allowed[0])
        res = rec(pos + 1, choice)
        del choice[r]
        return res

    return rec(0, {})


# ----------------------------------------------------------------- streams

def _i_masks(bounds: SearchBounds, start: tuple[int, int, int] | None):
    count = 0
    for n1, nd in size_pairs(bounds.max1, bounds.maxd):
        if start is not None and (n1, nd) < start[:2]:
            continue
        first = start[2] if start is not None and (n1, nd) == tuple(start[:2]) else 0
        for imask in range(first, 1 << (n1 * nd)):
            if bounds.budget is not None and count >= bounds.budget:
                raise BudgetExhausted((n1, nd, imask))
            count += 1
            yield n1, nd, imask


def _raw_relations(n1: int, nd: int, rel: str):
    sizes = {S1: n1, SD: nd}
    space = list(itertools.product(*(range(sizes[s]) for s in RELATION_SORTS[rel])))
    for bits in range(1 << len(space)):
        yield frozenset(t for k, t in enumerate(space) if (bits >> k) & 1)


def enumerate_frames(bounds: SearchBounds, start: tuple[int, int, int] | None = None):
    """Deterministic stream of frames in the class, in canonical order."""
    rels = _ordered(bounds.relations if bounds.relations is not None
                    else relations_required(bounds.axioms))
    for n1, nd, imask in _i_masks(bounds, start):
        if not bounds.point_mode:
            for combo in itertools.product(*(_raw_relations(n1, nd, r) for r in rels)):
                F = frame_of(n1, nd, imask, **dict(zip(rels, combo)))
                if in_class(F, bounds.axioms):
                    yield F
            continue
        U = build_universe(_Context(n1, nd, imask), rels, bounds.axioms)
        if U is None:
            continue
        yield from _universe_frames(U)


def _universe_frames(U: _Universe):
    rels = U.rels

    def rec(pos, choice):
        if pos == len(rels):
            yield U.frame(choice)
            return
        r = rels[pos]
        for a in U.allowed(r, choice):
            choice[r] = int(a)
            yield from rec(pos + 1, choice)
            del choice[r]

    yield from rec(0, {})


# --------------------------------------------------------- countermodels

@dataclass(frozen=True)
class Countermodel:
    frame: SortedFrame
    valuation: dict          # variable index -> mask over Z1
    witness: int             # point of Z1 in [[left]] but not in [[right]]
    position: tuple          # (|Z1|, |Zd|, I bitmask)


def _countermodel_from_frame(F: SortedFrame, s: fm.Sequent, position) -> Countermodel:
    ok, val = check_sequent_frame(F, s)
    if ok:
        raise AssertionError("search selected a frame that validates the sequent")
    vs = sorted(fm.variables(s.left) | fm.variables(s.right))
    model = Model(F, {v: val[v] for v in vs})
    holds, point = check_sequent_model(model, s)
    assert not holds
    return Countermodel(F, dict(val), point, position)


def _search_block(args):
    """Worker: first refuting (imask, choice) within one block of I-bitmasks."""
    s_text, n1, nd, lo, hi, axioms, rels = args
    s = fm.parse_sequent(s_text)
    for imask in range(lo, hi):
        U = build_universe(_Context(n1, nd, imask), rels, axioms)
        if U is None:
            continue
        choice = _first_failure_in_universe(U, s)
        if choice is not None:
            return imask, choice
    return None


def find_countermodel(s: fm.Sequent, bounds: SearchBounds, jobs: int = 1,
                      start: tuple[int, int, int] | None = None) -> Countermodel | None:
    """First frame (canonical order) in the class refuting ``s``, with valuation and witness.

    None means the bounds were exhausted, which is inconclusive.
    """
    rels = _ordered(set(relations_used(s)) | set(relations_required(bounds.axioms))
                    | set(bounds.relations or ()))
    if not bounds.point_mode:
        for F in _raw_stream(bounds, rels, start):
            ok, _ = check_sequent_frame(F, s)
            if not ok:
                return _countermodel_from_frame(F, s, F.__dict__.get("_position"))
        return None
    if jobs > 1 and bounds.budget is None:
        return _parallel_countermodel(s, bounds, rels, jobs, start)
    for n1, nd, imask in _i_masks(bounds, start):
        U = build_universe(_Context(n1, nd, imask), rels, bounds.axioms)
        if U is None:
            continue
        choice = _first_failure_in_universe(U, s)
        if choice is not None:
            return _countermodel_from_frame(U.frame(choice), s, (n1, nd, imask))
    return None


def _raw_stream(bounds, rels, start):
    for n1, nd, imask in _i_masks(bounds, start):
        for combo in itertools.product(*(_raw_relations(n1, nd, r) for r in rels)):
            F = frame_of(n1, nd, imask, **dict(zip(rels, combo)))
            if in_class(F, bounds.axioms):
                F.__dict__["_position"] = (n1, nd, imask)
                yield F


def _parallel_countermodel(s, bounds, rels, jobs, start):
    text = str(s)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for n1, nd in size_pairs(bounds.max1, bounds.maxd):
            if start is not None and (n1, nd) < tuple(start[:2]):
                continue
            lo0 = start[2] if start is not None and (n1, nd) == tuple(start[:2]) else 0
            total = 1 << (n1 * nd)
            step = max(1, (total - lo0 + jobs * 4 - 1) // (jobs * 4))
            blocks = [(text, n1, nd, lo, min(lo + step, total), bounds.axioms, rels)
                      for lo in range(lo0, total, step)]
            # blocks are merged in order, so the first hit is the canonical one
            for res in pool.map(_search_block, blocks):
                if res is not None:
                    imask, choice = res
                    U = build_universe(_Context(n1, nd, imask), rels, bounds.axioms)
                    return _countermodel_from_frame(U.frame(choice), s, (n1, nd, imask))
    return None


def validate_sequents(seqs, bounds: SearchBounds) -> list[Countermodel | None]:
    """First countermodel (or None) for each sequent, sharing the per-polarity work.

    Each result equals what ``find_countermodel`` returns for that sequent alone.
    """
    if not bounds.point_mode:
        return [find_countermodel(s, bounds) for s in seqs]
    req = set(relations_required(bounds.axioms)) | set(bounds.relations or ())
    rels = [_ordered(set(relations_used(s)) | req) for s in seqs]
    results: list[Countermodel | None] = [None] * len(seqs)
    pending = list(range(len(seqs)))
    for n1, nd, imask in _i_masks(bounds, None):
        if not pending:
            break
        ctx = _Context(n1, nd, imask)
        shared: dict = {}
        still = []
        for i in pending:
            U = build_universe(ctx, rels[i], bounds.axioms, shared)
            if U is None:
                still.append(i)
                continue
            choice = _first_failure_in_universe(U, seqs[i])
            if choice is None:
                still.append(i)
            else:
                results[i] = _countermodel_from_frame(U.frame(choice), seqs[i], (n1, nd, imask))
        pending = still
    return results


def valid_in_class(s: fm.Sequent, bounds: SearchBounds, jobs: int = 1) -> bool:
    return find_countermodel(s, bounds, jobs=jobs) is None
