"""Canonical frame of a finite NLE: filters against ideals.

Sort 1 points are the nonempty filters and sort d points the nonempty
ideals; ``x I y`` iff ``x ∩ y = ∅``.  Every operator ``f`` of type
``(j1,...,jn; j)`` yields a relation ``w R u⃗`` iff ``f(a⃗) ∈ w`` whenever
``a_k ∈ u_k`` for all k, with filters for 1-typed and ideals for
d-typed places.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import complex as cx
from .axioms import check_frame_axiom
from .bits import iter_bits, subset
from .frame import S1, SD, DEFAULT_CAP, SortedFrame, stable_lattice
from .logics import FRAME_AXIOM
from .nle import FiniteNLE, FilterOrIdeal, check_equation, filters_ideals
from .report import Check, Report, verdict

STANDARD_RELATION = {"box": "rbox", "dia": "rdia", "imp": "t"}


@dataclass(frozen=True, eq=False)
class CanonicalFrame:
    frame: SortedFrame
    nle: FiniteNLE
    filters: tuple[FilterOrIdeal, ...]
    ideals: tuple[FilterOrIdeal, ...]
    X: tuple[int, ...]   # a -> mask of filters containing a
    Y: tuple[int, ...]   # a -> mask of ideals containing a
    relations: dict = field(default_factory=dict)   # op name -> frozenset of tuples
    point_ops: dict = field(default_factory=dict)   # name -> {args: point}


def _point_names(N: FiniteNLE, items, kind: str) -> tuple[str, ...]:
    L = N.lattice
    out = []
    for it in items:
        gen = L.meet_all(it.members) if kind == "up" else L.join_all(it.members)
        out.append(f"{kind}_{L.names[gen]}")
    return tuple(out)


def _generated_ideal(N: FiniteNLE, elems) -> int:
    L = N.lattice
    return L.down(L.join_all(elems))


def _generated_filter(N: FiniteNLE, elems) -> int:
    L = N.lattice
    return L.up(L.meet_all(elems))


def canonical_frame(N: FiniteNLE) -> CanonicalFrame:
    L = N.lattice
    filt, idl = filters_ideals(L)
    points = {S1: filt, SD: idl}
    z1 = _point_names(N, filt, "up")
    zd = _point_names(N, idl, "down")
    I = frozenset((i, j) for i, x in enumerate(filt) for j, y in enumerate(idl)
                  if x.mask & y.mask == 0)

    relations = {}
    for name, f in N.ops.items():
        sorts = (f.dtype.out,) + f.dtype.args
        tuples = set()
        for combo in itertools.product(*(range(len(points[s])) for s in sorts[1:])):
            member_lists = [points[s][c].members for s, c in zip(sorts[1:], combo)]
            values = {f.table[a] for a in itertools.product(*member_lists)}
            for w, pt in enumerate(points[sorts[0]]):
                if all((pt.mask >> v) & 1 for v in values):
                    tuples.add((w,) + combo)
        relations[name] = frozenset(tuples)

    idx = {S1: {x.mask: i for i, x in enumerate(filt)}, SD: {y.mask: i for i, y in enumerate(idl)}}
    point_ops = {}
    if "box" in N.ops:
        bx = N.ops["box"].table
        point_ops["box"] = {(j,): idx[SD][_generated_ideal(N, [bx[(a,)] for a in y.members])]
                            for j, y in enumerate(idl)}
        point_ops["box1"] = {(i,): idx[S1][_generated_filter(N, [bx[(a,)] for a in x.members])]
                             for i, x in enumerate(filt)}
    if "dia" in N.ops:
        dt = N.ops["dia"].table
        point_ops["dia"] = {(i,): idx[S1][_generated_filter(N, [dt[(a,)] for a in x.members])]
                            for i, x in enumerate(filt)}
    if "imp" in N.ops:
        it = N.ops["imp"].table
        point_ops["imp"] = {(i, j): idx[SD][_generated_ideal(
            N, [it[(a, b)] for a in x.members for b in y.members])]
            for i, x in enumerate(filt) for j, y in enumerate(idl)}

    kw = {STANDARD_RELATION[n]: relations[n] for n in relations
          if n in STANDARD_RELATION and N.ops[n].dtype == _std_type(n)}
    frame = SortedFrame(z1, zd, I, **kw)
    X = tuple(sum(1 << i for i, x in enumerate(filt) if (x.mask >> a) & 1) for a in range(L.size))
    Y = tuple(sum(1 << j for j, y in enumerate(idl) if (y.mask >> a) & 1) for a in range(L.size))
    return CanonicalFrame(frame, N, tuple(filt), tuple(idl), X, Y, relations, point_ops)


def _std_type(name: str):
    from .nle import STANDARD_TYPES
    return STANDARD_TYPES[name]


def generic_operator(C: CanonicalFrame, name: str, args: tuple[int, ...]) -> int:
    """The stable operator of the relation built for ``name``, on stable sets of sort 1.

    Arguments in d-typed places are primed first; the image is closed (out
    type 1) or primed back to sort 1 (out type d).
    """
    F = C.frame
    f = C.nle.ops[name]
    sorts = (f.dtype.out,) + f.dtype.args
    secs: dict = {}
    for tup in C.relations[name]:
        secs[tup[1:]] = secs.get(tup[1:], 0) | (1 << tup[0])
    pts = [list(iter_bits(a if s == S1 else F.prime(a, S1))) for a, s in zip(args, sorts[1:])]
    img = 0
    for combo in itertools.product(*pts):
        img |= secs.get(combo, 0)
    return F.close(img, S1) if sorts[0] == S1 else F.prime(img, SD)


def verify_representation(N: FiniteNLE, cap: int = DEFAULT_CAP) -> Report:
    """Check that a ↦ X_a is an NLE isomorphism onto the full complex algebra."""
    C = canonical_frame(N)
    F, L, X = C.frame, N.lattice, C.X
    G = stable_lattice(F, S1, cap)
    names = L.names
    n = L.size
    checks: list[Check] = []

    wit = None
    if len(set(X)) != n:
        wit = ("not injective",)
    elif set(X) != set(G.sets):
        missing = sorted(set(G.sets) - set(X))
        wit = (F.label(missing[0], S1),) if missing else ("image not stable",)
    checks.append(verdict("bijection", wit))

    def first(pred, arity):
        for combo in itertools.product(range(n), repeat=arity):
            if not pred(*combo):
                return tuple(names[c] for c in combo)
        return None

    checks.append(verdict("order", first(lambda a, b: L.leq[a][b] == subset(X[a], X[b]), 2)))
    checks.append(verdict("meet", first(lambda a, b: X[L.meet[a][b]] == X[a] & X[b], 2)))
    checks.append(verdict("join", first(lambda a, b: X[L.join[a][b]] == F.close(X[a] | X[b], S1), 2)))
    checks.append(verdict("bottom", None if X[L.bottom] == F.close(0, S1) else (names[L.bottom],)))
    checks.append(verdict("top", None if X[L.top] == F.full(S1) else (names[L.top],)))

    for name, f in N.ops.items():
        if name == "box" and F.has("Rbox"):
            pred = lambda a, t=f.table: X[t[(a,)]] == cx.box(F, X[a])
        elif name == "dia" and F.has("Rdia"):
            pred = lambda a, t=f.table: X[t[(a,)]] == cx.dia(F, X[a])
        elif name == "imp" and F.has("T"):
            pred = lambda a, b, t=f.table: X[t[(a, b)]] == cx.implies(F, X[a], X[b])
        else:
            pred = lambda *a, t=f.table, nm=name: X[t[a]] == generic_operator(C, nm, tuple(X[i] for i in a))
        checks.append(verdict(f"op:{name}", first(pred, f.arity)))
    return Report(checks)


# ------------------------------------------------------------ σ / π

@dataclass(frozen=True)
class Extension:
    op: str
    sigma: dict   # stable-set index tuple -> stable-set index
    pi: dict


def _meet_closure(F: SortedFrame, gens) -> set[int]:
    out = {F.full(S1)}
    for g in gens:
        out |= {s & g for s in out}
    return out


def _join_closure(F: SortedFrame, gens) -> set[int]:
    out = {F.close(0, S1)}
    for g in gens:
        out |= {F.close(s | g, S1) for s in out}
    return out


def sigma_pi_extension(N: FiniteNLE, op: str, C: CanonicalFrame | None = None,
                       cap: int = DEFAULT_CAP) -> Extension:
    """σ- and π-extensions of ``op`` on the stable sets of the canonical frame.

    Closed elements are meets of embedded elements and open elements are
    joins of them.  A place is monotone when its type equals the output
    type and antitone otherwise; antitone places swap closed and open
    elements and reverse the comparisons.
    """
    C = C or canonical_frame(N)
    F, L, X = C.frame, N.lattice, C.X
    G = stable_lattice(F, S1, cap)
    f = N.op(op)
    n = L.size
    K = sorted(_meet_closure(F, X))
    O = sorted(_join_closure(F, X))
    mono = [t == f.dtype.out for t in f.dtype.args]
    bottom, top = F.close(0, S1), F.full(S1)

    def big_meet(items):
        out = top
        for m in items:
            out &= m
        return out

    def big_join(items):
        out = 0
        for m in items:
            out |= m
        return F.close(out, S1) if out else bottom

    def below(c, a, k):   # comparison of an extension argument against an embedded element
        return subset(c, X[a]) if mono[k] else subset(X[a], c)

    def above(c, a, k):
        return subset(X[a], c) if mono[k] else subset(c, X[a])

    tuples = list(itertools.product(range(n), repeat=f.arity))
    sig_up, pi_up = {}, {}
    sig_dom = [K if m else O for m in mono]
    pi_dom = [O if m else K for m in mono]
    for cs in itertools.product(*sig_dom):
        sig_up[cs] = big_meet(X[f.table[a]] for a in tuples
                              if all(below(c, ak, k) for k, (c, ak) in enumerate(zip(cs, a))))
    for os_ in itertools.product(*pi_dom):
        pi_up[os_] = big_join(X[f.table[a]] for a in tuples
                              if all(above(o, ak, k) for k, (o, ak) in enumerate(zip(os_, a))))

    sigma, pi = {}, {}
    for us in itertools.product(range(len(G)), repeat=f.arity):
        u = [G.sets[i] for i in us]
        s_val = big_join(v for cs, v in sig_up.items()
                         if all(subset(c, uk) if mono[k] else subset(uk, c)
                                for k, (c, uk) in enumerate(zip(cs, u))))
        p_val = big_meet(v for os_, v in pi_up.items()
                         if all(subset(uk, o) if mono[k] else subset(o, uk)
                                for k, (o, uk) in enumerate(zip(os_, u))))
        sigma[us] = G.index[s_val]
        pi[us] = G.index[p_val]
    return Extension(op, sigma, pi)


# -------------------------------------------------------------- canonicity

def canonicity_report(N: FiniteNLE, axiom_ids, cap: int = DEFAULT_CAP) -> Report:
    """For each algebraic axiom, check the matching frame axiom on the canonical frame."""
    C = canonical_frame(N)
    checks = []
    for a in axiom_ids:
        alg = check_equation(N, a).ok
        fc = check_frame_axiom(C.frame, FRAME_AXIOM[a], cap)
        note = f"{a} {'holds' if alg else 'fails'} in the algebra"
        checks.append(Check(FRAME_AXIOM[a], fc.status, fc.witness, note))
    return Report(checks)
