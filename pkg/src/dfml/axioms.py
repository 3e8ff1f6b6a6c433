"""Frame axioms: refined frames (F1-F6) and the conditions for K, D, T, S4, B, S5,
distributivity and the Heyting case."""

from __future__ import annotations

from dataclasses import dataclass, field

from .bits import iter_bits, subset
from .complex import box
from .frame import (RELATION_SORTS, S1, SD, DEFAULT_CAP, SortedFrame, derived_relation,
                    separation_witness, smoothness_witness, stable_lattice)
from .logics import REFINED
from .report import NA, Check, Report, verdict

FRAME_AXIOMS = REFINED + ("FK", "FD", "FTbox", "FTdia", "FS4box", "FS4dia",
                          "FB", "FS5", "FDIST", "FHEYT")

# point operators: name -> (base relation, output sort)
POINT_OPS = {"box": ("Rbox", SD), "dia": ("Rdia", S1), "imp": ("T", SD), "box1": ("Rbox", S1)}


def _na(axiom_id: str, note: str) -> Check:
    return Check(axiom_id, NA, None, note)


def _gamma_inverse(F: SortedFrame, sort: str) -> dict[int, int]:
    inv: dict[int, int] = {}
    for u in range(F.size(sort)):
        inv.setdefault(F.gamma(u, sort), u)
    return inv


def point_operator(F: SortedFrame, name: str) -> dict[tuple[int, ...], int] | None:
    """The point map whose principal up-sets are the sections, or None if a section is not closed.

    ``box``: ⊟ on Zd from Rbox; ``dia``: ◆ on Z1; ``imp``: ▷ on Z1×Zd;
    ``box1``: ⊟ on Z1 from the S11box sections.
    """
    cache = F.__dict__.setdefault("_point_ops", {})
    if name in cache:
        return cache[name]
    rel, sort = POINT_OPS[name]
    if not F.has(rel):
        cache[name] = None
        return None
    secs = {(x,): m for x, m in enumerate(F.s11)} if name == "box1" else F.sections(rel)
    inv = _gamma_inverse(F, sort)
    out: dict[tuple[int, ...], int] | None = {}
    for args, m in secs.items():
        if m not in inv:
            out = None
            break
        out[args] = inv[m]
    cache[name] = out
    return out


def _names(F: SortedFrame, sorts, tup) -> tuple[str, ...]:
    return tuple(F.names(s)[p] for s, p in zip(sorts, tup))


# --------------------------------------------------------------- refined

def _f2(F: SortedFrame) -> Check:
    present = [r for r in RELATION_SORTS if F.has(r)]
    for rel in present:
        sorts = RELATION_SORTS[rel]
        tuples = F.relation(rel)
        for tup in sorted(tuples):
            for k, s in enumerate(sorts):
                le = F.leq(s)
                for p in range(F.size(s)):
                    moved = p != tup[k] and (le[tup[k]][p] if k == 0 else le[p][tup[k]])
                    if moved:
                        new = tup[:k] + (p,) + tup[k + 1:]
                        if new not in tuples:
                            return verdict("F2", (rel, *_names(F, sorts, tup), F.names(s)[p]),
                                           note=f"place {k + 1}")
    return verdict("F2", None)


def _f3(F: SortedFrame) -> Check:
    for rel, name in (("Rbox", "box"), ("Rdia", "dia"), ("T", "imp")):
        if not F.has(rel):
            continue
        if point_operator(F, name) is None:
            sorts = RELATION_SORTS[rel]
            inv = _gamma_inverse(F, sorts[0])
            for args, m in sorted(F.sections(rel).items()):
                if m not in inv:
                    return verdict("F3", (rel, *_names(F, sorts[1:], args)))
    return verdict("F3", None)


def _f4(F: SortedFrame) -> Check:
    for rel in RELATION_SORTS:
        if F.has(rel):
            wit = smoothness_witness(F, RELATION_SORTS[rel], F.relation(rel))
            if wit is not None:
                return verdict("F4", (rel, *wit))
    return verdict("F4", None)


def _f5(F: SortedFrame) -> Check:
    if not F.has("Rbox"):
        return _na("F5", "Rbox absent")
    inv = _gamma_inverse(F, S1)
    for x, m in enumerate(F.s11):
        if m not in inv:
            return verdict("F5", (F.z1[x],))
    return verdict("F5", None)


def _f6(F: SortedFrame, cap: int) -> Check:
    if not F.has("Rbox"):
        return _na("F6", "Rbox absent")
    boxed_gamma = [box(F, F.gamma(x, S1)) for x in range(F.n1)]
    for A in stable_lattice(F, S1, cap).sets:
        union_gamma = 0
        rhs = 0
        for x in iter_bits(A):
            union_gamma |= F.gamma(x, S1)
            rhs |= boxed_gamma[x]
        lhs = box(F, F.close(union_gamma, S1))
        if not subset(lhs, F.close(rhs, S1)):
            return verdict("F6", (F.label(A, S1),))
    return verdict("F6", None)


# ------------------------------------------------------------- logics

def _fk(F: SortedFrame) -> Check:
    if not (F.has("Rbox") and F.has("T")):
        return _na("FK", "needs Rbox and T")
    bx, imp, bx1 = point_operator(F, "box"), point_operator(F, "imp"), point_operator(F, "box1")
    if bx is None or imp is None or bx1 is None:
        return _na("FK", "point operators undefined (F3/F5 fail)")
    led = F.leq(SD)
    tsec, bsec = F.t_sec, F.box_sec
    for x in range(F.n1):
        for y in range(F.nd):
            vs = tsec[(bx1[(x,)], bx[(y,)])]
            target = imp[(x, y)]
            for w in range(F.nd):
                if not led[w][target]:
                    continue
                for v in iter_bits(vs):
                    if not (bsec[w] >> v) & 1:
                        return verdict("FK", (F.z1[x], F.zd[y], F.zd[v], F.zd[w]))
    return verdict("FK", None)


def _fd(F: SortedFrame) -> Check:
    if not (F.has("Rbox") and F.has("Rdia")):
        return _na("FD", "needs Rbox and Rdia")
    for x in range(F.n1):
        if not subset(F.s11[x], F.dia_sec[x]):
            return verdict("FD", (F.z1[x],))
    return verdict("FD", None)


def _reflexive(F: SortedFrame, rel: str, axiom_id: str) -> Check:
    if not F.has(rel):
        return _na(axiom_id, f"{rel} absent")
    sort = RELATION_SORTS[rel][0]
    r = F.relation(rel)
    for u in range(F.size(sort)):
        if (u, u) not in r:
            return verdict(axiom_id, (F.names(sort)[u],))
    return verdict(axiom_id, None)


def _transitive(F: SortedFrame, rel: str, axiom_id: str) -> Check:
    if not F.has(rel):
        return _na(axiom_id, f"{rel} absent")
    sort = RELATION_SORTS[rel][0]
    r = F.relation(rel)
    nm = F.names(sort)
    for (a, b) in sorted(r):
        for (b2, c) in sorted(r):
            if b2 == b and (a, c) not in r:
                return verdict(axiom_id, (nm[a], nm[b], nm[c]))
    return verdict(axiom_id, None)


def _fb(F: SortedFrame, cap: int) -> Check:
    if not (F.has("Rbox") and F.has("Rdia")):
        return _na("FB", "needs Rbox and Rdia")
    pre = [c for c in (_f1(F), _f2(F), _f3(F), _f4(F)) if not c.passed]
    if pre:
        return _na("FB", "requires F1-F4 (" + ",".join(c.id for c in pre) + " fail)")
    for x in range(F.n1):
        for y in range(F.nd):
            left = (F.box_dual[y] >> x) & 1
            right = (F.dia_dual[x] >> y) & 1
            if left != right:
                return verdict("FB", (F.z1[x], F.zd[y]))
    return verdict("FB", None)


def _fs5(F: SortedFrame) -> Check:
    if not (F.has("Rbox") and F.has("Rdia")):
        return _na("FS5", "needs Rbox and Rdia")
    dp, bx1 = point_operator(F, "dia"), point_operator(F, "box1")
    if dp is None or bx1 is None:
        return _na("FS5", "point operators undefined (F3/F5 fail)")
    for x in range(F.n1):
        if not subset(F.box_dd[dp[(x,)]], F.dia_sec[x]):
            return verdict("FS5", (F.z1[x],), note="first clause")
        if not subset(F.dia_sec[bx1[(x,)]], F.s11[x]):
            return verdict("FS5", (F.z1[x],), note="second clause")
    return verdict("FS5", None)


def _fdist(F: SortedFrame) -> Check:
    wit = smoothness_witness(F, (S1, S1, S1), derived_relation(F, "Rleq"))
    return verdict("FDIST", wit)


def _fheyt(F: SortedFrame) -> Check:
    if not F.has("T"):
        return _na("FHEYT", "T absent")
    r111 = derived_relation(F, "R111")
    rleq = derived_relation(F, "Rleq")
    diff = sorted(r111 ^ rleq)
    if diff:
        return verdict("FHEYT", _names(F, (S1, S1, S1), diff[0]),
                       note="in R111 only" if diff[0] in r111 else "in Rleq only")
    return verdict("FHEYT", None)


def _f1(F: SortedFrame) -> Check:
    return verdict("F1", separation_witness(F))


def check_frame_axiom(F: SortedFrame, axiom_id: str, cap: int = DEFAULT_CAP) -> Check:
    table = {
        "F1": lambda: _f1(F),
        "F2": lambda: _f2(F),
        "F3": lambda: _f3(F),
        "F4": lambda: _f4(F),
        "F5": lambda: _f5(F),
        "F6": lambda: _f6(F, cap),
        "FK": lambda: _fk(F),
        "FD": lambda: _fd(F),
        "FTbox": lambda: _reflexive(F, "Rbox", "FTbox"),
        "FTdia": lambda: _reflexive(F, "Rdia", "FTdia"),
        "FS4box": lambda: _transitive(F, "Rbox", "FS4box"),
        "FS4dia": lambda: _transitive(F, "Rdia", "FS4dia"),
        "FB": lambda: _fb(F, cap),
        "FS5": lambda: _fs5(F),
        "FDIST": lambda: _fdist(F),
        "FHEYT": lambda: _fheyt(F),
    }
    if axiom_id not in table:
        raise ValueError(f"unknown frame axiom {axiom_id!r}")
    return table[axiom_id]()


@dataclass
class FrameClassReport(Report):
    point_ops: dict = field(default_factory=dict)

    @property
    def refined(self) -> bool:
        """F1-F6 all pass (an axiom about an absent relation holds vacuously)."""
        return all(self.get(a).status != "fail" for a in REFINED if a in self)

    def satisfies(self, axioms) -> bool:
        """Every listed axiom passes; F5/F6 may be n/a when Rbox is absent."""
        for a in axioms:
            c = self.get(a)
            if c.status == "fail" or (c.status == NA and a not in ("F5", "F6")):
                return False
        return True

    def to_dict(self):
        d = super().to_dict()
        d["refined"] = self.refined
        return d


def classify_frame(F: SortedFrame, axioms=None, cap: int = DEFAULT_CAP) -> FrameClassReport:
    ids = FRAME_AXIOMS if axioms is None else tuple(axioms)
    checks = [check_frame_axiom(F, a, cap) for a in ids]
    ops = {name: point_operator(F, name) for name in POINT_OPS}
    return FrameClassReport(checks, ops)


def in_class(F: SortedFrame, axioms, cap: int = DEFAULT_CAP) -> bool:
    """Membership test that stops at the first failing axiom."""
    for a in axioms:
        c = check_frame_axiom(F, a, cap)
        if c.status == "fail" or (c.status == NA and a not in ("F5", "F6")):
            return False
    return True


__all__ = ["FRAME_AXIOMS", "FrameClassReport", "check_frame_axiom", "classify_frame",
           "in_class", "point_operator"]
