"""Frame-correspondence checks shared by the axiom tests and the acceptance run.

Each ``items_*`` function evaluates the equivalent conditions of one
characterization on a frame and returns them as a tuple of booleans; the
equivalence holds on the frame when all entries agree.  The ``implied_*``
functions return (hypothesis, conclusion) pairs for one-way statements.

A point-operator item is None when the operator is undefined (F3 or F5
fails), which only happens on frames outside the refined class.
"""

from __future__ import annotations

from dfml import complex as cx
from dfml.axioms import check_frame_axiom, point_operator
from dfml.bits import subset
from dfml.frame import S1, SD, stable_lattice


def passes(F, axiom_id: str) -> bool:
    return check_frame_axiom(F, axiom_id).passed


def below(F, a: int, b: int, sort: str) -> bool:
    """a ≤ b in the frame order (b lies in the principal up-set of a)."""
    return bool((F.gamma(a, sort) >> b) & 1)


def _transitive(rows) -> bool:
    n = len(rows)
    return all(not (rows[x] >> u) & 1 or subset(rows[u], rows[x]) for x in range(n) for u in range(n))


def _points(ops, fn):
    return None if any(o is None for o in ops) else fn()


def agree(items) -> bool:
    """The defined items of a characterization are all equal."""
    return len({i for i in items if i is not None}) <= 1


def _reflexive(rows) -> bool:
    return all((m >> i) & 1 for i, m in enumerate(rows))


def items_tbox(F) -> tuple[bool, ...]:
    G = stable_lattice(F).sets
    bx = point_operator(F, "box")
    opens = [F.prime(1 << y, SD) for y in range(F.nd)]
    return (
        all(subset(cx.box(F, A), A) for A in G),
        all(subset(cx.box(F, O), O) for O in opens),
        _points([bx], lambda: all(below(F, bx[(y,)], y, SD) for y in range(F.nd))),
        passes(F, "FTbox"),
        _reflexive(F.box_dd),
    )


def items_s4box(F) -> tuple[bool, ...]:
    G = stable_lattice(F).sets
    bx = point_operator(F, "box")
    opens = [F.prime(1 << y, SD) for y in range(F.nd)]
    return (
        all(subset(cx.box(F, A), cx.box(F, cx.box(F, A))) for A in G),
        all(subset(cx.box(F, O), cx.box(F, cx.box(F, O))) for O in opens),
        _points([bx], lambda: all(below(F, bx[(y,)], bx[(bx[(y,)],)], SD) for y in range(F.nd))),
        passes(F, "FS4box"),
        _transitive(F.box_dd),
    )


def items_tdia(F) -> tuple[bool, ...]:
    G = stable_lattice(F).sets
    dp = point_operator(F, "dia")
    return (
        all(subset(A, cx.dia(F, A)) for A in G),
        all(subset(F.gamma(x, S1), cx.dia(F, F.gamma(x, S1))) for x in range(F.n1)),
        _points([dp], lambda: all(below(F, dp[(x,)], x, S1) for x in range(F.n1))),
        passes(F, "FTdia"),
        _reflexive(F.dia_dd),
    )


def items_s4dia(F) -> tuple[bool, ...]:
    G = stable_lattice(F).sets
    dp = point_operator(F, "dia")

    def dd(A):
        return cx.dia(F, cx.dia(F, A))

    return (
        all(subset(dd(A), cx.dia(F, A)) for A in G),
        all(subset(dd(F.gamma(x, S1)), cx.dia(F, F.gamma(x, S1))) for x in range(F.n1)),
        _points([dp], lambda: all(below(F, dp[(x,)], dp[(dp[(x,)],)], S1) for x in range(F.n1))),
        passes(F, "FS4dia"),
        _transitive(F.dia_dd),
    )


def items_d(F) -> tuple[bool, ...]:
    dp, b1 = point_operator(F, "dia"), point_operator(F, "box1")
    xs = range(F.n1)
    return (
        passes(F, "FD"),
        _points([dp, b1], lambda: all(below(F, dp[(x,)], b1[(x,)], S1) for x in xs)),
        _points([b1], lambda: all((F.dia_sec[x] >> b1[(x,)]) & 1 for x in xs)),
        all(subset(cx.box(F, F.gamma(x, S1)), cx.image_op(F, "Rdia", F.gamma(x, S1))) for x in xs),
    )


def implied_d(F) -> tuple[bool, bool]:
    G = stable_lattice(F).sets
    return passes(F, "FD"), all(subset(cx.box(F, A), cx.dia(F, A)) for A in G)


def implied_b(F) -> tuple[bool, bool]:
    G = stable_lattice(F).sets
    res = all(subset(A, cx.box(F, C)) == subset(cx.dia(F, A), C) for A in G for C in G)
    return passes(F, "FB"), res


def s5_inclusions(F) -> tuple[bool, bool]:
    """(◇A ⊆ □◇A for all A, ◇□A ⊆ □A for all A)."""
    G = stable_lattice(F).sets
    first = all(subset(cx.dia(F, A), cx.box(F, cx.dia(F, A))) for A in G)
    second = all(subset(cx.dia(F, cx.box(F, A)), cx.box(F, A)) for A in G)
    return first, second


def distributive(F) -> bool:
    L = stable_lattice(F)
    G = L.sets
    return all(A & L.join(B, C) == L.join(A & B, A & C) for A in G for B in G for C in G)


def heyting(F) -> bool:
    """The stable-set implication is the relative pseudo-complement."""
    G = stable_lattice(F).sets
    for A in G:
        for C in G:
            imp = cx.implies(F, A, C)
            for B in G:
                if subset(B, imp) != subset(A & B, C):
                    return False
    return True


def upset_implication(F) -> bool:
    """x ∈ A⇒C iff every z above x that lies in A lies in C."""
    G = stable_lattice(F).sets
    for A in G:
        for C in G:
            want = sum(1 << x for x in range(F.n1)
                       if all(not below(F, x, z, S1) or not (A >> z) & 1 or (C >> z) & 1
                              for z in range(F.n1)))
            if cx.implies(F, A, C) != want:
                return False
    return True


def k_inclusion(F) -> bool:
    G = stable_lattice(F).sets
    return all(subset(cx.box(F, cx.implies(F, A, C)), cx.implies(F, cx.box(F, A), cx.box(F, C)))
               for A in G for C in G)
