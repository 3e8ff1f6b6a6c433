"""Named fixtures: two small frames and a corpus of finite NLEs on all lattices of size <= 5."""

from __future__ import annotations

from .frame import SortedFrame, build_frame
from .nle import FiniteLattice, FiniteNLE, build_lattice, build_nle

# lattice name -> (elements, covering pairs); bottom first, top last
LATTICES: dict[str, tuple[tuple[str, ...], tuple[tuple[str, str], ...]]] = {
    "one": (("0",), ()),
    "chain2": (("0", "1"), (("0", "1"),)),
    "chain3": (("0", "a", "1"), (("0", "a"), ("a", "1"))),
    "chain4": (("0", "a", "b", "1"), (("0", "a"), ("a", "b"), ("b", "1"))),
    "diamond": (("0", "a", "b", "1"), (("0", "a"), ("0", "b"), ("a", "1"), ("b", "1"))),
    "chain5": (("0", "a", "b", "c", "1"), (("0", "a"), ("a", "b"), ("b", "c"), ("c", "1"))),
    "m3": (("0", "a", "b", "c", "1"),
           (("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1"))),
    "n5": (("0", "a", "b", "c", "1"), (("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1"))),
    "diamond_top": (("0", "a", "b", "t", "1"),
                    (("0", "a"), ("0", "b"), ("a", "t"), ("b", "t"), ("t", "1"))),
    "diamond_bottom": (("0", "z", "a", "b", "1"),
                       (("0", "z"), ("z", "a"), ("z", "b"), ("a", "1"), ("b", "1"))),
}

NON_DISTRIBUTIVE = ("m3", "n5")
ASSIGNMENTS = ("A", "B", "C")


def lattice(name: str) -> FiniteLattice:
    names, covers = LATTICES[name]
    return build_lattice(names, covers)


def heyting(L: FiniteLattice):
    """Relative pseudocomplement a -> b = join of {c | c ∧ a <= b}."""
    def imp(a, b):
        return L.join_all(c for c in range(L.size) if L.leq[L.meet[c][a]][b])
    return imp


def order_indicator(L: FiniteLattice):
    return lambda a, b: L.top if L.leq[a][b] else L.bottom


def corpus_nle(lat_name: str, assignment: str) -> FiniteNLE:
    """Operator assignment A, B or C on a named lattice.

    A: identity box and dia, imp(a, b) = top iff a <= b, else bottom.
    B: box(a) = top iff a = top, dia(a) = bottom iff a = bottom, Heyting
       imp on distributive lattices and the order indicator otherwise.
    C: box constantly top, dia constantly bottom, imp constantly top.
    """
    L = lattice(lat_name)
    top, bot = L.top, L.bottom
    if assignment == "A":
        ops = [("box", "(d;d)", lambda a: a), ("dia", "(1;1)", lambda a: a),
               ("imp", "(1,d;d)", order_indicator(L))]
    elif assignment == "B":
        imp = order_indicator(L) if lat_name in NON_DISTRIBUTIVE else heyting(L)
        ops = [("box", "(d;d)", lambda a: top if a == top else bot),
               ("dia", "(1;1)", lambda a: bot if a == bot else top),
               ("imp", "(1,d;d)", imp)]
    elif assignment == "C":
        ops = [("box", "(d;d)", lambda a: top), ("dia", "(1;1)", lambda a: bot),
               ("imp", "(1,d;d)", lambda a, b: top)]
    else:
        raise KeyError(assignment)
    return build_nle(L, ops)


def nle_corpus() -> dict[str, FiniteNLE]:
    return {f"{lat}/{a}": corpus_nle(lat, a) for lat in LATTICES for a in ASSIGNMENTS}


def fix_k2(rbox=(("a", "a"), ("b", "b")), rdia=(("a", "a"), ("b", "b")),
           t=(("a", "a", "a"), ("b", "b", "b"))) -> SortedFrame:
    """Classical two-world frame: Z1 = Zd = {a, b} with I the identity."""
    return build_frame(("a", "b"), ("a", "b"), (("a", "a"), ("b", "b")), rbox, rdia, t)


def fix_p2(rbox=(), rdia=(), t=()) -> SortedFrame:
    """Z1 = {x1, x2}, Zd = {y1, y2}, I = {(x1, y2), (x2, y1)}."""
    return build_frame(("x1", "x2"), ("y1", "y2"), (("x1", "y2"), ("x2", "y1")), rbox, rdia, t)


def fixtures() -> dict[str, SortedFrame]:
    """Fixture frames with all three relations present."""
    return {
        "K2": fix_k2(),
        "K2-chain": fix_k2(rbox=(("a", "a"), ("b", "b"), ("a", "b")),
                           rdia=(("a", "a"), ("b", "b"), ("a", "b"))),
        "K2-empty": fix_k2(rbox=(), rdia=(), t=()),
        "P2": fix_p2(rbox=(("y1", "y1"), ("y2", "y2")), rdia=(("x1", "x1"), ("x2", "x2")),
                     t=(("y1", "x1", "y1"), ("y2", "x2", "y2"))),
        "P2-empty": fix_p2(),
    }
