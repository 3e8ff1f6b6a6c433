"""Image operators, their Galois closures and residuals, and the full complex algebra.

All arguments and results are bitmasks.  Stable operators take stable
sets of sort 1 (``A``, ``C``, ``F``) unless stated otherwise; ``da``
and ``tright_bar`` take a co-stable set of sort d as second argument.
"""

from __future__ import annotations

import itertools

from .bits import iter_bits, subset
from .frame import S1, SD, DEFAULT_CAP, FrameError, SortedFrame, stable_lattice
from .nle import BOX_TYPE, DIA_TYPE, IMP_TYPE, FiniteLattice, FiniteNLE, Operator

# argument sorts and output sort of each image operator
IMAGE_SORTS: dict[str, tuple[tuple[str, ...], str]] = {
    "Rbox": ((SD,), SD),
    "Rdia": ((S1,), S1),
    "T": ((S1, SD), SD),
    "R111": ((S1, S1), S1),
}


def _sections(F: SortedFrame, rel: str) -> dict[tuple[int, ...], int]:
    if rel == "R111":
        F.require("T")
        return F.r111
    return F.sections(rel)


def image_op(F: SortedFrame, rel: str, *args: int) -> int:
    """Union of the sections R(w⃗) over all w⃗ in the product of ``args``."""
    arg_sorts, _ = IMAGE_SORTS[rel]
    if len(args) != len(arg_sorts):
        raise FrameError(f"{rel} image takes {len(arg_sorts)} argument(s)")
    for a, s in zip(args, arg_sorts):
        if a >> F.size(s):
            raise FrameError(f"argument outside sort {s}")
    secs = _sections(F, rel)
    out = 0
    for combo in itertools.product(*(list(iter_bits(a)) for a in args)):
        out |= secs[combo]
    return out


# ------------------------------------------------------------ stable ops

def implies(F: SortedFrame, A: int, C: int) -> int:
    """A ⇒ C = (A ▷ C')'."""
    return F.prime(image_op(F, "T", A, F.prime(C, S1)), SD)


def implies_r111(F: SortedFrame, A: int, C: int) -> int:
    """{x | for all u in A, every z with z R111 u x lies in C}."""
    r = F.r111
    out = 0
    for x in range(F.n1):
        if all(subset(r[(u, x)], C) for u in iter_bits(A)):
            out |= 1 << x
    return out


def implies_tprime(F: SortedFrame, A: int, C: int) -> int:
    """{x | x T' u y for all u in A and y in C'} (pointwise T' clause)."""
    Cp = F.prime(C, S1)
    out = 0
    for x in range(F.n1):
        if all((F.t_dual[(u, y)] >> x) & 1 for u in iter_bits(A) for y in iter_bits(Cp)):
            out |= 1 << x
    return out


def box(F: SortedFrame, A: int) -> int:
    """□A = (⟐A')' with ⟐ the image operator of Rbox."""
    return F.prime(image_op(F, "Rbox", F.prime(A, S1)), SD)


def box_dd(F: SortedFrame, A: int) -> int:
    """{x | x R''box ⊆ A}."""
    F.require("Rbox")
    return sum(1 << x for x in range(F.n1) if subset(F.box_dd[x], A))


def box_lower(F: SortedFrame, A: int) -> int:
    """Join over x in A of S11box x."""
    F.require("Rbox")
    u = 0
    for x in iter_bits(A):
        u |= F.s11[x]
    return F.close(u, S1)


def dia(F: SortedFrame, A: int) -> int:
    """◇A = (Rdia-image of A)''."""
    return F.close(image_op(F, "Rdia", A), S1)


def dia_cosat(F: SortedFrame, A: int) -> int:
    """Co-satisfaction route: the prime of {y | y R''dia ⊆ A'}."""
    F.require("Rdia")
    Ap = F.prime(A, S1)
    co = sum(1 << y for y in range(F.nd) if subset(F.dia_dd[y], Ap))
    return F.prime(co, SD)


def odot(F: SortedFrame, U: int, W: int) -> int:
    return image_op(F, "R111", U, W)


def overt(F: SortedFrame, A: int, B: int) -> int:
    """⊚(A, B) = (A ⊙ B)''."""
    return F.close(odot(F, A, B), S1)


def tright_bar(F: SortedFrame, A: int, B: int) -> int:
    """Closure in sort d of the T-image of (A, B), B ⊆ Zd."""
    return F.close(image_op(F, "T", A, B), SD)


def da(F: SortedFrame, A: int, D: int) -> int:
    """Residual of ▷ in its Zd place: {y | A ▷ Γy ⊆ D}."""
    return residual(F, "T", 1, (A, None), D)


STABLE_OPS = {
    "implies": implies,
    "box": box,
    "box_upper": box,
    "dia": dia,
    "overt": overt,
    "box_lower": box_lower,
    "da": da,
    "odot": odot,
    "tright_bar": tright_bar,
}


def stable_op(F: SortedFrame, op_id: str, *args: int) -> int:
    try:
        fn = STABLE_OPS[op_id]
    except KeyError:
        raise FrameError(f"unknown stable operator {op_id!r}") from None
    return fn(F, *args)


_RESIDUAL_BASE = {"overt": "R111", "odot": "R111", "tright_bar": "T", "dia": "Rdia"}


def residual(F: SortedFrame, base: str, k: int, args, target: int) -> int:
    """{u | F(args with Γu at place k) ⊆ target}; ``k`` is 0-based.

    ``base`` names a relation (Rbox, Rdia, T, R111) or one of the stable
    operators built as a closure of its image (overt, tright_bar, dia).
    """
    rel = _RESIDUAL_BASE.get(base, base)
    arg_sorts, _ = IMAGE_SORTS[rel]
    sk = arg_sorts[k]
    out = 0
    for u in range(F.size(sk)):
        a = list(args)
        a[k] = F.gamma(u, sk)
        if subset(image_op(F, rel, *a), target):
            out |= 1 << u
    return out


# ---------------------------------------------------- full complex algebra

def full_complex_algebra(F: SortedFrame, cap: int = DEFAULT_CAP) -> FiniteNLE:
    """The NLE of stable sets of sort 1 with the operators of the present relations."""
    G = stable_lattice(F, S1, cap)
    names = tuple(F.label(m, S1) for m in G.sets)
    lat = FiniteLattice(names, G.leq_table, G.meet_table, G.join_table, G.bottom, G.top)
    ix = G.index
    ops: dict[str, Operator] = {}
    if F.has("Rbox"):
        ops["box"] = Operator("box", BOX_TYPE, {(i,): ix[box(F, a)] for i, a in enumerate(G.sets)})
    if F.has("Rdia"):
        ops["dia"] = Operator("dia", DIA_TYPE, {(i,): ix[dia(F, a)] for i, a in enumerate(G.sets)})
    if F.has("T"):
        ops["imp"] = Operator("imp", IMP_TYPE, {
            (i, j): ix[implies(F, a, c)]
            for i, a in enumerate(G.sets) for j, c in enumerate(G.sets)})
    return FiniteNLE(lat, ops)
