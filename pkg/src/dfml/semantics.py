"""Models, interpretation of formulas as stable sets, and sequent validity."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import complex as cx
from . import formula as fm
from .bits import iter_bits, mask_of
from .frame import S1, DEFAULT_CAP, FrameError, SortedFrame, stable_lattice
from .nle import FiniteNLE


class NonStableValuation(ValueError):
    def __init__(self, var: int, closure: int):
        super().__init__(f"valuation of p{var} is not stable (closure {closure:#b})")
        self.var = var
        self.closure = closure


@dataclass(frozen=True, eq=False)
class Model:
    frame: SortedFrame
    valuation: dict  # variable index -> stable mask over Z1


def _as_mask(F: SortedFrame, value) -> int:
    if isinstance(value, int):
        if value >> F.n1:
            raise FrameError("valuation outside Z1")
        return value
    idx = {a: i for i, a in enumerate(F.z1)}
    try:
        return mask_of(idx[v] if isinstance(v, str) else v for v in value)
    except KeyError as exc:
        raise FrameError(f"unknown point {exc.args[0]!r}") from None


def build_model(F: SortedFrame, valuation, close_valuations: bool = False) -> Model:
    """``valuation`` maps variable indices to masks or iterables of point names."""
    val = {}
    for var, value in sorted(valuation.items()):
        m = _as_mask(F, value)
        c = F.close(m, S1)
        if c != m and not close_valuations:
            raise NonStableValuation(var, c)
        val[var] = c
    return Model(F, val)


def interpret(M: Model, phi: fm.Formula, mode: str = "operators") -> int:
    """⟦φ⟧ as a mask over Z1.

    ``operators`` uses the stable operators (□A = (⟐A')', ◇A = (image A)'',
    A ⇒ C = (A ▷ C')').  ``clauses`` follows the satisfaction table
    literally: R''box for □, co-satisfaction through R''dia for ◇ and the
    R111 clause for →.  The two agree on smooth frames.
    """
    F = M.frame
    memo: dict = {}

    def ev(f):
        if f in memo:
            return memo[f]
        if isinstance(f, fm.Var):
            try:
                r = M.valuation[f.index]
            except KeyError:
                raise KeyError(f"unassigned variable p{f.index}") from None
        elif isinstance(f, fm.Top):
            r = F.full(S1)
        elif isinstance(f, fm.Bot):
            r = F.prime(F.full("d"), "d")
        elif isinstance(f, fm.And):
            r = ev(f.left) & ev(f.right)
        elif isinstance(f, fm.Or):
            r = F.prime(F.prime(ev(f.left), S1) & F.prime(ev(f.right), S1), "d")
        elif isinstance(f, fm.Box):
            r = cx.box_dd(F, ev(f.arg)) if mode == "clauses" else cx.box(F, ev(f.arg))
        elif isinstance(f, fm.Dia):
            r = cx.dia_cosat(F, ev(f.arg)) if mode == "clauses" else cx.dia(F, ev(f.arg))
        else:
            a, c = ev(f.left), ev(f.right)
            r = cx.implies_r111(F, a, c) if mode == "clauses" else cx.implies(F, a, c)
        memo[f] = r
        return r

    return ev(phi)


def co_interpret(M: Model, phi: fm.Formula, mode: str = "operators") -> int:
    """⦅φ⦆ = ⟦φ⟧' as a mask over Zd."""
    return M.frame.prime(interpret(M, phi, mode), S1)


def check_sequent_model(M: Model, s: fm.Sequent, mode: str = "operators") -> tuple[bool, int | None]:
    """(True, None) if ⟦left⟧ ⊆ ⟦right⟧, else (False, least point in the difference)."""
    a = interpret(M, s.left, mode)
    b = interpret(M, s.right, mode)
    diff = a & ~b
    if diff == 0:
        return True, None
    return False, next(iter_bits(diff))


# ------------------------------------------------------ algebra evaluation

@dataclass(frozen=True, eq=False)
class AlgebraArrays:
    """Operation tables of a finite NLE as numpy arrays over element indices."""
    meet: np.ndarray
    join: np.ndarray
    leq: np.ndarray
    top: int
    bottom: int
    box: np.ndarray | None = None
    dia: np.ndarray | None = None
    imp: np.ndarray | None = None

    @classmethod
    def of(cls, N: FiniteNLE) -> "AlgebraArrays":
        L = N.lattice
        n = L.size

        def unary(name):
            if name not in N.ops:
                return None
            t = N.ops[name].table
            return np.array([t[(i,)] for i in range(n)], dtype=np.int32)

        imp = None
        if "imp" in N.ops:
            t = N.ops["imp"].table
            imp = np.array([[t[(i, j)] for j in range(n)] for i in range(n)], dtype=np.int32)
        return cls(np.array(L.meet, dtype=np.int32), np.array(L.join, dtype=np.int32),
                   np.array(L.leq, dtype=bool), L.top, L.bottom,
                   unary("box"), unary("dia"), imp)

    @property
    def size(self) -> int:
        return self.meet.shape[0]


def eval_arrays(alg: AlgebraArrays, phi: fm.Formula, env: dict[int, np.ndarray]) -> np.ndarray:
    """Evaluate ``phi`` for a whole batch of assignments at once."""
    shape = next(iter(env.values())).shape if env else (1,)
    memo: dict = {}

    def ev(f):
        if f in memo:
            return memo[f]
        if isinstance(f, fm.Var):
            r = env[f.index]
        elif isinstance(f, fm.Top):
            r = np.full(shape, alg.top, dtype=np.int32)
        elif isinstance(f, fm.Bot):
            r = np.full(shape, alg.bottom, dtype=np.int32)
        elif isinstance(f, fm.And):
            r = alg.meet[ev(f.left), ev(f.right)]
        elif isinstance(f, fm.Or):
            r = alg.join[ev(f.left), ev(f.right)]
        elif isinstance(f, fm.Box):
            if alg.box is None:
                raise FrameError("box needs Rbox")
            r = alg.box[ev(f.arg)]
        elif isinstance(f, fm.Dia):
            if alg.dia is None:
                raise FrameError("diamond needs Rdia")
            r = alg.dia[ev(f.arg)]
        else:
            if alg.imp is None:
                raise FrameError("implication needs T")
            r = alg.imp[ev(f.left), ev(f.right)]
        memo[f] = r
        return r

    return ev(phi)


def assignment_grid(n: int, k: int) -> np.ndarray:
    """All k-tuples over range(n) in lexicographic order, shape (k, n**k)."""
    if k == 0:
        return np.zeros((0, 1), dtype=np.int32)
    return np.indices((n,) * k, dtype=np.int32).reshape(k, -1)


def first_failure(alg: AlgebraArrays, s: fm.Sequent) -> tuple[int, ...] | None:
    """Least element tuple (over the sequent's sorted variables) refuting ``s``."""
    vs = sorted(fm.variables(s.left) | fm.variables(s.right))
    grid = assignment_grid(alg.size, len(vs))
    env = {v: grid[i] for i, v in enumerate(vs)}
    left = eval_arrays(alg, s.left, env)
    right = eval_arrays(alg, s.right, env)
    bad = ~alg.leq[left, right]
    if not bad.any():
        return None
    j = int(np.argmax(bad))
    return tuple(int(grid[i, j]) for i in range(len(vs)))


def check_sequent_frame(F: SortedFrame, s: fm.Sequent, cap: int = DEFAULT_CAP
                        ) -> tuple[bool, dict[int, int] | None]:
    """Validity over all stable valuations; returns the first failing valuation."""
    N = cx.full_complex_algebra(F, cap)
    alg = AlgebraArrays.of(N)
    tup = first_failure(alg, s)
    if tup is None:
        return True, None
    G = stable_lattice(F, S1, cap)
    vs = sorted(fm.variables(s.left) | fm.variables(s.right))
    return False, {v: G.sets[i] for v, i in zip(vs, tup)}


def check_sequent_frame_slow(F: SortedFrame, s: fm.Sequent, mode: str = "operators",
                             cap: int = DEFAULT_CAP) -> tuple[bool, dict[int, int] | None]:
    """Same as check_sequent_frame, one model at a time through ``interpret``."""
    G = stable_lattice(F, S1, cap)
    vs = sorted(fm.variables(s.left) | fm.variables(s.right))
    for combo in itertools.product(G.sets, repeat=len(vs)):
        M = Model(F, dict(zip(vs, combo)))
        ok, _ = check_sequent_model(M, s, mode)
        if not ok:
            return False, dict(zip(vs, combo))
    return True, None


def valid_in_algebra(N: FiniteNLE, s: fm.Sequent) -> bool:
    return first_failure(AlgebraArrays.of(N), s) is None

