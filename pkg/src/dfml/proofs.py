"""Sequent proof system for the minimal logic over {->, [], <>} and its axiomatic extensions.

A derivation is a tree of (sequent, rule id, premises).  ``check_derivation``
verifies every node locally; ``search_proof`` is a bounded backward search
that returns a derivation of least height or None (inconclusive).
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field

from . import formula as fm
from .formula import Sequent, parse_sequent
from .logics import AXIOMS, logic_axioms

STRUCTURAL_RULES = {
    "identity": 0, "cut": 2, "and-left-1": 1, "and-left-2": 1, "and-right": 2,
    "or-left": 2, "or-right-1": 1, "or-right-2": 1, "bot-left": 0, "top-right": 0,
    "substitution": 1, "mono-box": 1, "mono-dia": 1, "anti-imp-left": 1, "mono-imp-right": 1,
}

# zero-premise schemas of the minimal logic; p1, p2, p3 are metavariables
SCHEMA_TEXT = {
    "dist-dia": "<>(p1 \\/ p2) |- <>p1 \\/ <>p2",
    "dist-box": "[]p1 /\\ []p2 |- [](p1 /\\ p2)",
    "codist-imp-left": "(p1 \\/ p2) -> p3 |- (p1 -> p3) /\\ (p2 -> p3)",
    "dist-imp-right": "(p1 -> p2) /\\ (p1 -> p3) |- p1 -> (p2 /\\ p3)",
    "norm-dia": "<>bot |- bot",
    "norm-box": "top |- []top",
    "norm-imp-left": "top |- bot -> p1",
    "norm-imp-right": "top |- p1 -> top",
}
SCHEMAS: dict[str, Sequent] = {k: parse_sequent(v) for k, v in SCHEMA_TEXT.items()}

RULE_IDS = tuple(STRUCTURAL_RULES) + tuple(SCHEMAS) + tuple(f"axiom-instance({a})" for a in AXIOMS)

_AXIOM_RULE = re.compile(r"^axiom-instance\((\w+)\)$")


def rule_arity(rule: str) -> int:
    if rule in STRUCTURAL_RULES:
        return STRUCTURAL_RULES[rule]
    if rule in SCHEMAS or _AXIOM_RULE.match(rule):
        return 0
    raise ValueError(f"unknown rule {rule!r}")


@dataclass(frozen=True)
class Derivation:
    sequent: Sequent
    rule: str
    premises: tuple["Derivation", ...] = ()

    @property
    def height(self) -> int:
        return 1 + max((p.height for p in self.premises), default=0)

    def nodes(self):
        yield self
        for p in self.premises:
            yield from p.nodes()


@dataclass(frozen=True)
class ProofVerdict:
    ok: bool
    path: tuple[int, ...] | None = None   # child indices from the root to the bad node
    message: str = ""
    sequent: Sequent | None = None

    def line(self) -> str:
        if self.ok:
            return "proof: pass"
        where = "root" if not self.path else "node " + ".".join(str(i) for i in self.path)
        return f"proof: fail at {where} ({self.sequent}): {self.message}"


# ---------------------------------------------------------------- checking

def instance_of(pattern: Sequent, s: Sequent) -> dict | None:
    """Binding under which ``pattern`` becomes ``s``, or None."""
    b = fm.match(pattern.left, s.left)
    return None if b is None else fm.match(pattern.right, s.right, b)


def _check_node(d: Derivation, axioms: tuple[str, ...]) -> str | None:
    """Return an error message if the node does not follow from its premises."""
    rule, s, ps = d.rule, d.sequent, [p.sequent for p in d.premises]
    L, R = s.left, s.right
    try:
        arity = rule_arity(rule)
    except ValueError as exc:
        return str(exc)
    if len(ps) != arity:
        return f"{rule} takes {arity} premise(s), got {len(ps)}"

    m = _AXIOM_RULE.match(rule)
    if m:
        a = m.group(1)
        if a not in AXIOMS:
            return f"unknown axiom {a}"
        if a not in axioms:
            return f"axiom {a} is not in the logic"
        if any(instance_of(p, s) is not None for p in AXIOMS[a]):
            return None
        return f"not an instance of {a}"
    if rule in SCHEMAS:
        return None if instance_of(SCHEMAS[rule], s) is not None else f"not an instance of {rule}"

    def want(ok: bool, msg: str = "schema mismatch") -> str | None:
        return None if ok else msg

    if rule == "identity":
        return want(L == R)
    if rule == "bot-left":
        return want(L == fm.BOT)
    if rule == "top-right":
        return want(R == fm.TOP)
    if rule == "cut":
        return want(ps[0].left == L and ps[1].right == R and ps[0].right == ps[1].left)
    if rule in ("and-left-1", "and-left-2"):
        if not isinstance(L, fm.And):
            return "left side is not a conjunction"
        part = L.left if rule == "and-left-1" else L.right
        return want(ps[0] == Sequent(part, R))
    if rule == "and-right":
        if not isinstance(R, fm.And):
            return "right side is not a conjunction"
        return want(ps[0] == Sequent(L, R.left) and ps[1] == Sequent(L, R.right))
    if rule == "or-left":
        if not isinstance(L, fm.Or):
            return "left side is not a disjunction"
        return want(ps[0] == Sequent(L.left, R) and ps[1] == Sequent(L.right, R))
    if rule in ("or-right-1", "or-right-2"):
        if not isinstance(R, fm.Or):
            return "right side is not a disjunction"
        part = R.left if rule == "or-right-1" else R.right
        return want(ps[0] == Sequent(L, part))
    if rule == "mono-box":
        return want(isinstance(L, fm.Box) and isinstance(R, fm.Box)
                    and ps[0] == Sequent(L.arg, R.arg))
    if rule == "mono-dia":
        return want(isinstance(L, fm.Dia) and isinstance(R, fm.Dia)
                    and ps[0] == Sequent(L.arg, R.arg))
    if rule == "anti-imp-left":
        return want(isinstance(L, fm.Imp) and isinstance(R, fm.Imp) and L.right == R.right
                    and ps[0] == Sequent(R.left, L.left))
    if rule == "mono-imp-right":
        return want(isinstance(L, fm.Imp) and isinstance(R, fm.Imp) and L.left == R.left
                    and ps[0] == Sequent(L.right, R.right))
    if rule == "substitution":
        return want(instance_of(ps[0], s) is not None, "not a substitution instance of the premise")
    return f"unknown rule {rule!r}"


def check_derivation(d: Derivation, logic=()) -> ProofVerdict:
    """Check every node; ``logic`` is a logic name or a collection of axiom ids."""
    axioms = logic_axioms(logic)
    stack: list[tuple[Derivation, tuple[int, ...]]] = [(d, ())]
    while stack:
        node, path = stack.pop()
        err = _check_node(node, axioms)
        if err is not None:
            return ProofVerdict(False, path, err, node.sequent)
        for i in reversed(range(len(node.premises))):
            stack.append((node.premises[i], path + (i,)))
    return ProofVerdict(True)


# ------------------------------------------------------------------ search

def _instances(pattern: Sequent, domain: list[fm.Formula]):
    vs = sorted(fm.variables(pattern.left) | fm.variables(pattern.right))
    for combo in itertools.product(domain, repeat=len(vs)):
        mp = dict(zip(vs, combo))
        yield Sequent(fm.substitute(pattern.left, mp), fm.substitute(pattern.right, mp))


def cut_candidates(goal: Sequent, axioms: tuple[str, ...], max_size: int | None = None) -> list[fm.Formula]:
    """Subformulas of the goal plus both sides of logic-axiom instances over them.

    Sorted by (size, text) so the search order is deterministic.
    """
    subs = sorted(fm.subformulas(goal.left) | fm.subformulas(goal.right),
                  key=lambda f: (fm.size(f), fm.to_text(f)))
    out = set(subs)
    for a in axioms:
        for pat in AXIOMS[a]:
            for inst in _instances(pat, subs):
                out.add(inst.left)
                out.add(inst.right)
    limit = max_size or max(fm.size(goal.left), fm.size(goal.right)) + 4
    return sorted((f for f in out if fm.size(f) <= limit), key=lambda f: (fm.size(f), fm.to_text(f)))


@dataclass
class _Searcher:
    axioms: tuple[str, ...]
    cuts: list[fm.Formula]
    use_cut: bool = True
    found: dict = field(default_factory=dict)    # sequent -> derivation of least height
    failed: dict = field(default_factory=dict)   # sequent -> largest height known to fail
    nodes: int = 0

    def leaf(self, s: Sequent) -> Derivation | None:
        L, R = s.left, s.right
        if L == R:
            return Derivation(s, "identity")
        if L == fm.BOT:
            return Derivation(s, "bot-left")
        if R == fm.TOP:
            return Derivation(s, "top-right")
        for name, pat in SCHEMAS.items():
            if instance_of(pat, s) is not None:
                return Derivation(s, name)
        for a in self.axioms:
            if any(instance_of(p, s) is not None for p in AXIOMS[a]):
                return Derivation(s, f"axiom-instance({a})")
        return None

    @property
    def patterns(self) -> list[Sequent]:
        return list(SCHEMAS.values()) + [p for a in self.axioms for p in AXIOMS[a]]

    def directed_cuts(self, s: Sequent) -> list[fm.Formula]:
        """Cut formulas forced by a schema instance starting at the left or ending at the right side."""
        out: list[fm.Formula] = []
        for pat in self.patterns:
            lv, rv = fm.variables(pat.left), fm.variables(pat.right)
            if rv <= lv:
                b = fm.match(pat.left, s.left)
                if b is not None:
                    out.append(fm.substitute(pat.right, b))
            if lv <= rv:
                b = fm.match(pat.right, s.right)
                if b is not None:
                    out.append(fm.substitute(pat.left, b))
        seen, res = set(), []
        for chi in out:
            if chi not in seen and chi != s.left and chi != s.right:
                seen.add(chi)
                res.append(chi)
        return res

    def prove(self, s: Sequent, h: int) -> Derivation | None:
        d = self.found.get(s)
        if d is not None:
            return d if d.height <= h else None
        if self.failed.get(s, 0) >= h:
            return None
        self.nodes += 1
        d = self.leaf(s)
        if d is None and h > 1:
            d = self._step(s, h)
        if d is None:
            self.failed[s] = max(self.failed.get(s, 0), h)
        else:
            self.found[s] = d
        return d

    def _one(self, s, rule, prem, h):
        p = self.prove(prem, h - 1)
        return Derivation(s, rule, (p,)) if p else None

    def _two(self, s, rule, p1, p2, h):
        a = self.prove(p1, h - 1)
        if a is None:
            return None
        b = self.prove(p2, h - 1)
        return Derivation(s, rule, (a, b)) if b else None

    def _step(self, s: Sequent, h: int) -> Derivation | None:
        L, R = s.left, s.right
        tries = []
        if isinstance(R, fm.And):
            tries.append(lambda: self._two(s, "and-right", Sequent(L, R.left), Sequent(L, R.right), h))
        if isinstance(L, fm.Or):
            tries.append(lambda: self._two(s, "or-left", Sequent(L.left, R), Sequent(L.right, R), h))
        if isinstance(L, fm.Box) and isinstance(R, fm.Box):
            tries.append(lambda: self._one(s, "mono-box", Sequent(L.arg, R.arg), h))
        if isinstance(L, fm.Dia) and isinstance(R, fm.Dia):
            tries.append(lambda: self._one(s, "mono-dia", Sequent(L.arg, R.arg), h))
        if isinstance(L, fm.Imp) and isinstance(R, fm.Imp):
            if L.right == R.right:
                tries.append(lambda: self._one(s, "anti-imp-left", Sequent(R.left, L.left), h))
            if L.left == R.left:
                tries.append(lambda: self._one(s, "mono-imp-right", Sequent(L.right, R.right), h))
        if isinstance(L, fm.And):
            tries.append(lambda: self._one(s, "and-left-1", Sequent(L.left, R), h))
            tries.append(lambda: self._one(s, "and-left-2", Sequent(L.right, R), h))
        if isinstance(R, fm.Or):
            tries.append(lambda: self._one(s, "or-right-1", Sequent(L, R.left), h))
            tries.append(lambda: self._one(s, "or-right-2", Sequent(L, R.right), h))
        for t in tries:
            d = t()
            if d is not None:
                return d
        if self.use_cut and h > 1:
            for chi in self.directed_cuts(s):
                d = self._two(s, "cut", Sequent(L, chi), Sequent(chi, R), h)
                if d is not None:
                    return d
            for chi in self.cuts:
                if chi == L or chi == R:
                    continue
                d = self._two(s, "cut", Sequent(L, chi), Sequent(chi, R), h)
                if d is not None:
                    return d
        return None


def search_proof(s: Sequent, logic=(), depth: int = 6, use_cut: bool = True,
                 cuts: list[fm.Formula] | None = None) -> Derivation | None:
    """Iterative deepening on derivation height; None means not found (inconclusive)."""
    if depth < 1:
        raise ValueError("depth bound must be at least 1")
    axioms = logic_axioms(logic)
    srch = _Searcher(axioms, cuts if cuts is not None else cut_candidates(s, axioms), use_cut)
    for h in range(1, depth + 1):
        d = srch.prove(s, h)
        if d is not None:
            return d
    return None


# ---------------------------------------------------------------- .prf I/O

class ProofFormatError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def write_prf(d: Derivation) -> str:
    lines = []

    def walk(node, depth):
        lines.append("  " * depth + f"{node.rule}: {node.sequent}")
        for p in node.premises:
            walk(p, depth + 1)

    walk(d, 0)
    return "\n".join(lines) + "\n"


def read_prf(text: str) -> Derivation:
    """Parse indented ``rule: sequent`` lines (two spaces per level)."""
    entries = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip(" "))
        if indent % 2:
            raise ProofFormatError("indentation must be a multiple of two spaces", no)
        rule, sep, rest = line.strip().partition(": ")
        if not sep:
            raise ProofFormatError("expected '<rule>: <sequent>'", no)
        try:
            seq = parse_sequent(rest)
        except fm.FormulaSyntaxError as exc:
            raise ProofFormatError(str(exc), no) from None
        entries.append((indent // 2, rule, seq, no))
    if not entries:
        raise ProofFormatError("empty proof", 0)

    pos = 0

    def build(level):
        nonlocal pos
        lvl, rule, seq, no = entries[pos]
        if lvl != level:
            raise ProofFormatError(f"expected depth {level}, got {lvl}", no)
        pos += 1
        kids = []
        while pos < len(entries) and entries[pos][0] > level:
            kids.append(build(level + 1))
        return Derivation(seq, rule, tuple(kids))

    root = build(0)
    if pos != len(entries):
        raise ProofFormatError("more than one root", entries[pos][3])
    return root
