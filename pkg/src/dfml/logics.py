"""Named modal axioms, the logics built from them and their frame classes."""

from __future__ import annotations

from .formula import Sequent, parse_sequent

# Each axiom is a list of sequent schemas over p1, p2 (read as inequalities).
AXIOM_TEXT: dict[str, tuple[str, ...]] = {
    "K": ("[](p1 -> p2) |- []p1 -> []p2",),
    "D": ("[]p1 |- <>p1",),
    "Tbox": ("[]p1 |- p1",),
    "Tdia": ("p1 |- <>p1",),
    "S4box": ("[]p1 |- [][]p1",),
    "S4dia": ("<><>p1 |- <>p1",),
    "B": ("p1 |- []<>p1", "<>[]p1 |- p1"),
    "S5": ("<>p1 |- []<>p1", "<>[]p1 |- []p1"),
}

AXIOMS: dict[str, tuple[Sequent, ...]] = {
    k: tuple(parse_sequent(t) for t in v) for k, v in AXIOM_TEXT.items()
}

# "T" and "S4" name the reflexivity and transitivity pairs for both modalities.
LOGICS: dict[str, tuple[str, ...]] = {
    "min": (),
    "K": ("K",),
    "D": ("K", "D"),
    "T": ("K", "Tbox", "Tdia"),
    "S4": ("K", "S4box", "S4dia"),
    "B": ("K", "B"),
    "S5": ("K", "S5"),
}

REFINED = ("F1", "F2", "F3", "F4", "F5", "F6")

FRAME_AXIOM = {
    "K": "FK",
    "D": "FD",
    "Tbox": "FTbox",
    "Tdia": "FTdia",
    "S4box": "FS4box",
    "S4dia": "FS4dia",
    "B": "FB",
    "S5": "FS5",
}


def logic_axioms(logic: str | tuple[str, ...] | list[str]) -> tuple[str, ...]:
    """Resolve a logic name (or an explicit axiom list) to axiom ids."""
    if isinstance(logic, str):
        if logic in LOGICS:
            return LOGICS[logic]
        ids = tuple(a for a in logic.replace("+", ",").split(",") if a)
    else:
        ids = tuple(logic)
    unknown = [a for a in ids if a not in AXIOMS]
    if unknown:
        raise ValueError(f"unknown axiom id(s): {', '.join(unknown)}")
    return ids


def frame_class(logic) -> tuple[str, ...]:
    """Frame axioms matching a logic: refined frames plus one condition per axiom."""
    out = list(REFINED)
    for a in logic_axioms(logic):
        fa = FRAME_AXIOM[a]
        if fa not in out:
            out.append(fa)
    return tuple(out)


def parse_class(text: str) -> tuple[str, ...]:
    """Parse a class string such as ``refined+FK`` or ``F1,F3``."""
    out: list[str] = []
    for tok in text.replace(",", "+").split("+"):
        tok = tok.strip()
        if not tok:
            continue
        if tok == "refined":
            items = REFINED
        elif tok == "separated":
            items = ("F1",)
        elif tok in LOGICS:
            items = frame_class(tok)
        else:
            items = (tok,)
        for a in items:
            if a not in out:
                out.append(a)
    return tuple(out)
