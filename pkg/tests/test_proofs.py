import pytest
from hypothesis import given
from hypothesis import strategies as st

from dfml import formula as fm
from dfml.corpus import fixtures
from dfml.proofs import (RULE_IDS, Derivation, ProofFormatError, check_derivation, read_prf,
                         rule_arity, search_proof, write_prf)
from dfml.search import SearchBounds, find_countermodel
from dfml.semantics import check_sequent_frame

from conftest import formulas

S = fm.parse_sequent
K_SEQ = "[](p1 -> p2) |- []p1 -> []p2"


def leaf(text, rule):
    return Derivation(S(text), rule)


def test_leaf_rules():
    assert check_derivation(leaf("p1 |- p1", "identity")).ok
    assert check_derivation(leaf("bot |- p1", "bot-left")).ok
    assert check_derivation(leaf("p2 |- top", "top-right")).ok
    assert check_derivation(leaf("<>(p1 \\/ []p2) |- <>p1 \\/ <>[]p2", "dist-dia")).ok
    assert not check_derivation(leaf("p1 |- p2", "identity")).ok


def test_box_monotonicity_needs_boxes_on_both_sides():
    bad = Derivation(S("[]p1 |- p1"), "mono-box", (leaf("p1 |- p1", "identity"),))
    v = check_derivation(bad)
    assert not v.ok and v.path == () and "schema" in v.message
    good = Derivation(S("[]p1 |- []p1"), "mono-box", (leaf("p1 |- p1", "identity"),))
    assert check_derivation(good).ok


def test_failure_path_points_at_the_bad_node():
    d = Derivation(S("p1 /\\ p2 |- p1 /\\ p2"), "and-right", (
        Derivation(S("p1 /\\ p2 |- p1"), "and-left-1", (leaf("p1 |- p1", "identity"),)),
        Derivation(S("p1 /\\ p2 |- p2"), "and-left-1", (leaf("p2 |- p2", "identity"),)),
    ))
    v = check_derivation(d)
    assert not v.ok and v.path == (1,)
    assert "node 1" in v.line()


def test_axiom_instances_depend_on_the_logic():
    d = leaf("[](p3 -> p1) |- []p3 -> []p1", "axiom-instance(K)")
    assert check_derivation(d, "K").ok
    v = check_derivation(d, "min")
    assert not v.ok and "not in the logic" in v.message
    assert not check_derivation(leaf("[]p1 |- p1", "axiom-instance(K)"), "K").ok


def test_substitution_rule():
    d = Derivation(S("[]p2 /\\ []<>p1 |- [](p2 /\\ <>p1)"), "substitution",
                   (leaf("[]p1 /\\ []p2 |- [](p1 /\\ p2)", "dist-box"),))
    assert check_derivation(d).ok
    bad = Derivation(S("[]p2 |- p2"), "substitution", (leaf("p1 |- p1", "identity"),))
    assert not check_derivation(bad).ok


def test_rule_table():
    assert len(RULE_IDS) == len(set(RULE_IDS))
    assert rule_arity("cut") == 2 and rule_arity("axiom-instance(S5)") == 0
    with pytest.raises(ValueError):
        rule_arity("modus-ponens")
    d = Derivation(S("p1 |- p1"), "cut", (leaf("p1 |- p1", "identity"),))
    assert "premise" in check_derivation(d).message


def test_search_examples():
    d = search_proof(S("[](p1 /\\ p2) |- []p1 /\\ []p2"), "min", depth=6)
    assert d is not None and d.height <= 4 and check_derivation(d).ok
    assert search_proof(S("p1 |- p1"), depth=1).rule == "identity"
    assert search_proof(S(K_SEQ), "min", depth=8) is None
    d = search_proof(S(K_SEQ), "K", depth=8)
    assert d.height == 1 and d.rule == "axiom-instance(K)"
    with pytest.raises(ValueError):
        search_proof(S("p1 |- p1"), depth=0)


def test_unprovable_k_has_a_countermodel():
    cm = find_countermodel(S(K_SEQ), SearchBounds(2, 2, "refined"))
    assert cm is not None


def test_converse_distribution_is_derivable():
    d = search_proof(S("<>p1 \\/ <>p2 |- <>(p1 \\/ p2)"), depth=6)
    assert d is not None and check_derivation(d).ok
    assert {n.rule for n in d.nodes()} >= {"or-left", "mono-dia"}


def test_search_is_deterministic():
    s = S("[](p1 /\\ p2) |- []p1 /\\ []p2")
    assert write_prf(search_proof(s)) == write_prf(search_proof(s))


def test_prf_round_trip():
    d = search_proof(S("(p1 -> p2) /\\ (p1 -> p3) |- p1 -> (p3 /\\ p2)"), depth=6)
    assert d is not None
    text = write_prf(d)
    assert read_prf(text) == d
    assert check_derivation(read_prf(text)).ok


@pytest.mark.parametrize("text,line", [
    ("", 0),
    ("identity p1 |- p1\n", 1),
    ("identity: p1 |- p1\n   identity: p1 |- p1\n", 2),
    ("identity: p1 |-\n", 1),
    ("and-right: p1 |- p1 /\\ p1\n    identity: p1 |- p1\n", 2),
])
def test_prf_errors(text, line):
    with pytest.raises(ProofFormatError) as exc:
        read_prf(text)
    assert exc.value.line == line


SAMPLE = [S(t) for t in (
    "[](p1 /\\ p2) |- []p1 /\\ []p2",
    "<>p1 \\/ <>p2 |- <>(p1 \\/ p2)",
    "p1 -> (p2 /\\ p3) |- p1 -> p2",
    "(p1 \\/ p2) -> p3 |- p1 -> p3",
    "<>(p1 /\\ p2) |- <>p1",
    "top |- bot -> p2",
)]


@pytest.mark.parametrize("s", SAMPLE, ids=str)
def test_found_proofs_are_valid_on_fixtures(s):
    d = search_proof(s, depth=6)
    assert d is not None and check_derivation(d).ok
    for F in fixtures().values():
        assert check_sequent_frame(F, s)[0]


@given(st.sampled_from(SAMPLE), st.dictionaries(st.integers(1, 3), formulas(max_var=2, max_leaves=4),
                                                min_size=3, max_size=3))
def test_checking_is_closed_under_substitution(s, sub):
    d = search_proof(s, depth=6)

    def apply(node):
        seq = fm.Sequent(fm.substitute(node.sequent.left, sub), fm.substitute(node.sequent.right, sub))
        return Derivation(seq, node.rule, tuple(apply(p) for p in node.premises))

    assert check_derivation(apply(d)).ok
