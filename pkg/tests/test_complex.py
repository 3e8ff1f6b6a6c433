import pytest
from hypothesis import assume, given

from dfml import complex as cx
from dfml.axioms import check_frame_axiom
from dfml.corpus import fix_k2, fix_p2, fixtures
from dfml.frame import S1, SD, FrameError, derived_relation, stable_lattice
from dfml.nle import validate_nle

from conftest import small_frames

A_, B_ = 0b01, 0b10


def test_image_op_examples():
    F = fix_k2(rdia=(("a", "b"),))
    assert cx.image_op(F, "Rdia", B_) == A_
    assert cx.image_op(F, "Rdia", 0) == 0
    P = fix_p2(t=(("y1", "x1", "y2"),))
    assert cx.image_op(P, "T", 0b01, 0b10) == 0b01
    assert cx.image_op(P, "T", 0b01, 0) == 0
    with pytest.raises(FrameError):
        cx.image_op(P, "T", 0b01)


def classical_box(rel, A, n=2):
    """Textbook Kripke box over the successor pairs (w, v) of ``rel``."""
    return sum(1 << w for w in range(n) if all((A >> v) & 1 for (u, v) in rel if u == w))


def test_box_examples():
    assert cx.box(fix_k2(rbox=()), 0b11) == 0b11
    F = fix_k2(rbox=(("a", "b"),))
    assert derived_relation(F, "RboxDD") == {(0, 1)}
    assert cx.box(F, B_) == 0b11
    assert cx.box(F, 0) == B_
    for A in range(4):
        assert cx.box(F, A) == classical_box({(0, 1)}, A)


def test_implication_on_classical_fixture_is_boolean():
    F = fix_k2()
    for A in range(4):
        for C in range(4):
            want = (~A & 0b11) | C
            assert cx.implies(F, A, C) == want
            assert cx.implies_r111(F, A, C) == want
            assert cx.implies_tprime(F, A, C) == want


def test_residual_examples():
    P = fix_p2(t=(("y1", "x1", "y2"), ("y2", "x2", "y1")))
    G = stable_lattice(P).sets
    for A in G:
        for Fs in G:
            for C in G:
                assert (Fs & ~cx.residual(P, "overt", 1, (A, None), C) == 0) == \
                       (cx.overt(P, A, Fs) & ~C == 0)
    assert cx.residual(P, "overt", 1, (0b01, None), P.full(S1)) == P.full(S1)
    K = fix_k2(rdia=(("a", "b"),))
    bottom = K.close(0, S1)
    res = cx.residual(K, "dia", 0, (None,), bottom)
    largest = max((A for A in stable_lattice(K).sets if cx.dia(K, A) & ~bottom == 0),
                  key=lambda m: bin(m).count("1"))
    assert res == largest


def test_full_complex_algebra_of_fixtures():
    N = cx.full_complex_algebra(fix_k2())
    assert N.lattice.size == 4 and validate_nle(N).ok
    E = cx.full_complex_algebra(fix_p2())
    top = E.lattice.top
    assert all(v == top for v in E.ops["box"].table.values())


def test_unknown_stable_operator():
    with pytest.raises(FrameError):
        cx.stable_op(fix_k2(), "nope", 0)


def smooth(F):
    return check_frame_axiom(F, "F4").passed


def joins(F, G):
    return [(A, B, F.close(A | B, S1)) for A in G for B in G]


@given(small_frames())
def test_join_preservation_and_normality(F):
    assume(smooth(F))
    G = stable_lattice(F).sets
    bottom, top = F.close(0, S1), F.full(S1)
    for A, B, J in joins(F, G):
        assert cx.dia(F, J) == F.close(cx.dia(F, A) | cx.dia(F, B), S1)
        for C in G:
            assert cx.implies(F, J, C) == cx.implies(F, A, C) & cx.implies(F, B, C)
            assert cx.implies(F, C, A & B) == cx.implies(F, C, A) & cx.implies(F, C, B)
    assert cx.dia(F, bottom) == bottom
    assert cx.box(F, top) == top
    for C in G:
        assert cx.implies(F, bottom, C) == top
        assert cx.implies(F, C, top) == top


@given(small_frames())
def test_box_meets(F):
    assume(smooth(F))
    G = stable_lattice(F).sets
    for A in G:
        for B in G:
            assert cx.box(F, A & B) == cx.box(F, A) & cx.box(F, B)


@given(small_frames())
def test_two_implication_clauses_agree(F):
    assume(smooth(F))
    G = stable_lattice(F).sets
    for A in G:
        for C in G:
            v = cx.implies(F, A, C)
            assert v == cx.implies_tprime(F, A, C) == cx.implies_r111(F, A, C)


@given(small_frames())
def test_box_is_the_double_dual_clause(F):
    assume(smooth(F))
    for A in stable_lattice(F).sets:
        assert cx.box(F, A) == cx.box_dd(F, A)


@given(small_frames())
def test_overt_residuation_and_its_alternative_definition(F):
    assume(smooth(F))
    G = stable_lattice(F).sets
    for A in G:
        for Fs in G:
            ov = cx.overt(F, A, Fs)
            assert ov == F.prime(cx.da(F, A, F.prime(Fs, S1)), SD)
            for C in G:
                assert (ov & ~C == 0) == (Fs & ~cx.implies(F, A, C) == 0)


@given(small_frames())
def test_double_dual_box_is_monotone(F):
    le1 = F.leq(S1)
    dd = F.box_dd
    for x in range(F.n1):
        for x2 in range(F.n1):
            if le1[x2][x]:
                # x2 ≤ x implies x R''box ⊆ x2 R''box, and the sections are up-sets
                assert dd[x] & ~dd[x2] == 0
        for z in range(F.n1):
            if (dd[x] >> z) & 1:
                assert F.gamma(z, S1) & ~dd[x] == 0


@given(small_frames())
def test_stable_ops_return_stable_sets(F):
    G = stable_lattice(F).sets
    for A in G:
        assert F.is_stable(cx.box(F, A), S1)
        assert F.is_stable(cx.dia(F, A), S1)
        assert F.is_stable(cx.box_lower(F, A), S1)
        for C in G:
            assert F.is_stable(cx.implies(F, A, C), S1)


@pytest.mark.parametrize("name", list(fixtures()))
def test_upper_box_as_meet_over_opens(name):
    F = fixtures()[name]
    G = stable_lattice(F).sets
    opens = [F.prime(1 << y, SD) for y in range(F.nd)]
    for A in G:
        above = [O for O in opens if A & ~O == 0]
        meet = F.full(S1)
        for O in above:
            meet &= cx.box(F, O)
        assert cx.box(F, A) == meet
