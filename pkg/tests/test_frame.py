import pytest
from hypothesis import given

from dfml.canonical import canonical_frame
from dfml.corpus import corpus_nle, fix_k2, fix_p2, lattice
from dfml.frame import (S1, SD, FrameError, SizeGuardError, build_frame, closure, derived_relation,
                        galois_dual, is_separated, is_smooth, polarity, specialization, stable_lattice)

from conftest import small_frames
from galois_suite import galois_failures

K2 = fix_k2()
P2 = fix_p2()


def names(F, mask, sort=S1):
    return {F.names(sort)[i] for i in range(F.size(sort)) if (mask >> i) & 1}


def test_k2_has_complement_perp():
    assert polarity(K2, 0b01, "right") == 0b10
    assert polarity(P2, 0, "right") == P2.full(SD)
    assert names(P2, polarity(P2, 0b01, "right"), SD) == {"y1"}
    assert names(P2, polarity(P2, 0b01, "left"), S1) == {"x1"}


def test_construction_errors():
    with pytest.raises(FrameError):
        build_frame(["a"], [], [])
    with pytest.raises(FrameError):
        build_frame(["a"], ["b"], [("a", "c")])
    with pytest.raises(FrameError):
        build_frame(["a"], ["b"], [("b", "a")])
    with pytest.raises(FrameError):
        build_frame(["a", "a"], ["b"], [])


def test_closure_examples():
    for u in range(P2.n1):
        assert closure(P2, 1 << u, S1) == P2.gamma(u, S1)
    assert closure(K2, K2.full(S1), S1) == K2.full(S1)
    C = canonical_frame(corpus_nle("chain2", "A")).frame
    assert names(C, C.close(0, S1)) == {"up_0"}


def test_specialization_and_separation():
    assert specialization(K2, S1) == {(0, 0), (1, 1)}
    assert specialization(P2, SD) == {(0, 0), (1, 1)}
    assert is_separated(K2) and is_separated(P2)
    clone = build_frame(["a", "b", "c"], ["a", "b"], [("a", "a"), ("b", "b"), ("c", "b")])
    assert not is_separated(clone)


def test_stable_lattices_of_fixtures():
    assert stable_lattice(K2).sets == (0, 1, 2, 3)
    assert stable_lattice(P2).sets == (0, 1, 2, 3)
    G = stable_lattice(canonical_frame(corpus_nle("m3", "A")).frame)
    assert len(G) == 5
    # the four non-top, non-bottom-free elements: three pairwise incomparable atoms
    bottom, top = G.sets[G.bottom], G.sets[G.top]
    atoms = [s for s in G.sets if s not in (bottom, top)]
    assert len(atoms) == 3 and all(a & b == bottom for a in atoms for b in atoms if a != b)


def test_stable_lattice_size_guard():
    F = build_frame([f"x{i}" for i in range(6)], [f"y{i}" for i in range(6)],
                    [(f"x{i}", f"y{i}") for i in range(6)])
    with pytest.raises(SizeGuardError):
        stable_lattice(F, S1, cap=10)


def test_galois_dual_examples():
    F = fix_k2(rdia=(("a", "b"),))
    secs = {}
    for w, x in galois_dual(F, "Rdia"):
        secs.setdefault(x, set()).add(F.z1[w])
    assert secs == {0: {"a", "b"}, 1: {"b"}}
    E = fix_k2(rbox=())
    assert galois_dual(E, "Rbox") == {(w, v) for w in range(2) for v in range(2)}
    G = fix_p2(rbox=(("y1", "y1"),))
    assert {w for w, v in galois_dual(G, "Rbox") if v == 0} == {0}


def test_derived_relation_examples():
    F = fix_k2(rdia=(("a", "b"),))
    assert derived_relation(F, "RdiaDD") == {(0, 1)}
    E = fix_k2(rbox=())
    assert all(m == 0 for m in E.box_dd)
    assert derived_relation(E, "S11box") == {(z, x) for z in range(2) for x in range(2)}
    assert derived_relation(P2, "Rleq") == {(0, 0, 0), (1, 1, 1)}
    with pytest.raises(FrameError):
        derived_relation(P2, "nope")


def test_smoothness_examples():
    for rel in ("Rbox", "Rdia", "T"):
        assert is_smooth(K2, rel)[0]
    assert is_smooth(fix_p2(rdia=(("x1", "x1"),)), "Rdia") == (True, None)
    assert is_smooth(fix_p2(rbox=()), "Rbox")[0]


def test_non_smooth_relation_has_witness():
    # R'(x1) = Zd and R'(x2) = {y2}, so the section of x's with y1 in R'(x) is {x1},
    # whose closure is {x1, x2}
    F = build_frame(["x1", "x2"], ["y1", "y2"], [("x1", "y1")], rdia=[("x1", "x2")])
    assert F.close(0b01, S1) == 0b11
    assert is_smooth(F, "Rdia") == (False, (1, "y1"))


@pytest.mark.parametrize("F", [K2, P2, fix_k2(rbox=(("a", "b"),))], ids=["K2", "P2", "K2-ab"])
def test_galois_facts_on_fixtures(F):
    assert galois_failures(F) == []


@given(small_frames())
def test_galois_facts_on_random_frames(F):
    assert galois_failures(F) == []


@given(small_frames(relations=()))
def test_priming_is_a_dual_isomorphism(F):
    G1, Gd = stable_lattice(F, S1), stable_lattice(F, SD)
    assert len(G1) == len(Gd)
    assert sorted(F.prime(a, S1) for a in G1.sets) == sorted(Gd.sets)
    for a in G1.sets:
        for b in G1.sets:
            assert ((a & ~b) == 0) == ((F.prime(b, S1) & ~F.prime(a, S1)) == 0)


@given(small_frames(relations=()))
def test_stable_lattice_laws(F):
    G = stable_lattice(F)
    for a in G.sets:
        for b in G.sets:
            j = G.join(a, b)
            assert j in G and (a & b) in G
            assert a | b == (a | b) & j
            assert G.join(a, a & b) == a


def test_chain_lattice_canonical_bottom_is_not_empty():
    C = canonical_frame(corpus_nle("chain2", "A")).frame
    assert C.close(0, S1) != 0
    assert len(lattice("chain2").names) == len(stable_lattice(C))
