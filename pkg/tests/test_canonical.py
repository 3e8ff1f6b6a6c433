import pytest

from dfml import complex as cx
from dfml.axioms import check_frame_axiom
from dfml.canonical import (canonical_frame, canonicity_report, generic_operator,
                            sigma_pi_extension, verify_representation)
from dfml.corpus import corpus_nle, lattice, nle_corpus
from dfml.frame import S1, SD, stable_lattice
from dfml.logics import AXIOMS, FRAME_AXIOM
from dfml.nle import build_nle, check_equation

CORPUS = nle_corpus()


def test_two_chain_frame():
    C = canonical_frame(corpus_nle("chain2", "A"))
    F = C.frame
    assert F.z1 == ("up_1", "up_0") and F.zd == ("down_0", "down_1")
    assert F.I == {(0, 0)}


def test_identity_box_gives_inclusion_order_on_ideals():
    C = canonical_frame(corpus_nle("chain2", "A"))
    assert C.point_ops["box"] == {(0,): 0, (1,): 1}
    ideals = C.ideals
    want = {(y, v) for y in range(2) for v in range(2) if ideals[v].mask & ~ideals[y].mask == 0}
    assert C.frame.rbox == want


def test_one_element_lattice():
    C = canonical_frame(corpus_nle("one", "A"))
    assert (C.frame.n1, C.frame.nd) == (1, 1) and C.frame.I == frozenset()


def test_incidence_and_embedding_invariants():
    for name, N in CORPUS.items():
        C = canonical_frame(N)
        F, L = C.frame, N.lattice
        for i, x in enumerate(C.filters):
            for j, y in enumerate(C.ideals):
                assert ((i, j) in F.I) == (x.mask & y.mask == 0)
        for a in range(L.size):
            up = C.filters.index(next(f for f in C.filters if f.mask == L.up(a)))
            down = C.ideals.index(next(f for f in C.ideals if f.mask == L.down(a)))
            assert C.X[a] == F.gamma(up, S1) == F.prime(1 << down, SD), name
            assert C.Y[a] == F.prime(C.X[a], S1), name


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_representation(name):
    N = CORPUS[name]
    rep = verify_representation(N)
    assert rep.ok, rep.render()
    assert len(stable_lattice(canonical_frame(N).frame)) == N.lattice.size


def test_plain_lattice_representation():
    N = build_nle(lattice("m3"), [])
    rep = verify_representation(N)
    assert rep.ok and len(stable_lattice(canonical_frame(N).frame)) == 5


def test_mismatch_is_reported_with_witness(monkeypatch):
    import dfml.canonical as canon
    monkeypatch.setattr(canon.cx, "box", lambda F, A: F.full(S1))
    rep = verify_representation(corpus_nle("chain2", "A"))
    c = rep.get("op:box")
    assert not rep.ok and c.status == "fail" and c.witness == ("0",)


def test_generic_operator_matches_named_operators():
    for N in CORPUS.values():
        C = canonical_frame(N)
        F = C.frame
        G = stable_lattice(F).sets
        for A in G:
            assert generic_operator(C, "box", (A,)) == cx.box(F, A)
            assert generic_operator(C, "dia", (A,)) == cx.dia(F, A)
            for B in G:
                assert generic_operator(C, "imp", (A, B)) == cx.implies(F, A, B)


def test_custom_operator_relation():
    L = lattice("diamond")
    N = build_nle(L, [("g", "(1,1;1)", lambda a, b: L.join[a][b])])
    rep = verify_representation(N)
    assert rep.ok


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_sigma_pi(name):
    N = CORPUS[name]
    C = canonical_frame(N)
    F, X = C.frame, C.X
    G = stable_lattice(F)
    for op in ("box", "dia", "imp"):
        ext = sigma_pi_extension(N, op, C)
        f = N.ops[op]
        for us, s in ext.sigma.items():
            assert s == ext.pi[us]
        for args in f.table:
            key = tuple(G.index[X[a]] for a in args)
            assert G.sets[ext.sigma[key]] == X[f.table[args]]
    box = sigma_pi_extension(N, "box", C)
    for (i,), s in box.sigma.items():
        A = G.sets[i]
        assert G.sets[s] == cx.box(F, A) == cx.box_lower(F, A)


def test_identity_extension():
    L = lattice("n5")
    N = build_nle(L, [("f", "(1;1)", lambda a: a)])
    ext = sigma_pi_extension(N, "f")
    assert all(ext.sigma[k] == ext.pi[k] == k[0] for k in ext.sigma)


def test_s11_is_gamma_of_box_point():
    for N in CORPUS.values():
        C = canonical_frame(N)
        F = C.frame
        L = N.lattice
        bx = N.ops["box"].table
        for i, x in enumerate(C.filters):
            gen = L.up(L.meet_all([bx[(a,)] for a in x.members]))
            j = next(k for k, f in enumerate(C.filters) if f.mask == gen)
            assert C.point_ops["box1"][(i,)] == j
            assert F.s11[i] == F.gamma(j, S1)


def test_density():
    for N in CORPUS.values():
        F = canonical_frame(N).frame
        for A in stable_lattice(F).sets:
            closeds = [F.gamma(x, S1) for x in range(F.n1) if (A >> x) & 1]
            opens = [F.prime(1 << y, SD) for y in range(F.nd) if A & ~F.prime(1 << y, SD) == 0]
            join = 0
            for c in closeds:
                join |= c
            meet = F.full(S1)
            for o in opens:
                meet &= o
            assert F.close(join, S1) == A == meet


def test_canonicity_examples():
    N = corpus_nle("m3", "A")
    rep = canonicity_report(N, ["K", "Tbox", "D"])
    assert rep.ok
    N = corpus_nle("chain3", "C")            # box constantly top, dia constantly bottom
    assert not check_equation(N, "D").ok
    rep = canonicity_report(N, ["D"])
    assert rep.get("FD").status == "fail"


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_canonicity(name):
    N = CORPUS[name]
    F = canonical_frame(N).frame
    for a in AXIOMS:
        if check_equation(N, a).ok:
            assert check_frame_axiom(F, FRAME_AXIOM[a]).passed, (name, a)
