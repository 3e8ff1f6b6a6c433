"""Quantified checks of the basic Galois facts, shared by unit and acceptance tests.

Everything here is computed from the defining clauses (λ, ρ, priming as
universal statements over ⊥) so it serves as an oracle for the bitmask
implementation in ``dfml.frame``.
"""

from dfml.frame import S1, SD, flip, lam, rho, stable_lattice


def perp(F, x, y):
    return (x, y) not in F.I


def prime_by_clause(F, U, sort):
    n_other = F.nd if sort == S1 else F.n1
    out = 0
    for w in range(n_other):
        if sort == S1:
            ok = all(perp(F, u, w) for u in range(F.n1) if (U >> u) & 1)
        else:
            ok = all(perp(F, w, u) for u in range(F.nd) if (U >> u) & 1)
        if ok:
            out |= 1 << w
    return out


def galois_failures(F):
    """Names of the facts that fail on ``F`` (empty list when all hold)."""
    bad = []
    P = {sort: [F.prime(U, sort) for U in range(1 << F.size(sort))] for sort in (S1, SD)}
    for sort in (S1, SD):
        n = F.size(sort)
        other = flip(sort)
        Ps, Po = P[sort], P[other]
        close = [Po[Ps[U]] for U in range(1 << n)]
        G = stable_lattice(F, sort)
        le = [[(Ps[1 << u] | Ps[1 << w]) == Ps[1 << w] for w in range(n)] for u in range(n)]
        gamma = [sum(1 << w for w in range(n) if le[u][w]) for u in range(n)]
        for U in range(1 << n):
            p = Ps[U]
            if p != prime_by_clause(F, U, sort):
                bad.append(f"prime-clause:{sort}")
            if Ps[Po[p]] != p:
                bad.append(f"triple-prime:{sort}")
            if any((1 << u) & U == 0 and Ps[U | 1 << u] & ~p for u in range(n)):
                bad.append(f"antitone:{sort}")
        # item 1: ⊥ increasing in each place
        for u in range(n):
            for w in range(n):
                if le[u][w]:
                    for v in range(F.size(other)):
                        pu = perp(F, u, v) if sort == S1 else perp(F, v, u)
                        pw = perp(F, w, v) if sort == S1 else perp(F, v, w)
                        if pu and not pw:
                            bad.append(f"item1:{sort}")
        for u in range(n):
            # item 2
            if Ps[gamma[u]] != Ps[1 << u] or close[1 << u] != gamma[u]:
                bad.append(f"item2:{sort}")
        if sorted(G.sets) != sorted({close[U] for U in range(1 << n)}):
            bad.append(f"stable-sets:{sort}")
        for A in G.sets:
            # item 3
            if any((A >> u) & 1 and gamma[u] & ~A for u in range(n)):
                bad.append(f"item3:{sort}")
            # item 4
            union = 0
            for u in range(n):
                if (A >> u) & 1:
                    union |= gamma[u]
            if union != A:
                bad.append(f"item4:{sort}")
            # item 5: join of closed elements and meet of open elements
            if close[union] != A:
                bad.append(f"item5-join:{sort}")
            meet = F.full(sort)
            for v in range(F.size(other)):
                opn = Po[1 << v]
                if A & ~opn == 0:
                    meet &= opn
            if meet != A:
                bad.append(f"item5-meet:{sort}")
            # item 6
            if any((close[W] & ~A == 0) != (W & ~A == 0) for W in range(1 << n)):
                bad.append(f"item6:{sort}")
    # the residuated pair generates the same closure operators
    for U in range(1 << F.n1):
        if rho(F, lam(F, U)) != P[SD][P[S1][U]]:
            bad.append("rho-lambda")
    for V in range(1 << F.nd):
        # λρ is the interior operator of the same adjunction
        if lam(F, rho(F, V)) & ~V:
            bad.append("lambda-rho-interior")
        # the sort-d closure comes from the pair read from the Zd side
        if rho_d(F, lam_d(F, V)) != P[S1][P[SD][V]]:
            bad.append("rho-lambda-d")
    return sorted(set(bad))


def lam_d(F, V):
    """{x | some y in V has x I y}."""
    return sum(1 << x for x in range(F.n1) if any((V >> y) & 1 and (x, y) in F.I for y in range(F.nd)))


def rho_d(F, U):
    """{y | every x with x I y lies in U}."""
    return sum(1 << y for y in range(F.nd) if all((U >> x) & 1 for x in range(F.n1) if (x, y) in F.I))
