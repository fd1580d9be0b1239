import itertools

import numpy as np
import pytest

from orbitforge import constructions as cons
from orbitforge import group_engine as ge
from orbitforge import orbit_machine as om


def cyclic(n):
    return ge.group_from_oracle(list(range(n)), lambda a, b: (a + b) % n)


def direct(orders):
    elems = list(itertools.product(*[range(n) for n in orders]))

    def mul(a, b):
        return tuple((x + y) % n for x, y, n in zip(a, b, orders))

    return ge.group_from_oracle(elems, mul)


def perm_group(gen_perms):
    gens = [tuple(p) for p in gen_perms]
    n = len(gens[0])
    ident = tuple(range(n))
    elems = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                c = tuple(a[g[i]] for i in range(n))
                if c not in elems:
                    elems.add(c)
                    nxt.append(c)
        frontier = nxt

    def mul(a, b):
        return tuple(a[b[i]] for i in range(n))

    return ge.group_from_oracle(sorted(elems), mul)


def quat():
    return cons.extraspecial2(1, "-").group


def test_cyclic_omega():
    C4 = cyclic(4)
    aut = om.brute_force_aut(C4)
    assert len(aut) == 2
    assert om.orbits(C4, aut)["lengths"] == [1, 1, 2]
    assert om.omega_lower_bound(C4) == 3
    assert om.omega_exact(C4, aut)["exact"] == 3
    assert om.holomorph_rank(C4) == 3


def test_abelian_omega_values():
    C4C2 = direct([4, 2])
    assert om.omega_lower_bound(C4C2) == 4
    assert om.omega_exact(C4C2, om.brute_force_aut(C4C2))["exact"] == 4
    C23 = direct([2, 2, 2])
    assert om.omega_exact(C23, om.brute_force_aut(C23))["exact"] == 2
    assert om.holomorph_rank(C23) == 2


def test_nonabelian_omega():
    S3 = perm_group([(1, 2, 0), (1, 0, 2)])
    assert om.omega_exact(S3, om.brute_force_aut(S3))["exact"] == 3
    assert om.holomorph_rank(S3) == 3
    A4 = perm_group([(1, 2, 0, 3), (0, 2, 3, 1)])
    aut4 = om.brute_force_aut(A4)
    assert len(aut4) == 24
    res = om.omega_exact(A4, aut4)
    assert res["exact"] == 3
    assert sorted(res["report"]["lengths"]) == [1, 3, 8]
    assert om.holomorph_rank(A4) == 3


def test_q8_central_automorphisms():
    Q8 = quat()
    caut, p, m, n, count = om.central_automorphisms(Q8)
    assert (p, m, n, count) == (2, 2, 1, 4)
    # CAut orbits refine G into Z-singletons plus nontrivial cosets
    repc = om.orbits(Q8, caut)
    assert sorted(repc["lengths"]) == [1, 1, 2, 2, 2]
    autq = om.brute_force_aut(Q8)
    res = om.omega_exact(Q8, autq)
    assert res["exact"] == 3
    assert res["report"]["lengths"] == [1, 1, 6]
    assert om.holomorph_rank(Q8) == 3


def test_q8_induced_pair():
    Q8 = quat()
    autq = om.brute_force_aut(Q8)
    core = ge.characteristic_core(Q8)
    pair = om.induced_pair(Q8, core["N"], autq)
    assert pair["A_order"] == 6 and pair["B_order"] == 1
    assert pair["K_order"] == 6
    assert pair["A_transitive"] and pair["B_transitive"]
    assert pair["A_to_B_function"] is True


def test_induced_pair_not_single_valued():
    # kernel of the quotient action can move N when N is not central;
    # the A -> B correspondence is then reported as not a function
    a4 = cons.line2_frobenius(2, 3, 1, 1)
    G = a4.group
    pair = om.induced_pair(G, ge.characteristic_core(G)["N"],
                           om.brute_force_aut(G))
    assert pair["A_to_B_function"] is False
    assert pair["A_transitive"] and pair["B_transitive"]


def test_verify_automorphism_rejects():
    Q8 = quat()
    perm = np.arange(8, dtype=np.int64)
    good = 0
    for i in range(1, 8):
        for j in range(i + 1, 8):
            cand = perm.copy()
            cand[[i, j]] = cand[[j, i]]
            if om.verify_automorphism(Q8, cand):
                good += 1
    # single transpositions fixing the identity are rarely automorphisms
    assert good < 8
    ident = np.arange(8, dtype=np.int64)
    assert om.verify_automorphism(Q8, ident)


def test_inner_automorphism_orbits():
    S3 = perm_group([(1, 2, 0), (1, 0, 2)])
    inn = om.inner_automorphisms(S3)
    rep = om.orbits(S3, inn)
    assert sorted(rep["lengths"]) == [1, 2, 3]


def test_linear_split_layers():
    cases = [
        (quat(), 2, 1),
        (cons.heisenberg_trace((3, 1), (3, 1), 2).group, 2, 1),
        (cons.suzuki_B(2).group, 4, 2),
        (cons.extraspecial2(2, "+").group, 4, 1),
    ]
    for G, m, n in cases:
        sp = om.linear_split(G)
        assert (sp["m"], sp["n"]) == (m, n)
        p = sp["p"]
        # coset coordinates are additive on random pairs
        rng = np.random.RandomState(11)
        cc = sp["coset_coords"]
        for _ in range(60):
            a, b = rng.randint(0, G.n, size=2)
            assert np.array_equal(cc[G.mul[a, b]],
                                  (cc[a] + cc[b]) % p)
        # every coordinate vector has a representative
        assert (sp["rep_by_coords"] >= 0).all()
        caut, _, mm, nn, count = om.central_automorphisms(G)
        assert count == p ** (mm * nn)


def test_brute_force_aut_is_group():
    Q8 = quat()
    aut = om.brute_force_aut(Q8)
    perms = aut.perms
    assert len(perms) == 24
    keys = {p.tobytes() for p in perms}
    rng = np.random.RandomState(3)
    for _ in range(50):
        i, j = rng.randint(0, len(perms), size=2)
        assert perms[i][perms[j]].tobytes() in keys
