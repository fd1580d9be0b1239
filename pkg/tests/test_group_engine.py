import itertools

import numpy as np
import pytest

from orbitforge import group_engine as ge


def cyclic(n):
    return ge.group_from_oracle(list(range(n)), lambda a, b: (a + b) % n)


def direct(orders):
    elems = list(itertools.product(*[range(n) for n in orders]))

    def mul(a, b):
        return tuple((x + y) % n for x, y, n in zip(a, b, orders))

    return ge.group_from_oracle(elems, mul)


def perm_group(gen_perms):
    """Closure of permutation tuples under composition."""
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
    # signed quaternion units 1,-1,i,-i,j,-j,k,-k
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    base = {("1", "1"): "1", ("i", "i"): "-1", ("j", "j"): "-1",
            ("k", "k"): "-1", ("i", "j"): "k", ("j", "k"): "i",
            ("k", "i"): "j", ("j", "i"): "-k", ("k", "j"): "-i",
            ("i", "k"): "-j"}

    def umul(a, b):
        sa = -1 if a.startswith("-") else 1
        sb = -1 if b.startswith("-") else 1
        ua, ub = a.lstrip("-"), b.lstrip("-")
        if ua == "1":
            r = ub
        elif ub == "1":
            r = ua
        else:
            r = base[(ua, ub)]
        s = sa * sb * (-1 if r.startswith("-") else 1)
        return r.lstrip("-") if s == 1 else "-" + r.lstrip("-")

    idx = {nm: i for i, nm in enumerate(names)}
    return ge.group_from_oracle(
        list(range(8)), lambda a, b: idx[umul(names[a], names[b])])


def test_cyclic_basics():
    C4 = cyclic(4)
    assert C4.order_profile() == ((1, 1), (2, 1), (4, 2))
    assert C4.exponent() == 4
    assert len(C4.center()) == 4
    ok, phi = ge.is_isomorphic_bruteforce(C4, direct([2, 2]))
    assert not ok and phi is None
    ok, phi = ge.is_isomorphic_bruteforce(C4, cyclic(4))
    assert ok and phi is not None


def test_s3():
    S3 = perm_group([(1, 2, 0), (1, 0, 2)])
    assert S3.n == 6
    assert len(S3.center()) == 1
    assert len(S3.derived()) == 3
    assert sorted(np.unique(S3.class_sizes()).tolist()) == [1, 2, 3]
    assert len(ge.all_automorphisms(S3)) == 6
    t = S3.index[(1, 0, 2)]
    assert len(S3.centralizer([t])) == 2


def test_a4_core():
    A4 = perm_group([(1, 2, 0, 3), (0, 2, 3, 1)])
    assert A4.n == 12
    core = ge.characteristic_core(A4)
    assert len(core["derived"]) == 4
    assert len(core["frattini"]) == 1
    assert len(core["N"]) == 4
    assert len(ge.all_automorphisms(A4)) == 24


def test_q8():
    Q8 = quat()
    core = ge.characteristic_core(Q8)
    assert len(core["center"]) == 2
    assert len(core["derived"]) == 2
    assert len(core["frattini"]) == 2
    assert len(core["N"]) == 2
    assert Q8.order_profile() == ((1, 1), (2, 1), (4, 6))
    assert len(ge.all_automorphisms(Q8)) == 24


def test_elementary_abelian_aut():
    assert len(ge.all_automorphisms(direct([2, 2, 2]))) == 168
    assert len(ge.all_automorphisms(direct([3, 3, 3]))) == 11232


def test_d4_not_q8():
    D4 = perm_group([(1, 2, 3, 0), (1, 0, 3, 2)])
    assert D4.n == 8
    assert len(ge.all_automorphisms(D4)) == 8
    ok, _ = ge.is_isomorphic_bruteforce(D4, quat())
    assert not ok


def test_quotients():
    Q8 = quat()
    Qz = ge.quotient(Q8, Q8.center())
    assert Qz.n == 4 and Qz.exponent() == 2
    ok, _ = ge.is_isomorphic_bruteforce(Qz, direct([2, 2]))
    assert ok
    S3 = perm_group([(1, 2, 0), (1, 0, 2)])
    assert ge.quotient(S3, S3.derived()).n == 2
    with pytest.raises(ValueError):
        ge.quotient(S3, S3.closure([S3.index[(1, 0, 2)]]))


def test_gamma_series():
    gam = quat().gamma_series()
    assert [len(g) for g in gam] == [8, 2, 1]
    S3 = perm_group([(1, 2, 0), (1, 0, 2)])
    assert [len(g) for g in S3.gamma_series()] == [6, 3]


def test_frattini_and_maximals():
    assert len(direct([4, 2]).frattini()) == 2
    S3 = perm_group([(1, 2, 0), (1, 0, 2)])
    assert len(S3.frattini()) == 1
    C6 = cyclic(6)
    assert sorted(len(m) for m in C6.maximal_subgroups()) == [2, 3]
    assert len(C6.frattini()) == 1


def test_cayley_roundtrip(tmp_path):
    Q8 = quat()
    path = str(tmp_path / "q8.g3o")
    ge.export_cayley(Q8, path)
    back = ge.import_cayley(path)
    assert np.array_equal(back.mul, Q8.mul)
    with open(path, "rb") as fh:
        assert fh.read(4) == ge.CAYLEY_MAGIC


def test_d6_aut():
    D6 = perm_group([(1, 2, 0, 3, 4), (1, 0, 2, 3, 4), (0, 1, 2, 4, 3)])
    assert D6.n == 12
    assert len(ge.all_automorphisms(D6)) == 12


def test_find_isomorphism_random_relabel():
    # relabelling a group gives an isomorphic oracle; the search must
    # recover some isomorphism, and its table must check out
    rng = np.random.RandomState(7)
    A4 = perm_group([(1, 2, 0, 3), (0, 2, 3, 1)])
    for _ in range(5):
        perm = rng.permutation(A4.n)
        inv = np.argsort(perm)
        mul2 = perm[A4.mul[inv][:, inv]]
        H = ge.FiniteGroup(list(range(A4.n)), mul2)
        phi = ge.find_isomorphism(A4, H)
        assert phi is not None
        assert np.array_equal(phi[A4.mul], H.mul[phi[:, None], phi[None, :]])
