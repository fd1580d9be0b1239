import numpy as np

from orbitforge.gf_arith import (element_of_order, field_create, frob_table,
                                 frobenius_apply, is_prime, norm_table,
                                 subfield_embed, trace_table,
                                 trace_to_subfield)


def test_is_prime_small():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}
    for n in range(50):
        assert is_prime(n) == (n in primes), n


def test_field_axioms_random():
    rng = np.random.RandomState(1)
    for p, k in ((2, 3), (3, 2), (5, 2), (2, 4), (7, 1)):
        F = field_create(p, k)
        assert F.q == p ** k
        for _ in range(150):
            a, b, c = (int(rng.randint(F.q)) for _ in range(3))
            assert F.add_elems(a, b) == F.add_elems(b, a)
            assert F.mul_elems(a, b) == F.mul_elems(b, a)
            assert F.add_elems(F.add_elems(a, b), c) == \
                F.add_elems(a, F.add_elems(b, c))
            assert F.mul_elems(F.mul_elems(a, b), c) == \
                F.mul_elems(a, F.mul_elems(b, c))
            assert F.mul_elems(a, F.add_elems(b, c)) == \
                F.add_elems(F.mul_elems(a, b), F.mul_elems(a, c))
            assert F.add_elems(a, F.neg_elem(a)) == 0
            if a:
                assert F.mul_elems(a, F.inv_elem(a)) == 1
        # indices 0 and 1 really are the additive and multiplicative units
        assert F.add_elems(0, 5 % F.q) == 5 % F.q
        assert F.mul_elems(1, 5 % F.q) == 5 % F.q


def test_field_caching():
    assert field_create(3, 2) is field_create(3, 2)


def test_element_orders():
    F = field_create(3, 4)
    g = element_of_order(F, 80)
    assert F.elem_order(g) == 80
    h = element_of_order(F, 16)
    assert F.elem_order(h) == 16
    seen = {F.pow_elem(h, t) for t in range(16)}
    assert len(seen) == 16


def test_frobenius():
    F = field_create(2, 6)
    rng = np.random.RandomState(2)
    tab = frob_table(F, 1)
    for _ in range(100):
        a, b = int(rng.randint(F.q)), int(rng.randint(F.q))
        fa = frobenius_apply(F, a, 1)
        assert fa == F.mul_elems(a, a)
        assert tab[a] == fa
        # field automorphism
        assert frobenius_apply(F, F.add_elems(a, b), 1) == \
            F.add_elems(fa, frobenius_apply(F, b, 1))
    # order of Frobenius is the degree
    x = element_of_order(F, F.q - 1)
    y = x
    for _ in range(6):
        y = frobenius_apply(F, y, 1)
    assert y == x


def test_trace_surjective_additive():
    for (p, k, n) in ((2, 4, 2), (3, 4, 2), (2, 6, 3), (5, 2, 1)):
        F = field_create(p, k)
        tt = trace_table(F, n)
        F0 = field_create(p, n)
        vals = set(tt.tolist())
        assert vals == set(range(F0.q))          # onto the subfield
        counts = np.bincount(tt, minlength=F0.q)
        assert np.all(counts == F.q // F0.q)     # balanced fibers
        rng = np.random.RandomState(3)
        for _ in range(60):
            a, b = int(rng.randint(F.q)), int(rng.randint(F.q))
            assert tt[F.add_elems(a, b)] == F0.add_elems(int(tt[a]),
                                                         int(tt[b]))
        assert trace_to_subfield(F, 1, n) == tt[1]


def test_trace_tower_transitive():
    F = field_create(2, 6)
    mid = trace_table(F, 3)
    F3 = field_create(2, 3)
    low = trace_table(F3, 1)
    assert np.array_equal(low[mid], trace_table(F, 1))


def test_norm_multiplicative():
    F = field_create(3, 2)
    nt = norm_table(F, 1)
    rng = np.random.RandomState(4)
    for _ in range(80):
        a, b = int(rng.randint(F.q)), int(rng.randint(F.q))
        assert nt[F.mul_elems(a, b)] == (nt[a] * nt[b]) % 3
    # norm maps the units onto the subfield units
    assert nt[0] == 0 and set(nt[1:].tolist()) == {1, 2}


def test_subfield_embed():
    F2 = field_create(2, 2)
    F6 = field_create(2, 6)
    emb = subfield_embed(F2, F6)
    assert emb[0] == 0 and emb[1] == 1
    for a in range(4):
        for b in range(4):
            assert emb[F2.add_elems(a, b)] == \
                F6.add_elems(int(emb[a]), int(emb[b]))
            assert emb[F2.mul_elems(a, b)] == \
                F6.mul_elems(int(emb[a]), int(emb[b]))
    # image is exactly the fixed field of Frobenius^2
    img = set(emb.tolist())
    fixed = {x for x in range(F6.q) if frobenius_apply(F6, x, 2) == x}
    assert img == fixed
    # embedding a field into itself is the identity
    assert np.array_equal(subfield_embed(F6, F6), np.arange(F6.q))
