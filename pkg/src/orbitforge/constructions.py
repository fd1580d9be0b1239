"""Explicit constructors for the group families under study.

Every family is realized on tuple codes (field element indices or small
residues), its multiplication table is built vectorized from coordinate
formulas, and each structured automorphism generator attached to the
family is verified against the table before it is returned.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg_mod as lm
from .gf_arith import (element_of_order, field_create, frob_table, is_prime,
                       subfield_embed, trace_table)
from .group_engine import FiniteGroup
from .orbit_machine import AutomorphismSet

SIZE_CAP = 1 << 13


@dataclass
class FamilyInstance:
    tag: str
    params: dict
    group: FiniteGroup
    acts: AutomorphismSet
    meta: dict = field(default_factory=dict)


class _Coder:
    """Mixed-radix tuple codes; index order equals lexicographic order."""

    def __init__(self, shapes):
        self.shapes = tuple(int(s) for s in shapes)
        k = len(self.shapes)
        w = [1] * k
        for t in range(k - 2, -1, -1):
            w[t] = w[t + 1] * self.shapes[t + 1]
        self.weights = np.array(w, dtype=np.int64)
        self.n = int(np.prod(self.shapes, dtype=np.int64))
        idx = np.arange(self.n, dtype=np.int64)
        self.digits = np.empty((self.n, k), dtype=np.int64)
        for t in range(k):
            self.digits[:, t] = (idx // w[t]) % self.shapes[t]

    def elems(self):
        return [tuple(map(int, row)) for row in self.digits]

    def encode_cols(self, cols):
        out = None
        for t, c in enumerate(cols):
            term = c * self.weights[t]
            out = term if out is None else out + term
        return out


def _check_cap(n):
    if n > SIZE_CAP:
        raise ValueError(f"group order {n} exceeds cap {SIZE_CAP}")


def _inverse_embedding(F_small, F_big):
    emb = subfield_embed(F_small, F_big)
    inv = np.full(F_big.q, -1, dtype=np.int64)
    inv[emb] = np.arange(F_small.q)
    return emb, inv


def _pick(arr, inv):
    out = inv[arr]
    if (out < 0).any():
        raise AssertionError("value left the expected subfield")
    return out


def _instance(tag, params, coder, table, gen_perms, meta):
    group = FiniteGroup(coder.elems(), table)
    perms = np.array(gen_perms, dtype=np.int64).reshape(len(gen_perms),
                                                        group.n)
    acts = AutomorphismSet(group, perms)
    return FamilyInstance(tag, params, group, acts, meta)


# -------------------------------------------------------- line 1: abelian

def _gl_generator_mats(p, n):
    """Generators of GL_n(p): n-cycle, a transvection, and a primitive
    scalar in the first coordinate (the last two coincide with nothing
    for n = 1, where the primitive scalar alone generates)."""
    F = field_create(p, 1)
    mats = []
    if n == 1:
        g = element_of_order(F, p - 1) if p > 2 else 1
        mats.append(np.array([[g]], dtype=np.int64))
        return mats
    cyc = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        cyc[i, (i + 1) % n] = 1
    mats.append(cyc)
    tv = np.eye(n, dtype=np.int64)
    tv[0, 1] = 1
    mats.append(tv)
    if p > 2:
        sc = np.eye(n, dtype=np.int64)
        sc[0, 0] = element_of_order(F, p - 1)
        mats.append(sc)
    return mats


def line1_abelian(p, n):
    """(C_{p^2})^n with the entrywise-lifted GL_n(p) action."""
    if not is_prime(p) or n < 1:
        raise ValueError("need prime p and n >= 1")
    _check_cap(p ** (2 * n))
    psq = p * p
    coder = _Coder([psq] * n)
    D = coder.digits
    cols = [(D[:, t][:, None] + D[:, t][None, :]) % psq for t in range(n)]
    table = coder.encode_cols(cols)
    perms = []
    for M in _gl_generator_mats(p, n):
        img = (D @ M.T) % psq  # row vector image with integer matrix, mod p^2
        perms.append(coder.encode_cols([img[:, t] for t in range(n)]))
    meta = {"p": p, "n_dim": n, "r": p, "m_dim": n,
            "W_order": p ** n, "V_order": p ** n}
    return _instance("line1", {"p": p, "n": n}, coder, table, perms, meta)


# --------------------------------------------- line 2: scalar Frobenius

def line2_frobenius(p, r, ell, d):
    """C_{r^ell} acting by a fixed order-e scalar on GF(q)^d,
    q = p^phi(e), with e = r^ell and p of full multiplicative order
    mod e."""
    if not (is_prime(p) and is_prime(r)) or p == r:
        raise ValueError("need distinct primes p, r")
    if ell < 1 or d < 1:
        raise ValueError("need ell, d >= 1")
    e = r ** ell
    phi = e - e // r
    # p must have full order phi(e) mod e
    o, x = 0, 1
    for t in range(1, phi + 1):
        x = (x * p) % e
        if x == 1:
            o = t
            break
    if o != phi:
        raise ValueError("p is not a primitive root for the required modulus")
    F = field_create(p, phi)
    q = F.q
    _check_cap(e * q ** d)
    lam = element_of_order(F, e)
    lampow = np.empty(e, dtype=np.int64)
    lampow[0] = 1
    for t in range(1, e):
        lampow[t] = F.mul_elems(int(lampow[t - 1]), lam)
    coder = _Coder([e] + [q] * d)
    D = coder.digits
    A, B = D[:, 0][:, None], D[:, 0][None, :]
    cols = [(A + B) % e]
    for t in range(1, d + 1):
        scaled = F.mul[D[:, t][:, None], lampow[B]]
        cols.append(F.add[scaled, D[:, t][None, :]])
    table = coder.encode_cols(cols)
    perms = []
    # GF(q)-linear maps on the vector part
    for M in _glq_generator_mats(F, d):
        img = lm.vec_batch_apply(F, D[:, 1:], M)
        perms.append(coder.encode_cols([D[:, 0]] +
                                       [img[:, t] for t in range(d)]))
    # Galois: both coordinates through Frobenius
    fr = frob_table(F, 1)
    perms.append(coder.encode_cols([(D[:, 0] * p) % e] +
                                   [fr[D[:, t]] for t in range(1, d + 1)]))
    meta = {"p": p, "r": r, "ell": ell, "d": d, "e": e, "q": q,
            "W_order": q ** d, "V_order": e,
            "n_dim": phi * d, "m_dim": ell}
    return _instance("line2", {"p": p, "r": r, "ell": ell, "d": d},
                     coder, table, perms, meta)


def _glq_generator_mats(F, d):
    mats = []
    xi = element_of_order(F, F.q - 1) if F.q > 2 else 1
    sc = lm.identity_mat(d)
    sc[0, 0] = xi
    if F.q > 2:
        mats.append(sc)
    if d >= 2:
        cyc = np.zeros((d, d), dtype=np.int64)
        for i in range(d):
            cyc[i, (i + 1) % d] = 1
        mats.append(cyc)
        tv = lm.identity_mat(d)
        tv[0, 1] = 1
        mats.append(tv)
    if not mats:
        mats.append(lm.identity_mat(d))
    return mats


# ------------------------------------------------- lines 3-5: 2-groups

def suzuki_A(n, i):
    """Type-A group on GF(2^n) x GF(2^n) with twist x -> x^(2^i)."""
    theta_order = n // math.gcd(n, i)
    if theta_order % 2 == 0 or theta_order <= 1:
        raise ValueError("twist order must be odd and > 1")
    F = field_create(2, n)
    q = F.q
    _check_cap(q * q)
    th = frob_table(F, i)
    coder = _Coder([q, q])
    D = coder.digits
    L1, L2 = D[:, 0][:, None], D[:, 0][None, :]
    Z1, Z2 = D[:, 1][:, None], D[:, 1][None, :]
    cols = [F.add[L1, L2], F.add[F.add[Z1, Z2], F.mul[th[L1], L2]]]
    table = coder.encode_cols(cols)
    xi = element_of_order(F, q - 1)
    perms = []
    for a_exp, lam in ((0, xi), (1, 1)):
        fr = frob_table(F, a_exp)
        lam_factor = F.mul_elems(lam, int(th[lam]))
        mu = F.mul[fr[D[:, 0]], lam]
        ze = F.mul[fr[D[:, 1]], lam_factor]
        perms.append(coder.encode_cols([mu, ze]))
    meta = {"p": 2, "q": q, "theta_exp": i,
            "W_order": q, "V_order": q, "n_dim": n, "m_dim": n, "r": 2}
    return _instance("suzukiA", {"n": n, "i": i}, coder, table, perms, meta)


def suzuki_B(n, eps_choice=0):
    """Type-B group on GF(2^(2n)) x GF(2^n); the cocycle is
    x + x^q with x = l1 * l2^q * eps for an element eps of order q + 1.

    The q-power Galois map is a *candidate* action only: it is tested
    and always fails the homomorphism check, which is recorded in the
    instance metadata rather than silently skipped."""
    if n < 1:
        raise ValueError("n >= 1")
    F2 = field_create(2, 2 * n)
    F = field_create(2, n)
    q = F.q
    _check_cap(q ** 3)
    order = q + 1
    choices = [x for x in range(1, F2.q) if F2.elem_order(x) == order]
    if eps_choice >= len(choices):
        raise ValueError("epsilon choice out of range")
    eps = choices[eps_choice]
    frq = frob_table(F2, n)
    emb, inv_emb = _inverse_embedding(F, F2)
    coder = _Coder([F2.q, q])
    D = coder.digits
    L1, L2 = D[:, 0][:, None], D[:, 0][None, :]
    Z1, Z2 = D[:, 1][:, None], D[:, 1][None, :]
    x = F2.mul[F2.mul[L1, frq[L2]], eps]
    c = _pick(F2.add[x, frq[x]], inv_emb)
    cols = [F2.add[L1, L2], F.add[F.add[Z1, Z2], c]]
    table = coder.encode_cols(cols)
    # scaling by a generator mu of GF(q^2)^*: zeta scales by the norm
    mu = element_of_order(F2, F2.q - 1)
    norm_mu = int(_pick(np.array([F2.mul_elems(mu, int(frq[mu]))]),
                        inv_emb)[0])
    perms = [coder.encode_cols([F2.mul[D[:, 0], mu],
                                F.mul[D[:, 1], norm_mu]])]
    meta = {"p": 2, "q": q, "epsilon": eps, "epsilon_choice": eps_choice,
            "W_order": q, "V_order": q * q,
            "n_dim": n, "m_dim": 2 * n, "r": 2}
    inst = _instance("suzukiB", {"n": n, "eps_choice": eps_choice},
                     coder, table, perms, meta)
    # candidate Galois map (mu, zeta) -> (mu^q, zeta): verify, then drop
    cand = coder.encode_cols([frq[D[:, 0]], D[:, 1]])
    from .orbit_machine import verify_automorphism
    inst.meta["galois_dropped"] = not verify_automorphism(inst.group, cand)
    return inst


def dornhoff_P():
    """The order-512 group on GF(64) x GF(8) with cocycle x + x^8,
    x = l1 * l2^2 * eps, eps primitive of order 63, together with its
    two defining automorphisms."""
    F64 = field_create(2, 6)
    F8 = field_create(2, 3)
    eps = element_of_order(F64, 63)
    fr8 = frob_table(F64, 3)
    emb, inv_emb = _inverse_embedding(F8, F64)
    coder = _Coder([64, 8])
    D = coder.digits
    L1, L2 = D[:, 0][:, None], D[:, 0][None, :]
    Z1, Z2 = D[:, 1][:, None], D[:, 1][None, :]
    x = F64.mul[F64.mul[L1, F64.mul[L2, L2]], eps]
    c = _pick(F64.add[x, fr8[x]], inv_emb)
    table = coder.encode_cols([F64.add[L1, L2],
                               F8.add[F8.add[Z1, Z2], c]])
    eps3 = F64.pow_elem(eps, 3)
    eps9_in8 = int(_pick(np.array([F64.pow_elem(eps, 9)]), inv_emb)[0])
    psi = coder.encode_cols([F64.mul[D[:, 0], eps3],
                             F8.mul[D[:, 1], eps9_in8]])
    fr4_64 = frob_table(F64, 2)
    fr4_8 = frob_table(F8, 2)
    phi = coder.encode_cols([F64.mul[fr4_64[D[:, 0]], eps],
                             fr4_8[D[:, 1]]])
    meta = {"p": 2, "q": 8, "W_order": 8, "V_order": 64,
            "n_dim": 3, "m_dim": 6, "r": 2}
    return _instance("dornhoffP", {}, coder, table, [psi, phi], meta)


# ------------------------------------- lines 6-7 and towers: odd p-groups

def heisenberg_trace(F, F0, d):
    """F^d x F0 with cocycle Tr(f(v1, v2)) for the standard symplectic f.
    F and F0 are (p, k) pairs or field objects; F0 must sit inside F."""
    F = field_create(*F) if isinstance(F, tuple) else F
    F0 = field_create(*F0) if isinstance(F0, tuple) else F0
    if F.p != F0.p or F.k % F0.k != 0:
        raise ValueError("F0 must be a subfield of F")
    if F.p == 2:
        raise ValueError("odd characteristic required")
    if d % 2 != 0 or d < 2:
        raise ValueError("d must be even and >= 2")
    _check_cap(F.q ** d * F0.q)
    tr = trace_table(F, F0.k)
    coder = _Coder([F.q] * d + [F0.q])
    D = coder.digits
    V = D[:, :d]
    f = None
    for blk in range(0, d, 2):
        a = F.mul[V[:, blk][:, None], V[:, blk + 1][None, :]]
        b = F.mul[V[:, blk + 1][:, None], V[:, blk][None, :]]
        term = F.add[a, F.neg[b]]
        f = term if f is None else F.add[f, term]
    z = F0.add[F0.add[D[:, d][:, None], D[:, d][None, :]], tr[f]]
    cols = [F.add[V[:, t][:, None], V[:, t][None, :]] for t in range(d)]
    table = coder.encode_cols(cols + [z])
    perms = []
    for g in lm.symplectic_transvection_gens(F, d):
        img = lm.vec_batch_apply(F, V, g)
        perms.append(coder.encode_cols([img[:, t] for t in range(d)] +
                                       [D[:, d]]))
    if F0.q > 2:
        delta0 = element_of_order(F0, F0.q - 1)
        delta = int(subfield_embed(F0, F)[delta0]) if F.k != F0.k else delta0
        gd = lm.identity_mat(d)
        for t in range(0, d, 2):
            gd[t, t] = delta
        img = lm.vec_batch_apply(F, V, gd)
        perms.append(coder.encode_cols([img[:, t] for t in range(d)] +
                                       [F0.mul[D[:, d], delta0]]))
    if F.k > 1:
        frF, fr0 = frob_table(F, 1), frob_table(F0, 1)
        perms.append(coder.encode_cols([frF[V[:, t]] for t in range(d)] +
                                       [fr0[D[:, d]]]))
    meta = {"p": F.p, "W_order": F0.q, "V_order": F.q ** d,
            "n_dim": F0.k, "m_dim": d * F.k, "r": F.p}
    return _instance("heisenberg", {"F": (F.p, F.k), "F0": (F0.p, F0.k),
                                    "d": d}, coder, table, perms, meta)


def _gl3_action_cols(F, D, g, with_tower_x=None):
    """Image columns of (v, w[, x]) under v -> vg, w -> w (g wedge g)."""
    wg = lm.wedge_power_matrix(F, g, 2)
    vi = lm.vec_batch_apply(F, D[:, 0:3], g)
    wi = lm.vec_batch_apply(F, D[:, 3:6], wg)
    cols = [vi[:, t] for t in range(3)] + [wi[:, t] for t in range(3)]
    return cols


def sl3_pair(F):
    """F^3 x F^3 with cocycle v1 wedge v2 in the cyclic basis."""
    F = field_create(*F) if isinstance(F, tuple) else F
    if F.p == 2:
        raise ValueError("odd q required")
    _check_cap(F.q ** 6)
    coder = _Coder([F.q] * 6)
    D = coder.digits
    cols = []
    for t in range(6):
        cols.append(F.add[D[:, t][:, None], D[:, t][None, :]])
    # wedge term added to the w-coordinates, cyclic basis
    pairs = [(1, 2), (2, 0), (0, 1)]
    for r, (i, j) in enumerate(pairs):
        a = F.mul[D[:, i][:, None], D[:, j][None, :]]
        b = F.mul[D[:, j][:, None], D[:, i][None, :]]
        cols[3 + r] = F.add[cols[3 + r], F.add[a, F.neg[b]]]
    table = coder.encode_cols(cols)
    perms = []
    for g in _glq_generator_mats(F, 3):
        perms.append(coder.encode_cols(_gl3_action_cols(F, D, g)))
    if F.k > 1:
        fr = frob_table(F, 1)
        perms.append(coder.encode_cols([fr[D[:, t]] for t in range(6)]))
    meta = {"p": F.p, "W_order": F.q ** 3, "V_order": F.q ** 3,
            "n_dim": 3 * F.k, "m_dim": 3 * F.k, "r": F.p}
    return _instance("sl3pair", {"F": (F.p, F.k)}, coder, table, perms, meta)


def gl3_tower(F, F0):
    """The free 3-generator exponent-3 group (order 3^7, class 3):
    layers V, wedge^2 V, wedge^3 V with GL(V) inducing (g, g^g, det g).

    Only F = F0 = GF(3) fits the order cap: any larger field puts
    q^7 far beyond reach.  Built by polycyclic collection on normal
    forms  x1^a1 x2^a2 x3^a3 y21^b1 y31^b2 y32^b3 z^c  where
    y_ij = [x_i, x_j] and z = [[x2, x1], x3]; triple commutators
    alternate (exponent 3 forces the 2-Engel law), so
    [[x_i, x_j], x_k] = z^(-eps(ijk)).

    Associativity is proved, not sampled: the right-regular maps of the
    seven polycyclic generators close into a permutation group of order
    exactly 3^7 whose elements are the columns of the table.
    """
    F = field_create(*F) if isinstance(F, tuple) else F
    F0 = field_create(*F0) if isinstance(F0, tuple) else F0
    if (F.p, F.k) != (3, 1) or (F0.p, F0.k) != (3, 1):
        raise ValueError("only the GF(3) tower fits the order cap")
    coder = _Coder([3] * 7)
    D = coder.digits
    n = coder.n
    a1, a2, a3 = D[:, 0], D[:, 1], D[:, 2]
    b21, b31, b32, zc = D[:, 3], D[:, 4], D[:, 5], D[:, 6]
    gen_perms = [
        # right multiplication by x1, x2, x3 (collection formulas)
        coder.encode_cols([(a1 + 1) % 3, a2, a3, (b21 + a2) % 3,
                           (b31 + a3) % 3, b32, (zc + b32 + a2 * a3) % 3]),
        coder.encode_cols([a1, (a2 + 1) % 3, a3, b21, b31,
                           (b32 + a3) % 3, (zc - b31) % 3]),
        coder.encode_cols([a1, a2, (a3 + 1) % 3, b21, b31, b32,
                           (zc + b21) % 3]),
        # right multiplication by y21, y31, y32, z (all central mod z)
        coder.encode_cols([a1, a2, a3, (b21 + 1) % 3, b31, b32, zc]),
        coder.encode_cols([a1, a2, a3, b21, (b31 + 1) % 3, b32, zc]),
        coder.encode_cols([a1, a2, a3, b21, b31, (b32 + 1) % 3, zc]),
        coder.encode_cols([a1, a2, a3, b21, b31, b32, (zc + 1) % 3]),
    ]
    # column h of the table is the right-regular map of h, built by
    # peeling h's last nonzero digit
    table = np.empty((n, n), dtype=np.int64)
    table[:, 0] = np.arange(n)
    for h in range(1, n):
        t = 6
        while D[h, t] == 0:
            t -= 1
        prev = h - coder.weights[t]
        table[:, h] = gen_perms[t][table[:, prev]]
    if not np.array_equal(table[0], np.arange(n)):
        raise AssertionError("right-regular columns are misaligned")
    seen = {p.tobytes() for p in gen_perms}
    frontier = list(seen)
    lookup = {np.arange(n).tobytes()} | seen
    while frontier:
        nxt = []
        for pb in frontier:
            p = np.frombuffer(pb, dtype=np.int64)
            for g in gen_perms:
                q = g[p]
                qb = q.tobytes()
                if qb not in lookup:
                    lookup.add(qb)
                    nxt.append(qb)
        frontier = nxt
    if len(lookup) != n:
        raise AssertionError("collection closure has the wrong order")
    group = FiniteGroup(coder.elems(), table)
    if group.exponent() != 3 or \
            [len(g) for g in group.gamma_series()] != [n, 81, 3, 1]:
        raise AssertionError("tower structure check failed")

    def image_perm(gen_images):
        phi = np.full(n, group.e, dtype=np.int64)
        for t in range(7):
            m = gen_images[t]
            mpow = np.array([group.e, m, table[m, m]], dtype=np.int64)
            phi = table[phi, mpow[D[:, t]]]
        return phi

    def comm(g, h):
        return table[table[group.inv[g], group.inv[h]], table[g, h]]

    def derived_images(x_imgs):
        y21i = comm(x_imgs[1], x_imgs[0])
        y31i = comm(x_imgs[2], x_imgs[0])
        y32i = comm(x_imgs[2], x_imgs[1])
        zi = comm(y21i, x_imgs[2])
        return list(x_imgs) + [y21i, y31i, y32i, zi]

    perms = []
    gl_gens = [np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]]),  # 3-cycle
               np.array([[1, 1, 0], [0, 1, 0], [0, 0, 1]]),  # transvection
               np.array([[2, 0, 0], [0, 1, 0], [0, 0, 1]])]  # scalar part
    for g in gl_gens:
        x_imgs = [int(coder.encode_cols(
            [np.array([g[i, 0]]), np.array([g[i, 1]]), np.array([g[i, 2]]),
             np.zeros(1, dtype=np.int64), np.zeros(1, dtype=np.int64),
             np.zeros(1, dtype=np.int64), np.zeros(1, dtype=np.int64)])[0])
            for i in range(3)]
        perms.append(image_perm(derived_images(x_imgs)))
    # kernel-of-abelianization generators: x_i -> x_i * u, u in gamma_2;
    # freeness makes each such assignment an automorphism
    basis_elts = [int(coder.weights[3]), int(coder.weights[4]),
                  int(coder.weights[5]), int(coder.weights[6])]
    for slot in range(3):
        for u in basis_elts:
            x_imgs = [coder.weights[i] for i in range(3)]
            x_imgs[slot] = int(table[x_imgs[slot], u])
            perms.append(image_perm(derived_images(
                [int(x) for x in x_imgs])))
    acts = AutomorphismSet(group, np.array(perms, dtype=np.int64))
    meta = {"p": 3, "q": 3}
    return FamilyInstance("gl3tower", {"F": (3, 1), "F0": (3, 1)},
                          group, acts, meta)


# ------------------------------------------------ extraspecial 2-groups

def _es2_beta(k, eps):
    d = 2 * k
    beta = np.zeros((d, d), dtype=np.int64)
    for i in range(0, d, 2):
        beta[i, i + 1] = 1
    if eps == "-":
        beta[d - 2, d - 2] = 1
        beta[d - 1, d - 1] = 1
    return beta


def extraspecial2(k, eps):
    """GF(2)^(2k) x GF(2) with bilinear cocycle beta lifting the type-eps
    quadratic form; squaring realizes Q, and the attached action is the
    orthogonal group O(Q) lifted by triangular corrections."""
    if k < 1 or eps not in ("+", "-"):
        raise ValueError("k >= 1 and eps in {+, -}")
    d = 2 * k
    _check_cap(2 ** (d + 1))
    beta = _es2_beta(k, eps)
    polar = (beta + beta.T) % 2
    coder = _Coder([2] * (d + 1))
    D = coder.digits
    V = D[:, :d]
    c = np.zeros((coder.n, coder.n), dtype=np.int64)
    for i in range(d):
        for j in range(d):
            if beta[i, j]:
                c = (c + V[:, i][:, None] * V[:, j][None, :]) % 2
    cols = [(V[:, t][:, None] + V[:, t][None, :]) % 2 for t in range(d)]
    cols.append((D[:, d][:, None] + D[:, d][None, :] + c) % 2)
    table = coder.encode_cols(cols)

    def Q(v):
        return int(v @ beta @ v % 2)

    def lift_perm(g):
        img = (V @ g) % 2
        s = (g @ beta @ g.T + beta) % 2
        h = np.zeros(coder.n, dtype=np.int64)
        for i in range(d):
            for j in range(i + 1, d):
                if s[i, j] != s[j, i]:
                    raise AssertionError("correction form not symmetric")
                if s[i, j]:
                    h = (h + V[:, i] * V[:, j]) % 2
        if np.any(np.diag(s)):
            raise AssertionError("correction form has nonzero diagonal")
        return coder.encode_cols([img[:, t] for t in range(d)] +
                                 [(D[:, d] + h) % 2])

    mats = []
    for flat in range(1, 2 ** d):
        a = np.array([(flat >> t) & 1 for t in range(d)], dtype=np.int64)
        if Q(a) != 1:
            continue
        t_a = np.eye(d, dtype=np.int64)
        for i in range(d):
            fv = int(polar[i] @ a % 2)
            if fv:
                t_a[i] = (t_a[i] + a) % 2
        mats.append(t_a)
    if eps == "+" and k >= 2:
        for blk in range(k - 1):
            sw = np.eye(d, dtype=np.int64)
            i, j = 2 * blk, 2 * blk + 2
            sw[[i, j]] = sw[[j, i]]
            sw[[i + 1, j + 1]] = sw[[j + 1, i + 1]]
            mats.append(sw)
    for g in mats:
        qs = [Q((np.array([(x >> t) & 1 for t in range(d)]) @ g) % 2)
              for x in range(2 ** d)]
        qd = [Q(np.array([(x >> t) & 1 for t in range(d)]))
              for x in range(2 ** d)]
        if qs != qd:
            raise AssertionError("generator does not preserve Q")
    perms = [lift_perm(g) for g in mats]
    meta = {"p": 2, "eps": eps, "k": k, "W_order": 2, "V_order": 2 ** d}
    return _instance("extraspecial2", {"k": k, "eps": eps},
                     coder, table, perms, meta)


# --------------------------------------------------- generic wedge quotient

def generic_quotient(p, d, action_gens, U_basis):
    """V x (Lambda^2 V / U) over GF(p) with the wedge-twisted rule; U is
    given by basis rows and must be invariant under every action matrix."""
    if p == 2:
        raise ValueError("odd p required")
    Fp = field_create(p, 1)
    basis = lm.wedge_basis(d, 2)
    L = len(basis)
    U_basis = np.asarray(U_basis, dtype=np.int64).reshape(-1, L) % p
    u_rank = lm.mat_rank(Fp, U_basis) if U_basis.size else 0
    if U_basis.size and u_rank != U_basis.shape[0]:
        raise ValueError("U basis rows must be independent")
    c_dim = L - u_rank
    if U_basis.size:
        T = lm.nullspace_basis(Fp, U_basis.T).T
    else:
        T = np.eye(L, dtype=np.int64)
    if T.shape != (L, c_dim):
        raise AssertionError("annihilator dimension mismatch")
    # section R with R @ T = identity
    piv_rows = []
    cur_rank = 0
    for r in range(L):
        cand = T[piv_rows + [r], :]
        if lm.mat_rank(Fp, cand) > cur_rank:
            piv_rows.append(r)
            cur_rank += 1
        if cur_rank == c_dim:
            break
    R = np.zeros((c_dim, L), dtype=np.int64)
    R[:, piv_rows] = lm.mat_inv(Fp, T[piv_rows, :])
    if not np.array_equal((R @ T) % p, np.eye(c_dim, dtype=np.int64)):
        raise AssertionError("section construction failed")
    _check_cap(p ** (d + c_dim))
    coder = _Coder([p] * (d + c_dim))
    D = coder.digits
    V = D[:, :d]
    cols = [(V[:, t][:, None] + V[:, t][None, :]) % p for t in range(d)]
    wedge_cols = []
    for (i, j) in basis:
        a = V[:, i][:, None] * V[:, j][None, :]
        b = V[:, j][:, None] * V[:, i][None, :]
        wedge_cols.append((a - b) % p)
    for t in range(c_dim):
        acc = D[:, d + t][:, None] + D[:, d + t][None, :]
        for r in range(L):
            if T[r, t]:
                acc = acc + T[r, t] * wedge_cols[r]
        cols.append(acc % p)
    table = coder.encode_cols(cols)
    perms = []
    for g in action_gens:
        g = np.asarray(g, dtype=np.int64) % p
        Wg = lm.wedge_power_matrix(Fp, g, 2)
        M = (R @ ((Wg @ T) % p)) % p
        if not np.array_equal((Wg @ T) % p, (T @ M) % p):
            raise ValueError("U is not invariant under an action generator")
        vi = (V @ g) % p
        ci = (D[:, d:] @ M) % p
        perms.append(coder.encode_cols([vi[:, t] for t in range(d)] +
                                       [ci[:, t] for t in range(c_dim)]))
    meta = {"p": p, "d": d, "codim": c_dim}
    return _instance("genericQuotient", {"p": p, "d": d, "u_rank": u_rank},
                     coder, table, perms, meta)
