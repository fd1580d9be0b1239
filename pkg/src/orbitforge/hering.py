"""Transitive linear groups: generator kits and closure diagnostics.

Matrix groups are given by small generator lists over a finite field and
act on row vectors.  Transitivity certificates come from vector-orbit
BFS, never from full group enumeration; solvable residuals use matrix
closure with a hard element cap.
"""

from dataclasses import dataclass, field

import numpy as np

from . import linalg_mod as lm
from ._kernels import orbit_labels
from .gf_arith import element_of_order, field_create, is_prime

CLOSURE_CAP = 10 ** 6
VECTOR_CAP = 1 << 20


@dataclass
class MatrixGroupGens:
    field: tuple          # (p, k)
    d: int
    mats: list            # list of (d, d) int64 arrays of field indices
    label: str
    meta: dict = field(default_factory=dict)

    def field_obj(self):
        return field_create(*self.field)


def _mat_key(M):
    return np.ascontiguousarray(M.astype(np.int8)).tobytes()


def _batch_mul(F, stack, M):
    """Right-multiply a (B, d, d) stack by M over F."""
    if F.k == 1:
        return np.einsum("bij,jk->bik", stack, M) % F.p
    out = np.empty_like(stack)
    for t in range(len(stack)):
        out[t] = lm.mat_mul(F, stack[t], M)
    return out


def _batch_lmul(F, M, stack):
    """Left-multiply a (B, d, d) stack by M over F."""
    if F.k == 1:
        return np.einsum("ij,bjk->bik", M, stack) % F.p
    out = np.empty_like(stack)
    for t in range(len(stack)):
        out[t] = lm.mat_mul(F, M, stack[t])
    return out


def matrix_closure(gens, cap=CLOSURE_CAP):
    """All elements of the generated matrix group as a (N, d, d) array."""
    F = gens.field_obj()
    d = gens.d
    eye = lm.identity_mat(d)
    seen = {_mat_key(eye)}
    elems = [eye]
    frontier = np.array([eye], dtype=np.int64)
    while len(frontier):
        new = []
        for M in gens.mats:
            prod = _batch_mul(F, frontier, M)
            for row in prod:
                key = _mat_key(row)
                if key not in seen:
                    seen.add(key)
                    new.append(row)
                    if len(seen) > cap:
                        raise ValueError("closure exceeds element cap")
        elems.extend(new)
        frontier = np.array(new, dtype=np.int64) if new else \
            np.empty((0, d, d), dtype=np.int64)
    return np.array(elems, dtype=np.int64)


def _vector_perms(gens):
    F = gens.field_obj()
    d = gens.d
    n = F.q ** d
    if n > VECTOR_CAP:
        raise ValueError("vector space exceeds cap")
    weights = F.q ** np.arange(d - 1, -1, -1, dtype=np.int64)
    idx = np.arange(n, dtype=np.int64)
    V = (idx[:, None] // weights[None, :]) % F.q
    perms = []
    for M in gens.mats:
        img = lm.vec_batch_apply(F, V, M)
        perms.append(img @ weights)
    return np.array(perms, dtype=np.int64), n, weights


def transitive_on_nonzero(gens):
    """True iff the generated group has a single orbit on nonzero
    vectors (certified by orbit BFS, not group enumeration)."""
    perms, n, weights = _vector_perms(gens)
    if n == 2:
        return True     # one nonzero vector
    labels = orbit_labels(perms, n)
    e1 = int(weights[0])
    return int(np.sum(labels == labels[e1])) == n - 1


def gammaL1_gens(p, m):
    """Multiplication by a primitive field element (a Singer generator,
    transitive on its own) plus the Frobenius matrix, as GF(p) maps."""
    F = field_create(p, m)
    if F.q > VECTOR_CAP:
        raise ValueError("field exceeds vector cap")
    xi = element_of_order(F, F.q - 1) if F.q > 2 else 1
    basis = [F.from_digits([1 if t == i else 0 for t in range(m)])
             for i in range(m)]
    mult = np.array([F.digits_of(F.mul_elems(b, xi)) for b in basis],
                    dtype=np.int64)
    frob = np.array([F.digits_of(F.pow_elem(b, p)) for b in basis],
                    dtype=np.int64)
    Fp = field_create(p, 1)
    if F.q > 2:
        order = 1
        M = mult.copy()
        while not np.array_equal(M, lm.identity_mat(m)):
            M = lm.mat_mul(Fp, M, mult)
            order += 1
        if order != F.q - 1:
            raise AssertionError("Singer generator has wrong order")
    return MatrixGroupGens((p, 1), m, [mult, frob], "gammaL1",
                           {"p": p, "m": m, "singer_order": F.q - 1})


def sp_gens(d, q):
    """Symplectic transvection generators; each is checked to preserve
    the standard alternating form exactly (multiplier 1)."""
    if d % 2 != 0:
        raise ValueError("d must be even")
    pk = _factor_prime_power(q)
    F = field_create(*pk)
    if F.q ** d > VECTOR_CAP:
        raise ValueError("vector space exceeds cap")
    form = lm.standard_symplectic(F, d)
    mats = lm.symplectic_transvection_gens(F, d, form)
    for M in mats:
        if lm.sp_multiplier(F, form, M) != 1:
            raise AssertionError("transvection fails the form check")
    return MatrixGroupGens(pk, d, mats, "sp", {"d": d, "q": q})


def sl_gens(d, q):
    """Elementary transvections E_ij(t^s); determinant 1 checked."""
    pk = _factor_prime_power(q)
    F = field_create(*pk)
    if F.q ** d > VECTOR_CAP:
        raise ValueError("vector space exceeds cap")
    mats = []
    for i in range(d):
        for j in range(d):
            if i == j:
                continue
            for s in range(F.k):
                M = lm.identity_mat(d)
                M[i, j] = F.p ** s    # the field index of t^s
                if lm.mat_det(F, M) != 1:
                    raise AssertionError("elementary matrix determinant")
                mats.append(M)
    return MatrixGroupGens(pk, d, mats, "sl", {"d": d, "q": q})


def _factor_prime_power(q):
    for p in range(2, q + 1):
        if is_prime(p) and q % p == 0:
            k = 0
            qq = q
            while qq % p == 0:
                qq //= p
                k += 1
            if qq != 1:
                raise ValueError(f"{q} is not a prime power")
            return (p, k)
    raise ValueError(f"{q} is not a prime power")


def _subgroup_closure(F, d, mats, cap):
    gens = MatrixGroupGens((F.p, F.k), d, mats, "_tmp")
    return matrix_closure(gens, cap)


def solvable_residual(gens, cap=CLOSURE_CAP):
    """Iterated derived subgroup until stable, returned by generators.

    Each derived step generates from commutators of the current
    generators and closes under conjugation by them, so the result is
    the true normal derived subgroup, not just a commutator span."""
    F = gens.field_obj()
    d = gens.d
    cur = [np.asarray(M, dtype=np.int64) for M in gens.mats]
    cur_size = len(_subgroup_closure(F, d, cur, cap))
    while True:
        inv = [lm.mat_inv(F, M) for M in cur]
        comms = []
        for i, A in enumerate(cur):
            for j, B in enumerate(cur):
                if i == j:
                    continue
                C = lm.mat_mul(F, lm.mat_mul(F, inv[i], inv[j]),
                               lm.mat_mul(F, A, B))
                comms.append(C)
        der = _dedupe(comms)
        closure = _subgroup_closure(F, d, der, cap) if der else \
            np.array([lm.identity_mat(d)], dtype=np.int64)
        # a proper subgroup must still be closed under conjugation by
        # the parent generators; a full-size one already is
        while len(closure) < cur_size:
            have = {_mat_key(M) for M in closure}
            extra = []
            for g, gi in zip(cur, inv):
                conj_all = _batch_mul(F, _batch_lmul(F, gi, closure), g)
                for M in conj_all:
                    if _mat_key(M) not in have:
                        extra.append(M)
            if not extra:
                break
            der = _dedupe(der + extra)
            closure = _subgroup_closure(F, d, der, cap)
        der_size = len(closure)
        if der_size == cur_size:
            return MatrixGroupGens((F.p, F.k), d, cur, gens.label + "^inf",
                                   {"order": cur_size, "perfect": True})
        if der_size == 1:
            return MatrixGroupGens((F.p, F.k), d, [lm.identity_mat(d)],
                                   gens.label + "^inf",
                                   {"order": 1, "perfect": False})
        cur = [M for M in closure] if der_size <= 64 else der
        cur_size = der_size


def _dedupe(mats):
    seen = {}
    for M in mats:
        seen.setdefault(_mat_key(M), M)
    return list(seen.values())


def sl2_5_search(p, max_candidates=None):
    """Search GL_2(p) for a copy of the order-120 perfect group with a
    unique involution, seeded by (order 4, order 10) generator pairs.
    For p > 11 the result is augmented with the scalar primitive so the
    listed generators act transitively on nonzero vectors."""
    if p not in (11, 19, 29, 59):
        raise ValueError("p must be one of 11, 19, 29, 59")
    F = field_create(p, 1)
    A = np.array([[0, p - 1], [1, 0]], dtype=np.int64)
    # enumerate SL_2(p) and keep the order-10 elements as candidates
    idx = np.arange(p ** 4, dtype=np.int64)
    quads = np.stack([(idx // p ** t) % p for t in (3, 2, 1, 0)], axis=1)
    det = (quads[:, 0] * quads[:, 3] - quads[:, 1] * quads[:, 2]) % p
    sl2 = quads[det == 1].reshape(-1, 2, 2)
    found = None
    tried = 0
    for cand in sl2:
        if _mat_order(F, cand, 21) != 10:
            continue
        tried += 1
        if max_candidates and tried > max_candidates:
            break
        try:
            grp = _subgroup_closure(F, 2, [A, cand], 150)
        except ValueError:
            continue
        if len(grp) != 120:
            continue
        invol = [M for M in grp
                 if np.array_equal(lm.mat_mul(F, M, M), lm.identity_mat(2))
                 and not np.array_equal(M, lm.identity_mat(2))]
        if len(invol) != 1:
            continue
        found = cand
        break
    if found is None:
        raise RuntimeError("no order-120 subgroup found; search is buggy")
    mats = [A, found]
    meta = {"order": 120, "p": p}
    if p * p - 1 > 120:
        xi = element_of_order(F, p - 1)
        mats.append(np.array([[xi, 0], [0, xi]], dtype=np.int64))
        meta["scalar_augmented"] = True
    out = MatrixGroupGens((p, 1), 2, mats, "sl2_5", meta)
    if not transitive_on_nonzero(out):
        raise RuntimeError("augmented generators are not transitive")
    return out


def _mat_order(F, M, cap):
    eye = lm.identity_mat(M.shape[0])
    P = M
    for k in range(1, cap + 1):
        if np.array_equal(P, eye):
            return k
        P = lm.mat_mul(F, P, M)
    return 0
