"""Hot integer-array loops shared by the group machinery.

Four kernels live here: orbit label propagation under a set of
permutations, subgroup closure over a multiplication table, a single
homomorphism table check, and a batched automorphism table check.
Each has a numba @njit implementation and a pure-numpy implementation.
numba wins when it imports, unless ORBITFORGE_PURE_NUMPY=1 is set in the
environment.  Public wrappers normalize dtypes so callers never care
which path is live.
"""

import os

import numpy as np

HAS_NUMBA = False
if os.environ.get("ORBITFORGE_PURE_NUMPY", "") != "1":
    try:
        from numba import njit

        HAS_NUMBA = True
    except ImportError:
        pass


# ---------------------------------------------------------------- orbit labels
#
# labels start as identity; repeatedly pull the smaller label across every
# generator edge (i, perm[i]).  Labels always point at an element of the same
# orbit, so the fixed point assigns every element the least index in its orbit.

def _orbit_labels_np(perms, n):
    lab = np.arange(n, dtype=np.int64)
    while True:
        nxt = lab.copy()
        for k in range(perms.shape[0]):
            pm = perms[k]
            np.minimum.at(nxt, pm, lab)          # push: label(p(i)) <= label(i)
            np.minimum(nxt, lab[pm], out=nxt)    # pull: label(i) <= label(p(i))
        nxt = np.minimum(nxt, nxt[nxt])          # pointer jumping
        if np.array_equal(nxt, lab):
            return lab
        lab = nxt


if HAS_NUMBA:

    @njit(cache=True)
    def _orbit_labels_nb(perms, n):
        k = perms.shape[0]
        lab = np.arange(n, dtype=np.int64)
        changed = True
        while changed:
            changed = False
            for j in range(k):
                for i in range(n):
                    a = lab[i]
                    b = lab[perms[j, i]]
                    if a < b:
                        lab[perms[j, i]] = a
                        changed = True
                    elif b < a:
                        lab[i] = b
                        changed = True
        return lab


def orbit_labels(perms, n):
    """Least-index orbit label for each of 0..n-1 under the permutation
    group generated by the rows of perms (shape (k, n))."""
    perms = np.ascontiguousarray(perms, dtype=np.int64)
    if perms.size == 0:
        return np.arange(n, dtype=np.int64)
    assert perms.shape[1] == n
    if HAS_NUMBA:
        return _orbit_labels_nb(perms, n)
    return _orbit_labels_np(perms, n)


# ------------------------------------------------------------ subgroup closure

def _closure_np(mul, seed):
    n = mul.shape[0]
    inset = np.zeros(n, dtype=bool)
    inset[seed] = True
    members = np.flatnonzero(inset)
    while True:
        prods = mul[np.ix_(members, members)].ravel()
        fresh = prods[~inset[prods]]
        if fresh.size == 0:
            return members.astype(np.int64)
        inset[fresh] = True
        members = np.flatnonzero(inset)


if HAS_NUMBA:

    @njit(cache=True)
    def _closure_nb(mul, seed):
        n = mul.shape[0]
        inset = np.zeros(n, dtype=np.uint8)
        members = np.empty(n, dtype=np.int64)
        cnt = 0
        for s in seed:
            if inset[s] == 0:
                inset[s] = 1
                members[cnt] = s
                cnt += 1
        lo = 0
        while lo < cnt:
            hi = cnt
            for i in range(lo, hi):
                x = members[i]
                for j in range(hi):
                    y = members[j]
                    z = mul[x, y]
                    if inset[z] == 0:
                        inset[z] = 1
                        members[cnt] = z
                        cnt += 1
                    z = mul[y, x]
                    if inset[z] == 0:
                        inset[z] = 1
                        members[cnt] = z
                        cnt += 1
            lo = hi
        return np.sort(members[:cnt])


def closure_subgroup(mul, seed):
    """Sorted element indices of the subgroup generated by seed inside the
    finite group given by the full multiplication table mul.  seed must be
    non-empty (closure of a non-empty subset of a finite group is a group)."""
    mul = np.ascontiguousarray(mul, dtype=np.int64)
    seed = np.asarray(seed, dtype=np.int64)
    assert seed.size > 0
    if HAS_NUMBA:
        return _closure_nb(mul, seed)
    return _closure_np(mul, seed)


# --------------------------------------------------------- homomorphism checks

def _hom_ok_np(mul_a, mul_b, phi):
    return bool(np.array_equal(phi[mul_a], mul_b[phi[:, None], phi[None, :]]))


if HAS_NUMBA:

    @njit(cache=True)
    def _hom_ok_nb(mul_a, mul_b, phi):
        n = mul_a.shape[0]
        for i in range(n):
            for j in range(n):
                if phi[mul_a[i, j]] != mul_b[phi[i], phi[j]]:
                    return False
        return True


def hom_table_ok(mul_a, mul_b, phi):
    """True iff phi (an index map, domain group a -> group b) satisfies
    phi(xy) = phi(x)phi(y) on every pair."""
    mul_a = np.ascontiguousarray(mul_a, dtype=np.int64)
    mul_b = np.ascontiguousarray(mul_b, dtype=np.int64)
    phi = np.ascontiguousarray(phi, dtype=np.int64)
    if HAS_NUMBA:
        return bool(_hom_ok_nb(mul_a, mul_b, phi))
    return _hom_ok_np(mul_a, mul_b, phi)


def _hom_ok_batch_np(mul, phis):
    m = phis.shape[0]
    out = np.zeros(m, dtype=np.bool_)
    for t in range(m):
        ph = phis[t]
        out[t] = np.array_equal(ph[mul], mul[ph[:, None], ph[None, :]])
    return out


if HAS_NUMBA:

    @njit(cache=True)
    def _hom_ok_batch_nb(mul, phis):
        m, n = phis.shape
        out = np.zeros(m, dtype=np.bool_)
        for t in range(m):
            ok = True
            for i in range(n):
                if not ok:
                    break
                for j in range(n):
                    if phis[t, mul[i, j]] != mul[phis[t, i], phis[t, j]]:
                        ok = False
                        break
            out[t] = ok
        return out


def hom_ok_batch(mul, phis):
    """Row t of the result says whether phis[t] is an endomorphism-compatible
    index map of the group with table mul (same group on both sides)."""
    mul = np.ascontiguousarray(mul, dtype=np.int64)
    phis = np.ascontiguousarray(phis, dtype=np.int64)
    if phis.shape[0] == 0:
        return np.zeros(0, dtype=np.bool_)
    if HAS_NUMBA:
        return _hom_ok_batch_nb(mul, phis)
    return _hom_ok_batch_np(mul, phis)
