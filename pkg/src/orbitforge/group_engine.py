"""Finite groups as dense multiplication tables.

A group is a sorted list of element codes (tuples of small ints, or plain
ints) plus an (n, n) index table.  Everything downstream -- orders,
center, conjugacy classes, derived and Frattini subgroups, quotients,
and the isomorphism / automorphism search -- works on the table.

Caps: full associativity check at |G| <= 256 (sampled above), Frattini
via the subgroup lattice at |G| <= 512 for non-p-groups, isomorphism
search at |G| <= 1024.
"""

import math
import struct
from collections import Counter, deque

import numpy as np

from ._kernels import closure_subgroup, hom_ok_batch, hom_table_ok, orbit_labels

ASSOC_FULL_CAP = 256
LATTICE_CAP = 512
ISO_CAP = 1 << 10
PGROUP_CAP = 1 << 13
_CHUNK_CELLS = 1 << 23  # batch rows x |G| cap for the image search


def _prime_power(n):
    """(p, a) with n = p^a, or None."""
    if n < 2:
        return None
    p = None
    m = n
    for cand in range(2, int(math.isqrt(n)) + 1):
        if m % cand == 0:
            p = cand
            break
    if p is None:
        return (n, 1)
    a = 0
    while m % p == 0:
        m //= p
        a += 1
    return (p, a) if m == 1 else None


class FiniteGroup:
    """Immutable once built; caches fill lazily."""

    def __init__(self, elems, mul, *, validate=True, assoc_full=None):
        self.elems = list(elems)
        self.n = len(self.elems)
        self.index = {c: i for i, c in enumerate(self.elems)}
        if len(self.index) != self.n:
            raise ValueError("duplicate element codes")
        if any(self.elems[i] >= self.elems[i + 1] for i in range(self.n - 1)):
            raise ValueError("element codes must be sorted")
        self.mul = np.ascontiguousarray(np.asarray(mul, dtype=np.int64))
        if self.mul.shape != (self.n, self.n):
            raise ValueError("table shape mismatch")
        self._cache = {}
        if validate:
            self._validate(assoc_full)

    # ------------------------------------------------------------- checks

    def _validate(self, assoc_full):
        n, mul = self.n, self.mul
        ar = np.arange(n, dtype=np.int64)
        if mul.min() < 0 or mul.max() >= n:
            raise ValueError("table entries out of range")
        if not (np.all(np.sort(mul, axis=1) == ar) and
                np.all(np.sort(mul, axis=0) == ar[:, None])):
            raise ValueError("table is not a Latin square")
        ident = np.nonzero(np.all(mul == ar, axis=1))[0]
        ident = [int(i) for i in ident if np.array_equal(mul[:, i], ar)]
        if len(ident) != 1:
            raise ValueError("no two-sided identity")
        self.e = ident[0]
        inv = np.empty(n, dtype=np.int64)
        rows, cols = np.nonzero(mul == self.e)
        if len(rows) != n:
            raise ValueError("inverses not unique")
        inv[rows] = cols
        for i in range(n):
            if mul[inv[i], i] != self.e:
                raise ValueError("left/right inverse mismatch")
        self.inv = inv
        if assoc_full is None:
            assoc_full = n <= ASSOC_FULL_CAP
        if assoc_full:
            for i in range(n):
                if not np.array_equal(mul[mul[i]], mul[i][mul]):
                    raise ValueError(f"associativity fails at element {i}")
        else:
            rng = np.random.RandomState(0)
            for _ in range(1000):
                i, j, k = rng.randint(0, n, size=3)
                if mul[mul[i, j], k] != mul[i, mul[j, k]]:
                    raise ValueError("associativity fails on sampled triple")

    # -------------------------------------------------------------- basics

    def orders(self):
        if "orders" not in self._cache:
            n, mul = self.n, self.mul
            ar = np.arange(n, dtype=np.int64)
            out = np.zeros(n, dtype=np.int64)
            cur = ar.copy()
            k = 1
            out[cur == self.e] = 1
            while np.any(out == 0):
                cur = mul[cur, ar]
                k += 1
                out[(cur == self.e) & (out == 0)] = k
                if k > n:
                    raise RuntimeError("order computation overran |G|")
            self._cache["orders"] = out
        return self._cache["orders"]

    def exponent(self):
        return math.lcm(*{int(o) for o in self.orders()})

    def center(self):
        if "center" not in self._cache:
            mask = np.all(self.mul == self.mul.T, axis=1)
            self._cache["center"] = np.nonzero(mask)[0].astype(np.int64)
        return self._cache["center"]

    def conjugation_perm(self, g):
        return self.mul[self.inv[g]][self.mul[:, g]]

    def class_labels(self):
        if "class_labels" not in self._cache:
            n = self.n
            perms = np.empty((n, n), dtype=np.int64)
            for g in range(n):
                perms[g] = self.conjugation_perm(g)
            self._cache["class_labels"] = orbit_labels(perms, n)
        return self._cache["class_labels"]

    def class_sizes(self):
        """Size of the conjugacy class of each element."""
        lab = self.class_labels()
        _, invidx, counts = np.unique(lab, return_inverse=True,
                                      return_counts=True)
        return counts[invidx]

    def closure(self, seed):
        seed = np.asarray(sorted(set(int(s) for s in seed) | {self.e}),
                          dtype=np.int64)
        return closure_subgroup(self.mul, seed)

    def derived(self):
        if "derived" not in self._cache:
            mul, inv = self.mul, self.inv
            m2 = mul[inv[None, :], mul]
            comm = mul[inv[:, None], m2]
            self._cache["derived"] = self.closure(np.unique(comm))
        return self._cache["derived"]

    def power_map(self, k):
        ar = np.arange(self.n, dtype=np.int64)
        out = np.full(self.n, self.e, dtype=np.int64)
        base = ar.copy()
        while k:
            if k & 1:
                out = self.mul[out, base]
            base = self.mul[base, base]
            k >>= 1
        return out

    def order_profile(self):
        cnt = Counter(int(o) for o in self.orders())
        return tuple(sorted(cnt.items()))

    # ----------------------------------------------- subgroup machinery

    def is_subgroup(self, idx):
        idx = np.asarray(sorted(idx), dtype=np.int64)
        return np.array_equal(self.closure(idx), idx)

    def is_normal(self, idx):
        idx = np.asarray(sorted(idx), dtype=np.int64)
        member = np.zeros(self.n, dtype=bool)
        member[idx] = True
        for g in range(self.n):
            if not member[self.mul[self.inv[g], self.mul[idx, g]]].all():
                return False
        return True

    def all_subgroups(self):
        """Every subgroup, grown by cyclic extension; |G| <= 512."""
        if self.n > LATTICE_CAP:
            raise ValueError("subgroup lattice cap exceeded")
        if "subgroups" not in self._cache:
            seen = {}
            queue = deque()
            triv = self.closure([self.e])
            seen[triv.tobytes()] = triv
            queue.append(triv)
            while queue:
                H = queue.popleft()
                member = np.zeros(self.n, dtype=bool)
                member[H] = True
                for g in range(self.n):
                    if member[g]:
                        continue
                    K = closure_subgroup(
                        self.mul,
                        np.asarray(sorted(set(H.tolist()) | {g}),
                                   dtype=np.int64))
                    key = K.tobytes()
                    if key not in seen:
                        seen[key] = K
                        queue.append(K)
            self._cache["subgroups"] = sorted(seen.values(),
                                              key=lambda a: (len(a),
                                                             a.tolist()))
        return self._cache["subgroups"]

    def maximal_subgroups(self):
        subs = [H for H in self.all_subgroups() if len(H) < self.n]
        sets = [frozenset(H.tolist()) for H in subs]
        out = []
        for i, H in enumerate(subs):
            if not any(j != i and sets[i] < sets[j] for j in range(len(subs))):
                out.append(H)
        return out

    def frattini(self):
        """Frattini subgroup; None when the group is not a p-group and
        exceeds the lattice cap."""
        if "frattini" not in self._cache:
            pp = _prime_power(self.n)
            if self.n == 1:
                phi = np.array([self.e], dtype=np.int64)
            elif pp is not None:
                if self.n > PGROUP_CAP:
                    raise ValueError("p-group cap exceeded")
                p = pp[0]
                seed = np.unique(np.concatenate([self.derived(),
                                                 self.power_map(p)]))
                phi = self.closure(seed)
            elif self.n <= LATTICE_CAP:
                maxes = self.maximal_subgroups()
                mask = np.ones(self.n, dtype=bool)
                for H in maxes:
                    hm = np.zeros(self.n, dtype=bool)
                    hm[H] = True
                    mask &= hm
                phi = np.nonzero(mask)[0].astype(np.int64)
            else:
                phi = None
            self._cache["frattini"] = phi
        return self._cache["frattini"]

    def gamma_series(self):
        """Lower central series gamma_1 = G, gamma_{k+1} = [G, gamma_k],
        computed until stable."""
        if "gamma" not in self._cache:
            mul, inv = self.mul, self.inv
            series = [np.arange(self.n, dtype=np.int64)]
            cur = self.derived()
            series.append(cur)
            while len(cur) > 1:
                x = mul[:, cur]
                y = mul[inv[cur][None, :], x]
                c = mul[inv[:, None], y]
                nxt = self.closure(np.unique(c))
                if np.array_equal(nxt, cur):
                    break
                series.append(nxt)
                cur = nxt
            self._cache["gamma"] = series
        return self._cache["gamma"]

    def centralizer(self, idx):
        idx = np.asarray(idx, dtype=np.int64)
        mask = np.all(self.mul[:, idx] == self.mul[idx, :].T, axis=1)
        return np.nonzero(mask)[0].astype(np.int64)

    def generating_sequence(self):
        """Greedy: highest element order first, then smallest class."""
        if "gens" not in self._cache:
            if self.n == 1:
                self._cache["gens"] = []
                return []
            orders = self.orders()
            csz = self.class_sizes()
            cand = sorted(range(self.n),
                          key=lambda i: (-int(orders[i]), int(csz[i]), i))
            gens = []
            cur = self.closure([self.e])
            member = np.zeros(self.n, dtype=bool)
            member[cur] = True
            for c in cand:
                if member[c]:
                    continue
                gens.append(c)
                cur = self.closure(list(cur) + [c])
                member[:] = False
                member[cur] = True
                if len(cur) == self.n:
                    break
            self._cache["gens"] = gens
        return self._cache["gens"]


def group_from_oracle(elements, mul, *, assoc_full=None):
    """Build a FiniteGroup from element codes and either a multiplication
    callable on codes or a precomputed index table (elements then must
    already be sorted)."""
    if callable(mul):
        elems = sorted(elements)
        index = {c: i for i, c in enumerate(elems)}
        n = len(elems)
        table = np.empty((n, n), dtype=np.int64)
        for i, a in enumerate(elems):
            row = table[i]
            for j, b in enumerate(elems):
                row[j] = index[mul(a, b)]
        return FiniteGroup(elems, table, assoc_full=assoc_full)
    return FiniteGroup(elements, mul, assoc_full=assoc_full)


def characteristic_core(G):
    """Center, derived, Frattini, N = <G', Phi>, and the lower central
    series, as sorted index arrays (Frattini and N may be None past the
    non-p-group lattice cap)."""
    Z = G.center()
    D = G.derived()
    phi = G.frattini()
    if phi is None:
        N = None
    else:
        N = G.closure(np.unique(np.concatenate([D, phi])))
    return {"center": Z, "derived": D, "frattini": phi, "N": N,
            "gamma": G.gamma_series()}


def quotient(G, M):
    """G / M for normal M, with least-member coset representatives."""
    M = np.asarray(sorted(M), dtype=np.int64)
    if not G.is_subgroup(M):
        raise ValueError("M is not a subgroup")
    if not G.is_normal(M):
        raise ValueError("M is not normal")
    L = G.mul[:, M].min(axis=1)
    reps = np.unique(L)
    relabel = np.full(G.n, -1, dtype=np.int64)
    relabel[reps] = np.arange(len(reps))
    table = relabel[L[G.mul[np.ix_(reps, reps)]]]
    elems = [G.elems[int(r)] for r in reps]
    return FiniteGroup(elems, table)


def order_profile(G):
    return G.order_profile()


# ----------------------------------------------------------- Cayley files

CAYLEY_MAGIC = b"G3O1"


def export_cayley(G, path):
    with open(path, "wb") as fh:
        fh.write(CAYLEY_MAGIC)
        fh.write(struct.pack("<I", G.n))
        fh.write(G.mul.astype("<u4").tobytes())


def import_cayley(path):
    with open(path, "rb") as fh:
        magic = fh.read(4)
        if magic != CAYLEY_MAGIC:
            raise ValueError("bad magic")
        (n,) = struct.unpack("<I", fh.read(4))
        data = np.frombuffer(fh.read(4 * n * n), dtype="<u4")
        if data.size != n * n:
            raise ValueError("truncated table")
    return FiniteGroup(list(range(n)), data.reshape(n, n).astype(np.int64))


# ------------------------------------------------- homomorphism search

class _HomSearch:
    """Layered backtracking over generator images, vectorized per chunk.

    Level k knows S_k = <gens[:k]> in G as a BFS tree; a batch of partial
    image rows is propagated down the tree in one numpy pass, then pruned
    by the multiplication constraints on every (element of S_k, generator)
    pair and by injectivity on S_k.
    """

    def __init__(self, G, H, find_all):
        self.G, self.H, self.find_all = G, H, find_all
        self.gens = G.generating_sequence()
        self.k_total = len(self.gens)
        g_ord, g_csz = G.orders(), G.class_sizes()
        h_ord, h_csz = H.orders(), H.class_sizes()
        self.buckets = []
        for g in self.gens:
            sel = (h_ord == g_ord[g]) & (h_csz == g_csz[g])
            self.buckets.append(np.nonzero(sel)[0].astype(np.int64))
        self.levels = [self._level(k) for k in range(1, self.k_total + 1)]
        self.found = []

    def _level(self, k):
        G = self.G
        gset = self.gens[:k]
        members = G.closure(gset)
        assigned = {G.e}
        assigned.update(gset)
        assign_edges = []   # (target, source, gen position)
        check_edges = [[] for _ in range(k)]  # per gen: (source, target)
        queue = deque(sorted(assigned))
        pending = set(queue)
        while queue:
            s = queue.popleft()
            for i, g in enumerate(gset):
                t = int(G.mul[s, g])
                if t in assigned:
                    check_edges[i].append((s, t))
                else:
                    assigned.add(t)
                    assign_edges.append((t, s, i))
                    if t not in pending:
                        pending.add(t)
                        queue.append(t)
        return {"members": members, "assign": assign_edges,
                "check": [np.array(ce, dtype=np.int64).reshape(-1, 2)
                          for ce in check_edges]}

    def _evaluate(self, rows, k):
        """rows: (B, k) candidate image tuples; returns (mask, phi)."""
        G, H = self.G, self.H
        lev = self.levels[k - 1]
        B = rows.shape[0]
        phi = np.full((B, G.n), -1, dtype=np.int64)
        phi[:, G.e] = H.e
        for j in range(k):
            phi[:, self.gens[j]] = rows[:, j]
        for (t, s, i) in lev["assign"]:
            phi[:, t] = H.mul[phi[:, s], rows[:, i]]
        ok = np.ones(B, dtype=bool)
        for i in range(k):
            ce = lev["check"][i]
            if ce.size == 0:
                continue
            lhs = H.mul[phi[:, ce[:, 0]], rows[:, i][:, None]]
            ok &= np.all(lhs == phi[:, ce[:, 1]], axis=1)
        mem = lev["members"]
        sub = np.sort(phi[:, mem], axis=1)
        if sub.shape[1] > 1:
            ok &= np.all(sub[:, 1:] != sub[:, :-1], axis=1)
        return ok, phi

    def _collect(self, ok, phi):
        for r in np.nonzero(ok)[0]:
            self.found.append(phi[r].copy())
            if not self.find_all:
                return True
        return False

    def _descend(self, rows, k):
        """rows have survived level k; extend by bucket k and recurse."""
        bucket = self.buckets[k]
        if bucket.size == 0:
            return False
        max_rows = max(1, _CHUNK_CELLS // self.G.n)
        step = max(1, max_rows // bucket.size)
        for lo in range(0, rows.shape[0], step):
            chunk = rows[lo:lo + step]
            B = chunk.shape[0]
            ext = np.empty((B * bucket.size, k + 1), dtype=np.int64)
            ext[:, :k] = np.repeat(chunk, bucket.size, axis=0)
            ext[:, k] = np.tile(bucket, B)
            ok, phi = self._evaluate(ext, k + 1)
            if k + 1 == self.k_total:
                if self._collect(ok, phi):
                    return True
            else:
                surv = ext[ok]
                if surv.shape[0] and self._descend(surv, k + 1):
                    return True
        return False

    def run(self):
        if self.k_total == 0:
            self.found.append(np.array([self.H.e], dtype=np.int64))
            return self.found
        self._descend(np.empty((1, 0), dtype=np.int64), 0)
        return self.found


def _invariant_screen(G, H):
    if G.n != H.n:
        return False
    if G.order_profile() != H.order_profile():
        return False
    gz, hz = len(G.center()), len(H.center())
    if gz != hz:
        return False
    if len(G.derived()) != len(H.derived()):
        return False
    g_csz, h_csz = G.class_sizes(), H.class_sizes()
    g_ord, h_ord = G.orders(), H.orders()
    g_prof = sorted(zip(g_csz.tolist(), g_ord.tolist()))
    if g_prof != sorted(zip(h_csz.tolist(), h_ord.tolist())):
        return False
    return True


def find_isomorphism(G, H):
    """Element-index map G -> H, or None.  Exhaustive given the screens:
    if no generator-image assignment survives, the groups are not
    isomorphic."""
    if G.n > ISO_CAP or H.n > ISO_CAP:
        raise ValueError("isomorphism cap exceeded")
    if not _invariant_screen(G, H):
        return None
    found = _HomSearch(G, H, find_all=False).run()
    if not found:
        return None
    phi = found[0]
    assert hom_table_ok(G.mul, H.mul, phi)
    assert np.array_equal(np.sort(phi), np.arange(G.n))
    return phi


def is_isomorphic_bruteforce(G, H):
    """(answer, witness map or None)."""
    phi = find_isomorphism(G, H)
    return (phi is not None), phi


def all_automorphisms(G, cap=1 << 9):
    """Every automorphism of G as an (m, n) permutation array."""
    if G.n > cap:
        raise ValueError("automorphism enumeration cap exceeded")
    found = _HomSearch(G, G, find_all=True).run()
    phis = np.array(found, dtype=np.int64).reshape(len(found), G.n)
    ok = hom_ok_batch(G.mul, phis)
    phis = phis[ok]
    ar = np.arange(G.n)
    bij = np.all(np.sort(phis, axis=1) == ar, axis=1)
    phis = phis[bij]
    order = np.lexsort(phis.T[::-1])
    return phis[order]
