"""Orbit computation under verified automorphism sets.

The two-sided strategy: a lower bound for the number of Aut-orbits comes
from a fixed invariant feature partition (element order, class size,
membership in the characteristic subgroups); an upper bound comes from
counting orbits under an explicitly verified set of automorphisms.  When
the two meet, the orbit count is exact; otherwise both bounds are
reported and nothing is guessed.
"""

import math
from collections import deque

import numpy as np

from ._kernels import hom_table_ok, orbit_labels
from .group_engine import (_prime_power, all_automorphisms,
                           characteristic_core)

AUT_ENUM_CAP = 1 << 9
HOLOMORPH_CAP = 64
PAIR_CLOSURE_CAP = 1 << 18
PARTIAL_VERIFY_CAP = 1 << 10


class AutomorphismSet:
    """A list of verified automorphism permutations of a group."""

    def __init__(self, G, perms, *, verify=True):
        self.group = G
        perms = np.ascontiguousarray(np.asarray(perms, dtype=np.int64))
        self.perms = perms.reshape(len(perms), G.n) if len(perms) else \
            np.empty((0, G.n), dtype=np.int64)
        if verify:
            for i, p in enumerate(self.perms):
                if not verify_automorphism(G, p):
                    raise ValueError(f"perm {i} is not an automorphism")

    def __len__(self):
        return len(self.perms)

    def extended(self, other):
        """New set combining these perms with another verified set's."""
        if other.group is not self.group:
            raise ValueError("automorphism sets belong to different groups")
        combined = np.concatenate([self.perms, other.perms])
        out = AutomorphismSet(self.group, combined, verify=False)
        return out


def verify_automorphism(G, perm):
    """Bijectivity plus the multiplication check; exhaustive for
    |G| <= 1024, generator-row plus sampled otherwise."""
    perm = np.asarray(perm, dtype=np.int64)
    n = G.n
    if perm.shape != (n,) or not np.array_equal(np.sort(perm), np.arange(n)):
        return False
    if n <= PARTIAL_VERIFY_CAP:
        return bool(hom_table_ok(G.mul, G.mul, perm))
    gens = G.generating_sequence()
    for g in gens:
        if not np.array_equal(perm[G.mul[g]], G.mul[perm[g], perm]):
            return False
        if not np.array_equal(perm[G.mul[:, g]], G.mul[perm, perm[g]]):
            return False
    rng = np.random.RandomState(0)
    xs = rng.randint(0, n, size=100_000)
    ys = rng.randint(0, n, size=100_000)
    return bool(np.all(perm[G.mul[xs, ys]] == G.mul[perm[xs], perm[ys]]))


def inner_automorphisms(G):
    """Conjugations by a generating sequence (enough for orbit purposes)."""
    gens = G.generating_sequence()
    perms = np.array([G.conjugation_perm(g) for g in gens],
                     dtype=np.int64).reshape(len(gens), G.n)
    return AutomorphismSet(G, perms, verify=False)


def orbits(G, acts):
    """OrbitReport under the group generated by the given automorphisms."""
    n = G.n
    if len(acts) == 0:
        labels = np.arange(n, dtype=np.int64)
    else:
        labels = orbit_labels(acts.perms, n)
    orders = G.orders()
    reps = np.unique(labels)
    rows = []
    for rep in reps:
        members = np.nonzero(labels == rep)[0]
        o = np.unique(orders[members])
        if len(o) != 1:
            raise AssertionError("element order not constant on an orbit")
        rows.append({"rep": int(rep), "length": int(len(members)),
                     "order": int(o[0])})
    rows.sort(key=lambda r: (r["length"], r["rep"]))
    if int(np.sum(labels == labels[G.e])) != 1:
        raise AssertionError("identity does not sit in its own orbit")
    if sum(r["length"] for r in rows) != n:
        raise AssertionError("orbit lengths do not sum to |G|")
    return {
        "labels": labels,
        "orbits": rows,
        "lengths": [r["length"] for r in rows],
        "orders": [r["order"] for r in rows],
        "count": len(rows),
    }


def _membership(n, subset):
    m = np.zeros(n, dtype=bool)
    if subset is not None:
        m[subset] = True
    return m


def invariant_features(G):
    """Per-element feature tuples the Aut-orbits must refine: element
    order, conjugacy class size, membership in Z, G', Phi, N, each lower
    central term, and each agemo layer (p-groups)."""
    core = characteristic_core(G)
    feats = [G.orders(), G.class_sizes()]
    for key in ("center", "derived", "frattini", "N"):
        if core[key] is not None:
            feats.append(_membership(G.n, core[key]))
    for gam in core["gamma"][1:]:
        feats.append(_membership(G.n, gam))
    pp = _prime_power(G.n)
    if pp is not None and G.n > 1:
        p = pp[0]
        i = 1
        while True:
            layer = G.closure(np.unique(G.power_map(p ** i)))
            if len(layer) == 1:
                break
            feats.append(_membership(G.n, layer))
            i += 1
    return np.stack([f.astype(np.int64) for f in feats], axis=1)


def omega_lower_bound(G):
    feats = invariant_features(G)
    return len(np.unique(feats, axis=0))


def omega_exact(G, acts, *, caut=None, inner=True):
    """Two-sided orbit count.  Returns a report with lower and upper
    bounds and, when they meet, the exact value."""
    combined = acts
    if caut is not None:
        combined = combined.extended(caut)
    if inner:
        combined = combined.extended(inner_automorphisms(G))
    rep = orbits(G, combined)
    lower = omega_lower_bound(G)
    upper = rep["count"]
    if lower > upper:
        raise AssertionError("invariant partition coarser than orbits")
    feats = invariant_features(G)
    for r in rep["orbits"]:
        members = np.nonzero(rep["labels"] == r["rep"])[0]
        if len(np.unique(feats[members], axis=0)) != 1:
            raise AssertionError("an orbit crosses an invariant class")
    return {
        "lower": lower,
        "upper": upper,
        "exact": upper if lower == upper else None,
        "report": rep,
    }


# ------------------------------------------------- central automorphisms

def _fp_basis(G, ambient, start, p):
    """Greedy elements of `ambient` extending closure(start) by factors
    of p until the closure covers ambient."""
    basis = []
    cur = G.closure(start)
    target = len(ambient)
    member = np.zeros(G.n, dtype=bool)
    member[cur] = True
    for g in ambient:
        g = int(g)
        if member[g]:
            continue
        basis.append(g)
        cur = G.closure(list(cur) + [g])
        member[:] = False
        member[cur] = True
        if len(cur) == target:
            break
    return basis


def linear_split(G):
    """Layer coordinates for a p-group with 1 < N <= Z(G) and both N and
    G/N elementary abelian: bases for the two layers, additive coset
    coordinates for every element, and coordinates inside N, all checked
    for additivity against the multiplication table."""
    pp = _prime_power(G.n)
    if pp is None:
        raise ValueError("not a p-group")
    p = pp[0]
    core = characteristic_core(G)
    Z, N = core["center"], core["N"]
    zmask = _membership(G.n, Z)
    if N is None or len(N) == 1 or len(N) == G.n:
        raise ValueError("need 1 < N < G")
    if not zmask[N].all():
        raise ValueError("N is not central")
    ords = G.orders()
    if np.any(ords[N] > p):
        raise ValueError("N is not elementary abelian")
    n_dim = round(math.log(len(N), p))
    m_dim = round(math.log(G.n // len(N), p))
    w_basis = _fp_basis(G, N, [G.e], p)
    v_basis = _fp_basis(G, np.arange(G.n), N, p)
    if len(w_basis) != n_dim or len(v_basis) != m_dim:
        raise ValueError("basis extraction failed")
    # coset coordinates: BFS over the quotient by N
    L = G.mul[:, N].min(axis=1)
    reps = np.unique(L)
    relabel = np.full(G.n, -1, dtype=np.int64)
    relabel[reps] = np.arange(len(reps))
    coords = np.full((len(reps), m_dim), -1, dtype=np.int64)
    coords[relabel[L[G.e]]] = 0
    frontier = deque([int(L[G.e])])
    seen = {int(L[G.e])}
    while frontier:
        r = frontier.popleft()
        c = coords[relabel[r]]
        for i, b in enumerate(v_basis):
            t = int(L[G.mul[r, b]])
            if t not in seen:
                seen.add(t)
                nc = c.copy()
                nc[i] = (nc[i] + 1) % p
                coords[relabel[t]] = nc
                frontier.append(t)
    if (coords < 0).any():
        raise ValueError("coset coordinate BFS incomplete")
    if not np.all(L[G.power_map(p)] == L[G.e]):
        raise ValueError("G/N is not elementary abelian")
    # coordinates must be additive across the whole quotient table
    prod = relabel[L[G.mul[np.ix_(reps, reps)]]]
    lhs = coords[prod]
    rhs = (coords[:, None, :] + coords[None, :, :]) % p
    if not np.array_equal(lhs, rhs):
        raise AssertionError("coset coordinates are not additive")
    cc = coords[relabel[L]]
    # the same walk inside N over the w-basis
    pos_in_N = np.full(G.n, -1, dtype=np.int64)
    pos_in_N[N] = np.arange(len(N))
    wc = np.full((len(N), n_dim), -1, dtype=np.int64)
    wc[pos_in_N[G.e]] = 0
    frontier = deque([int(G.e)])
    seen = {int(G.e)}
    while frontier:
        g = frontier.popleft()
        c = wc[pos_in_N[g]]
        for i, b in enumerate(w_basis):
            t = int(G.mul[g, b])
            if t not in seen:
                seen.add(t)
                nc = c.copy()
                nc[i] = (nc[i] + 1) % p
                wc[pos_in_N[t]] = nc
                frontier.append(t)
    if (wc < 0).any():
        raise ValueError("N coordinate BFS incomplete")
    prod_n = pos_in_N[G.mul[np.ix_(N, N)]]
    if not np.array_equal(wc[prod_n], (wc[:, None, :] + wc[None, :, :]) % p):
        raise AssertionError("N coordinates are not additive")
    # least coset representative per coordinate vector, little-endian
    weights = p ** np.arange(m_dim, dtype=np.int64)
    rep_by_coords = np.full(p ** m_dim, -1, dtype=np.int64)
    rep_by_coords[coords @ weights] = reps
    return {
        "p": p, "m": m_dim, "n": n_dim,
        "v_basis": v_basis, "w_basis": w_basis,
        "N": N, "coset_coords": cc, "w_coords": wc,
        "pos_in_N": pos_in_N, "rep_by_coords": rep_by_coords,
    }


def central_automorphisms(G):
    """Generators of the homomorphism-group CAut: for a p-group with
    G' <= Z and N = <G', Phi> with elementary abelian N and G/N, the maps
    g -> g * w^(i-th N-coset coordinate of g), one per (V-basis position,
    N-basis element).  The mn generators commute, have order p, and are
    independent (applying a product to the i-th coset representative
    recovers its exponents), so they generate a group of order p^(mn).

    Returns (AutomorphismSet, p, m, n_dim, count)."""
    sp = linear_split(G)
    p, m_dim, n_dim = sp["p"], sp["m"], sp["n"]
    v_basis, w_basis = sp["v_basis"], sp["w_basis"]
    cc = sp["coset_coords"]
    gens = []
    for i in range(m_dim):
        for w in w_basis:
            wpow = np.empty(p, dtype=np.int64)
            wpow[0] = G.e
            for t in range(1, p):
                wpow[t] = G.mul[wpow[t - 1], w]
            perm = G.mul[np.arange(G.n), wpow[cc[:, i]]]
            gens.append(perm)
    acts = AutomorphismSet(G, np.array(gens, dtype=np.int64))
    # commuting, order p, and the displacement property
    ar = np.arange(G.n)
    for a in acts.perms:
        q = ar.copy()
        for _ in range(p):
            q = a[q]
        if not np.array_equal(q, ar):
            raise AssertionError("central generator order exceeds p")
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if not np.array_equal(acts.perms[i][acts.perms[j]],
                                  acts.perms[j][acts.perms[i]]):
                raise AssertionError("central generators do not commute")
    for idx, a in enumerate(acts.perms):
        vi, wj = divmod(idx, n_dim)
        for k, b in enumerate(v_basis):
            expect = G.mul[b, w_basis[wj]] if k == vi else b
            if a[b] != expect:
                raise AssertionError("displacement property fails")
    count = p ** (m_dim * n_dim)
    if count <= (1 << 12):
        if _perm_group_order(acts.perms, G.n, cap=count + 1) != count:
            raise AssertionError("central automorphism count mismatch")
    return acts, p, m_dim, n_dim, count


def _perm_group_order(perms, n, cap):
    seen = {np.arange(n, dtype=np.int64).tobytes()}
    frontier = [np.arange(n, dtype=np.int64)]
    while frontier:
        nxt = []
        for w in frontier:
            for g in perms:
                c = w[g]
                key = c.tobytes()
                if key not in seen:
                    seen.add(key)
                    nxt.append(c)
                    if len(seen) >= cap:
                        return len(seen)
        frontier = nxt
    return len(seen)


# -------------------------------------------------------- induced actions

def induced_pair(G, N, acts, *, closure_cap=PAIR_CLOSURE_CAP):
    """Quotient action on G/N and restriction to N for each generator,
    with transitivity checks and (cap permitting) the joint closure
    giving |A|, |B|, and |K|, the number of closure elements restricting
    to the identity on N.  A_to_B_function reports whether acting
    trivially on the quotient forces acting trivially on N; when it does
    (N central, for instance), K is the kernel of the map A -> B."""
    N = np.asarray(sorted(int(x) for x in N), dtype=np.int64)
    nmask = _membership(G.n, N)
    L = G.mul[:, N].min(axis=1)
    reps = np.unique(L)
    relabel = np.full(G.n, -1, dtype=np.int64)
    relabel[reps] = np.arange(len(reps))
    qn = len(reps)
    pos_in_N = np.full(G.n, -1, dtype=np.int64)
    pos_in_N[N] = np.arange(len(N))
    a_perms, b_perms = [], []
    for p in acts.perms:
        if not nmask[p[N]].all():
            raise ValueError("acting set does not stabilize N")
        ahat = relabel[L[p[reps]]]
        if not np.array_equal(ahat[relabel[L]], relabel[L[p]]):
            raise AssertionError("quotient action ill-defined")
        a_perms.append(ahat)
        b_perms.append(pos_in_N[p[N]])
    a_perms = np.array(a_perms, dtype=np.int64).reshape(len(acts), qn)
    b_perms = np.array(b_perms, dtype=np.int64).reshape(len(acts), len(N))
    e_q = relabel[L[G.e]]
    e_n = pos_in_N[G.e]

    def transitive(perms, size, fixed):
        if size <= 1:
            return True
        lab = orbit_labels(perms, size) if len(perms) else \
            np.arange(size, dtype=np.int64)
        others = np.array([i for i in range(size) if i != fixed])
        return len(np.unique(lab[others])) == 1

    a_trans = transitive(a_perms, qn, e_q)
    b_trans = transitive(b_perms, len(N), e_n)
    a_order = b_order = k_order = fn_ok = None
    if len(acts):
        # row layout [a-part raw | b-part + qn]: composition is one gather
        pair = np.concatenate([a_perms, b_perms + qn], axis=1)
        ident = np.concatenate([np.arange(qn),
                                np.arange(len(N)) + qn]).astype(np.int64)
        seen = {ident.tobytes(): ident}
        frontier = [ident]
        over = False
        while frontier and not over:
            nxt = []
            for w in frontier:
                for g in pair:
                    c = w[g]
                    key = c.tobytes()
                    if key not in seen:
                        seen[key] = c
                        nxt.append(c)
                        if len(seen) > closure_cap:
                            over = True
                            break
                if over:
                    break
            frontier = nxt
        if not over:
            all_rows = list(seen.values())
            a_ident = np.arange(qn, dtype=np.int64).tobytes()
            b_ident = (np.arange(len(N), dtype=np.int64) + qn).tobytes()
            ka = kb = 0
            a_seen, b_seen = set(), set()
            fn_ok = True
            for row in all_rows:
                ak, bk = row[:qn].tobytes(), row[qn:].tobytes()
                a_seen.add(ak)
                b_seen.add(bk)
                if ak == a_ident:
                    ka += 1
                    # a row trivial on the quotient but not on N kills
                    # the induced map A -> B; happens when N is not
                    # central, so report it instead of failing
                    if bk != b_ident:
                        fn_ok = False
                if bk == b_ident:
                    kb += 1
            a_order, b_order, k_order = len(a_seen), len(b_seen), kb
            if len(all_rows) != a_order * ka or len(all_rows) != b_order * kb:
                raise AssertionError("pair closure bookkeeping broken")
    return {
        "A_perms": a_perms, "B_perms": b_perms,
        "A_transitive": bool(a_trans), "B_transitive": bool(b_trans),
        "A_order": a_order, "B_order": b_order, "K_order": k_order,
        "A_to_B_function": fn_ok if a_order is not None else None,
        "quotient_size": qn, "N_size": len(N),
    }


# --------------------------------------------------------------- oracles

def brute_force_aut(G, cap=AUT_ENUM_CAP):
    """Every automorphism, as an AutomorphismSet (already verified by the
    search itself; re-verification skipped)."""
    perms = all_automorphisms(G, cap=cap)
    return AutomorphismSet(G, perms, verify=False)


def holomorph_rank(G, aut_set=None):
    """Rank of the holomorph acting on G: the number of orbits of
    <right translations, Aut(G)> on ordered pairs."""
    if G.n > HOLOMORPH_CAP:
        raise ValueError("holomorph cap exceeded")
    n = G.n
    if aut_set is None:
        aut_set = brute_force_aut(G, cap=HOLOMORPH_CAP)
    trans = G.mul.T.copy()  # row g: x -> x*g
    labels = np.arange(n * n, dtype=np.int64)

    def pair_perms(perms):
        return (perms[:, :, None] * n + perms[:, None, :]).reshape(
            len(perms), n * n)

    chunks = [pair_perms(trans)]
    ap = aut_set.perms
    step = max(1, (1 << 22) // (n * n))
    for lo in range(0, len(ap), step):
        chunks.append(pair_perms(ap[lo:lo + step]))
    changed = True
    while changed:
        changed = False
        for ch in chunks:
            # propagate current labels under this chunk to a fixed point
            lab = labels
            while True:
                nxt = lab.copy()
                for p in ch:
                    np.minimum.at(nxt, p, lab)
                    nxt = np.minimum(nxt, lab[p])
                nxt = np.minimum(nxt, nxt[nxt])
                if np.array_equal(nxt, lab):
                    break
                lab = nxt
            if not np.array_equal(lab, labels):
                labels = lab
                changed = True
    return len(np.unique(labels))
