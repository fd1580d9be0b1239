"""Kernel pair agreement: the numba path and the numpy path must give
identical answers, and ORBITFORGE_PURE_NUMPY=1 must force the numpy
path."""

import os
import subprocess
import sys

import numpy as np

from orbitforge import _kernels as K


def _random_perms(rng, k, n):
    return np.array([rng.permutation(n) for _ in range(k)], dtype=np.int64)


def _cyclic_mul(n):
    i = np.arange(n)
    return (i[:, None] + i[None, :]) % n


def test_orbit_labels_basic():
    n = 12
    shift = np.roll(np.arange(n), 1)
    lab = K.orbit_labels(shift[None, :], n)
    assert np.all(lab == 0)
    # two 6-cycles
    two = np.concatenate([np.roll(np.arange(6), 1), 6 + np.roll(np.arange(6), 1)])
    lab = K.orbit_labels(two[None, :], n)
    assert set(lab.tolist()) == {0, 6}
    # no generators: everything is its own orbit
    assert np.array_equal(K.orbit_labels(np.empty((0, 5)), 5), np.arange(5))


def test_orbit_labels_paths_agree():
    rng = np.random.default_rng(7)
    for _ in range(25):
        n = int(rng.integers(2, 400))
        k = int(rng.integers(1, 6))
        perms = _random_perms(rng, k, n)
        ref = K._orbit_labels_np(perms, n)
        assert np.array_equal(K.orbit_labels(perms, n), ref)
        if K.HAS_NUMBA:
            assert np.array_equal(K._orbit_labels_nb(perms, n), ref)
        # labels are the least member of each orbit
        for v in np.unique(ref):
            members = np.nonzero(ref == v)[0]
            assert members.min() == v


def test_closure_paths_agree():
    mul = _cyclic_mul(24)
    for seed in ([0], [1], [8], [6, 8], [18]):
        got = K.closure_subgroup(mul, np.array(seed))
        ref = K._closure_np(np.asarray(mul, dtype=np.int64),
                            np.asarray(seed, dtype=np.int64))
        assert np.array_equal(got, np.sort(ref))
        # closed under the table
        sub = set(got.tolist())
        assert all(mul[a, b] in sub for a in sub for b in sub)
    assert len(K.closure_subgroup(mul, np.array([1]))) == 24
    assert len(K.closure_subgroup(mul, np.array([8]))) == 3


def test_hom_checks():
    mul = _cyclic_mul(30).astype(np.int64)
    ident = np.arange(30, dtype=np.int64)
    assert K.hom_table_ok(mul, mul, ident)
    neg = (-ident) % 30
    assert K.hom_table_ok(mul, mul, neg)
    dbl = (2 * ident) % 30          # not injective but still a hom check
    assert K.hom_table_ok(mul, mul, dbl)
    bad = ident.copy()
    bad[[3, 7]] = bad[[7, 3]]
    assert not K.hom_table_ok(mul, mul, bad)

    batch = np.stack([ident, neg, bad, dbl])
    got = K.hom_ok_batch(mul, batch)
    assert got.tolist() == [True, True, False, True]
    ref = K._hom_ok_batch_np(mul, batch)
    assert np.array_equal(got, ref)
    assert K.hom_ok_batch(mul, np.empty((0, 30))).shape == (0,)


def test_env_flag_forces_numpy():
    code = ("import orbitforge._kernels as K; import numpy as np;"
            "print(K.HAS_NUMBA, K.orbit_labels("
            "np.roll(np.arange(6),1)[None,:], 6).tolist())")
    env = dict(os.environ, ORBITFORGE_PURE_NUMPY="1")
    out = subprocess.run([sys.executable, "-c", code], env=env,
                         capture_output=True, text=True, check=True)
    flag, rest = out.stdout.split(None, 1)
    assert flag == "False"
    assert rest.strip() == "[0, 0, 0, 0, 0, 0]"
