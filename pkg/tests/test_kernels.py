import itertools
import os
import subprocess
import sys

import numpy as np
import pytest

import oracles
from ferro import kernels
from ferro.gf import field_of_order


def tables(q):
    return field_of_order(q).kernel_tables()


@pytest.mark.parametrize("k,q", [(1, 2), (3, 2), (3, 3), (2, 4), (4, 5)])
def test_projective_vectors_enumerate_each_point_once(k, q):
    total = kernels.n_projective(k, q)
    V = kernels.projective_vectors(k, q, 0, total)
    assert V.shape == (total, k)
    leads = [row[np.flatnonzero(row)[0]] for row in V]
    assert all(x == 1 for x in leads)
    assert len({tuple(r) for r in V}) == total
    # ranges concatenate
    mid = total // 2
    parts = np.vstack([kernels.projective_vectors(k, q, 0, mid), kernels.projective_vectors(k, q, mid, total)])
    assert (parts == V).all()


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_rank_batch(backend, q):
    F = oracles.Field(q)
    rng = np.random.default_rng(q)
    M = rng.integers(0, q, (300, 3, 4)).astype(np.uint8)
    got = backend.rank_batch(M, tables(q))
    assert list(got) == [oracles.rank(F, X.tolist()) for X in M]


def test_min_rank_projective(backend):
    q = 3
    rng = np.random.default_rng(0)
    for _ in range(10):
        B = rng.integers(0, q, (3, 3, 3)).astype(np.uint8)
        total = kernels.n_projective(3, q)
        d, examined = backend.min_rank_projective(B, tables(q), 0, total)
        assert examined == total
        expect = oracles.min_distance(q, [X.tolist() for X in B])
        assert d == expect


def test_min_rank_projective_early_stop_and_empty(backend):
    B = np.zeros((2, 2, 2), dtype=np.uint8)
    B[0, 0, 0] = 1
    B[1] = np.eye(2, dtype=np.uint8)
    d, examined = backend.min_rank_projective(B, tables(2), 0, 3, 1)
    assert d == 1 and examined == 1
    assert backend.min_rank_projective(B, tables(2), 2, 2)[0] == kernels.NO_CODEWORD


@pytest.mark.parametrize("q", [2, 3])
def test_maximal_trials(backend, q):
    rng = np.random.default_rng(q)
    S = rng.integers(0, q, (60, 2, 3, 3)).astype(np.uint8)
    for delta in (2, 3):
        got = backend.maximal_trials(S, tables(q), delta)
        expect = [oracles.min_distance(q, [X.tolist() for X in trial]) >= delta for trial in S]
        assert list(got.astype(bool)) == expect


@pytest.mark.parametrize("q", [2, 3])
def test_spectrum_free_trials(backend, q):
    F = oracles.Field(q)
    rng = np.random.default_rng(q)
    S = rng.integers(0, q, (80, 2, 2, 2)).astype(np.uint8)
    got = backend.spectrum_free_trials(S, tables(q))
    for flag, trial in zip(got, S):
        expect = all(
            oracles.is_spectrum_free(F, oracles.combine(F, c, [X.tolist() for X in trial]))
            for c in itertools.product(range(q), repeat=2) if any(c)
        )
        assert bool(flag) == expect


def test_count_sf_tuples_gf2(backend):
    F = oracles.Field(2)
    m = 2
    mats = [np.array([(i >> b) & 1 for b in range(m * m)]).reshape(m, m) for i in range(1 << (m * m))]
    table = np.array([oracles.is_spectrum_free(F, X.tolist()) for X in mats], dtype=np.uint8)
    for k in (1, 2):
        expect = 0
        for tup in itertools.product(range(len(mats)), repeat=k):
            ok = True
            for c in itertools.product(range(2), repeat=k):
                if any(c):
                    acc = 0
                    for bit, t in zip(c, tup):
                        acc ^= t * bit
                    ok &= bool(table[acc])
            expect += ok
        assert backend.count_sf_tuples_gf2(table, k) == expect


def test_backends_agree_on_random_work():
    if kernels.compiled is None:
        pytest.skip("compiled extension not built")
    rng = np.random.default_rng(11)
    S = rng.integers(0, 4, (200, 3, 4, 4)).astype(np.uint8)
    tabs = tables(4)
    assert (kernels.pure.maximal_trials(S, tabs, 3) == kernels.compiled.maximal_trials(S, tabs, 3)).all()
    assert (kernels.pure.spectrum_free_trials(S[:, :, :, :], tabs)
            == kernels.compiled.spectrum_free_trials(S, tabs)).all()


def test_pure_backend_forced_by_environment():
    env = dict(os.environ, FERRO_PURE="1")
    out = subprocess.run([sys.executable, "-c", "import ferro; print(ferro.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
