"""Shared fixtures and loop-based reference implementations.

The reference functions here deliberately use explicit index loops so
they stay independent of the vectorized library code they are used to
check.
"""

import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(0)


def ref_apply_kraus(kraus, rho):
    out = np.zeros_like(np.asarray(rho, dtype=complex))
    for k in kraus:
        out += k @ rho @ k.conj().T
    return out


def ref_partial_trace(m, da, db, keep):
    m = np.asarray(m)
    if keep == 0:
        out = np.zeros((da, da), dtype=complex)
        for i in range(da):
            for j in range(da):
                for k in range(db):
                    out[i, j] += m[i * db + k, j * db + k]
    else:
        out = np.zeros((db, db), dtype=complex)
        for i in range(db):
            for j in range(db):
                for k in range(da):
                    out[i, j] += m[k * db + i, k * db + j]
    return out


def ref_partial_transpose(m, da, db, which):
    m = np.asarray(m)
    out = np.zeros_like(m)
    for ia in range(da):
        for ib in range(db):
            for ja in range(da):
                for jb in range(db):
                    if which == 0:
                        out[ia * db + ib, ja * db + jb] = m[ja * db + ib, ia * db + jb]
                    else:
                        out[ia * db + ib, ja * db + jb] = m[ia * db + jb, ja * db + ib]
    return out


def ref_id_lambda(m, da, db, k):
    """(id ⊗ Lambda_k) block by block."""
    m = np.asarray(m)
    out = np.zeros_like(m)
    for i in range(da):
        for j in range(da):
            block = m[i * db:(i + 1) * db, j * db:(j + 1) * db]
            out[i * db:(i + 1) * db, j * db:(j + 1) * db] = (
                np.trace(block) * np.eye(db) - k * block
            )
    return out


def random_hermitian(n, rng):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (g + g.conj().T) / 2.0


def random_rank_matrix(n, r, rng):
    m = np.zeros((n, n), dtype=complex)
    for _ in range(r):
        u = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        m += np.outer(u, v)
    return m
