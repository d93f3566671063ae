"""Quantum states: pure states, density matrices, Schmidt structure, generators.

Random generators take explicit seeds (or ``numpy.random.Generator``
instances) and never touch global RNG state, so a given seed reproduces
the same state bit-for-bit on one platform.
"""

from __future__ import annotations

import numpy as np

from . import linalg
from .errors import (
    DimensionMismatchError,
    InvalidDimensionError,
    InvalidRankError,
    NotBipartiteError,
    NotHermitianError,
    NotPSDError,
    ParamOutOfRangeError,
)

# Smallest Schmidt coefficient emitted by the rank-r generator; keeps the
# generated rank numerically unambiguous against the 1e-9 rank tolerance.
COEFFICIENT_FLOOR = 0.01

NORM_TOL = 1e-12
TRACE_TOL = 1e-10
PSD_TOL = 1e-9


class PureState:
    """State vector together with its subsystem dimensions.

    ``dims`` is (dA, dB) for a bipartite state or (d,) for a single
    system. Amplitudes are stored normalized and use the composite index
    ``i_A * dB + i_B``.
    """

    def __init__(self, amplitudes, dims):
        v = np.asarray(amplitudes, dtype=complex).reshape(-1)
        if not np.all(np.isfinite(v.real)) or not np.all(np.isfinite(v.imag)):
            raise ValueError("amplitudes must be finite")
        dims = tuple(int(d) for d in (dims if np.iterable(dims) else (dims,)))
        if len(dims) not in (1, 2) or any(d < 1 for d in dims):
            raise InvalidDimensionError(f"unsupported dims {dims}")
        if v.size != int(np.prod(dims)):
            raise DimensionMismatchError(
                f"{v.size} amplitudes do not match dims {dims}"
            )
        norm = np.linalg.norm(v)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state norm {norm!r} deviates from 1 beyond {NORM_TOL}")
        self.amplitudes = v
        self.dims = dims

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def is_bipartite(self) -> bool:
        return len(self.dims) == 2

    def coefficient_matrix(self) -> np.ndarray:
        """Amplitudes reshaped to the dA x dB coefficient matrix."""
        if not self.is_bipartite():
            raise NotBipartiteError("state has no bipartite split")
        return self.amplitudes.reshape(self.dims)

    def density(self) -> "DensityMatrix":
        """Projector |psi><psi| as a DensityMatrix."""
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()), self.dims)

    def __repr__(self):
        return f"PureState(dim={self.dim}, dims={self.dims})"


class DensityMatrix:
    """Positive unit-trace operator with explicit subsystem dimensions."""

    def __init__(self, matrix, dims):
        m = linalg.as_matrix(matrix, square=True)
        dims = tuple(int(d) for d in (dims if np.iterable(dims) else (dims,)))
        if len(dims) not in (1, 2) or any(d < 1 for d in dims):
            raise InvalidDimensionError(f"unsupported dims {dims}")
        if m.shape[0] != int(np.prod(dims)):
            raise DimensionMismatchError(f"shape {m.shape} does not match dims {dims}")
        deviation = np.max(np.abs(m - linalg.dagger(m)))
        if deviation > PSD_TOL:
            raise NotHermitianError(f"max |rho - rho†| = {deviation:.3e}")
        m = (m + linalg.dagger(m)) / 2.0
        tr = np.trace(m)
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"trace {tr!r} deviates from 1 beyond {TRACE_TOL}")
        lo = float(np.linalg.eigvalsh(m)[0])
        if lo < -PSD_TOL:
            raise NotPSDError(f"minimum eigenvalue {lo:.3e} below -{PSD_TOL}")
        self.matrix = m
        self.dims = dims

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def is_bipartite(self) -> bool:
        return len(self.dims) == 2

    def marginal(self, keep: int) -> np.ndarray:
        if not self.is_bipartite():
            raise NotBipartiteError("state has no bipartite split")
        return linalg.partial_trace(self.matrix, self.dims, keep)

    def __repr__(self):
        return f"DensityMatrix(dim={self.dim}, dims={self.dims})"


def max_entangled(d: int) -> PureState:
    """Maximally entangled state (1/sqrt(d)) sum_i |ii> on d x d."""
    if d < 2:
        raise InvalidDimensionError("maximally entangled state needs d >= 2")
    v = np.zeros(d * d, dtype=complex)
    v[np.arange(d) * d + np.arange(d)] = 1.0 / np.sqrt(d)
    return PureState(v, (d, d))


def schmidt_coefficients(psi: PureState) -> np.ndarray:
    """Squared singular values of the coefficient matrix, descending, summing to 1."""
    s = linalg.singular_values(psi.coefficient_matrix())
    return s * s


def schmidt_rank(psi: PureState, tol: float = 1e-9) -> int:
    """Number of Schmidt coefficients above ``tol``."""
    return int(np.count_nonzero(schmidt_coefficients(psi) > tol))


def haar_unitary(d: int, rng) -> np.ndarray:
    """Haar-random d x d unitary via QR of a complex Gaussian matrix."""
    rng = np.random.default_rng(rng)
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    diag = np.diagonal(r)
    return q * (diag / np.abs(diag))


def random_pure_with_schmidt_rank(dA: int, dB: int, r: int, seed) -> PureState:
    """Random bipartite pure state with Schmidt rank exactly ``r``.

    Coefficients are sampled uniformly on the simplex, floored at
    ``COEFFICIENT_FLOOR`` and renormalized; the local bases are
    independent Haar-random unitaries.
    """
    if not 1 <= r <= min(dA, dB):
        raise InvalidRankError(f"rank {r} not in [1, min({dA},{dB})]")
    rng = np.random.default_rng(seed)
    lam = rng.dirichlet(np.ones(r))
    lam = np.maximum(lam, COEFFICIENT_FLOOR)
    lam = lam / lam.sum()
    u = haar_unitary(dA, rng)
    v = haar_unitary(dB, rng)
    amp = np.zeros(dA * dB, dtype=complex)
    for i in range(r):
        amp += np.sqrt(lam[i]) * np.kron(u[:, i], v[:, i])
    return PureState(amp, (dA, dB))


def random_state_sn_at_most(dA: int, dB: int, r: int, terms: int, seed) -> DensityMatrix:
    """Convex mixture of ``terms`` random Schmidt-rank-<=r pure states.

    By construction the output has Schmidt number at most ``r``.
    """
    if terms < 1:
        raise ValueError("terms must be >= 1")
    if not 1 <= r <= min(dA, dB):
        raise InvalidRankError(f"rank {r} not in [1, min({dA},{dB})]")
    rng = np.random.default_rng(seed)
    weights = rng.dirichlet(np.ones(terms))
    rho = np.zeros((dA * dB, dA * dB), dtype=complex)
    for w in weights:
        psi = random_pure_with_schmidt_rank(dA, dB, r, rng)
        rho += w * np.outer(psi.amplitudes, psi.amplitudes.conj())
    return DensityMatrix(rho, (dA, dB))


def random_density(d: int, seed, dims=None) -> DensityMatrix:
    """Full-rank random density matrix (Hilbert-Schmidt measure)."""
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    rho = g @ g.conj().T
    return DensityMatrix(rho / np.trace(rho), dims if dims is not None else (d,))


def isotropic_state(d: int, p: float) -> DensityMatrix:
    """p |phi+><phi+| + (1-p) I/d^2 on d x d."""
    if not 0.0 <= p <= 1.0:
        raise ParamOutOfRangeError(f"p={p} outside [0, 1]")
    phi = max_entangled(d)
    m = p * np.outer(phi.amplitudes, phi.amplitudes.conj())
    m += (1.0 - p) / (d * d) * np.eye(d * d)
    return DensityMatrix(m, (d, d))
