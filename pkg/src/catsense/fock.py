"""Brute-force oracle: truncated number-basis simulation of 1 to 3 modes.

This module deliberately does everything the slow way (dense and sparse
matrices in a finite Fock basis) so the closed forms in `coherent` and
`bounds` have something independent to be checked against.  Capacity is
hard-capped at MAX_MODES modes and MAX_DIM levels per mode, because state
vectors grow like dim**modes; the exact algebra covers everything beyond.

Conventions:
  * mode 0 is the slowest-varying tensor index.  A vector of a k-mode
    system reshaped to (dim,) * k indexes as [n_0, n_1, ..., n_{k-1}],
    which is also what consecutive `numpy.kron`/`scipy.sparse.kron` calls
    produce.
  * operators returned by the single-mode constructors are dense
    (dim, dim) arrays; `lift` embeds them into the full tensor space as
    sparse CSR.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
import scipy.sparse as sp

from . import coherent
from .errors import (
    CapacityError,
    ConsistencyError,
    DimensionMismatch,
    HermiticityError,
    StepTooSmallError,
    TruncationError,
)

MAX_MODES = 3
MAX_DIM = 128

# A cutoff is accepted when the top two levels together hold less mass than
# this; for a Poisson-tailed state that bounds the discarded mass too.
TAIL_TOL = 1e-12

# Squeezed-vacuum tails fall off geometrically (factor tanh^2 r per level
# pair), orders of magnitude slower than Poisson, so they get a looser gate;
# second moments built on a basis passing this are good to ~1e-6 and callers
# wanting better must raise dim until the gate passes a stricter tol.
SQUEEZED_TAIL_TOL = 1e-8

Operator = np.ndarray | sp.spmatrix


def recommended_dim(alpha_max: float) -> int:
    """Cutoff that keeps the Poisson tail of |alpha| << alpha_max far below TAIL_TOL.

    Mean alpha^2 plus eight standard-deviation-ish units plus a flat floor;
    generous on purpose, the oracle is not performance critical.
    """
    a = abs(alpha_max)
    return math.ceil(a * a + 8.0 * a + 20.0)


@dataclass(frozen=True)
class FockVector:
    """State vector over (dim,)*mode_count number states, flattened C-order."""

    amplitudes: np.ndarray
    dim: int
    mode_count: int

    def __init__(self, amplitudes: np.ndarray, dim: int, mode_count: int) -> None:
        if not 1 <= mode_count <= MAX_MODES:
            raise CapacityError(f"mode_count {mode_count} outside 1..{MAX_MODES}")
        if not 1 <= dim <= MAX_DIM:
            raise CapacityError(f"dim {dim} outside 1..{MAX_DIM}")
        amps = np.asarray(amplitudes, dtype=np.complex128).ravel()
        if amps.size != dim**mode_count:
            raise DimensionMismatch(
                f"{amps.size} amplitudes for dim {dim} and {mode_count} modes"
            )
        amps = amps.copy()
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "dim", int(dim))
        object.__setattr__(self, "mode_count", int(mode_count))

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape((self.dim,) * self.mode_count)


def _check_tail(amps: np.ndarray, what: str, tol: float = TAIL_TOL) -> None:
    tail = float(np.sum(np.abs(amps[-2:]) ** 2))
    if tail >= tol:
        raise TruncationError(
            f"{what}: mass {tail:.3e} in the top two levels, cutoff too small"
        )


def coherent_vector(alpha: complex, dim: int) -> FockVector:
    """|alpha> truncated to dim levels and renormalized.

    Coefficients exp(-|alpha|^2/2) alpha^n / sqrt(n!) via the stable
    recurrence c_n = c_{n-1} alpha / sqrt(n).  Raises TruncationError when
    the top of the basis still holds mass, instead of silently clipping.
    """
    a = complex(alpha)
    c = np.empty(dim, dtype=np.complex128)
    c[0] = math.exp(-0.5 * abs(a) ** 2)
    for n in range(1, dim):
        c[n] = c[n - 1] * a / math.sqrt(n)
    if dim >= 2:
        _check_tail(c, f"coherent_vector(alpha={a})")
    nrm = np.linalg.norm(c)
    if abs(nrm - 1.0) > 1e-9:
        raise TruncationError(f"coherent_vector norm {nrm} too far from 1")
    return FockVector(c / nrm, dim, 1)


def squeezed_vector(r: float, dim: int) -> FockVector:
    """Momentum-squeezed vacuum: Var(Y) = exp(-2r), Var(X) = exp(+2r).

    Only even levels are populated:
        c_{2m} = tanh(r)^m sqrt((2m)!) / (2^m m!) / sqrt(cosh r),
    built with the ratio c_{2m}/c_{2m-2} = tanh(r) sqrt((2m-1)/(2m)).
    The sign convention (positive tanh) is what squeezes Y = -i(a - a*);
    flipping it would squeeze X instead.
    """
    rr = float(r)
    if rr < 0.0:
        raise ValueError(f"squeezing parameter must be >= 0, got {rr}")
    nbar = math.sinh(rr) ** 2
    need = recommended_dim(math.sqrt(nbar))
    if dim < need:
        raise TruncationError(f"dim {dim} < {need} required for r = {rr}")
    c = np.zeros(dim, dtype=np.complex128)
    c[0] = 1.0 / math.sqrt(math.cosh(rr))
    t = math.tanh(rr)
    for m in range(1, (dim - 1) // 2 + 1):
        c[2 * m] = c[2 * m - 2] * t * math.sqrt((2 * m - 1) / (2 * m))
    _check_tail(c, f"squeezed_vector(r={rr})", SQUEEZED_TAIL_TOL)
    return FockVector(c / np.linalg.norm(c), dim, 1)


def to_fock(s: coherent.SuperpositionState, dim: int | None = None) -> FockVector:
    """Expand a coherent-label superposition in the truncated number basis.

    Keeps the exact norm of `s` (no renormalization), so overlap checks
    against the closed forms are apples to apples.  The cutoff defaults to
    `recommended_dim` of the largest label component.
    """
    if s.mode_count > MAX_MODES:
        raise CapacityError(f"{s.mode_count} modes exceeds oracle cap {MAX_MODES}")
    biggest = max(abs(a) for _, label in s.terms for a in label.amplitudes)
    if dim is None:
        dim = recommended_dim(biggest)
    if dim > MAX_DIM:
        raise CapacityError(f"dim {dim} exceeds oracle cap {MAX_DIM}")
    total = np.zeros((dim,) * s.mode_count, dtype=np.complex128)
    for coeff, label in s.terms:
        columns = [coherent_vector(a, dim).amplitudes for a in label.amplitudes]
        block = columns[0]
        for col in columns[1:]:
            block = np.multiply.outer(block, col)
        total += coeff * block
    vec = FockVector(total, dim, s.mode_count)
    exact = math.sqrt(coherent.norm_squared(s))
    if abs(vec.norm() - exact) > 1e-10 * max(exact, 1.0):
        raise TruncationError(
            f"truncated norm {vec.norm()} vs exact {exact}, cutoff too small"
        )
    return vec


def annihilation(dim: int) -> np.ndarray:
    """a with a[n-1, n] = sqrt(n)."""
    return np.diag(np.sqrt(np.arange(1, dim, dtype=np.float64)), k=1).astype(np.complex128)


def creation(dim: int) -> np.ndarray:
    return annihilation(dim).conj().T


def number_operator(dim: int) -> np.ndarray:
    return np.diag(np.arange(dim, dtype=np.float64)).astype(np.complex128)


def quad_x(dim: int) -> np.ndarray:
    """X = a + a*."""
    a = annihilation(dim)
    return a + a.conj().T


def quad_y(dim: int) -> np.ndarray:
    """Y = -i (a - a*)."""
    a = annihilation(dim)
    return -1j * (a - a.conj().T)


def lift(op: np.ndarray, mode: int, mode_count: int) -> sp.csr_matrix:
    """Embed a single-mode operator at position `mode` of a mode_count system."""
    dim = op.shape[0]
    if op.shape != (dim, dim):
        raise DimensionMismatch(f"operator shape {op.shape} is not square")
    if not 0 <= mode < mode_count:
        raise DimensionMismatch(f"mode {mode} outside 0..{mode_count - 1}")
    if mode_count > MAX_MODES or dim > MAX_DIM:
        raise CapacityError("lift request exceeds oracle caps")
    out = sp.csr_matrix(op)
    if mode > 0:
        out = sp.kron(sp.identity(dim**mode, format="csr"), out, format="csr")
    rest = mode_count - mode - 1
    if rest > 0:
        out = sp.kron(out, sp.identity(dim**rest, format="csr"), format="csr")
    return out


def collective_quad_x(dim: int, mode_count: int) -> sp.csr_matrix:
    """G = sum_k (a_k + a_k*), the displacement generator used everywhere."""
    x = quad_x(dim)
    total = lift(x, 0, mode_count)
    for k in range(1, mode_count):
        total = total + lift(x, k, mode_count)
    return total.tocsr()


def displacement_matrix(beta: complex, dim: int) -> np.ndarray:
    """exp(beta a* - conj(beta) a) on the truncated basis.

    Computed as exp(-i H) with the Hermitian H = i(beta a* - conj(beta) a)
    through its eigendecomposition, so the result is unitary to roundoff
    (a Taylor series on a truncated a would not be).
    """
    b = complex(beta)
    a = annihilation(dim)
    h = 1j * (b * a.conj().T - b.conjugate() * a)
    w, v = np.linalg.eigh(h)
    return (v * np.exp(-1j * w)) @ v.conj().T


def displace_fock(state: FockVector, betas: Sequence[complex]) -> FockVector:
    """Apply per-mode displacements without forming the full-space matrix.

    Each D(beta_k) is a dim x dim dense matrix contracted along axis k of
    the amplitude tensor; memory stays at one state vector.
    """
    if len(betas) != state.mode_count:
        raise DimensionMismatch(
            f"{len(betas)} displacement amplitudes for {state.mode_count} modes"
        )
    tens = state.tensor()
    for k, b in enumerate(betas):
        d = displacement_matrix(complex(b), state.dim)
        tens = np.moveaxis(np.tensordot(d, tens, axes=([1], [k])), 0, k)
    return FockVector(tens, state.dim, state.mode_count)


def inner_fock(u: FockVector, v: FockVector) -> complex:
    if u.dim != v.dim or u.mode_count != v.mode_count:
        raise DimensionMismatch("inner product of vectors from different spaces")
    return complex(np.vdot(u.amplitudes, v.amplitudes))


def _check_hermitian(op: Operator) -> None:
    delta = op - (op.conj().T if isinstance(op, np.ndarray) else op.getH())
    if isinstance(delta, np.ndarray):
        worst = float(np.max(np.abs(delta))) if delta.size else 0.0
    else:
        worst = float(np.max(np.abs(delta.data))) if delta.nnz else 0.0
    if worst > 1e-10:
        raise HermiticityError(f"operator deviates from Hermitian by {worst:.3e}")


def expectation(state: FockVector, op: Operator) -> float:
    """<psi|op|psi> / <psi|psi> for Hermitian op."""
    _check_hermitian(op)
    psi = state.amplitudes
    val = complex(np.vdot(psi, op @ psi)) / float(np.vdot(psi, psi).real)
    if abs(val.imag) > 1e-9 * max(1.0, abs(val.real)):
        raise ConsistencyError(f"Hermitian expectation has imaginary part {val.imag}")
    return val.real


def variance(state: FockVector, op: Operator) -> float:
    """Var(op) evaluated as <op psi, op psi> - <psi, op psi>^2 (normalized)."""
    _check_hermitian(op)
    psi = state.amplitudes
    nrm2 = float(np.vdot(psi, psi).real)
    opsi = op @ psi
    m1 = complex(np.vdot(psi, opsi)) / nrm2
    if abs(m1.imag) > 1e-9 * max(1.0, abs(m1.real)):
        raise ConsistencyError(f"Hermitian expectation has imaginary part {m1.imag}")
    m2 = float(np.vdot(opsi, opsi).real) / nrm2
    var = m2 - m1.real**2
    if var < -1e-9 * max(1.0, m2):
        raise ConsistencyError(f"variance {var} < 0 beyond tolerance")
    return max(var, 0.0)


def qfi_pure(state: FockVector, generator: Operator) -> float:
    """Quantum Fisher information of a pure state under exp(i eps G): 4 Var(G)."""
    return 4.0 * variance(state, generator)


def qfi_fidelity_fd(
    family: Callable[[float], FockVector], eps0: float, step: float
) -> float:
    """QFI from the fidelity curvature, no generator needed.

    For pure states F(eps, eps + d) = 1 - (d^2/8) QFI + O(d^4), so
        q(d) = 8 (1 - F) / d^2
    converges quadratically and one Richardson step, (4 q(d/2) - q(d)) / 3,
    removes the leading error term.  When the fidelity deficit 1 - F sinks
    toward double-precision roundoff the quotient is garbage; that is
    reported as StepTooSmallError rather than returned.
    """
    if step <= 0.0:
        raise ValueError(f"step must be > 0, got {step}")
    base = family(float(eps0))
    base_norm = base.norm()

    def deficit(d: float) -> float:
        other = family(float(eps0) + d)
        f = abs(inner_fock(base, other)) / (base_norm * other.norm())
        return 1.0 - f

    def quotient(d: float) -> float:
        df = deficit(d)
        if df < 1e-13:
            raise StepTooSmallError(
                f"fidelity deficit {df:.3e} at step {d:.3e} is below the roundoff floor"
            )
        return 8.0 * df / (d * d)

    q1 = quotient(step)
    q2 = quotient(step / 2.0)
    return (4.0 * q2 - q1) / 3.0
