"""Exact algebra for finite superpositions of multimode coherent states.

A state is a list of (coefficient, label) pairs, where a label is the tuple
of complex amplitudes, one per mode.  Overlaps, displacements and low-order
moments of such states have closed forms, so nothing in this module touches
a Fock-space cutoff; results are exact up to floating point.

Quadrature convention, fixed package-wide:

    X = a + a*        Y = -i (a - a*)        Var_vacuum(X) = Var_vacuum(Y) = 1

(``a*`` denotes the creation operator.)  A weak classical force acting for a
fixed time kicks every mode by the same imaginary displacement i*eps, which
is generated by X summed over modes.  That collective sum is the generator
evaluated by `expect_generator` and `variance_generator`; its variance is
what separates one probe family from another.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import ConsistencyError, DegenerateState, DimensionMismatch

# Labels closer than this (per component, absolute) are the same physical
# amplitude and get merged; keeps norms well conditioned.
TOL_LABEL = 1e-12

# Allowed imaginary leakage on quantities that must be real.
TOL_HERM = 1e-9

ComplexLike = complex | float | int


@dataclass(frozen=True)
class CoherentLabel:
    """Amplitude tuple of a multimode coherent state |g_0, g_1, ...>."""

    amplitudes: tuple[complex, ...]

    def __init__(self, amplitudes: Sequence[ComplexLike]) -> None:
        amps = tuple(complex(a) for a in amplitudes)
        if not amps:
            raise DimensionMismatch("a coherent label needs at least one mode")
        for a in amps:
            if not (math.isfinite(a.real) and math.isfinite(a.imag)):
                raise ValueError(f"non-finite amplitude {a!r}")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def mode_count(self) -> int:
        return len(self.amplitudes)

    def close_to(self, other: "CoherentLabel", tol: float = TOL_LABEL) -> bool:
        if self.mode_count != other.mode_count:
            return False
        return all(abs(x - y) <= tol for x, y in zip(self.amplitudes, other.amplitudes))


@dataclass(frozen=True)
class SuperpositionState:
    """Finite sum  sum_i c_i |label_i>,  not necessarily normalized.

    Construction merges labels that coincide within `TOL_LABEL` (coefficients
    add), so the stored expansion has pairwise distinct labels.  The state may
    still be a numerical null vector (e.g. perfectly cancelling coefficients);
    that is only rejected where a moment would divide by the norm.
    """

    terms: tuple[tuple[complex, CoherentLabel], ...]

    def __init__(self, terms: Sequence[tuple[ComplexLike, CoherentLabel]]) -> None:
        if not terms:
            raise ValueError("state needs at least one term")
        merged: list[tuple[complex, CoherentLabel]] = []
        n_modes = terms[0][1].mode_count
        for coeff, label in terms:
            if label.mode_count != n_modes:
                raise DimensionMismatch(
                    f"mixed mode counts in one state: {label.mode_count} vs {n_modes}"
                )
            c = complex(coeff)
            for i, (c_prev, l_prev) in enumerate(merged):
                if l_prev.close_to(label):
                    merged[i] = (c_prev + c, l_prev)
                    break
            else:
                merged.append((c, label))
        object.__setattr__(self, "terms", tuple(merged))

    @property
    def mode_count(self) -> int:
        return self.terms[0][1].mode_count

    def __len__(self) -> int:
        return len(self.terms)


def overlap(a: CoherentLabel, b: CoherentLabel) -> complex:
    """<a|b> = exp( sum_k  -|a_k|^2/2 - |b_k|^2/2 + conj(a_k) b_k )."""
    if a.mode_count != b.mode_count:
        raise DimensionMismatch(f"overlap of {a.mode_count}- and {b.mode_count}-mode labels")
    z = 0j
    for x, y in zip(a.amplitudes, b.amplitudes):
        z += -0.5 * (abs(x) ** 2 + abs(y) ** 2) + x.conjugate() * y
    if z.real > 700.0:  # cannot happen: real part is -|a-b|^2/2 <= 0
        raise ConsistencyError(f"overlap exponent {z.real} > 0")
    if z.real < -745.0:
        return 0j  # underflow region, the true value is denormal or zero
    return cmath.exp(z)


def inner(s: SuperpositionState, t: SuperpositionState) -> complex:
    """<s|t> expanded over all label pairs."""
    if s.mode_count != t.mode_count:
        raise DimensionMismatch("inner product of states with different mode counts")
    acc = 0j
    for c_i, l_i in s.terms:
        for d_j, m_j in t.terms:
            acc += c_i.conjugate() * d_j * overlap(l_i, m_j)
    return acc


def _coefficient_mass(s: SuperpositionState) -> float:
    return sum(abs(c) ** 2 for c, _ in s.terms)


def norm_squared(s: SuperpositionState) -> float:
    """<s|s> as a float.  Raises DegenerateState if it is not safely positive."""
    v = inner(s, s)
    if abs(v.imag) > TOL_HERM * max(1.0, abs(v.real)):
        raise ConsistencyError(f"norm^2 has imaginary part {v.imag}")
    # Relative floor: coefficients of unit size with norm^2 ~ 1e-12 mean the
    # labels nearly cancel and any moment would amplify roundoff.
    floor = 1e-12 * max(_coefficient_mass(s), 1e-300)
    if v.real <= floor:
        raise DegenerateState(f"norm^2 = {v.real} is not safely positive")
    return v.real


def fidelity(s: SuperpositionState, t: SuperpositionState) -> float:
    """|<s|t>|^2 / (<s|s><t|t>), in [0, 1] up to roundoff."""
    f = abs(inner(s, t)) ** 2 / (norm_squared(s) * norm_squared(t))
    return min(f, 1.0) if f < 1.0 + 1e-9 else f


def make_entangled_cat(alpha: float, n_modes: int) -> SuperpositionState:
    """( |alpha,...,alpha> + |-alpha,...,-alpha> ) / sqrt(2), over n_modes modes.

    Unnormalized by construction: norm^2 = 1 + exp(-2 n_modes alpha^2).
    alpha = 0 collapses to a single vacuum term with coefficient sqrt(2).
    """
    if n_modes < 1:
        raise ValueError(f"n_modes must be >= 1, got {n_modes}")
    a = float(alpha)
    if a < 0.0:
        raise ValueError(f"alpha must be >= 0, got {a}")
    if not math.isfinite(a):
        raise ValueError("alpha must be finite")
    c = 1.0 / math.sqrt(2.0)
    plus = CoherentLabel((a,) * n_modes)
    minus = CoherentLabel((-a,) * n_modes)
    return SuperpositionState([(c, plus), (c, minus)])


def displace(s: SuperpositionState, betas: Sequence[ComplexLike]) -> SuperpositionState:
    """Apply the product of per-mode displacements D(beta_k) to every term.

    On a single label the rule is
        D(beta)|g> = exp(i Im(beta conj(g))) |g + beta>,
    which follows from splitting exp(beta a* - conj(beta) a) with the BCH
    identity for operators whose commutator is a scalar.
    """
    kicks = tuple(complex(b) for b in betas)
    if len(kicks) != s.mode_count:
        raise DimensionMismatch(
            f"{len(kicks)} displacement amplitudes for a {s.mode_count}-mode state"
        )
    out = []
    for c, label in s.terms:
        phase = 0.0
        for b, g in zip(kicks, label.amplitudes):
            phase += (b * g.conjugate()).imag
        shifted = CoherentLabel(tuple(g + b for g, b in zip(label.amplitudes, kicks)))
        out.append((c * cmath.exp(1j * phase), shifted))
    return SuperpositionState(out)


def _normalized_moment(
    s: SuperpositionState,
    element: Callable[[CoherentLabel, CoherentLabel], complex],
) -> float:
    """<s|O|s> / <s|s> where element(bra, ket) = <bra|O|ket> / <bra|ket>."""
    num = 0j
    den = 0j
    for c_i, l_i in s.terms:
        for c_j, l_j in s.terms:
            w = c_i.conjugate() * c_j * overlap(l_i, l_j)
            den += w
            num += w * element(l_i, l_j)
    floor = 1e-12 * max(_coefficient_mass(s), 1e-300)
    if den.real <= floor:
        raise DegenerateState(f"norm^2 = {den.real} is not safely positive")
    val = num / den
    if abs(val.imag) > TOL_HERM * max(1.0, abs(val.real)):
        raise ConsistencyError(f"Hermitian expectation has imaginary part {val.imag}")
    return val.real


def _sum_bra_ket(bra: CoherentLabel, ket: CoherentLabel) -> complex:
    # a_k|g> = g_k|g> and <b|a_k* = <b|conj(b_k), so the collective X picks
    # up ket amplitudes from annihilators and conjugate bra amplitudes from
    # creators:
    #     <b| sum_k (a_k + a_k*) |g> = (sum_k g_k + sum_k conj(b_k)) <b|g>
    return sum(ket.amplitudes) + sum(b.conjugate() for b in bra.amplitudes)


def expect_generator(s: SuperpositionState) -> float:
    """Mean of the collective quadrature  G = sum_k (a_k + a_k*)."""
    return _normalized_moment(s, _sum_bra_ket)


def variance_generator(s: SuperpositionState) -> float:
    """Variance of the collective quadrature G, clamped at 0 within tolerance.

    Second moment: expand G^2 and normal-order.  Each cross term a_k a_l*
    with k = l contributes one commutator [a_k, a_k*] = 1, so with M modes
        G^2 = sum_{k,l} ( a_k a_l + a_k* a_l* + a_k* a_l + a_l* a_k )  +  M.
    Every normal-ordered word is diagonal in the labels, giving
        <b|G^2|g> = ( (u + v)^2 + M ) <b|g>,   u = sum_k g_k,  v = sum_k conj(b_k),
    i.e. the square of the first-moment element plus the mode count.
    """
    m = s.mode_count

    def second(bra: CoherentLabel, ket: CoherentLabel) -> complex:
        e1 = _sum_bra_ket(bra, ket)
        return e1 * e1 + m

    mean = _normalized_moment(s, _sum_bra_ket)
    mean_sq = _normalized_moment(s, second)
    var = mean_sq - mean * mean
    if var < -TOL_HERM * max(1.0, abs(mean_sq)):
        raise ConsistencyError(f"variance {var} < 0 beyond tolerance")
    return max(var, 0.0)


def mean_photon_number(s: SuperpositionState) -> float:
    """Mean of  sum_k a_k* a_k,  total photon number over all modes."""

    def number(bra: CoherentLabel, ket: CoherentLabel) -> complex:
        return sum(b.conjugate() * g for b, g in zip(bra.amplitudes, ket.amplitudes))

    n = _normalized_moment(s, number)
    if n < -TOL_HERM:
        raise ConsistencyError(f"photon number {n} < 0 beyond tolerance")
    return max(n, 0.0)
