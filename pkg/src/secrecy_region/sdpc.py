"""Secret dirty-paper coding rate evaluation.

For a pair of auxiliary covariances (K_U1, K_U2) with tr(K_U1 + K_U2) <= P
the scheme achieves the rectangle

    r1 <= log2  (1 + h^H K_U1 h) / (1 + g^H K_U1 g)
    r2 <= log2  (1 + g^H (K_U1+K_U2) g) / (1 + h^H (K_U1+K_U2) h)
        + log2  (1 + h^H K_U1 h) / (1 + g^H K_U1 g)

The boundary-achieving choice is rank-one: K_U1 = aP e1 e1^H along the
pencil eigenvector, K_U2 = (1-a)P c2 c2^H along the eigenvector returned
with gamma2(a). With that choice the r2 bound collapses to log2 gamma2(a)
(an algebraic identity this module can verify directly).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .channel import ChannelPair, ChannelSpectrum, rate_scale, spectrum
from .errors import CovarianceInvalid
from .regions import RatePair, _check_param, gamma2

#: PSD slack and trace slack for covariance validation
PSD_TOL = 1e-10
TRACE_TOL = 1e-10


@dataclass(frozen=True)
class CovariancePair:
    """Hermitian PSD covariances for the two auxiliary codebooks."""

    k_u1: np.ndarray
    k_u2: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "k_u1", linalg.hermitize(self.k_u1))
        object.__setattr__(self, "k_u2", linalg.hermitize(self.k_u2))
        if self.k_u1.shape != self.k_u2.shape:
            raise CovarianceInvalid(
                f"covariance shapes differ: {self.k_u1.shape} vs {self.k_u2.shape}"
            )

    @property
    def total(self) -> np.ndarray:
        return self.k_u1 + self.k_u2

    @property
    def trace(self) -> float:
        return float(np.trace(self.k_u1).real + np.trace(self.k_u2).real)


def validate_covariances(ch: ChannelPair, cov: CovariancePair) -> None:
    """Check PSD-ness and the total trace budget against ch.power."""
    if cov.k_u1.shape[0] != ch.dim:
        raise CovarianceInvalid(
            f"covariance dimension {cov.k_u1.shape[0]} != channel dimension {ch.dim}"
        )
    for name, k in (("k_u1", cov.k_u1), ("k_u2", cov.k_u2)):
        vals, _ = linalg.hermitian_eigh(k)
        if vals[-1] < -PSD_TOL:
            raise CovarianceInvalid(f"{name} has eigenvalue {vals[-1]:.3e} < 0")
    if cov.trace > ch.power + TRACE_TOL:
        raise CovarianceInvalid(
            f"tr(K_U1 + K_U2) = {cov.trace:.12g} exceeds the power budget {ch.power}"
        )


def rate_bounds_raw(ch: ChannelPair, cov: CovariancePair) -> tuple[float, float]:
    """Unclamped log2 bounds (r1, r2); negative values mean a vacuous bound."""
    h, g = ch.h, ch.g
    k1 = cov.k_u1
    kt = cov.total
    ratio1 = (1.0 + linalg.quadratic_form(h, k1, h).real) / (
        1.0 + linalg.quadratic_form(g, k1, g).real
    )
    ratio2 = (1.0 + linalg.quadratic_form(g, kt, g).real) / (
        1.0 + linalg.quadratic_form(h, kt, h).real
    )
    b1 = np.log2(ratio1)
    return float(b1), float(np.log2(ratio2) + b1)


def sdpc_rates(ch: ChannelPair, cov: CovariancePair) -> RatePair:
    """Rectangle corner achieved by a covariance pair, clamped at zero.

    A negative bound means the rectangle is degenerate on that axis (the
    bound is vacuous, not an error); use rate_bounds_raw to see it.
    """
    validate_covariances(ch, cov)
    b1, b2 = rate_bounds_raw(ch, cov)
    scale = rate_scale(ch)
    return RatePair(max(0.0, scale * b1), max(0.0, scale * b2))


def optimal_covariances(
    ch: ChannelPair, alpha: float, spec: ChannelSpectrum | None = None
) -> CovariancePair:
    """Boundary-achieving rank-one pair for a given split alpha.

    tr(K_U1) = alpha*P and tr(K_U2) = (1-alpha)*P exactly (unit-norm
    eigenvector outer products).
    """
    a = _check_param(alpha, "alpha")
    spec = spec or spectrum(ch)
    _, c2 = gamma2(ch, spec, a)
    t = ch.dim
    k1 = a * ch.power * np.outer(spec.e1, spec.e1.conj())
    k2 = (1.0 - a) * ch.power * np.outer(c2, c2.conj())
    if a == 0.0:
        k1 = np.zeros((t, t), dtype=complex)
    if a == 1.0:
        k2 = np.zeros((t, t), dtype=complex)
    return CovariancePair(k1, k2)


def verify_identity_eq9(
    ch: ChannelPair, alpha: float, spec: ChannelSpectrum | None = None
) -> float:
    """|direct quadratic-form ratio - gamma2(alpha)| for the optimal pair.

    The direct side evaluates
    [1 + g^H K g][1 + h^H K_U1 h] / ([1 + h^H K h][1 + g^H K_U1 g])
    with K = K_U1 + K_U2; the pencil side is gamma2(alpha). The two agree
    analytically; the return value is the numerical gap.
    """
    a = _check_param(alpha, "alpha")
    spec = spec or spectrum(ch)
    ratio2, c2 = gamma2(ch, spec, a)
    k1 = a * ch.power * np.outer(spec.e1, spec.e1.conj())
    kt = k1 + (1.0 - a) * ch.power * np.outer(c2, c2.conj())
    h, g = ch.h, ch.g
    lhs = (
        (1.0 + linalg.quadratic_form(g, kt, g).real)
        * (1.0 + linalg.quadratic_form(h, k1, h).real)
    ) / (
        (1.0 + linalg.quadratic_form(h, kt, h).real)
        * (1.0 + linalg.quadratic_form(g, k1, g).real)
    )
    return abs(lhs - ratio2)
