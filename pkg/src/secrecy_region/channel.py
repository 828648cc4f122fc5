"""Two-user broadcast channel instance and its pencil spectrum.

A channel is a pair of attenuation vectors (h for user 1, g for user 2), a
total transmit power P and a scalar-field mode. The per-user secrecy
behaviour is governed by the largest generalized eigenvalues of the two
identity-plus-rank-one pencils built from (h, g, P):

    (I + P h h^H, I + P g g^H)  ->  (lambda1, e1)
    (I + P g g^H, I + P h h^H)  ->  (lambda2, e2)

Both eigenvalues are >= 1, strictly when h and g are linearly independent,
and lambda_k > 1 is exactly the condition for user k to sustain a positive
secrecy rate.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import BothZeroVectors

MODE_COMPLEX = "complex"
MODE_REAL = "real"

#: default slack for strict lambda > 1 comparisons
FEASIBILITY_TOL = 1e-9


@dataclass(frozen=True)
class ChannelPair:
    """Channel attenuation vectors, power budget and scalar-field mode.

    In "real" mode the algebra still runs over the complex field; the mode
    only selects the 1/2 factor applied to reported rates (real-alphabet
    signalling carries half the degrees of freedom per channel use).
    """

    h: np.ndarray
    g: np.ndarray
    power: float
    mode: str = MODE_COMPLEX

    def __post_init__(self):
        h = linalg.as_complex_vector(self.h)
        g = linalg.as_complex_vector(self.g)
        if h.shape[0] != g.shape[0]:
            raise ValueError(
                f"h and g must have the same length, got {h.shape[0]} and {g.shape[0]}"
            )
        if h.shape[0] < 2:
            raise ValueError("channel vectors need at least 2 entries")
        power = float(self.power)
        if not math.isfinite(power) or power < 0:
            raise ValueError(f"power must be finite and >= 0, got {self.power}")
        if self.mode not in (MODE_COMPLEX, MODE_REAL):
            raise ValueError(f"mode must be 'complex' or 'real', got {self.mode!r}")
        if self.mode == MODE_REAL and (np.any(h.imag != 0) or np.any(g.imag != 0)):
            raise ValueError("real mode requires exactly zero imaginary parts")
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "power", power)

    @property
    def dim(self) -> int:
        return self.h.shape[0]

    def swapped(self) -> "ChannelPair":
        """The same channel with the two users exchanged."""
        return ChannelPair(self.g.copy(), self.h.copy(), self.power, self.mode)


@dataclass(frozen=True)
class ChannelSpectrum:
    """Largest generalized eigenpairs of the two user pencils."""

    lambda1: float
    e1: np.ndarray
    lambda2: float
    e2: np.ndarray
    residual1: float
    residual2: float
    degenerate1: bool = False
    degenerate2: bool = False


def pencil_matrices(ch: ChannelPair) -> tuple[np.ndarray, np.ndarray]:
    """The Gram matrices (I + P h h^H, I + P g g^H)."""
    t = ch.dim
    a = linalg.identity_plus_rank_one(t, ch.power, ch.h)
    b = linalg.identity_plus_rank_one(t, ch.power, ch.g)
    return a, b


def spectrum(ch: ChannelPair) -> ChannelSpectrum:
    """Solve both pencils and return their top eigenpairs."""
    a, b = pencil_matrices(ch)
    r1 = linalg.largest_gen_eig(a, b)
    r2 = linalg.largest_gen_eig(b, a)
    return ChannelSpectrum(
        lambda1=r1.eigenvalue,
        e1=r1.eigenvector,
        lambda2=r2.eigenvalue,
        e2=r2.eigenvector,
        residual1=r1.residual,
        residual2=r2.residual,
        degenerate1=r1.degenerate,
        degenerate2=r2.degenerate,
    )


def is_secrecy_feasible(
    ch: ChannelPair, tol: float = FEASIBILITY_TOL
) -> tuple[bool, bool]:
    """Whether each user can sustain a strictly positive secrecy rate.

    User k is feasible iff lambda_k > 1 + tol.
    """
    if not tol > 0:
        raise ValueError(f"tol must be > 0, got {tol}")
    spec = spectrum(ch)
    return spec.lambda1 > 1.0 + tol, spec.lambda2 > 1.0 + tol


def linear_independence_margin(ch: ChannelPair) -> float:
    """Sine of the principal angle between span{h} and span{g}.

    0 iff the vectors are linearly dependent (a zero vector counts as
    dependent on anything); 1 iff they are orthogonal.
    """
    nh = float(np.linalg.norm(ch.h))
    ng = float(np.linalg.norm(ch.g))
    if nh == 0.0 and ng == 0.0:
        raise BothZeroVectors("both h and g are zero vectors")
    if nh == 0.0 or ng == 0.0:
        return 0.0
    # rejection-based sine: exact at 0, unlike sqrt(1 - cos^2)
    resid = ch.g - ch.h * (np.vdot(ch.h, ch.g) / np.vdot(ch.h, ch.h).real)
    return min(float(np.linalg.norm(resid)) / ng, 1.0)


def rate_scale(ch: ChannelPair) -> float:
    """Factor applied to every reported rate: 1 (complex) or 1/2 (real)."""
    return 0.5 if ch.mode == MODE_REAL else 1.0


def _entry_to_complex(entry) -> complex:
    if isinstance(entry, (int, float)):
        return complex(entry)
    if isinstance(entry, (list, tuple)) and len(entry) == 2:
        return complex(float(entry[0]), float(entry[1]))
    raise ValueError(f"channel entry must be a number or [re, im], got {entry!r}")


def channel_from_dict(data: dict) -> ChannelPair:
    """Build a ChannelPair from the JSON channel schema.

    Schema: {"h": [[re, im], ...], "g": [[re, im], ...],
             "power": number, "mode": "complex"|"real"}.
    Real mode also accepts bare numbers for the entries.
    """
    if not isinstance(data, dict):
        raise ValueError("channel config must be a JSON object")
    missing = [k for k in ("h", "g", "power") if k not in data]
    if missing:
        raise ValueError(f"channel config missing keys: {', '.join(missing)}")
    mode = data.get("mode", MODE_COMPLEX)
    if mode not in (MODE_COMPLEX, MODE_REAL):
        raise ValueError(f"mode must be 'complex' or 'real', got {mode!r}")
    for key in ("h", "g"):
        if not isinstance(data[key], (list, tuple)) or len(data[key]) < 2:
            raise ValueError(f"'{key}' must be a list of at least 2 entries")
        if mode == MODE_COMPLEX:
            bad = [e for e in data[key] if isinstance(e, (int, float))]
            if bad:
                raise ValueError(
                    f"'{key}': complex mode requires [re, im] pairs, got {bad[0]!r}"
                )
    h = [_entry_to_complex(e) for e in data["h"]]
    g = [_entry_to_complex(e) for e in data["g"]]
    return ChannelPair(np.array(h), np.array(g), float(data["power"]), mode)


def channel_to_dict(ch: ChannelPair) -> dict:
    """Inverse of channel_from_dict."""
    return {
        "h": [[float(z.real), float(z.imag)] for z in ch.h],
        "g": [[float(z.real), float(z.imag)] for z in ch.g],
        "power": ch.power,
        "mode": ch.mode,
    }


def load_channel(path: str) -> ChannelPair:
    """Read a channel JSON file."""
    with open(path, "r", encoding="utf-8") as fh:
        return channel_from_dict(json.load(fh))
