"""Model parameters, interactions, and radial potentials.

The system is N particles on a line in a harmonic trap, with inverse-square
two-body and associated three-body interactions restricted to index
neighbors |i - j| <= r (the truncated Calogero-Sutherland family: r = 1 is
the nearest-neighbor variant, r = N-1 the full-range model).  The rational
extension adds a radial term v_new(rho) built from Laguerre polynomials at
negative argument; it vanishes identically at extension index m = 0 and
leaves the spectrum E_n = omega (2n + alpha + 1) unchanged for every m.

Units: hbar = mass = 1 throughout.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import AttractiveCouplingWarning, ValidationError
from .laguerre import _lag, _maybe_scalar

__all__ = [
    "ModelParams",
    "Configuration",
    "ExtConstants",
    "DerivedParams",
    "derived_params",
    "energy_level",
    "v_interaction",
    "v_new",
    "v_new_x1_two_term",
    "ext_constants",
    "v_eff_radial",
]

PARAM_JSON_KEYS = ("N", "lambda", "r", "omega", "s", "m")


@dataclass(frozen=True)
class ModelParams:
    """Physical parameters of the (extended) truncated model.

    n_particles  -- N >= 2
    coupling     -- lambda > 0; 0 < lambda < 1 gives an attractive two-body
                    term and is allowed with a warning
    trunc_range  -- r, interaction window in *index* distance, 1 <= r <= N-1
    omega        -- trap frequency > 0
    degree       -- s >= 0, degree of the homogeneous angular polynomial
                    entering only through tau
    ext_index    -- m >= 0, exceptional index of the rational extension
    """

    n_particles: int
    coupling: float
    trunc_range: int
    omega: float
    degree: int = 0
    ext_index: int = 0

    def __post_init__(self):
        if not isinstance(self.n_particles, (int, np.integer)) or self.n_particles < 2:
            raise ValidationError(f"n_particles (N) must be an integer >= 2, got {self.n_particles!r}")
        if not isinstance(self.trunc_range, (int, np.integer)):
            raise ValidationError(f"trunc_range (r) must be an integer, got {self.trunc_range!r}")
        if not 1 <= self.trunc_range <= self.n_particles - 1:
            raise ValidationError(
                f"trunc_range (r) must satisfy 1 <= r <= N-1 = {self.n_particles - 1}, got {self.trunc_range}")
        if not (np.isfinite(self.coupling) and self.coupling > 0):
            raise ValidationError(f"coupling (lambda) must be > 0, got {self.coupling!r}")
        if not (np.isfinite(self.omega) and self.omega > 0):
            raise ValidationError(f"omega must be > 0, got {self.omega!r}")
        if not isinstance(self.degree, (int, np.integer)) or self.degree < 0:
            raise ValidationError(f"degree (s) must be an integer >= 0, got {self.degree!r}")
        if not isinstance(self.ext_index, (int, np.integer)) or self.ext_index < 0:
            raise ValidationError(f"ext_index (m) must be an integer >= 0, got {self.ext_index!r}")
        if self.coupling < 1:
            warnings.warn(
                f"coupling = {self.coupling} is in (0, 1): the two-body interaction is attractive",
                AttractiveCouplingWarning, stacklevel=2)

    @property
    def tau(self) -> float:
        """Radial measure exponent: tau = N + 2s - 1 + lambda r (2N - r - 1)."""
        N, r = self.n_particles, self.trunc_range
        return N + 2 * self.degree - 1 + self.coupling * r * (2 * N - r - 1)

    @property
    def alpha(self) -> float:
        """Laguerre parameter alpha = (tau - 1)/2; > 0 for all valid params."""
        return (self.tau - 1) / 2

    @property
    def pair_count(self) -> int:
        """Number of interacting pairs, r(2N - r - 1)/2.

        N-1 at r = 1 (nearest-neighbor model), N(N-1)/2 at r = N-1 (full range).
        """
        N, r = self.n_particles, self.trunc_range
        return r * (2 * N - r - 1) // 2

    def to_json_dict(self) -> dict:
        return {
            "N": self.n_particles,
            "lambda": self.coupling,
            "r": self.trunc_range,
            "omega": self.omega,
            "s": self.degree,
            "m": self.ext_index,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "ModelParams":
        """Build from a JSON document with exactly the keys N, lambda, r, omega, s, m."""
        if not isinstance(data, dict):
            raise ValidationError(f"parameter document must be a JSON object, got {type(data).__name__}")
        unknown = sorted(set(data) - set(PARAM_JSON_KEYS))
        if unknown:
            raise ValidationError(f"unknown parameter keys: {', '.join(unknown)}")
        missing = sorted(set(PARAM_JSON_KEYS) - set(data))
        if missing:
            raise ValidationError(f"missing parameter keys: {', '.join(missing)}")
        for key in ("N", "r", "s", "m"):
            if not isinstance(data[key], int) or isinstance(data[key], bool):
                raise ValidationError(f"key {key!r} must be an integer, got {data[key]!r}")
        for key in ("lambda", "omega"):
            if not isinstance(data[key], (int, float)) or isinstance(data[key], bool):
                raise ValidationError(f"key {key!r} must be a number, got {data[key]!r}")
        return cls(
            n_particles=data["N"],
            coupling=float(data["lambda"]),
            trunc_range=data["r"],
            omega=float(data["omega"]),
            degree=data["s"],
            ext_index=data["m"],
        )


@dataclass(frozen=True)
class Configuration:
    """Ordered N-particle position vector.

    Positions must be strictly increasing with adjacent separations of at
    least min_separation, so every interaction term is finite and the
    positive-Jastrow ordered sector is well defined.
    """

    positions: tuple
    min_separation: float = 1e-3

    def __post_init__(self):
        pos = tuple(float(x) for x in self.positions)
        object.__setattr__(self, "positions", pos)
        if len(pos) < 2:
            raise ValidationError(f"positions must have at least 2 entries, got {len(pos)}")
        if not all(np.isfinite(pos)):
            raise ValidationError("positions must be finite")
        if not (np.isfinite(self.min_separation) and self.min_separation > 0):
            raise ValidationError(f"min_separation must be > 0, got {self.min_separation!r}")
        gaps = np.diff(pos)
        if np.any(gaps <= 0):
            i = int(np.argmax(gaps <= 0))
            raise ValidationError(
                f"positions must be strictly increasing: x[{i}]={pos[i]} >= x[{i + 1}]={pos[i + 1]}")
        if np.any(gaps < self.min_separation):
            i = int(np.argmax(gaps < self.min_separation))
            raise ValidationError(
                f"separation x[{i + 1}]-x[{i}] = {gaps[i]:.3e} below min_separation {self.min_separation:.3e}")

    @property
    def n(self) -> int:
        return len(self.positions)

    @property
    def hyperradius(self) -> float:
        """rho = sqrt(sum x_i^2), the collective radial coordinate."""
        return float(np.sqrt(np.sum(np.asarray(self.positions) ** 2)))


class DerivedParams(NamedTuple):
    tau: float
    alpha: float
    pair_count: int


def derived_params(p: ModelParams) -> DerivedParams:
    """tau, alpha, and the interacting-pair count for a parameter set."""
    return DerivedParams(p.tau, p.alpha, p.pair_count)


def energy_level(n, p: ModelParams) -> float:
    """E_n = omega (2n + alpha + 1); independent of the extension index m."""
    if not isinstance(n, (int, np.integer)) or n < 0:
        raise ValidationError(f"n must be an integer >= 0, got {n!r}")
    return p.omega * (2 * n + p.alpha + 1)


def v_interaction(c: Configuration, p: ModelParams) -> float:
    """Two- plus three-body interaction energy of a configuration.

    Two-body: lambda(lambda-1) / (x_i - x_j)^2 over pairs with |i-j| <= r.
    Three-body: lambda^2 (x_j - x_i)(x_j - x_k) / ((x_j - x_i)^2 (x_j - x_k)^2)
    over triples i < j < k whose gaps ``j-i`` and ``k-j`` are both within r
    while the outer pair is not (k - i > r).  The window matters: when
    k - i <= r the three center-choice terms of the triple cancel among
    themselves, so only these boundary triples survive.  This is exactly the
    combination canceled by the kinetic action on the pair-product prefactor,
    and it makes the full-range limit r = N-1 three-body free.
    """
    if c.n != p.n_particles:
        raise ValidationError(
            f"configuration has {c.n} positions but n_particles = {p.n_particles}")
    x = np.asarray(c.positions)
    lam, r = p.coupling, p.trunc_range
    two = 0.0
    for i in range(c.n):
        for j in range(i + 1, min(c.n, i + r + 1)):
            two += lam * (lam - 1) / (x[i] - x[j]) ** 2
    three = 0.0
    for j in range(1, c.n - 1):
        for i in range(max(0, j - r), j):
            for k in range(j + 1, min(c.n, j + r + 1)):
                if k - i > r:
                    three += lam ** 2 / ((x[j] - x[i]) * (x[j] - x[k]))
    return two + three


def v_new(rho, p: ModelParams):
    """Rational extension term of the radial potential, for g = omega rho^2:

        v_new = -2 w g L_{m-2}^(a+1)(-g)/D + 2 w (a + g - 1) L_{m-1}^(a)(-g)/D
                + 4 w g (L_{m-1}^(a)(-g)/D)^2 - 2 m w,      D = L_m^(a-1)(-g)

    with a = alpha, w = omega.  Identically zero at m = 0.  D > 0 on the whole
    domain, so the term is pole-free.  Accepts scalar or ndarray rho.
    """
    rho_a = np.asarray(rho, dtype=float)
    if not np.all(np.isfinite(rho_a)) or np.any(rho_a < 0):
        raise ValidationError("rho must be finite and >= 0")
    m, a, w = p.ext_index, p.alpha, p.omega
    if m == 0:
        return _maybe_scalar(np.zeros_like(rho_a), rho)
    g = w * rho_a ** 2
    den = _lag(m, a - 1, -g)
    ratio = _lag(m - 1, a, -g) / den
    val = (-2 * w * g * _lag(m - 2, a + 1, -g) / den
           + 2 * w * (a + g - 1) * ratio
           + 4 * w * g * ratio ** 2
           - 2 * m * w)
    return _maybe_scalar(val, rho)


def v_new_x1_two_term(rho, p: ModelParams):
    """Two-term closed form of the m = 1 extension,

        4 w / (2 g + tau - 1) - 8 w (tau - 1) / (2 g + tau - 1)^2,

    algebraically equal to v_new at m = 1; kept separate as an independent
    expression for cross-consistency checks.
    """
    if p.ext_index != 1:
        raise ValidationError(f"two-term form is defined for ext_index m = 1, got m = {p.ext_index}")
    rho_a = np.asarray(rho, dtype=float)
    if not np.all(np.isfinite(rho_a)) or np.any(rho_a < 0):
        raise ValidationError("rho must be finite and >= 0")
    w, tau = p.omega, p.tau
    den = 2 * w * rho_a ** 2 + tau - 1
    return _maybe_scalar(4 * w / den - 8 * w * (tau - 1) / den ** 2, rho)


@dataclass(frozen=True)
class ExtConstants:
    """Constants of the single-fraction form of the m = 1 extension,

        v_new(rho) = (alpha1 + alpha2 w^2 rho^2) / (beta1 + beta2 w^2 rho^2)^2.

    beta1 + beta2 w^2 rho^2 = 2 g + tau - 1 > 0 for all rho, so no pole.
    """

    alpha1: float
    alpha2: float
    beta1: float
    beta2: float

    def evaluate(self, rho, omega):
        rho_a = np.asarray(rho, dtype=float)
        w2r2 = omega ** 2 * rho_a ** 2
        val = (self.alpha1 + self.alpha2 * w2r2) / (self.beta1 + self.beta2 * w2r2) ** 2
        return _maybe_scalar(val, rho)


def ext_constants(p: ModelParams) -> ExtConstants:
    """Constants (alpha1, alpha2, beta1, beta2) = (-4 w (tau-1), 8, tau-1, 2/w).

    Defined only for the m = 1 rational form; other m use v_new directly.
    """
    if p.ext_index != 1:
        raise ValidationError(
            f"ext_constants applies to the m = 1 rational form only, got m = {p.ext_index}")
    w, tau = p.omega, p.tau
    return ExtConstants(alpha1=-4 * w * (tau - 1), alpha2=8.0, beta1=tau - 1, beta2=2 / w)


def v_eff_radial(rho, p: ModelParams, extended: bool):
    """Effective 1D potential for u(rho) = rho^(tau/2) Phi(rho):

        V_eff = w^2 rho^2 / 2 + (tau/2)(tau/2 - 1) / (2 rho^2) [+ v_new]

    so that -u''/2 + V_eff u = E u is equivalent to the radial equation
    Phi'' + (tau/rho) Phi' + 2 (E - V_ext) Phi = 0.
    """
    rho_a = np.asarray(rho, dtype=float)
    if not np.all(np.isfinite(rho_a)) or np.any(rho_a <= 0):
        raise ValidationError("rho must be finite and > 0 (centrifugal term has a pole at 0)")
    tau, w = p.tau, p.omega
    val = 0.5 * w ** 2 * rho_a ** 2 + (tau / 2) * (tau / 2 - 1) / (2 * rho_a ** 2)
    if extended:
        val = val + v_new(rho_a, p)
    return _maybe_scalar(val, rho)
