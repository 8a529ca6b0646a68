"""Direct N-body check: the local energy (H Psi)/Psi on explicit configurations.

For an exact eigenfunction the local energy is a constant equal to the
eigenvalue, independent of the configuration; any configuration dependence
beyond finite-difference noise falsifies either the wavefunction, the
interaction, or the extension term.  This drives the whole implementation
chain at once, which is why the Laplacian uses finite differences instead
of hand-derived gradients: nothing is trusted twice.

Everything works in the ordered sector x_1 < ... < x_N, where the
pair-product prefactor is positive and single-valued for non-integer
coupling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .model import Configuration, ModelParams, energy_level, v_interaction, v_new
from .wavefunctions import manybody_groundstate

__all__ = [
    "local_energy",
    "sample_configurations",
    "ConstancyStats",
    "constancy_scan",
]


def _psi(x, p):
    return manybody_groundstate(Configuration(tuple(x), min_separation=1e-12), p)


def local_energy(c: Configuration, p: ModelParams, fd_step: float = 1e-3,
                 v_new_scale: float = 1.0,
                 wavefunction_params: ModelParams | None = None) -> float:
    """(H Psi)/Psi at a configuration, with the ground-state Psi.

    The kinetic term is a fourth-order central second difference per
    coordinate with step fd_step; adjacent separations must be at least
    10 * fd_step so no stencil point crosses the ordered-sector boundary.

    wavefunction_params evaluates Psi with different parameters than the
    Hamiltonian (negative control: a perturbed Psi is not an eigenfunction);
    v_new_scale multiplies the extension term of H only.
    """
    if p.degree != 0:
        raise ValidationError(f"local energy implemented for degree s = 0 only, got s = {p.degree}")
    if c.n != p.n_particles:
        raise ValidationError(f"configuration has {c.n} positions but n_particles = {p.n_particles}")
    if not (np.isfinite(fd_step) and fd_step > 0):
        raise ValidationError(f"fd_step must be > 0, got {fd_step!r}")
    x = np.asarray(c.positions)
    gaps = np.diff(x)
    if np.any(gaps < 10 * fd_step):
        i = int(np.argmax(gaps < 10 * fd_step))
        raise ValidationError(
            f"separation x[{i + 1}]-x[{i}] = {gaps[i]:.3e} below 10 fd_step = {10 * fd_step:.3e}; "
            "the FD stencil would cross the ordered-sector boundary")
    wp = p if wavefunction_params is None else wavefunction_params
    if wp.degree != 0:
        raise ValidationError("wavefunction_params must have degree s = 0")

    psi0 = _psi(x, wp)
    kinetic = 0.0
    for i in range(c.n):
        shifted = []
        for d in (-2, -1, 1, 2):
            xs = x.copy()
            xs[i] += d * fd_step
            shifted.append(_psi(xs, wp))
        second = (-shifted[3] + 16 * shifted[2] - 30 * psi0 + 16 * shifted[1]
                  - shifted[0]) / (12 * fd_step ** 2)
        kinetic += -0.5 * second / psi0

    trap = 0.5 * p.omega ** 2 * float(np.sum(x ** 2))
    extension = v_new_scale * float(v_new(c.hyperradius, p))
    return kinetic + trap + v_interaction(c, p) + extension


def sample_configurations(p: ModelParams, n_samples: int, seed: int,
                          fd_step: float = 1e-3, spacing: float = 1.0,
                          width: float = 0.8):
    """Ordered configurations from a product of disjoint uniform windows.

    Window i is centered at (i - (N-1)/2) * spacing/sqrt(omega) with width
    width/sqrt(omega); spacing > width keeps the windows disjoint, so draws
    are ordered by construction.  Draws violating the 10*fd_step separation
    rule are rejected and redrawn (up to 100x oversampling).
    """
    if n_samples < 1:
        raise ValidationError(f"n_samples must be >= 1, got {n_samples}")
    if not width < spacing:
        raise ValidationError(f"width ({width}) must be smaller than spacing ({spacing})")
    rng = np.random.default_rng(seed)
    scale = 1.0 / math.sqrt(p.omega)
    centers = (np.arange(p.n_particles) - (p.n_particles - 1) / 2) * spacing * scale
    half = width * scale / 2
    out = []
    attempts = 0
    while len(out) < n_samples:
        attempts += 1
        if attempts > 100 * n_samples:
            raise ValidationError(
                f"could not draw {n_samples} valid configurations in {attempts} attempts; "
                "widen the windows or reduce fd_step")
        x = centers + rng.uniform(-half, half, p.n_particles)
        if np.min(np.diff(x)) < 10 * fd_step:
            continue
        out.append(Configuration(tuple(x), min_separation=10 * fd_step))
    return out


@dataclass(frozen=True)
class ConstancyStats:
    """Summary of a local-energy scan over sampled configurations."""

    params: ModelParams
    n_samples: int
    seed: int
    mean: float
    stddev: float
    max_dev: float
    e_analytic: float

    @property
    def relative_spread(self) -> float:
        return self.stddev / abs(self.mean)

    @property
    def relative_mean_error(self) -> float:
        return abs(self.mean - self.e_analytic) / abs(self.e_analytic)

    def passed(self, tol: float = 1e-5) -> bool:
        return self.relative_spread <= tol and self.relative_mean_error <= tol

    def to_json_dict(self):
        return {
            "params": self.params.to_json_dict(),
            "n_samples": self.n_samples,
            "seed": self.seed,
            "mean": self.mean,
            "stddev": self.stddev,
            "max_dev": self.max_dev,
            "E_analytic": self.e_analytic,
            "pass": self.passed(),
        }


def constancy_scan(p: ModelParams, n_samples: int = 200, seed: int = 1,
                   fd_step: float = 1e-3, v_new_scale: float = 1.0,
                   wavefunction_params: ModelParams | None = None) -> ConstancyStats:
    """Local-energy statistics over seeded configurations.

    Accumulation uses compensated summation over the fixed sample list, so
    the result is independent of evaluation order; deterministic for a
    fixed seed.
    """
    configs = sample_configurations(p, n_samples, seed, fd_step)
    energies = [local_energy(c, p, fd_step, v_new_scale, wavefunction_params)
                for c in configs]
    mean = math.fsum(energies) / n_samples
    var = math.fsum((e - mean) ** 2 for e in energies) / n_samples
    max_dev = max(abs(e - mean) for e in energies)
    return ConstancyStats(
        params=p, n_samples=n_samples, seed=seed, mean=mean,
        stddev=math.sqrt(var), max_dev=max_dev, e_analytic=energy_level(0, p))
