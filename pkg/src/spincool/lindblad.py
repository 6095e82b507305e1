"""Density-matrix propagation under a Lindblad master equation.

The generator is time independent here, so the default propagation method
is exact: the master equation is vectorized, the superoperator is
exponentiated once per distinct grid step (scaling-and-squaring), and
snapshots are produced by repeated application.  This is deterministic,
step-size independent, and orders of magnitude faster than resolving the
GHz-scale detuning oscillations with an explicit stepper.  An adaptive
Runge-Kutta path (scipy) is kept as an independent cross-check and for
time-dependent extensions.

Sign convention of the master equation:

    drho/dt = i (rho H - H rho) + sum_k [2 c_k rho c_k+ - c_k+ c_k rho - rho c_k+ c_k] / 2

with H in rad/us and collapse amplitudes in sqrt(rad/us).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm

from .srmodel import CollapseOp

__all__ = [
    "DensityMatrixError",
    "IntegrationError",
    "IntegratorConfig",
    "Trajectory",
    "HERMITICITY_TOL",
    "TRACE_TOL",
    "POSITIVITY_TOL",
    "pure_density",
    "check_density_matrix",
    "liouvillian_apply",
    "liouvillian_matrix",
    "evolve",
    "population",
]

HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-9
POSITIVITY_TOL = 1e-8


class DensityMatrixError(ValueError):
    """A matrix violates the density-matrix invariants."""


class IntegrationError(RuntimeError):
    """Propagation failed or produced an invalid state."""


def pure_density(psi: np.ndarray) -> np.ndarray:
    """|psi><psi| for a normalized state vector."""
    psi = np.asarray(psi, dtype=complex)
    n = np.linalg.norm(psi)
    if n == 0:
        raise DensityMatrixError("zero state vector")
    psi = psi / n
    return np.outer(psi, psi.conj())


def check_density_matrix(rho: np.ndarray, *, herm_tol: float = HERMITICITY_TOL,
                         trace_tol: float = TRACE_TOL,
                         positivity_tol: float = POSITIVITY_TOL,
                         where: str = "") -> None:
    """Raise DensityMatrixError unless rho is Hermitian, unit trace, positive."""
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise DensityMatrixError(f"not square: shape {rho.shape}")
    herm = np.abs(rho - rho.conj().T).max()
    if herm > herm_tol:
        raise DensityMatrixError(f"hermiticity violation {herm:.3e} > {herm_tol:.0e}{where}")
    tr = abs(np.trace(rho) - 1.0)
    if tr > trace_tol:
        raise DensityMatrixError(f"trace deviation {tr:.3e} > {trace_tol:.0e}{where}")
    min_eig = float(np.linalg.eigvalsh((rho + rho.conj().T) / 2).min())
    if min_eig < -positivity_tol:
        raise DensityMatrixError(f"negative eigenvalue {min_eig:.3e}{where}")


@dataclass(frozen=True)
class IntegratorConfig:
    """Propagation settings.

    method "expm" (default) uses exact superoperator exponentiation;
    "dop853" and "rk45" integrate the vectorized equation adaptively with
    rel_tol/abs_tol/max_step.  max_step (us) also caps the expm substep.
    """

    rel_tol: float = 1e-8
    abs_tol: float = 1e-10
    max_step: float = np.inf
    method: str = "expm"

    def __post_init__(self):
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_step <= 0:
            raise ValueError("max_step must be positive")
        if self.method not in ("expm", "dop853", "rk45"):
            raise ValueError(f"unknown method {self.method!r}")


@dataclass
class Trajectory:
    """Sampled observables of one propagation run.

    times are strictly increasing (us); observables maps a series name to a
    real array over times; states optionally stores the density matrix at
    each sample.
    """

    times: np.ndarray
    observables: dict[str, np.ndarray] = field(default_factory=dict)
    states: list[np.ndarray] | None = None

    def add_population_series(self, name: str, values: np.ndarray) -> None:
        values = np.asarray(values, dtype=float)
        if values.min() < -1e-8 or values.max() > 1 + 1e-8:
            raise ValueError(f"series {name!r} outside [0, 1]: "
                             f"range [{values.min():.3e}, {values.max():.3e}]")
        self.observables[name] = values


def _as_matrices(cs: list[CollapseOp] | list[np.ndarray], dim: int) -> list[np.ndarray]:
    out = []
    for c in cs:
        m = c.matrix(dim) if isinstance(c, CollapseOp) else np.asarray(c)
        if m.shape != (dim, dim):
            raise DensityMatrixError(f"collapse operator shape {m.shape} != ({dim}, {dim})")
        out.append(m.astype(complex))
    return out


def liouvillian_apply(H: np.ndarray, cs: list, rho: np.ndarray) -> np.ndarray:
    """Right-hand side drho/dt for Hamiltonian H (rad/us) and collapse operators cs."""
    H = np.asarray(H)
    rho = np.asarray(rho, dtype=complex)
    if H.shape != rho.shape or rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise DensityMatrixError(f"dimension mismatch: H {H.shape}, rho {rho.shape}")
    out = 1j * (rho @ H - H @ rho)
    for c in _as_matrices(cs, rho.shape[0]):
        cd = c.conj().T
        cdc = cd @ c
        out += c @ rho @ cd - 0.5 * (cdc @ rho + rho @ cdc)
    return out


def liouvillian_matrix(H: np.ndarray, cs: list) -> np.ndarray:
    """Superoperator L with vec(drho/dt) = L vec(rho), row-major vectorization."""
    H = np.asarray(H, dtype=complex)
    n = H.shape[0]
    eye = np.eye(n)
    # vec(A rho B) = (A kron B^T) vec(rho) for row-major vec
    L = 1j * (np.kron(eye, H.T) - np.kron(H, eye))
    for c in _as_matrices(cs, n):
        cd = c.conj().T
        cdc = cd @ c
        L += np.kron(c, cd.T) - 0.5 * (np.kron(cdc, eye) + np.kron(eye, cdc.T))
    return L


def _propagate_expm(L: np.ndarray, rho0: np.ndarray, t_grid: np.ndarray,
                    max_step: float) -> list[np.ndarray]:
    n = rho0.shape[0]
    vec = rho0.reshape(-1)
    cache: dict[float, np.ndarray] = {}

    def propagator(dt: float) -> np.ndarray:
        key = round(dt, 12)
        if key not in cache:
            cache[key] = expm(L * dt)
        return cache[key]

    states = []
    t_prev = 0.0
    for t in t_grid:
        span = t - t_prev
        if span > 0:
            nsub = max(1, int(np.ceil(span / max_step))) if np.isfinite(max_step) else 1
            sub = span / nsub
            P = propagator(sub)
            for _ in range(nsub):
                vec = P @ vec
        states.append(vec.reshape(n, n).copy())
        t_prev = t
    return states


def _propagate_scipy(L: np.ndarray, rho0: np.ndarray, t_grid: np.ndarray,
                     cfg: IntegratorConfig) -> list[np.ndarray]:
    from scipy.integrate import solve_ivp

    n = rho0.shape[0]
    method = {"dop853": "DOP853", "rk45": "RK45"}[cfg.method]
    t_eval = np.asarray(t_grid, dtype=float)
    span = (0.0, float(t_eval[-1]))
    # a diverging run overflows before the stepper gives up; the failure is
    # reported below, so the intermediate warnings are just noise
    with np.errstate(over="ignore", invalid="ignore"):
        sol = solve_ivp(lambda t, y: L @ y, span, rho0.reshape(-1), method=method,
                        t_eval=t_eval, rtol=cfg.rel_tol, atol=cfg.abs_tol,
                        max_step=cfg.max_step)
    if not sol.success:
        raise IntegrationError(f"adaptive integration failed: {sol.message}")
    return [sol.y[:, k].reshape(n, n) for k in range(sol.y.shape[1])]


def evolve(rho0: np.ndarray, H: np.ndarray, cs: list, t_grid,
           cfg: IntegratorConfig | None = None) -> Trajectory:
    """Propagate rho0 over t_grid (us, strictly increasing, from t=0).

    Snapshots are re-symmetrized (rho+rho+)/2 at sample points and checked
    against the density-matrix invariants; a violation beyond 10x tolerance
    aborts with diagnostics.  Output is deterministic for a fixed config.
    """
    cfg = cfg or IntegratorConfig()
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.ndim != 1 or len(t_grid) == 0:
        raise ValueError("t_grid must be a non-empty 1-d sequence")
    if np.any(np.diff(t_grid) <= 0) or t_grid[0] < 0:
        raise ValueError("t_grid must be strictly increasing and non-negative")
    rho0 = np.asarray(rho0, dtype=complex)
    check_density_matrix(rho0, where=" (initial state)")

    L = liouvillian_matrix(H, cs)
    if cfg.method == "expm":
        raw = _propagate_expm(L, rho0, t_grid, cfg.max_step)
    else:
        raw = _propagate_scipy(L, rho0, t_grid, cfg)

    states = []
    for t, rho in zip(t_grid, raw):
        rho = (rho + rho.conj().T) / 2
        try:
            check_density_matrix(rho, herm_tol=10 * HERMITICITY_TOL,
                                 trace_tol=10 * TRACE_TOL,
                                 positivity_tol=10 * POSITIVITY_TOL,
                                 where=f" at t={t:g} us")
        except DensityMatrixError as exc:
            raise IntegrationError(f"state invariants violated: {exc}") from exc
        states.append(rho)
    return Trajectory(times=t_grid, states=states)


def population(rho: np.ndarray, psi: np.ndarray) -> float:
    """<psi|rho|psi> as a real population, clipped to [0, 1] for reporting."""
    psi = np.asarray(psi, dtype=complex)
    val = float(np.real(psi.conj() @ np.asarray(rho) @ psi))
    return min(max(val, 0.0), 1.0)
