"""Local operations, kinematic geometric phase, coupling regions and Weyl transport.

Qudit 1 is operated by ``H_S = w . T`` for a fundamental weight ``w``; qudit 2
is left free (operating on it instead amounts to a transpose and is not
provided).
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field

import numpy as np

from .cartan import CartanBasis, RootVector, sector_reflection, weyl_map_weights, weyl_reflect
from .dephasing import decay_rates
from .errors import IndeterminatePatternError, UndefinedPhaseError
from .spectral import SpectralTrack

VISIBILITY_TOL = 1e-12
REAL_TOL = 1e-12
PERIOD = 2 * np.pi


@dataclass(frozen=True)
class OperationSpec:
    """Operation on qudit 1 by the fundamental weight ``w_weight_index``."""

    weight_index: int

    def weight(self, basis: CartanBasis) -> np.ndarray:
        return basis.weight(self.weight_index)

    def energies(self, basis: CartanBasis) -> np.ndarray:
        """Diagonal of ``H_S = w . T``."""
        return np.diag(basis.hamiltonian(self.weight(basis)))

    def hamiltonian(self, basis: CartanBasis) -> np.ndarray:
        return basis.hamiltonian(self.weight(basis))


def free_unitary(op: OperationSpec, basis: CartanBasis, t: float) -> np.ndarray:
    """``exp(-i t w.T)``, evaluated on the diagonal."""
    return np.diag(np.exp(-1j * t * op.energies(basis)))


def _wrap(x):
    return (np.asarray(x) + np.pi) % (2 * np.pi) - np.pi


def _trapezoid_cumulative(y, t):
    out = np.zeros(len(t), dtype=np.result_type(y, float))
    out[1:] = np.cumsum(0.5 * (y[1:] + y[:-1]) * np.diff(t))
    return out


def _gradient(y, t):
    # central differences inside, one-sided at the ends
    return np.gradient(y, t, axis=0, edge_order=1)


@dataclass(frozen=True, eq=False)
class GeometricPhaseSeries:
    """Phase along the grid.  ``defined[i]`` is False at visibility nodes."""

    t: np.ndarray
    unwrapped: np.ndarray = field(repr=False)
    principal: np.ndarray = field(repr=False)
    defined: np.ndarray = field(repr=False)
    visibility: np.ndarray = field(repr=False)

    def at(self, t: float) -> float:
        i = _grid_index(self.t, t)
        if not self.defined[i]:
            raise UndefinedPhaseError(f"phase undefined at t={t}: vanishing overlap", t)
        return float(self.unwrapped[i])


def _grid_index(grid, t) -> int:
    i = int(np.argmin(np.abs(grid - t)))
    if not np.isclose(grid[i], t, rtol=0, atol=1e-9 * max(1.0, abs(t))):
        raise ValueError(f"t={t} is not on the time grid")
    return i


def geometric_phase_series(track: SpectralTrack, op: OperationSpec, basis: CartanBasis) -> GeometricPhaseSeries:
    """Geometric phase of the effective state at every grid time.

    ``arg Tr[Psi'(0)^+ U_S(t) Psi'(t)] + int <H_S> ds`` plus, for complex
    amplitudes, the connection term ``i int <Psi'|dPsi'/ds> ds``.
    Integrals use the composite trapezoid rule on the grid; the arg is
    unwrapped by accumulating principal increments between defined points.
    """
    t = track.t_grid
    u = track.effective
    h = op.energies(basis)
    psi = u @ basis.diagonals  # diagonal of Psi'(t), shape (N, d)
    overlap = np.sum(psi[0].conj()[None, :] * np.exp(-1j * t[:, None] * h[None, :]) * psi, axis=1)
    vis = np.abs(overlap)
    defined = vis >= VISIBILITY_TOL
    arg = np.angle(overlap)

    unwrapped_arg = np.zeros_like(arg)
    last = None
    for i in range(len(t)):
        if not defined[i]:
            unwrapped_arg[i] = np.nan
            continue
        unwrapped_arg[i] = arg[i] if last is None else unwrapped_arg[last] + _wrap(arg[i] - arg[last])
        last = i

    dyn = _trapezoid_cumulative(np.sum(h[None, :] * np.abs(psi) ** 2, axis=1), t)
    phase = unwrapped_arg + dyn
    if np.max(np.abs(u.imag)) >= REAL_TOL:
        conn = np.einsum("ij,ij->i", u.conj(), _gradient(u, t))
        phase = phase - _trapezoid_cumulative(conn.imag, t)
    phase = np.where(defined, phase, np.nan)
    return GeometricPhaseSeries(t, phase, np.where(defined, _wrap(phase), np.nan), defined, vis)


def geometric_phase_pure(track: SpectralTrack, op: OperationSpec, basis: CartanBasis, t: float) -> float:
    """Unwrapped geometric phase of the effective state at grid time ``t``."""
    return geometric_phase_series(track, op, basis).at(t)


def geometric_phase_mixed(track: SpectralTrack, op: OperationSpec, basis: CartanBasis, tau: float) -> float:
    """Kinematic phase of the whole mixture at ``tau`` (principal value).

    ``arg sum_k sqrt(eps_k(0) eps_k(tau)) <Psi_k(0)|Psi_k(tau)> exp(-int <Psi_k|dPsi_k>)``
    with ``Psi_k = U_S Psi'_k``.  The parallel-transport factor splits into
    ``exp(i int <H_S>_k)`` and the discrete product of consecutive overlaps
    of ``Psi'_k``, which is exactly invariant under re-phasing of the branch.
    """
    i_tau = _grid_index(track.t_grid, tau)
    t = track.t_grid[: i_tau + 1]
    h = op.energies(basis)
    U_tau = np.exp(-1j * t[-1] * h)
    eps = np.clip(track.eigenvalues, 0.0, None)
    total = 0.0 + 0.0j
    for k in range(track.d):
        u = track.eigenvectors[: i_tau + 1, :, k]
        w = np.sqrt(eps[0, k] * eps[i_tau, k])
        if w == 0.0:
            continue
        psi = u @ basis.diagonals
        ovl = np.sum(psi[0].conj() * U_tau * psi[-1])
        dyn = _trapezoid_cumulative(np.sum(h[None, :] * np.abs(psi) ** 2, axis=1), t)[-1]
        steps = np.einsum("ij,ij->i", u[:-1].conj(), u[1:])
        transport = np.prod(steps / np.abs(steps)).conj() if steps.size else 1.0
        total += w * ovl * np.exp(1j * dyn) * transport
    if abs(total) < VISIBILITY_TOL:
        raise UndefinedPhaseError(f"mixed-state phase undefined at tau={tau}", tau)
    return float(np.angle(total))


def phase_difference(a: float, b: float) -> float:
    """Smallest signed difference ``a - b`` modulo 2 pi."""
    return float(_wrap(a - b))


# --- jump heights -----------------------------------------------------------


def _interp_defined(series: GeometricPhaseSeries, t: float) -> float:
    m = series.defined
    return float(np.interp(t, series.t[m], series.unwrapped[m]))


def jump_heights(series: GeometricPhaseSeries, period: float = PERIOD) -> np.ndarray:
    """Phase increment across each full period window centered on ``(2k+1) period/2``.

    The window edges sit at multiples of the period, away from the
    visibility nodes where the staircase steps.
    """
    n = int(np.floor(series.t[-1] / period + 1e-9))
    edges = [_interp_defined(series, k * period) for k in range(n + 1)]
    return np.diff(edges)


def pattern_from_phase(series: GeometricPhaseSeries, period: float = PERIOD) -> str:
    """'a' if the last full period still steps by roughly pi or more, else 'b'."""
    last = jump_heights(series, period)[-1]
    return "a" if abs(last) > np.pi / 2 else "b"


# --- coupling regions -------------------------------------------------------

REGIONS = ("A", "B", "C")


@dataclass(frozen=True)
class RegionLabel:
    dominant: str | None
    rates: tuple
    weight_label: int | None
    ties: tuple = ()
    label_source: str = ""

    @property
    def boundary(self) -> bool:
        return self.dominant is None


def _dominant(rates, rtol=1e-12):
    lo = min(rates)
    tied = tuple(name for name, r in zip(REGIONS, rates) if abs(r - lo) <= rtol * max(1.0, lo))
    return (tied[0], ()) if len(tied) == 1 else (None, tied)


def region_weight_map(basis: CartanBasis) -> dict[str, int]:
    """Region name -> label of the fundamental weight lying inside it."""
    out = {}
    for i in range(1, basis.d + 1):
        name, _ = _dominant(decay_rates(basis.weight(i)))
        out[name] = i
    return out


def classify_region(zeta, basis: CartanBasis | None = None) -> RegionLabel:
    """Dominant (smallest) decay rate among A, B, C for SU(3) couplings."""
    from .cartan import build_cartan_basis

    if np.allclose(zeta, 0.0, atol=0, rtol=0):
        raise ValueError("zero coupling has no region")
    basis = basis or build_cartan_basis(3)
    rates = tuple(float(r) for r in decay_rates(zeta))
    name, ties = _dominant(rates)
    label = region_weight_map(basis)[name] if name else None
    # A and C are fixed by the two reference couplings; B follows by elimination
    source = {"A": "anchored", "C": "anchored", "B": "inferred"}.get(name, "boundary")
    return RegionLabel(name, rates, label, ties, source)


def pattern_type(region: RegionLabel, op: OperationSpec) -> str:
    """'b' (pattern destroyed) when the operating weight labels the region, else 'a'."""
    if region.boundary:
        raise IndeterminatePatternError(f"coupling on a region boundary (tied rates {region.ties})")
    return "b" if op.weight_index == region.weight_label else "a"


# --- Weyl transport ---------------------------------------------------------


def weyl_transport_scenario(scenario, alpha: RootVector):
    """Reflect couplings and initial q-sector, and permute the operating weight.

    Works on any dataclass with ``zetas``, ``weight_index`` and ``amplitudes``
    fields (see :class:`~qudit_dephasing.scenario.Scenario`).
    """
    d = scenario.d
    if d != 3:
        raise ValueError("Weyl transport is implemented for d=3 scenarios")
    if len(alpha.components) != d - 1 or np.linalg.norm(alpha.components) == 0:
        from .errors import InvalidRootError

        raise InvalidRootError("root does not belong to SU(3)")
    zetas = tuple(tuple(float(x) for x in weyl_reflect(z, alpha)) for z in scenario.zetas)
    perm = weyl_map_weights(alpha, d)
    amps = np.asarray(scenario.initial_state().a)
    new_amps = sector_reflection(alpha, d) @ amps
    changes = dict(zetas=zetas, weight_index=perm[scenario.weight_index - 1])
    if not np.allclose(new_amps, amps, atol=1e-15, rtol=0):
        changes.update(amplitudes=tuple(complex(x) for x in new_amps), a0=None)
    return dataclasses.replace(scenario, **changes)
