"""Continuous tracking of the spectrum of rho(t) and derived observables.

Branch 0 of a :class:`SpectralTrack` is always the effective state: the
eigenvector that equals the initial pure state at t=0 (eigenvalue 1).  The
remaining branches start in the degenerate null space of the initial state;
their initial basis is fixed by looking ahead to the first grid point where
the degeneracy is lifted.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.signal import find_peaks

from .cartan import CartanBasis
from .dephasing import ReducedDensity
from .errors import DegeneracyWarning, InsufficientHorizonError
from .state import DiagonalState

DEGENERACY_TOL = 1e-9
AMBIGUITY_TOL = 1e-6
KINK_PROMINENCE = 1e-3


@dataclass(frozen=True, eq=False)
class SpectralTrack:
    """Eigenvalues ``(N, d)`` and eigenvectors ``(N, d, d)``; column k is branch k."""

    t_grid: np.ndarray
    eigenvalues: np.ndarray = field(repr=False)
    eigenvectors: np.ndarray = field(repr=False)
    effective_index: int = 0
    degenerate_steps: tuple = ()

    @property
    def effective(self) -> np.ndarray:
        return self.eigenvectors[:, :, self.effective_index]

    @property
    def epsilon(self) -> np.ndarray:
        return self.eigenvalues[:, self.effective_index]

    def branch(self, k: int) -> np.ndarray:
        return self.eigenvectors[:, :, k]

    @property
    def d(self) -> int:
        return self.eigenvalues.shape[1]


@dataclass(frozen=True)
class KinkReport:
    t_peak: float | None = None
    t_min_gap: float | None = None
    gap_min: float | None = None
    C_peak: float | None = None
    separation_steps: int | None = None

    @property
    def empty(self) -> bool:
        return self.t_peak is None


@dataclass(frozen=True, eq=False)
class AsymptoticState:
    state: DiagonalState
    max_deviation: float


def _polar_unitary(M: np.ndarray) -> np.ndarray:
    u, _, vh = np.linalg.svd(M)
    return u @ vh


def _clusters(w: np.ndarray, tol: float) -> list[list[int]]:
    order = np.argsort(w)
    groups, cur = [], [order[0]]
    for a, b in zip(order[:-1], order[1:]):
        if w[b] - w[a] <= tol:
            cur.append(b)
        else:
            groups.append(cur)
            cur = [b]
    groups.append(cur)
    return [sorted(g) for g in groups if len(g) > 1]


def _align_clusters(w, W, V_ref, tol):
    """Rotate each degenerate block of ``W`` towards the reference vectors."""
    W = W.astype(complex)
    for c in _clusters(w, tol):
        Wc = W[:, c]
        proj = Wc.conj().T @ V_ref  # (|c|, d)
        best = np.argsort(-np.linalg.norm(proj, axis=0))[: len(c)]
        best = np.sort(best)
        W[:, c] = Wc @ _polar_unitary(proj[:, best])
    return W


def _eigh(rho: np.ndarray):
    return np.linalg.eigh(0.5 * (rho + rho.conj().T))


def _derivative_weights(t: np.ndarray) -> np.ndarray:
    """Finite-difference weights for d/dt at ``t[0]`` from the nodes ``t``."""
    n = t.size
    h = t - t[0]
    V = np.vander(h / h[-1], n, increasing=True).T
    e = np.zeros(n)
    e[1] = 1.0
    return np.linalg.solve(V, e) / h[-1]


def _initial_frame(rho_head, t_head, a, degeneracy_tol=DEGENERACY_TOL):
    """Branch basis at t=0: ``a`` first, then the t -> 0+ limits of the other eigenvectors.

    In the null space of the pure initial state the eigenvectors of rho(t)
    tend to those of the projected derivative ``P rho'(0) P``, estimated with
    a one-sided difference over the first few grid points.  Branches are
    ordered by descending eigenvalue and phased against the next grid point.
    """
    d = a.size
    u = a / np.linalg.norm(a)
    q, _ = np.linalg.qr(np.column_stack([u, np.eye(d, dtype=complex)]))
    comp = q[:, 1:d]
    if len(rho_head) > 1:
        wts = _derivative_weights(np.asarray(t_head, float))
        drho = np.tensordot(wts, np.asarray(rho_head), axes=1)
        w, v = np.linalg.eigh(comp.conj().T @ (0.5 * (drho + drho.conj().T)) @ comp)
        order = np.argsort(-w)
        comp = comp @ v[:, order]
        w = w[order]
        # directions the derivative leaves degenerate follow the next grid point
        w1, V1 = _eigh(rho_head[1])
        scale = max(1.0, float(np.max(np.abs(w))))
        for c in _clusters(w, degeneracy_tol * scale):
            blk = comp[:, c]
            proj = blk.conj().T @ V1
            picked = np.argsort(-np.linalg.norm(proj, axis=0))[: len(c)]
            picked = picked[np.argsort(-w1[picked])]
            comp[:, c] = blk @ _polar_unitary(proj[:, picked])
    V = np.column_stack([u, comp])
    eps = np.array([np.real(np.vdot(V[:, k], rho_head[0] @ V[:, k])) for k in range(d)])
    return eps, V


def track_spectrum(
    trajectory: list[ReducedDensity],
    a0: DiagonalState,
    degeneracy_tol: float = DEGENERACY_TOL,
    ambiguity_tol: float = AMBIGUITY_TOL,
) -> SpectralTrack:
    """Follow every eigenbranch of ``rho(t)`` by maximum overlap with the previous step.

    Phases are fixed so consecutive overlaps are real and positive.  Within an
    exactly degenerate block the previous vectors are projected onto the block.
    Where two overlaps tie (within ``ambiguity_tol``) a :class:`DegeneracyWarning`
    is emitted and the assignment falls back on eigenvalue-slope continuity.
    """
    rhos = [r.rho for r in trajectory]
    t_grid = np.array([r.t for r in trajectory], dtype=float)
    n, d = len(rhos), rhos[0].shape[0]
    a = np.asarray(a0.a, dtype=complex)
    if a.size != d:
        raise ValueError("initial state dimension does not match trajectory")

    eigvals = np.empty((n, d))
    eigvecs = np.empty((n, d, d), dtype=complex)
    eps, V = _initial_frame(rhos[:4], t_grid[:4], a, degeneracy_tol)
    eigvals[0], eigvecs[0] = eps, V
    flagged = []

    for i in range(1, n):
        w, W = _eigh(rhos[i])
        W = _align_clusters(w, W, V, degeneracy_tol)
        overlap = np.abs(V.conj().T @ W)  # rows: branches, cols: new vectors
        srt = np.sort(overlap, axis=1)
        ambiguous = (srt[:, -1] - srt[:, -2] < ambiguity_tol) & (srt[:, -1] > ambiguity_tol)
        if np.any(ambiguous):
            flagged.append(i)
            warnings.warn(
                DegeneracyWarning(f"ambiguous branch matching at step {i} (t={t_grid[i]:.6g})", i),
                stacklevel=2,
            )
            prev = eigvals[i - 1]
            pred = 2 * prev - eigvals[i - 2] if i >= 2 else prev
            cost = np.abs(pred[:, None] - w[None, :]) - overlap * (~ambiguous)[:, None]
            rows, cols = linear_sum_assignment(cost)
        else:
            rows, cols = linear_sum_assignment(-overlap)
        W = W[:, cols[np.argsort(rows)]]
        w = w[cols[np.argsort(rows)]]
        ph = np.einsum("ik,ik->k", V.conj(), W)
        mag = np.abs(ph)
        W = W * np.where(mag > 0, ph.conj() / np.where(mag > 0, mag, 1), 1.0)
        eigvals[i], eigvecs[i] = w, W
        V = W

    return SpectralTrack(t_grid, eigvals, eigvecs, 0, tuple(flagged))


def concurrence_of_vectors(U: np.ndarray, basis: CartanBasis) -> np.ndarray:
    """I-concurrence of each row of ``U`` (amplitudes) mapped to its state matrix."""
    psi_diag = np.atleast_2d(U) @ basis.diagonals  # Psi is diagonal: entries sum_a u_a T_a[ii]
    i2 = np.sum(np.abs(psi_diag) ** 4, axis=1)
    return np.sqrt(np.clip(2.0 * (1.0 - i2), 0.0, None))


def effective_concurrence_series(track: SpectralTrack, basis: CartanBasis) -> np.ndarray:
    return concurrence_of_vectors(track.effective, basis)


def branch_concurrence_series(track: SpectralTrack, basis: CartanBasis) -> np.ndarray:
    """(N, d) concurrences of every tracked branch."""
    return np.column_stack(
        [concurrence_of_vectors(track.branch(k), basis) for k in range(track.d)]
    )


def purity_series(source) -> np.ndarray:
    """``sum_k eps_k^2`` from a :class:`SpectralTrack` or a trajectory."""
    if isinstance(source, SpectralTrack):
        return np.sum(source.eigenvalues**2, axis=1)
    return np.array([np.sum(np.linalg.eigvalsh(0.5 * (r.rho + r.rho.conj().T)) ** 2) for r in source])


def effective_gap_series(track: SpectralTrack) -> np.ndarray:
    """Distance from the effective eigenvalue to the nearest other eigenvalue."""
    eps = track.epsilon[:, None]
    others = np.delete(track.eigenvalues, track.effective_index, axis=1)
    return np.min(np.abs(eps - others), axis=1)


def detect_kink(
    track: SpectralTrack,
    basis: CartanBasis,
    prominence: float = KINK_PROMINENCE,
) -> KinkReport:
    """Most prominent maximum of C(t) that follows a dip, and the eigenvalue gap around it.

    Peaks whose left base is t=0 are start-up transients, not kinks.  The gap
    minimum is searched between the peak's left and right bases.
    """
    C = effective_concurrence_series(track, basis)
    peaks, props = find_peaks(C, prominence=prominence)
    keep = props["left_bases"] > 0
    peaks = peaks[keep]
    props = {k: v[keep] for k, v in props.items()}
    if peaks.size == 0:
        return KinkReport()
    k = int(np.argmax(props["prominences"]))
    ip, lo, hi = int(peaks[k]), int(props["left_bases"][k]), int(props["right_bases"][k])
    gap = effective_gap_series(track)
    ig = lo + int(np.argmin(gap[lo : hi + 1]))
    t = track.t_grid
    return KinkReport(
        t_peak=float(t[ip]),
        t_min_gap=float(t[ig]),
        gap_min=float(gap[ig]),
        C_peak=float(C[ip]),
        separation_steps=abs(ip - ig),
    )


def asymptotic_effective_state(
    track: SpectralTrack,
    window: float,
    decay_time: float | None = None,
) -> AsymptoticState:
    """Average of the effective vector over the trailing ``window``.

    ``decay_time`` (e.g. :func:`~qudit_dephasing.dephasing.decay_horizon`) is
    the slowest relaxation time; the track must extend beyond it.
    """
    t = track.t_grid
    duration = t[-1] - t[0]
    if window <= 0 or window >= duration:
        raise InsufficientHorizonError(f"window {window} incompatible with track length {duration}")
    if decay_time is not None and t[-1] < decay_time:
        raise InsufficientHorizonError(
            f"track ends at t={t[-1]:.4g}, before the slowest decay time {decay_time:.4g}"
        )
    sel = t >= t[-1] - window
    U = track.effective[sel]
    mean = U.mean(axis=0)
    dev = float(np.max(np.abs(U - mean)))
    return AsymptoticState(DiagonalState(mean), dev)
