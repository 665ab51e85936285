"""Gaussian-pointer model of a weak measurement on a pre/post-selected ensemble.

The measuring device is a one-dimensional pointer prepared in a Gaussian
wavefunction of position spread ``sigma``.  A von Neumann coupling of
strength ``epsilon`` to an observable with projector decomposition
``{P_a}`` and eigenvalues ``{lambda_a}`` shifts the branch-``a`` pointer
by ``epsilon * lambda_a``.  Conditioning on the post-selection leaves the
(unnormalized) pointer wavefunction

    Phi(x) = sum_a <post|P_a|pre> * G_sigma(x - epsilon * lambda_a)

where ``G_sigma`` is the unit-norm Gaussian ``(2 pi sigma^2)^(-1/4)
exp(-x^2 / (4 sigma^2))`` (so ``|G|^2`` has standard deviation sigma).
The simulation is fully analytic — the superposed Gaussians are evaluated
on a uniform grid and integrated by midpoint Riemann sums — so results
are deterministic and there is no sampling noise.

For small ``epsilon`` the conditional pointer mean divided by ``epsilon``
reads out the real part of the weak value of the coupled observable, with
an error of order ``epsilon^2``; when an outcome is certain the pointer
is a single shifted Gaussian and the readout is exact at any coupling.
Only the position (real-part) readout is modeled here; the imaginary part
would appear in the pointer momentum, which is out of scope.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .pps import (
    OrthogonalSelectionError,
    PrePostEnsemble,
    ProjectorDecomposition,
    SELECTION_EPS,
    ZeroSelectionProbabilityError,
    _branch_weights,
)

#: Minimum number of grid points.
MIN_POINTS = 256

#: The grid must cover every shifted Gaussian out to this many sigmas.
COVERAGE_SIGMAS = 6.0

#: Riemann-sum norm of an analytic Gaussian on a valid grid is 1 within this.
POINTER_NORM_TOL = 1e-6


class GridTooNarrowError(ValueError):
    """The pointer grid does not cover the shifted Gaussians far enough."""


@dataclass(frozen=True, eq=False)
class PointerGrid:
    """Uniform midpoint grid on ``[-half_width, half_width]`` for the pointer."""

    half_width: float
    points: int

    def __post_init__(self) -> None:
        if not np.isfinite(self.half_width) or self.half_width <= 0:
            raise ValueError("half_width must be a positive finite number")
        if self.points < MIN_POINTS:
            raise ValueError(f"grid needs at least {MIN_POINTS} points, got {self.points}")

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_width / self.points

    def positions(self) -> np.ndarray:
        dx = self.spacing
        return -self.half_width + (np.arange(self.points) + 0.5) * dx


#: Default grid; with sigma = 1 its quadrature error is far below the
#: tolerances used anywhere in the package.
DEFAULT_GRID = PointerGrid(half_width=10.0, points=4096)


@dataclass(frozen=True, eq=False)
class PointerState:
    """Discretized pointer wavefunction over a grid; not necessarily unit norm."""

    grid: PointerGrid
    amps: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.amps, dtype=np.complex128).reshape(-1)
        if arr.size != self.grid.points:
            raise ValueError(
                f"amplitude count {arr.size} does not match grid points {self.grid.points}"
            )
        if not np.all(np.isfinite(arr)):
            raise ValueError("pointer amplitudes must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "amps", arr)

    def norm_squared(self) -> float:
        """Riemann-sum ``integral |amps|^2 dx``."""
        return float(np.sum(np.abs(self.amps) ** 2) * self.grid.spacing)

    def normalized(self) -> PointerState:
        n2 = self.norm_squared()
        if n2 <= 0.0:
            raise ValueError("cannot normalize a vanishing pointer state")
        return PointerState(self.grid, self.amps / np.sqrt(n2))

    def mean_position(self) -> float:
        """Conditional mean ``integral x |amps|^2 dx / integral |amps|^2 dx``."""
        density = np.abs(self.amps) ** 2
        total = float(np.sum(density))
        if total <= 0.0:
            raise ValueError("mean position of a vanishing pointer state is undefined")
        return float(np.sum(self.grid.positions() * density) / total)


def gaussian_pointer(grid: PointerGrid, sigma: float, center: float = 0.0) -> PointerState:
    """Unit-norm Gaussian pointer wavefunction centered at ``center``."""
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    x = grid.positions()
    amps = (2.0 * np.pi * sigma**2) ** (-0.25) * np.exp(-((x - center) ** 2) / (4.0 * sigma**2))
    return PointerState(grid, amps)


@dataclass(frozen=True)
class WeakMeasurementReport:
    """Post-selected pointer statistics for one simulated weak measurement."""

    coupling: float
    pointer_mean: float
    postselection_probability: float
    inferred_weak_value_re: float


def simulate_pointer(
    ens: PrePostEnsemble,
    obs: ProjectorDecomposition,
    coupling: float,
    sigma: float = 1.0,
    grid: PointerGrid = DEFAULT_GRID,
) -> WeakMeasurementReport:
    """Simulate one weakly coupled measurement and read out the pointer.

    Parameters
    ----------
    ens : PrePostEnsemble
        The conditioning; the overlap ``<post|pre>`` must not vanish.
    obs : ProjectorDecomposition
        The coupled observable.
    coupling : float
        Coupling strength epsilon (nonzero; sign flips the shift).
    sigma : float
        Pointer position spread (positive).
    grid : PointerGrid
        Evaluation grid.  Must satisfy
        ``half_width >= COVERAGE_SIGMAS * sigma + |coupling| * max |eigenvalue|``.

    Returns
    -------
    WeakMeasurementReport
        Pointer mean, post-selection probability ``integral |Phi|^2``,
        and the readout ``pointer_mean / coupling``.

    Raises
    ------
    OrthogonalSelectionError
        If the selection overlap vanishes.
    GridTooNarrowError
        If the grid coverage invariant fails.
    ZeroSelectionProbabilityError
        If the post-selected pointer wave carries no weight.
    """
    if coupling == 0.0 or not np.isfinite(coupling):
        raise ValueError("coupling must be nonzero and finite")
    if sigma <= 0.0 or not np.isfinite(sigma):
        raise ValueError("sigma must be positive and finite")
    if abs(ens.selection_overlap()) <= SELECTION_EPS:
        raise OrthogonalSelectionError(
            "post-selection is orthogonal to pre-selection; pointer readout undefined"
        )
    max_shift = max(abs(b.eigenvalue) for b in obs.branches)
    required = COVERAGE_SIGMAS * sigma + abs(coupling) * max_shift
    if grid.half_width < required:
        raise GridTooNarrowError(
            f"grid half-width {grid.half_width} is below the required span {required}"
        )

    weights = _branch_weights(ens.pre, ens.post, obs)
    x = grid.positions()
    prefactor = (2.0 * np.pi * sigma**2) ** (-0.25)
    phi = np.zeros(grid.points, dtype=np.complex128)
    for b, w in zip(obs.branches, weights):
        phi += w * prefactor * np.exp(-((x - coupling * b.eigenvalue) ** 2) / (4.0 * sigma**2))

    final = PointerState(grid, phi)
    probability = final.norm_squared()
    if probability <= 1e-30:
        raise ZeroSelectionProbabilityError(
            "post-selected pointer wavefunction carries no weight"
        )
    mean = final.mean_position()
    return WeakMeasurementReport(
        coupling=coupling,
        pointer_mean=mean,
        postselection_probability=probability,
        inferred_weak_value_re=mean / coupling,
    )
