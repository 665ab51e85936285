"""Shared randomized-construction helpers for the test suite.

Everything is driven by an explicit numpy Generator so tests stay
deterministic under fixed seeds.  Decompositions are built by grouping
the columns of a Haar-random unitary, never by diagonalizing anything.
"""

import numpy as np

from twotime.linalg import Operator, StateVector
from twotime.pps import Branch, PrePostEnsemble, ProjectorDecomposition


def haar_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    phases = np.diag(r).copy()
    phases /= np.abs(phases)
    return q * phases


def random_state(rng: np.random.Generator, dim: int) -> StateVector:
    amps = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return StateVector(amps).normalized()


def random_hermitian(rng: np.random.Generator, dim: int) -> Operator:
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return Operator((z + z.conj().T) / 2)


def distinct_eigenvalues(rng: np.random.Generator, count: int) -> list[float]:
    while True:
        values = rng.uniform(-2.0, 2.0, size=count)
        if len(set(np.round(values, 6).tolist())) == count:
            return [float(v) for v in values]


def random_decomposition(
    rng: np.random.Generator,
    dim: int,
    n_branches: int | None = None,
    label: str = "random",
) -> ProjectorDecomposition:
    """Group the columns of a Haar unitary into orthogonal projectors."""
    if n_branches is None:
        n_branches = int(rng.integers(2, dim + 1))
    basis = haar_unitary(rng, dim)
    cuts = sorted(rng.choice(np.arange(1, dim), size=n_branches - 1, replace=False).tolist())
    groups = np.split(np.arange(dim), cuts)
    eigenvalues = distinct_eigenvalues(rng, len(groups))
    branches = []
    for k, (group, lam) in enumerate(zip(groups, eigenvalues)):
        cols = basis[:, group]
        branches.append(Branch(f"out{k}", lam, Operator(cols @ cols.conj().T)))
    return ProjectorDecomposition(label=label, branches=tuple(branches))


def random_ensemble(
    rng: np.random.Generator, dim: int, min_overlap: float = 0.0
) -> PrePostEnsemble:
    """Random normalized pre/post pair; resamples until the overlap clears the floor."""
    while True:
        pre = random_state(rng, dim)
        post = random_state(rng, dim)
        ens = PrePostEnsemble(pre, post)
        if abs(ens.selection_overlap()) >= min_overlap:
            return ens


def certainty_ensemble(
    rng: np.random.Generator, obs: ProjectorDecomposition
) -> tuple[PrePostEnsemble, int]:
    """Ensemble on which one outcome of ``obs`` is certain.

    Post-selecting inside the range of branch ``k`` kills every other
    branch amplitude, making outcome ``k`` certain whenever the surviving
    amplitude is nonzero.  Returns the ensemble and the branch index.
    """
    dim = obs.dim
    while True:
        k = int(rng.integers(len(obs.branches)))
        projector = obs.branches[k].projector
        pre = random_state(rng, dim)
        seed = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        post_amps = projector.entries @ seed
        norm = np.linalg.norm(post_amps)
        if norm < 1e-8:
            continue
        post = StateVector(post_amps / norm)
        ens = PrePostEnsemble(pre, post)
        if abs(ens.selection_overlap()) >= 0.05:
            return ens, k
