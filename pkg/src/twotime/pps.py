"""Pre- and post-selected ensembles: two-time probabilities and weak values.

A :class:`PrePostEnsemble` conditions a system both on the state it was
prepared in at an earlier time and on the state it was later verified to
be in, with no evolution in between.  For a projective measurement
``{P_a}`` performed at an intermediate time, the conditional probability
of outcome ``a`` is the two-time quotient

    p(a) = |<post| P_a |pre>|^2 / sum_b |<post| P_b |pre>|^2 .

The quotient depends on the *whole* decomposition, not only on the branch
asked about: opening a single box (the two-outcome decomposition
``{P_A, 1 - P_A}``) and opening all boxes (the three-outcome
``{P_A, P_B, P_C}``) are different measurements and give different
conditional probabilities even though both contain ``P_A``.  In the
three-box ensemble the former is certain while the latter is uniform.

When some outcome is certain (probability 1 within tolerance), that
certainty is an *element of reality*: a statement about what a
measurement would show if it were performed, not a pre-existing value.
The weak value ``<post|A|pre> / <post|pre>`` is the complex readout a
weakly coupled probe registers on the same ensemble; for a certain
outcome the weak value of its projector equals 1 and the weak value of
the observable equals the certain eigenvalue.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (
    STRUCTURAL_TOL,
    DimensionMismatchError,
    Operator,
    StateVector,
    apply,
    inner,
    validate,
)

#: Overlap magnitudes at or below this are treated as vanishing selection.
SELECTION_EPS = 1e-12

#: Default certainty tolerance for element-of-reality inference.
CERTAINTY_TOL = 1e-9


class ZeroSelectionProbabilityError(ArithmeticError):
    """The post-selection can never follow this intermediate measurement."""


class OrthogonalSelectionError(ArithmeticError):
    """``<post|pre>`` vanishes, so the weak value is undefined."""


class InvalidDecompositionError(ValueError):
    """The branches do not form a valid projector decomposition."""


@dataclass(frozen=True, eq=False)
class PrePostEnsemble:
    """Normalized (pre-state, post-state) pair of equal dimension.

    An orthogonal pair is a legal ensemble; only the operations that
    divide by the overlap refuse to run on it.
    """

    pre: StateVector
    post: StateVector

    def __post_init__(self) -> None:
        if self.pre.dim != self.post.dim:
            raise DimensionMismatchError(
                f"pre and post states differ in dimension: {self.pre.dim} vs {self.post.dim}"
            )
        if not self.pre.is_normalized():
            raise ValueError("pre-selected state must be normalized")
        if not self.post.is_normalized():
            raise ValueError("post-selected state must be normalized")

    @property
    def dim(self) -> int:
        return self.pre.dim

    def selection_overlap(self) -> complex:
        """``<post|pre>``; may be zero."""
        return inner(self.post, self.pre)


@dataclass(frozen=True, eq=False)
class Branch:
    """One outcome of a projective measurement."""

    outcome_label: str
    eigenvalue: float
    projector: Operator


@dataclass(frozen=True, eq=False)
class ProjectorDecomposition:
    """Labeled orthogonal projector decomposition of the identity.

    Validated at construction: every projector is Hermitian and
    idempotent, branches are mutually orthogonal, the projectors sum to
    the identity (all within ``STRUCTURAL_TOL``), and eigenvalues and
    outcome labels are distinct across branches.
    """

    label: str
    branches: tuple[Branch, ...]

    def __post_init__(self) -> None:
        branches = tuple(self.branches)
        object.__setattr__(self, "branches", branches)
        if not branches:
            raise InvalidDecompositionError("a decomposition needs at least one branch")
        dim = branches[0].projector.dim
        labels = [b.outcome_label for b in branches]
        if len(set(labels)) != len(labels):
            raise InvalidDecompositionError("outcome labels must be unique")
        eigenvalues = [b.eigenvalue for b in branches]
        if len(set(eigenvalues)) != len(eigenvalues):
            raise InvalidDecompositionError("eigenvalues must be distinct across branches")
        for b in branches:
            if b.projector.dim != dim:
                raise InvalidDecompositionError("branch projectors differ in dimension")
            if not validate(b.projector, "projector", STRUCTURAL_TOL):
                raise InvalidDecompositionError(
                    f"branch {b.outcome_label!r}: matrix is not a projector"
                )
        for i, a in enumerate(branches):
            for b in branches[i + 1 :]:
                prod = a.projector.entries @ b.projector.entries
                if float(np.max(np.abs(prod))) > STRUCTURAL_TOL:
                    raise InvalidDecompositionError(
                        f"branches {a.outcome_label!r} and {b.outcome_label!r} are not orthogonal"
                    )
        total = sum(b.projector.entries for b in branches)
        if float(np.max(np.abs(total - np.eye(dim)))) > STRUCTURAL_TOL:
            raise InvalidDecompositionError("projectors do not sum to the identity")

    @property
    def dim(self) -> int:
        return self.branches[0].projector.dim

    def operator(self) -> Operator:
        """The observable ``sum_a eigenvalue_a * P_a``."""
        out = self.branches[0].eigenvalue * self.branches[0].projector
        for b in self.branches[1:]:
            out = out + b.eigenvalue * b.projector
        return out

    def projector(self, outcome_label: str) -> Operator:
        for b in self.branches:
            if b.outcome_label == outcome_label:
                return b.projector
        raise KeyError(outcome_label)


@dataclass(frozen=True)
class ElementOfReality:
    """An intermediate outcome inferable with certainty for an ensemble."""

    observable_label: str
    certain_outcome_label: str
    eigenvalue: float


def _branch_weights(pre: StateVector, post: StateVector, obs: ProjectorDecomposition):
    """Transition amplitudes ``<post|P_a|pre>`` per branch, in branch order."""
    return [inner(post, apply(b.projector, pre)) for b in obs.branches]


def born(state: StateVector, obs: ProjectorDecomposition) -> dict[str, float]:
    """Single-time outcome probabilities ``p(a) = ||P_a |psi>||^2``.

    Requires a normalized state.  Probabilities are non-negative and sum
    to 1 within ``STRUCTURAL_TOL`` by decomposition completeness.
    """
    if state.dim != obs.dim:
        raise DimensionMismatchError(
            f"state dimension {state.dim} does not match observable dimension {obs.dim}"
        )
    if not state.is_normalized():
        raise ValueError("born rule requires a normalized state")
    return {
        b.outcome_label: float(np.linalg.norm(apply(b.projector, state).amps) ** 2)
        for b in obs.branches
    }


def abl(ens: PrePostEnsemble, obs: ProjectorDecomposition) -> dict[str, float]:
    """Two-time conditional outcome probabilities for an intermediate measurement.

    Implements ``p(a) = |<post|P_a|pre>|^2 / sum_b |<post|P_b|pre>|^2``.

    Raises
    ------
    ZeroSelectionProbabilityError
        If the denominator vanishes: no outcome of this measurement can
        be followed by the post-selection.
    DimensionMismatchError
        If ensemble and observable dimensions differ.
    """
    if ens.dim != obs.dim:
        raise DimensionMismatchError(
            f"ensemble dimension {ens.dim} does not match observable dimension {obs.dim}"
        )
    weights = [abs(w) ** 2 for w in _branch_weights(ens.pre, ens.post, obs)]
    denom = sum(weights)
    if denom <= SELECTION_EPS:
        raise ZeroSelectionProbabilityError(
            f"post-selection probability vanishes for observable {obs.label!r}"
        )
    return {
        b.outcome_label: w / denom for b, w in zip(obs.branches, weights)
    }


def infer_element_of_reality(
    ens: PrePostEnsemble,
    obs: ProjectorDecomposition,
    tol: float = CERTAINTY_TOL,
) -> ElementOfReality | None:
    """Return the certain outcome of ``obs`` on ``ens``, if there is one.

    An outcome qualifies when its two-time conditional probability is at
    least ``1 - tol``; otherwise ``None``.  Propagates the errors of
    :func:`abl`.
    """
    probabilities = abl(ens, obs)
    for b in obs.branches:
        if probabilities[b.outcome_label] >= 1.0 - tol:
            return ElementOfReality(obs.label, b.outcome_label, b.eigenvalue)
    return None


def weak_value(ens: PrePostEnsemble, observable: Operator) -> complex:
    """The complex quotient ``<post|A|pre> / <post|pre>``.

    The imaginary part is retained: it is physically meaningful (it shows
    up in pointer-momentum shifts) even though the canonical examples are
    real.

    Raises
    ------
    OrthogonalSelectionError
        If ``<post|pre>`` vanishes (magnitude at most ``SELECTION_EPS``).
    """
    if ens.dim != observable.dim:
        raise DimensionMismatchError(
            f"ensemble dimension {ens.dim} does not match operator dimension {observable.dim}"
        )
    overlap = ens.selection_overlap()
    if abs(overlap) <= SELECTION_EPS:
        raise OrthogonalSelectionError(
            "post-selection is orthogonal to pre-selection; weak value undefined"
        )
    value = inner(ens.post, apply(observable, ens.pre)) / overlap
    if not np.isfinite(value):
        raise ValueError("weak value is not finite")
    return complex(value)
