"""Canonical builders for the shipped scenarios.

Three constructions are provided under the stable names used by the CLI:

* ``"ghz"`` — the three-spin entangled state ``(|up up up> - |dn dn dn>)
  / sqrt(2)``, the four x/y spin-product eigenvalue checks it passes, and
  the classical parity-constraint system those four products impose on
  deterministic local ±1 assignments (which exhaustive search refutes);
* ``"three-box"`` — a single particle pre-selected in ``(|A> + |B> +
  |C>) / sqrt(3)`` and post-selected in ``(|A> + |B> - |C>) / sqrt(3)``,
  with the open-one-box and open-all-boxes observables;
* ``"ifm"`` — a balanced two-arm single-photon interferometer, tuned so
  one output port is dark, with an optional perfect absorber in one arm.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (
    Operator,
    StateVector,
    apply,
    basis_state,
    identity,
    inner,
    projector_onto,
    sigma_x,
    sigma_y,
    sigma_z,
    tensor,
)
from .lhv import ConstraintSet, ProductConstraint, Setting
from .pps import Branch, PrePostEnsemble, ProjectorDecomposition

SCENARIO_NAMES = ("ghz", "three-box", "ifm")

#: Required eigenvalue of each three-spin product on the entangled state.
GHZ_EXPECTED_SIGNS = {"XXX": -1, "XYY": +1, "YXY": +1, "YYX": +1}

_PAULIS = {"X": sigma_x, "Y": sigma_y, "Z": sigma_z}


def ghz_state() -> StateVector:
    """``(|up up up> - |dn dn dn>) / sqrt(2)`` in the fixed basis ordering.

    Amplitude 1/sqrt(2) at index 0 and -1/sqrt(2) at index 7; the sign of
    the second term is part of the definition (it fixes the four product
    eigenvalues below).
    """
    amps = np.zeros(8, dtype=np.complex128)
    amps[0] = 1.0 / np.sqrt(2.0)
    amps[7] = -1.0 / np.sqrt(2.0)
    return StateVector(amps)


def _spin_product(word: str) -> Operator:
    # Party A is the leftmost tensor factor (most significant index digit).
    return tensor(_PAULIS[word[0]](), _PAULIS[word[1]](), _PAULIS[word[2]]())


def ghz_quantum_check(
    state: StateVector,
    expected: dict[str, int] | None = None,
    tol: float = 1e-9,
) -> dict[str, bool]:
    """Verify the four spin-product eigenvalue equations on a three-qubit state.

    For each product word (e.g. ``"XYY"`` meaning sigma_x on A, sigma_y
    on B, sigma_y on C) this checks ``product @ state == sign * state``
    entrywise within ``tol``.  ``expected`` overrides the canonical signs
    ``{XXX: -1, XYY: +1, YXY: +1, YYX: +1}``.
    """
    if state.dim != 8:
        raise ValueError(f"expected a three-qubit state (dimension 8), got {state.dim}")
    signs = GHZ_EXPECTED_SIGNS if expected is None else expected
    results = {}
    for word, sign in signs.items():
        product = _spin_product(word)
        residual = apply(product, state).amps - sign * state.amps
        results[word] = float(np.max(np.abs(residual))) <= tol
    return results


def ghz_constraint_set() -> ConstraintSet:
    """The four parity equations the spin products impose on local ±1 values.

    Universe {A, B, C} x {x, y}; required products (-1, +1, +1, +1) in
    the order XXX, XYY, YXY, YYX.  Exhaustive search over all 64
    assignments finds no satisfier, and the full four-constraint set is a
    parity certificate: each setting appears exactly twice yet the
    required products multiply to -1.
    """
    def s(party: str, observable: str) -> Setting:
        return Setting(party, observable)

    universe = tuple(s(p, o) for p in "ABC" for o in "xy")
    constraints = (
        ProductConstraint((s("A", "x"), s("B", "x"), s("C", "x")), -1),
        ProductConstraint((s("A", "x"), s("B", "y"), s("C", "y")), +1),
        ProductConstraint((s("A", "y"), s("B", "x"), s("C", "y")), +1),
        ProductConstraint((s("A", "y"), s("B", "y"), s("C", "x")), +1),
    )
    return ConstraintSet(universe, constraints)


def three_box_ensemble() -> PrePostEnsemble:
    """Pre ``(|A>+|B>+|C>)/sqrt(3)``, post ``(|A>+|B>-|C>)/sqrt(3)``."""
    s3 = 1.0 / np.sqrt(3.0)
    pre = StateVector(np.array([s3, s3, s3], dtype=np.complex128))
    post = StateVector(np.array([s3, s3, -s3], dtype=np.complex128))
    return PrePostEnsemble(pre, post)


def box_projector(box: str) -> Operator:
    """Rank-1 projector onto one of the boxes A, B, C."""
    index = {"A": 0, "B": 1, "C": 2}[box]
    return projector_onto(basis_state(3, index))


def box_observables() -> tuple[ProjectorDecomposition, ...]:
    """The four box measurements: open one box each, and open all boxes.

    Opening box X is the two-outcome occupation measurement
    ``{P_X, 1 - P_X}`` with eigenvalues {1, 0}.  Opening all boxes is the
    three-outcome which-box measurement ``{P_A, P_B, P_C}``; its
    eigenvalues are the box numbers 1, 2, 3 (they only need to be
    distinct).
    """
    eye = identity(3)
    opened = tuple(
        ProjectorDecomposition(
            label=f"open-{box}",
            branches=(
                Branch(f"in_{box}", 1.0, box_projector(box)),
                Branch(f"not_{box}", 0.0, eye - box_projector(box)),
            ),
        )
        for box in "ABC"
    )
    all_boxes = ProjectorDecomposition(
        label="all-boxes",
        branches=tuple(
            Branch(box, float(i + 1), box_projector(box)) for i, box in enumerate("ABC")
        ),
    )
    return opened + (all_boxes,)


def spin_decomposition(axis: str, label: str | None = None) -> ProjectorDecomposition:
    """Two-outcome ±1 decomposition of a single-qubit Pauli observable."""
    pauli = _PAULIS[axis.upper()]().entries
    eye = np.eye(2, dtype=np.complex128)
    plus = Operator((eye + pauli) / 2.0)
    minus = Operator((eye - pauli) / 2.0)
    return ProjectorDecomposition(
        label=label or f"sigma_{axis.lower()}",
        branches=(Branch("+1", +1.0, plus), Branch("-1", -1.0, minus)),
    )


@dataclass(frozen=True)
class MachZehnderOutcome:
    """Detector and absorption probabilities for one interferometer run."""

    p_dark: float
    p_bright: float
    p_absorbed: float

    def __post_init__(self) -> None:
        for name, p in (
            ("p_dark", self.p_dark),
            ("p_bright", self.p_bright),
            ("p_absorbed", self.p_absorbed),
        ):
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"{name} = {p} is not a probability")
        if abs(self.p_dark + self.p_bright + self.p_absorbed - 1.0) > 1e-12:
            raise ValueError("outcome probabilities must sum to 1")


def beam_splitter() -> Operator:
    """Symmetric 50/50 splitter ``(1/sqrt(2)) [[1, i], [i, 1]]`` (i on reflection)."""
    return Operator(np.array([[1.0, 1.0j], [1.0j, 1.0]], dtype=np.complex128) / np.sqrt(2.0))


def mach_zehnder(obstacle_present: bool) -> MachZehnderOutcome:
    """Propagate one photon through the balanced two-arm interferometer.

    The photon enters mode 0 and traverses two identical symmetric beam
    splitters.  Without an obstacle the two paths to mode 0 cancel
    exactly, so detector 0 is dark and detector 1 fires with certainty.
    With a perfect absorber in arm 1, the arm-1 amplitude after the first
    splitter becomes a third outcome (absorption, probability 1/2); the
    surviving arm-0 amplitude is *not* renormalized and propagates
    through the second splitter, putting probability 1/4 on each
    detector.  A dark-detector click then certifies the obstacle even
    though nothing was absorbed.
    """
    splitter = beam_splitter()
    photon_in = basis_state(2, 0)
    if not obstacle_present:
        out = apply(splitter, apply(splitter, photon_in))
        p_dark = float(abs(out.amps[0]) ** 2)
        p_bright = float(abs(out.amps[1]) ** 2)
        return MachZehnderOutcome(p_dark=p_dark, p_bright=p_bright, p_absorbed=0.0)
    mid = apply(splitter, photon_in)
    p_absorbed = float(abs(mid.amps[1]) ** 2)
    survivor = StateVector(np.array([mid.amps[0], 0.0], dtype=np.complex128))
    out = apply(splitter, survivor)
    return MachZehnderOutcome(
        p_dark=float(abs(out.amps[0]) ** 2),
        p_bright=float(abs(out.amps[1]) ** 2),
        p_absorbed=p_absorbed,
    )


@dataclass(frozen=True, eq=False)
class NamedScenario:
    """Everything a runner needs for one of the stable scenario names."""

    name: str
    ensemble: PrePostEnsemble | None
    observables: tuple[ProjectorDecomposition, ...]
    constraint_set: ConstraintSet | None


def named_scenario(name: str) -> NamedScenario:
    """Build the scenario registered under ``name`` (see ``SCENARIO_NAMES``)."""
    if name == "ghz":
        state = ghz_state()
        return NamedScenario(
            name="ghz",
            ensemble=PrePostEnsemble(state, state),
            observables=(),
            constraint_set=ghz_constraint_set(),
        )
    if name == "three-box":
        return NamedScenario(
            name="three-box",
            ensemble=three_box_ensemble(),
            observables=box_observables(),
            constraint_set=None,
        )
    if name == "ifm":
        return NamedScenario(name="ifm", ensemble=None, observables=(), constraint_set=None)
    raise KeyError(f"unknown scenario {name!r}; available: {', '.join(SCENARIO_NAMES)}")
