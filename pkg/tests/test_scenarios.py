import numpy as np
import pytest

from twotime.linalg import basis_state, inner, tensor, validate
from twotime.pps import abl, weak_value
from twotime.scenarios import (
    GHZ_EXPECTED_SIGNS,
    MachZehnderOutcome,
    beam_splitter,
    box_observables,
    box_projector,
    ghz_constraint_set,
    ghz_quantum_check,
    ghz_state,
    mach_zehnder,
    named_scenario,
    three_box_ensemble,
)
from twotime.lhv import search


def test_ghz_state_amplitudes():
    state = ghz_state()
    assert state.amps[0] == pytest.approx(1 / np.sqrt(2), abs=1e-15)
    assert state.amps[7] == pytest.approx(-1 / np.sqrt(2), abs=1e-15)
    assert np.all(state.amps[1:7] == 0)
    assert state.norm() == pytest.approx(1, abs=1e-15)


def test_ghz_quantum_check_passes():
    assert ghz_quantum_check(ghz_state()) == {k: True for k in GHZ_EXPECTED_SIGNS}


def test_ghz_quantum_check_rejects_product_state():
    up3 = tensor(basis_state(2, 0), basis_state(2, 0), basis_state(2, 0))
    assert ghz_quantum_check(up3)["XXX"] is False


def test_ghz_quantum_check_is_sign_sensitive():
    flipped = dict(GHZ_EXPECTED_SIGNS)
    flipped["XXX"] = +1
    assert ghz_quantum_check(ghz_state(), expected=flipped)["XXX"] is False


def test_ghz_quantum_check_requires_three_qubits():
    with pytest.raises(ValueError):
        ghz_quantum_check(basis_state(4, 0))


def test_ghz_constraint_set_shape():
    cs = ghz_constraint_set()
    assert len(cs.constraints) == 4
    assert len(cs.universe) == 6
    assert [c.required_product for c in cs.constraints] == [-1, 1, 1, 1]
    assert search(cs).assignment is None


def test_quantum_classical_separation():
    # the state satisfies all four product equations; no deterministic
    # local assignment satisfies the corresponding parity constraints
    assert all(ghz_quantum_check(ghz_state()).values())
    result = search(ghz_constraint_set())
    assert result.assignment is None and result.count == 0


def test_three_box_ensemble_overlap():
    ens = three_box_ensemble()
    assert inner(ens.post, ens.pre) == pytest.approx(1 / 3, abs=1e-15)
    assert abl(ens, box_observables()[0])["in_A"] == pytest.approx(1, abs=1e-9)
    assert weak_value(ens, box_projector("B")) == pytest.approx(1 + 0j, abs=1e-12)


def test_box_observables_structure():
    observables = box_observables()
    assert [o.label for o in observables] == ["open-A", "open-B", "open-C", "all-boxes"]
    open_a = observables[0]
    assert [b.eigenvalue for b in open_a.branches] == [1.0, 0.0]
    for obs in observables:
        for b in obs.branches:
            assert validate(b.projector, "projector", 1e-9)
    total = sum(box_projector(b).entries for b in "ABC")
    assert np.max(np.abs(total - np.eye(3))) <= 1e-12


def test_beam_splitter_is_unitary():
    s = beam_splitter().entries
    assert np.max(np.abs(s @ s.conj().T - np.eye(2))) <= 1e-12


def hand_propagation(obstacle: bool):
    # independent oracle: explicit 2x2 complex arithmetic, no package code
    r = 1 / np.sqrt(2)
    splitter = np.array([[r, 1j * r], [1j * r, r]])
    photon = np.array([1.0, 0.0], dtype=complex)
    if not obstacle:
        out = splitter @ (splitter @ photon)
        return abs(out[0]) ** 2, abs(out[1]) ** 2, 0.0
    mid = splitter @ photon
    absorbed = abs(mid[1]) ** 2
    out = splitter @ np.array([mid[0], 0.0])
    return abs(out[0]) ** 2, abs(out[1]) ** 2, absorbed


@pytest.mark.parametrize("obstacle", [False, True])
def test_mach_zehnder_matches_hand_propagation(obstacle):
    outcome = mach_zehnder(obstacle)
    dark, bright, absorbed = hand_propagation(obstacle)
    assert outcome.p_dark == pytest.approx(dark, abs=1e-15)
    assert outcome.p_bright == pytest.approx(bright, abs=1e-15)
    assert outcome.p_absorbed == pytest.approx(absorbed, abs=1e-15)


def test_mach_zehnder_values():
    free = mach_zehnder(False)
    assert free.p_dark == pytest.approx(0, abs=1e-12)
    assert free.p_bright == pytest.approx(1, abs=1e-12)
    assert free.p_absorbed == 0
    blocked = mach_zehnder(True)
    # the dark detector now fires: detection without absorption
    assert blocked.p_dark == pytest.approx(0.25, abs=1e-12)
    assert blocked.p_bright == pytest.approx(0.25, abs=1e-12)
    assert blocked.p_absorbed == pytest.approx(0.5, abs=1e-12)


@pytest.mark.parametrize("obstacle", [False, True])
def test_mach_zehnder_probabilities_sum_to_one(obstacle):
    outcome = mach_zehnder(obstacle)
    assert outcome.p_dark + outcome.p_bright + outcome.p_absorbed == pytest.approx(
        1, abs=1e-12
    )


def test_mach_zehnder_outcome_validation():
    with pytest.raises(ValueError):
        MachZehnderOutcome(p_dark=0.5, p_bright=0.5, p_absorbed=0.5)
    with pytest.raises(ValueError):
        MachZehnderOutcome(p_dark=-0.1, p_bright=0.6, p_absorbed=0.5)


def test_builders_are_deterministic():
    assert np.array_equal(ghz_state().amps, ghz_state().amps)
    first, second = three_box_ensemble(), three_box_ensemble()
    assert np.array_equal(first.pre.amps, second.pre.amps)
    assert np.array_equal(first.post.amps, second.post.amps)
    assert mach_zehnder(True) == mach_zehnder(True)


def test_named_scenarios():
    ghz = named_scenario("ghz")
    assert ghz.constraint_set is not None
    assert ghz.ensemble.pre.dim == 8
    box = named_scenario("three-box")
    assert len(box.observables) == 4
    ifm = named_scenario("ifm")
    assert ifm.ensemble is None
    with pytest.raises(KeyError):
        named_scenario("nonsense")
