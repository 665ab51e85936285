import itertools

import numpy as np
import pytest

from twotime.lhv import (
    UNIVERSE_CAP,
    ConstraintSet,
    MissingSettingError,
    ProductConstraint,
    Setting,
    UniverseTooLargeError,
    parity_certificate,
    satisfies,
    search,
)
from twotime.scenarios import ghz_constraint_set


def brute_force(cs):
    """Independent dict-based oracle; enumerates in the canonical order."""
    n = len(cs.universe)
    count = 0
    first = None
    for values in itertools.product([+1, -1], repeat=n):
        assignment = dict(zip(cs.universe, values))
        ok = True
        for c in cs.constraints:
            product = 1
            for s in c.settings:
                product *= assignment[s]
            if product != c.required_product:
                ok = False
                break
        if ok:
            count += 1
            if first is None:
                first = assignment
    return first, count


def random_constraint_set(rng, n_settings, n_constraints):
    universe = tuple(Setting("P", f"s{j}") for j in range(n_settings))
    constraints = []
    for _ in range(n_constraints):
        size = int(rng.integers(1, min(4, n_settings) + 1))
        picks = sorted(rng.choice(n_settings, size=size, replace=False).tolist())
        constraints.append(
            ProductConstraint(tuple(universe[j] for j in picks), int(rng.choice([-1, 1])))
        )
    return ConstraintSet(universe, tuple(constraints))


def xxx_constraint():
    return ProductConstraint(
        (Setting("A", "x"), Setting("B", "x"), Setting("C", "x")), -1
    )


def test_satisfies():
    all_plus = {s: +1 for s in ghz_constraint_set().universe}
    plus_constraint = ProductConstraint((Setting("A", "x"), Setting("B", "x")), +1)
    assert satisfies(all_plus, plus_constraint)
    assert not satisfies(all_plus, xxx_constraint())
    flipped = dict(all_plus)
    flipped[Setting("A", "x")] = -1
    assert satisfies(flipped, xxx_constraint())


def test_satisfies_missing_setting():
    with pytest.raises(MissingSettingError):
        satisfies({Setting("A", "x"): +1}, xxx_constraint())


def test_satisfies_rejects_bad_values():
    assignment = {s: 0 for s in xxx_constraint().settings}
    with pytest.raises(ValueError):
        satisfies(assignment, xxx_constraint())


def test_constraint_validation():
    s = Setting("A", "x")
    with pytest.raises(ValueError):
        ProductConstraint((), -1)
    with pytest.raises(ValueError):
        ProductConstraint((s, s), -1)
    with pytest.raises(ValueError):
        ProductConstraint((s,), 2)


def test_constraint_set_validation():
    s, t = Setting("A", "x"), Setting("A", "y")
    with pytest.raises(ValueError):
        ConstraintSet((s,), (ProductConstraint((t,), 1),))
    too_many = tuple(Setting("P", f"s{j}") for j in range(UNIVERSE_CAP + 1))
    with pytest.raises(UniverseTooLargeError):
        ConstraintSet(too_many, ())


def test_ghz_set_is_unsatisfiable():
    result = search(ghz_constraint_set())
    assert result.assignment is None
    assert result.count == 0


def test_first_three_constraints_are_satisfiable():
    cs = ghz_constraint_set()
    sub = ConstraintSet(cs.universe, cs.constraints[:3])
    result = search(sub)
    oracle_first, oracle_count = brute_force(sub)
    assert result.count == oracle_count == 8
    assert result.assignment == oracle_first
    for c in sub.constraints:
        assert satisfies(result.assignment, c)


def test_empty_constraint_set():
    universe = (Setting("A", "x"), Setting("A", "y"))
    result = search(ConstraintSet(universe, ()))
    assert result.count == 4
    assert result.assignment == {s: +1 for s in universe}


def test_search_matches_oracle_on_random_sets():
    rng = np.random.default_rng(41)
    for _ in range(25):
        n = int(rng.integers(1, 11))
        cs = random_constraint_set(rng, n, int(rng.integers(0, 5)))
        result = search(cs)
        oracle_first, oracle_count = brute_force(cs)
        assert result.count == oracle_count
        assert result.assignment == oracle_first
        if result.assignment is not None:
            for c in cs.constraints:
                assert satisfies(result.assignment, c)


def test_backends_agree():
    rng = np.random.default_rng(42)
    for _ in range(15):
        cs = random_constraint_set(rng, int(rng.integers(1, 13)), int(rng.integers(0, 6)))
        assert search(cs, backend="numpy") == search(cs, backend="numba")
    with pytest.raises(ValueError):
        search(ghz_constraint_set(), backend="fortran")


def test_search_is_deterministic():
    cs = ghz_constraint_set()
    sub = ConstraintSet(cs.universe, cs.constraints[1:])
    first = search(sub)
    second = search(sub)
    assert first == second
    assert repr(first) == repr(second)


def test_parity_certificate_for_ghz():
    # each of the 6 settings appears exactly twice across the four
    # constraints while the required products multiply to -1
    assert parity_certificate(ghz_constraint_set()) == (0, 1, 2, 3)


def test_parity_certificate_single_constraint():
    s = (Setting("A", "x"),)
    cs = ConstraintSet(s, (ProductConstraint(s, -1),))
    assert parity_certificate(cs) is None


def test_parity_certificate_contradictory_pair():
    settings = (Setting("A", "x"), Setting("B", "x"))
    cs = ConstraintSet(
        settings,
        (ProductConstraint(settings, +1), ProductConstraint(settings, -1)),
    )
    assert parity_certificate(cs) == (0, 1)


def test_certificate_implies_unsatisfiable():
    rng = np.random.default_rng(43)
    found = 0
    for _ in range(200):
        cs = random_constraint_set(rng, int(rng.integers(2, 9)), int(rng.integers(2, 7)))
        certificate = parity_certificate(cs)
        if certificate is None:
            continue
        found += 1
        subset = ConstraintSet(cs.universe, tuple(cs.constraints[i] for i in certificate))
        assert search(subset).count == 0
    assert found > 0


def test_certificate_constraint_cap():
    s = (Setting("A", "x"), Setting("B", "x"))
    constraints = tuple(ProductConstraint(s, 1) for _ in range(21))
    cs = ConstraintSet(s, constraints)
    with pytest.raises(ValueError):
        parity_certificate(cs)


def test_numpy_fallback_env_flag(monkeypatch):
    from twotime import _kernels

    monkeypatch.setenv(_kernels.ENV_FLAG, "1")
    assert _kernels.active_backend() == "numpy"
    result = search(ghz_constraint_set())
    assert result.count == 0
    monkeypatch.delenv(_kernels.ENV_FLAG)
