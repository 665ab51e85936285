"""Deterministic local hidden-variable models over parity constraints.

A hidden-variable assignment gives every (party, observable) setting a
fixed value of +1 or -1, independently of which other settings are
measured.  A :class:`ProductConstraint` demands that the product of the
values of some settings equal +1 or -1; :func:`search` enumerates *all*
assignments over a universe of settings and reports the first satisfier
(in a fixed canonical order) together with the exact satisfier count, so
an empty result is an exhaustive refutation, not a heuristic one.

:func:`parity_certificate` extracts, when one exists, the short proof of
unsatisfiability: a subset of constraints in which every setting occurs
an even number of times while the required products multiply to -1.

Canonical enumeration order: settings are sorted by (party, observable)
and an assignment is a binary counter over them, the first setting being
the most significant bit and a set bit meaning -1.  Assignment 0 is
all-(+1); counting up flips the last setting fastest.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, NamedTuple

import numpy as np

from . import _kernels

#: Enumeration cap: at most 2^24 assignments.
UNIVERSE_CAP = 24

#: Certificate search is limited to this many constraints (2^n subsets).
CERTIFICATE_MAX_CONSTRAINTS = 20


class UniverseTooLargeError(ValueError):
    """The setting universe exceeds the exhaustive-enumeration cap."""


class MissingSettingError(KeyError):
    """An assignment lacks a value for a setting a constraint needs."""


@dataclass(frozen=True, order=True)
class Setting:
    """One measurement choice: which party measures which observable."""

    party: str
    observable: str


Assignment = Mapping[Setting, int]


@dataclass(frozen=True, eq=False)
class ProductConstraint:
    """Requires the product of the given settings' values to equal ±1."""

    settings: tuple[Setting, ...]
    required_product: int

    def __post_init__(self) -> None:
        settings = tuple(self.settings)
        object.__setattr__(self, "settings", settings)
        if not settings:
            raise ValueError("a product constraint needs at least one setting")
        if len(set(settings)) != len(settings):
            raise ValueError("settings must be distinct within one constraint")
        if self.required_product not in (-1, 1):
            raise ValueError("required_product must be +1 or -1")


@dataclass(frozen=True, eq=False)
class ConstraintSet:
    """A universe of settings plus the parity constraints over it.

    The universe is stored sorted and deduplicated; every constraint must
    draw its settings from it, and its size is capped at
    ``UNIVERSE_CAP`` so exhaustive enumeration stays tractable.
    """

    universe: tuple[Setting, ...]
    constraints: tuple[ProductConstraint, ...]

    def __post_init__(self) -> None:
        universe = tuple(sorted(set(self.universe)))
        constraints = tuple(self.constraints)
        object.__setattr__(self, "universe", universe)
        object.__setattr__(self, "constraints", constraints)
        if len(universe) > UNIVERSE_CAP:
            raise UniverseTooLargeError(
                f"universe has {len(universe)} settings; enumeration cap is {UNIVERSE_CAP}"
            )
        known = set(universe)
        for c in constraints:
            for s in c.settings:
                if s not in known:
                    raise ValueError(f"constraint uses setting {s} outside the universe")


class SearchResult(NamedTuple):
    """First satisfying assignment (or None) and the exact satisfier count."""

    assignment: dict[Setting, int] | None
    count: int


def satisfies(assignment: Assignment, constraint: ProductConstraint) -> bool:
    """True iff the product of the assigned values equals the required product."""
    product = 1
    for s in constraint.settings:
        try:
            value = assignment[s]
        except KeyError:
            raise MissingSettingError(s) from None
        if value not in (-1, 1):
            raise ValueError(f"assignment value for {s} must be +1 or -1, got {value!r}")
        product *= value
    return product == constraint.required_product


def _encode(cs: ConstraintSet) -> tuple[np.ndarray, np.ndarray]:
    n = len(cs.universe)
    position = {s: n - 1 - j for j, s in enumerate(cs.universe)}
    masks = np.zeros(len(cs.constraints), dtype=np.uint32)
    parities = np.zeros(len(cs.constraints), dtype=np.uint8)
    for i, c in enumerate(cs.constraints):
        mask = 0
        for s in c.settings:
            mask |= 1 << position[s]
        masks[i] = mask
        parities[i] = 0 if c.required_product == 1 else 1
    return masks, parities


def _decode(cs: ConstraintSet, index: int) -> dict[Setting, int]:
    n = len(cs.universe)
    return {
        s: -1 if (index >> (n - 1 - j)) & 1 else +1
        for j, s in enumerate(cs.universe)
    }


def search(cs: ConstraintSet, backend: str | None = None) -> SearchResult:
    """Exhaustively enumerate all ``2^len(universe)`` assignments.

    Returns the first satisfier in canonical counter order (or ``None``)
    and the exact number of satisfying assignments.  ``backend`` forces
    the ``"numba"`` or ``"numpy"`` kernel; by default the compiled kernel
    is used when available (see :mod:`twotime._kernels`).
    """
    masks, parities = _encode(cs)
    first, count = _kernels.search_parity(len(cs.universe), masks, parities, backend)
    assignment = _decode(cs, first) if first >= 0 else None
    return SearchResult(assignment, count)


def parity_certificate(cs: ConstraintSet) -> tuple[int, ...] | None:
    """Find a subset of constraint indices proving unsatisfiability.

    In a certificate subset every setting occurs an even number of times,
    so the product of all its left-hand sides is identically +1 for any
    assignment, while the required products multiply to -1.  Subsets are
    scanned in increasing size (then lexicographically), so the returned
    certificate is the smallest one.  Returns ``None`` if no subset
    qualifies.
    """
    m = len(cs.constraints)
    if m > CERTIFICATE_MAX_CONSTRAINTS:
        raise ValueError(
            f"certificate search supports at most {CERTIFICATE_MAX_CONSTRAINTS} constraints, got {m}"
        )
    masks, parities = _encode(cs)
    int_masks = [int(x) for x in masks]
    for size in range(1, m + 1):
        for combo in itertools.combinations(range(m), size):
            folded = 0
            sign = 0
            for i in combo:
                folded ^= int_masks[i]
                sign ^= int(parities[i])
            if folded == 0 and sign == 1:
                return combo
    return None
