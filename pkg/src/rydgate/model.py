"""Physical inputs for the gate error model.

Holds the Rydberg level data, the pairwise interaction laws used to map
interatomic distance to a blockade shift, and the drive parameters shared by
the budget modules.  Interaction strengths are angular frequencies (rad/s),
distances are meters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class InvalidModelError(ValueError):
    """Interaction model has no applicable law for the requested distance."""


class OutOfRangeError(ValueError):
    """No distance in the supported domain satisfies the requested condition."""


# Domain searched by dmin_resonance_rule, meters.
_RULE_DOMAIN = (1.0e-10, 10.0)

# Relative mismatch allowed between the two laws at the crossover radius.
_CROSSOVER_CONTINUITY_TOL = 0.01


@dataclass(frozen=True)
class RydbergLevel:
    """A Rydberg level: principal quantum number, lifetime, and the energy
    gap to the neighboring level of the same series.

    Parameters
    ----------
    n : int
        Principal quantum number.
    tau : float
        Radiative lifetime, s.
    gap : float
        Angular frequency spacing to the adjacent level, rad/s.
    label : str
        Free-form tag used in reports.
    """

    n: int
    tau: float
    gap: float
    label: str = ""

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("principal quantum number n must be >= 1")
        if not (self.tau > 0.0):
            raise ValueError("lifetime tau must be positive")
        if not (self.gap > 0.0):
            raise ValueError("level gap must be positive")


@dataclass(frozen=True)
class InteractionModel:
    """Pairwise interaction law B(r).

    Either a single power law (only one coefficient set) or a piecewise
    law with the cubic branch below ``crossover_radius`` and the
    sixth-power branch above it.  When both coefficients are given the
    two branches must agree within 1% at the crossover; continuity is
    enforced here, at construction, not assumed later.

    c3 has units rad/s*m^3, c6 has rad/s*m^6.
    """

    c3: float = 0.0
    c6: float = 0.0
    crossover_radius: float | None = None

    def __post_init__(self) -> None:
        if self.c3 < 0.0 or self.c6 < 0.0:
            raise InvalidModelError("interaction coefficients must be >= 0")
        if self.c3 == 0.0 and self.c6 == 0.0:
            raise InvalidModelError("at least one interaction coefficient must be set")
        if self.crossover_radius is not None:
            if not (self.crossover_radius > 0.0):
                raise InvalidModelError("crossover_radius must be positive")
            if self.c3 == 0.0 or self.c6 == 0.0:
                raise InvalidModelError(
                    "a crossover law needs both c3 and c6 coefficients"
                )
            rx = self.crossover_radius
            lo = self.c3 / rx**3
            hi = self.c6 / rx**6
            if abs(lo - hi) > _CROSSOVER_CONTINUITY_TOL * max(lo, hi):
                raise InvalidModelError(
                    "laws disagree by more than 1% at the crossover radius: "
                    f"c3 branch {lo:.6g} rad/s vs c6 branch {hi:.6g} rad/s"
                )
        elif self.c3 > 0.0 and self.c6 > 0.0:
            raise InvalidModelError(
                "both coefficients set: a crossover_radius is required"
            )

    def shift_at(self, r: float) -> float:
        """Blockade shift at separation r (meters), rad/s."""
        if not (r > 0.0):
            raise ValueError("separation must be positive")
        if self.crossover_radius is not None:
            if r <= self.crossover_radius:
                return self.c3 / r**3
            return self.c6 / r**6
        if self.c3 > 0.0:
            return self.c3 / r**3
        return self.c6 / r**6


def pair_shift(model, r: float) -> float:
    """Blockade shift for one atom pair at separation ``r``.

    ``model`` is anything exposing ``shift_at(r)``; this indirection lets
    tests substitute constant or synthetic laws.
    """
    return model.shift_at(r)


def fit_single_anchor(law: str, b_anchor: float, r_anchor: float) -> InteractionModel:
    """Build a single-law model from one (shift, distance) anchor point.

    Parameters
    ----------
    law : str
        "c3" or "c6".
    b_anchor : float
        Shift at the anchor distance, rad/s.
    r_anchor : float
        Anchor distance, m.
    """
    if not (b_anchor > 0.0) or not (r_anchor > 0.0):
        raise ValueError("anchor shift and radius must be positive")
    if law == "c3":
        return InteractionModel(c3=b_anchor * r_anchor**3)
    if law == "c6":
        return InteractionModel(c6=b_anchor * r_anchor**6)
    raise ValueError(f"unknown interaction law {law!r}; expected 'c3' or 'c6'")


def dmin_resonance_rule(model, level: RydbergLevel, factor: float = 1.5) -> float:
    """Smallest usable lattice spacing: the distance where the pair shift
    equals ``factor`` times the neighboring-level gap.

    Solved by bisection on the monotone shift law to a relative tolerance
    well below 1e-10.  Raises OutOfRangeError when no distance in the
    supported domain satisfies the condition.
    """
    if not (factor > 0.0):
        raise ValueError("factor must be positive")
    target = factor * level.gap
    lo, hi = _RULE_DOMAIN
    s_lo = pair_shift(model, lo)
    s_hi = pair_shift(model, hi)
    if target > s_lo or target < s_hi:
        raise OutOfRangeError(
            f"no distance in [{lo:g}, {hi:g}] m reaches shift {target:.6g} rad/s"
        )
    a, b = math.log(lo), math.log(hi)
    for _ in range(200):
        m = 0.5 * (a + b)
        if pair_shift(model, math.exp(m)) >= target:
            a = m
        else:
            b = m
        if b - a < 1.0e-14:
            break
    d = math.exp(0.5 * (a + b))
    residual = abs(pair_shift(model, d) - target) / target
    if residual > 1.0e-9:
        # Only reachable when the target falls inside a crossover jump.
        raise OutOfRangeError(
            f"shift law is discontinuous at the solution; residual {residual:.3g}"
        )
    return d


@dataclass(frozen=True)
class GateParams:
    """Drive parameters shared by the budget functions.

    omega is the single Rabi frequency of the one-at-a-time addressing
    scheme; omega_c/omega_t are the control and target Rabi frequencies
    of the all-controls-at-once scheme.  Unused fields may stay None.
    omega10 is the qubit ground-state splitting.  All rad/s.
    """

    k: int
    omega10: float
    omega: float | None = None
    omega_c: float | None = None
    omega_t: float | None = None

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("number of control atoms k must be >= 1")
        if not (self.omega10 > 0.0):
            raise ValueError("omega10 must be positive")
        for name in ("omega", "omega_c", "omega_t"):
            value = getattr(self, name)
            if value is not None and not (value > 0.0):
                raise ValueError(f"{name} must be positive when set")
