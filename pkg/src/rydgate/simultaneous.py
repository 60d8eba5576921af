"""Error budgets for the all-controls-at-once C_kNOT pulse sequence.

Five pulses total: one collective pi pulse takes every |0> control to a
storage Rydberg level |s> at Rabi frequency omega_c, three pulses at
omega_t swap the target ground states through |r>, and a collective
return pulse (pi phase offset) brings the controls back.  Because the
controls are excited together, blockade physics is driven by the number
j of excited controls: control-control shifts add up to j*d_cc on each
excited control, and the target sees a total shift of j*b_ct.  State
averaging therefore produces binomial sums over j.

The control-control rotation term is evaluated from its binomial sum; the
collapsed polynomial (k^3 - k)/16 overstates that sum, which reduces to
k^2 (k-1)/16 exactly, so the polynomial variant is only reported under
diagnostics.

Lattice averaging replaces the j identical shifts by sums over the
concrete excited subset.  The quadratic control term has an exact
closed-moment expectation; the target terms need E[1/X^2] over random
subsets, computed exactly by enumeration for small k and otherwise by a
deterministic Laplace-transform quadrature (1/X^2 = integral of
t*exp(-tX)), which keeps the evaluation polynomial in k.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.integrate import quad

from .budget import ErrorBudget
from .lattice import LatticeGeometry, pair_sets
from .model import pair_shift

_MAX_K = 64
_ENUMERATION_MAX_K = 20

SIMULTANEOUS_TERMS = ("se_c", "se_t", "r_c_1", "r_c_2", "r_t")


class BlockadeRegimeWarning(UserWarning):
    """Control-control shift is not small against the control Rabi frequency."""


@dataclass(frozen=True)
class SimultaneousParams:
    """Inputs for the collective-addressing budget.

    Frequencies and shifts in rad/s, lifetimes in seconds.  ``tau_c`` is
    the storage-level lifetime of the controls, ``tau_t`` the target
    Rydberg lifetime.  ``b_ct``/``d_cc`` are the uniform per-pair shifts;
    leave them None for lattice-averaged runs.
    """

    k: int
    omega_c: float
    omega_t: float
    tau_c: float
    tau_t: float
    omega10: float
    b_ct: float | None = None
    d_cc: float | None = None

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.k > _MAX_K:
            raise ValueError(f"k = {self.k} exceeds the supported maximum of {_MAX_K}")
        for name in ("omega_c", "omega_t", "tau_c", "tau_t", "omega10"):
            if not (getattr(self, name) > 0.0):
                raise ValueError(f"{name} must be positive")
        for name in ("b_ct", "d_cc"):
            value = getattr(self, name)
            if value is not None and not (value > 0.0):
                raise ValueError(f"{name} must be positive when set")
        if self.d_cc is not None and abs(self.d_cc) >= self.omega_c:
            warnings.warn(
                "control-control shift >= control Rabi frequency; the "
                "perturbative budget is outside its regime",
                BlockadeRegimeWarning,
                stacklevel=2,
            )


def cc_rotation_weight(k: int) -> Fraction:
    """Exact binomial expectation behind the control-control rotation term.

    (k / 2^(k+1)) * sum_j C(k-1, j) j^2, which collapses to k^2 (k-1)/16.
    """
    total = sum(math.comb(k - 1, j) * j * j for j in range(1, k))
    return Fraction(k * total, 2 ** (k + 1))


def target_blockade_sums(k: int, b_ct: float, omega10: float) -> tuple[float, float]:
    """The two binomial sums of the blocked-target rotation term.

    Returns (sum over j of C(k,j)/2^k / (j b_ct)^2,
             sum over j of C(k,j)/2^k / (j b_ct + omega10)^2), j = 1..k.
    """
    scale = math.ldexp(1.0, -k)
    s_block = 0.0
    s_split = 0.0
    for j in range(1, k + 1):
        w = math.comb(k, j) * scale
        s_block += w / (j * b_ct) ** 2
        s_split += w / (j * b_ct + omega10) ** 2
    return s_block, s_split


def budget_simultaneous_uniform(p: SimultaneousParams) -> ErrorBudget:
    """Closed-form budget with uniform per-pair shifts."""
    if p.b_ct is None or p.d_cc is None:
        raise ValueError("uniform budget requires b_ct and d_cc")
    k = p.k
    half_k = math.ldexp(1.0, -k)
    se_c = math.pi * k / (2.0 * p.omega_c * p.tau_c) + 3.0 * math.pi * k / (
        2.0 * p.omega_t * p.tau_c
    )
    se_t = math.pi / (p.omega_t * p.tau_t) * half_k
    w_rc1 = cc_rotation_weight(k)
    r_c_1 = p.d_cc**2 / p.omega_c**2 * float(w_rc1)
    r_c_2 = p.omega_c**2 * k / (2.0 * p.omega10**2)
    s_block, s_split = target_blockade_sums(k, p.b_ct, p.omega10)
    r_t = 0.75 * p.omega_t**2 * (s_block + s_split)
    terms = {
        "se_c": se_c,
        "se_t": se_t,
        "r_c_1": r_c_1,
        "r_c_2": r_c_2,
        "r_t": r_t,
    }
    diagnostics = {
        "r_c_1_cubic_variant": p.d_cc**2 / p.omega_c**2 * (k**3 - k) / 16.0,
        "r_t_blockade_part": 0.75 * p.omega_t**2 * s_block,
        "r_t_splitting_part": 0.75 * p.omega_t**2 * s_split,
    }
    return ErrorBudget.from_terms("simultaneous", "uniform", terms, diagnostics)


def _subset_inv_sq_enumerated(shifts: tuple[float, ...], offset: float) -> float:
    """E[1/(X + offset)^2] over nonempty uniform-random subsets, exact."""
    sums = np.zeros(1)
    for b in shifts:
        sums = np.concatenate([sums, sums + b])
    x = sums[1:] + offset  # drop the empty subset
    return float(np.sum(1.0 / (x * x))) * math.ldexp(1.0, -len(shifts))


def _subset_inv_sq_quad(shifts: tuple[float, ...], offset: float) -> float:
    """Same expectation via 1/X^2 = int_0^inf t exp(-t X) dt.

    The subset average of exp(-tX) is prod (1 + exp(-t b_i))/2; removing
    the empty subset leaves 2^-k expm1(sum log1p(exp(-t b_i))), which is
    evaluated without cancellation.
    """
    k = len(shifts)
    b = np.asarray(shifts)
    scale = offset + min(shifts)  # slowest surviving decay rate

    def integrand(s: float) -> float:
        t = s / scale
        log_prod = np.sum(np.log1p(np.exp(-t * b)))
        return t * math.expm1(log_prod) * math.ldexp(1.0, -k) * math.exp(-t * offset)

    value, _ = quad(integrand, 0.0, np.inf, epsabs=0.0, epsrel=1.0e-12, limit=400)
    return value / scale


def subset_inverse_square_expectations(
    shifts: tuple[float, ...], omega10: float
) -> tuple[float, float]:
    """(E[1/X^2], E[1/(X+omega10)^2]) for X the summed shift of a
    nonempty uniform-random subset of ``shifts``.

    Exact enumeration up to k = 20, deterministic quadrature beyond.
    """
    if len(shifts) <= _ENUMERATION_MAX_K:
        return (
            _subset_inv_sq_enumerated(shifts, 0.0),
            _subset_inv_sq_enumerated(shifts, omega10),
        )
    return (
        _subset_inv_sq_quad(shifts, 0.0),
        _subset_inv_sq_quad(shifts, omega10),
    )


@lru_cache(maxsize=128)
def _cached_subset_expectations(
    shifts: tuple[float, ...], omega10: float
) -> tuple[float, float]:
    return subset_inverse_square_expectations(shifts, omega10)


def budget_simultaneous_lattice(
    p: SimultaneousParams, model_ct, model_cc, geom: LatticeGeometry
) -> ErrorBudget:
    """Lattice-averaged budget with per-pair control-target and
    control-control interaction models.

    The control-control rotation term uses the exact second moment of the
    summed shift each control sees from the random excited subset of the
    others.  The blocked-target term averages 1/X^2 over the excited
    subset exactly (see ``subset_inverse_square_expectations``).  Constant
    models reproduce ``budget_simultaneous_uniform``.
    """
    if geom.k != p.k:
        raise ValueError("geometry and SimultaneousParams disagree on k")
    k = p.k
    half_k = math.ldexp(1.0, -k)
    ps = pair_sets(geom)
    b_ct = tuple(pair_shift(model_ct, r) for r in ps.control_target)
    d = np.zeros((k, k))
    for (i, j, sep) in ps.control_control_ordered:
        d[i, j] = d[j, i] = pair_shift(model_cc, sep)

    se_c = math.pi * k / (2.0 * p.omega_c * p.tau_c) + 3.0 * math.pi * k / (
        2.0 * p.omega_t * p.tau_c
    )
    se_t = math.pi / (p.omega_t * p.tau_t) * half_k

    # E[(sum_m eps_m D_im)^2] with independent eps ~ Bernoulli(1/2):
    # 1/2 sum D^2 + 1/4 sum_{m != m'} D D'
    r_c_1 = 0.0
    for i in range(k):
        row = np.delete(d[i], i)
        s1 = float(np.sum(row))
        s2 = float(np.sum(row * row))
        r_c_1 += (0.5 * s2 + 0.25 * (s1 * s1 - s2)) / (4.0 * p.omega_c**2)

    r_c_2 = p.omega_c**2 * k / (2.0 * p.omega10**2)

    e_block, e_split = _cached_subset_expectations(b_ct, p.omega10)
    r_t = 0.75 * p.omega_t**2 * (e_block + e_split)

    terms = {
        "se_c": se_c,
        "se_t": se_t,
        "r_c_1": r_c_1,
        "r_c_2": r_c_2,
        "r_t": r_t,
    }
    diagnostics = {
        "r_t_blockade_part": 0.75 * p.omega_t**2 * e_block,
        "r_t_splitting_part": 0.75 * p.omega_t**2 * e_split,
    }
    return ErrorBudget.from_terms("simultaneous", "lattice", terms, diagnostics)


def gate_duration_simultaneous(p: SimultaneousParams) -> float:
    """Total pulse time: three target pi pulses plus two collective
    control pi pulses, seconds."""
    return 3.0 * math.pi / p.omega_t + 2.0 * math.pi / p.omega_c
