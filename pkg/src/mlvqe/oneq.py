"""Closed-form solution of the one-qubit system.

For H = h0*I + h1*X + h2*Y + h3*Z and the single-qubit ansatz RY(u), RZ(v),
the state expectations are x = sin(u)cos(v), y = sin(u)sin(v), z = cos(u),
and the minimum energy h0 - sqrt(h1^2 + h2^2 + h3^2) is reached at

    u_opt = 2 * atan((h3 + sqrt(h3^2 + a^2)) / a),
    v_opt = atan2(h2, h1) + pi   (wrapped to (-pi, pi]),

with a = |h1 + i*h2| and b = atan2(h2, h1).  At (u_opt, b) the energy is
(a^2 - h3^2)/sqrt(a^2 + h3^2), a saddle; the offset of pi on v (equivalently
flipping the sign of u) is required to land on the minimum.  These angles
serve as the training-label oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class DegenerateHamiltonianError(ValueError):
    """All of h1, h2, h3 vanish; every angle pair is optimal."""


@dataclass(frozen=True)
class OneQubitSolution:
    u_opt: float
    v_opt: float
    min_energy: float  # excludes the identity offset h0
    a: float
    b: float


def solve(h1: float, h2: float, h3: float) -> OneQubitSolution:
    a = math.hypot(h1, h2)
    r = math.sqrt(h1 * h1 + h2 * h2 + h3 * h3)
    if r == 0.0:
        raise DegenerateHamiltonianError("h1 = h2 = h3 = 0")
    b = math.atan2(h2, h1)
    if a == 0.0:
        # rotation axis is Z; v is irrelevant, pick the reproducible v = 0
        u_opt = math.pi if h3 > 0 else 0.0
        v_opt = 0.0
    else:
        u_opt = 2.0 * math.atan((h3 + math.sqrt(h3 * h3 + a * a)) / a)
        v_opt = b + math.pi if b <= 0.0 else b - math.pi  # wrap b + pi to (-pi, pi]
    return OneQubitSolution(u_opt=u_opt, v_opt=v_opt, min_energy=-r, a=a, b=b)


def optimal_angles(h1: float, h2: float, h3: float) -> tuple:
    sol = solve(h1, h2, h3)
    return sol.u_opt, sol.v_opt


def expectations_at(u: float, v: float) -> tuple:
    """(x, y, z) Pauli expectations of the one-qubit ansatz state."""
    return (
        math.sin(u) * math.cos(v),
        math.sin(u) * math.sin(v),
        math.cos(u),
    )


def energy_at(h1: float, h2: float, h3: float, u: float, v: float) -> float:
    """Traceless energy h1*x + h2*y + h3*z at angles (u, v)."""
    x, y, z = expectations_at(u, v)
    return h1 * x + h2 * y + h3 * z


def nearest_equivalent_angles(u_opt: float, v_opt: float, reference) -> tuple:
    """Equivalent optimum closest to `reference` angles.

    The ansatz state is invariant under (u, v) -> (u + 2*pi*a, v + 2*pi*b)
    and (u, v) -> (-u, v + pi), so the minimizer is a lattice of angle
    pairs.  Returning the member nearest a run's converged angles keeps
    training deltas small without leaving the analytic solution set.
    """
    ru, rv = float(reference[0]), float(reference[1])
    two_pi = 2.0 * math.pi
    best = None
    for u_base, v_base in ((u_opt, v_opt), (-u_opt, v_opt + math.pi)):
        u_cand = u_base + two_pi * round((ru - u_base) / two_pi)
        v_cand = v_base + two_pi * round((rv - v_base) / two_pi)
        d = (u_cand - ru) ** 2 + (v_cand - rv) ** 2
        if best is None or d < best[0]:
            best = (d, u_cand, v_cand)
    return best[1], best[2]


def fold_angles(u: float, v: float) -> tuple:
    """Fundamental-domain representative of (u, v): u in [0, pi], v in (-pi, pi].

    The prepared state is invariant under 2*pi shifts of either angle and
    under (u, v) -> (-u, v + pi), so every angle pair has an image in this
    half-domain preparing the identical state.
    """
    u = (u + math.pi) % (2.0 * math.pi) - math.pi
    if u < 0.0:
        u, v = -u, v + math.pi
    v = (v - math.pi) % (2.0 * math.pi) + math.pi
    if v > math.pi:
        v -= 2.0 * math.pi
    return u, v


def canonical_trace_transform(final_angles, u_opt: float, v_opt: float):
    """Rigid angle transform mapping a run's branch onto the canonical optimum.

    The state is invariant under (u, v) -> (u + 2*pi*k, v + 2*pi*m) and
    (u, v) -> (-u, v + pi), so a converged run may sit in any image of the
    canonical minimum.  This picks the lattice transform T with T(final)
    closest to (u_opt, v_opt); applying T to every evaluation of the trace
    leaves all expectation values untouched while keeping angle deltas to
    the canonical optimum small and single-branched across runs.
    """
    fu, fv = float(final_angles[0]), float(final_angles[1])
    two_pi = 2.0 * math.pi
    best = None
    for sign in (1.0, -1.0):
        v_off = 0.0 if sign > 0 else math.pi
        ku = two_pi * round((u_opt - sign * fu) / two_pi)
        kv = two_pi * round((v_opt - fv - v_off) / two_pi) + v_off
        d = (sign * fu + ku - u_opt) ** 2 + (fv + kv - v_opt) ** 2
        if best is None or d < best[0]:
            best = (d, sign, ku, kv)
    _, sign, ku, kv = best

    def transform(angles):
        angles = np.asarray(angles, dtype=float)
        return np.array([sign * angles[0] + ku, angles[1] + kv])

    return transform


def canonicalize_trace(trace, u_opt: float, v_opt: float):
    """Return a copy of a 2-angle trace moved onto the canonical branch."""
    transform = canonical_trace_transform(trace.final_angles, u_opt, v_opt)
    out = type(trace)(
        evaluations=[(transform(a), e.copy(), en) for a, e, en in trace.evaluations],
        final_angles=transform(trace.final_angles),
        converged=trace.converged,
        hamiltonian_ref=trace.hamiltonian_ref,
        noise_offsets=trace.noise_offsets,
        depolarizing_lambda=trace.depolarizing_lambda,
        seed=trace.seed,
    )
    return out


def make_noisy_sample(h1, h2, h3, u, v, u_err=0.0, v_err=0.0):
    """Supervised (input, target) pair for a device with offsets (u_err, v_err).

    Input: (h1, h2, h3, measured x/y/z at the physical angles, requested u, v).
    Target: the request delta (u_opt - u - u_err, v_opt - v - v_err) that lands
    the physical angles on the optimum.
    """
    sol = solve(h1, h2, h3)
    x, y, z = expectations_at(u + u_err, v + v_err)
    inputs = np.array([h1, h2, h3, x, y, z, u, v])
    target = np.array([sol.u_opt - u - u_err, sol.v_opt - v - v_err])
    return inputs, target
