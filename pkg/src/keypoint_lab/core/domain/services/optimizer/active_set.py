"""Primal active-set solver for strictly convex QPs with box constraints."""

from __future__ import annotations

import itertools
import math

import numpy as np

from ...value_objects.geometry import FloatArray
from ...value_objects.qp import QPProblem, QPSolution
from ..exceptions import InfeasibleConstraintsError, SolverStalledError

MAX_ITERATIONS = 100
STEP_TOL = 1e-12
MULTIPLIER_TOL = 1e-12


def box_bounds(p: QPProblem) -> tuple[FloatArray, FloatArray, list[int], list[int]]:
    """Per-variable bounds and the rows that set them (-1 when unbounded).

    Raises:
        ValueError: If a row of H is not a scaled unit vector
        InfeasibleConstraintsError: If some lower bound exceeds its upper bound
    """
    n = p.Q.shape[0]
    lower = np.full(n, -math.inf)
    upper = np.full(n, math.inf)
    lower_row = [-1] * n
    upper_row = [-1] * n
    for row, (h, e) in enumerate(zip(p.H, p.eps, strict=True)):
        nonzero = np.flatnonzero(h)
        if len(nonzero) != 1:
            raise ValueError(f"row {row} of H is not a box constraint")
        i = int(nonzero[0])
        bound = float(e / h[i])
        if h[i] > 0.0 and bound > lower[i]:
            lower[i], lower_row[i] = bound, row
        elif h[i] < 0.0 and bound < upper[i]:
            upper[i], upper_row[i] = bound, row
    if np.any(lower > upper):
        raise InfeasibleConstraintsError("box constraints have an empty intersection")
    return lower, upper, lower_row, upper_row


def _kkt_step(
    p: QPProblem, z: FloatArray, working: list[int]
) -> tuple[FloatArray, FloatArray]:
    n = len(z)
    gradient = p.gradient(z)
    A = p.H[working]
    m = len(working)
    kkt = np.zeros((n + m, n + m))
    kkt[:n, :n] = 2.0 * p.Q
    kkt[:n, n:] = -A.T
    kkt[n:, :n] = A
    rhs = np.concatenate([-gradient, np.zeros(m)])
    solution = np.linalg.solve(kkt, rhs)
    return solution[:n], solution[n:]


def kkt_residual(p: QPProblem, z: FloatArray, multipliers: FloatArray) -> float:
    """Infinity norm of the stationarity residual 2Qz + b - H^T lambda."""
    return float(np.max(np.abs(p.gradient(z) - p.H.T @ multipliers)))


def solve_qp(p: QPProblem) -> QPSolution:
    """Global minimizer of a box-constrained strictly convex QP.

    Starts from the unconstrained minimizer clipped to the box, then runs the
    primal active-set iteration: solve the equality-constrained subproblem on
    the working set, drop the constraint with the most negative multiplier,
    or step to the first blocking constraint.

    Raises:
        InfeasibleConstraintsError: If the box is empty
        SolverStalledError: If no optimum is reached in ``MAX_ITERATIONS`` steps
    """
    lower, upper, lower_row, upper_row = box_bounds(p)
    z = np.clip(np.linalg.solve(p.Q, -0.5 * p.b), lower, upper)

    working: list[int] = []
    for i in range(len(z)):
        if lower_row[i] >= 0 and z[i] == lower[i]:
            working.append(lower_row[i])
        elif upper_row[i] >= 0 and z[i] == upper[i]:
            working.append(upper_row[i])

    for iteration in range(1, MAX_ITERATIONS + 1):
        step, lam = _kkt_step(p, z, working)
        if float(np.max(np.abs(step))) <= STEP_TOL * (1.0 + float(np.max(np.abs(z)))):
            if not working or float(lam.min()) >= -MULTIPLIER_TOL:
                multipliers = np.zeros(len(p.eps))
                multipliers[working] = np.maximum(lam, 0.0)
                return QPSolution(
                    z=z,
                    objective=p.objective(z),
                    active=tuple(sorted(working)),
                    multipliers=multipliers,
                    kkt_residual=kkt_residual(p, z, multipliers),
                    iterations=iteration,
                )
            working.pop(int(np.argmin(lam)))
            continue

        alpha, blocking = 1.0, -1
        slopes = p.H @ step
        slack = p.H @ z - p.eps
        for row in range(len(p.eps)):
            if row in working or slopes[row] >= 0.0:
                continue
            ratio = max(0.0, -slack[row] / slopes[row])
            if ratio < alpha:
                alpha, blocking = ratio, row
        z = z + alpha * step
        if blocking >= 0:
            # Land exactly on the blocking bound.
            i = int(np.flatnonzero(p.H[blocking])[0])
            z[i] = p.eps[blocking] / p.H[blocking, i]
            working.append(blocking)

    raise SolverStalledError(MAX_ITERATIONS)


def solve_box_qp_exhaustive(p: QPProblem) -> FloatArray:
    """Reference minimizer by enumerating every free/lower/upper pattern.

    Exponential in the number of variables; meant for checking ``solve_qp``.
    """
    lower, upper, _, _ = box_bounds(p)
    n = p.Q.shape[0]
    best_z: FloatArray | None = None
    best_f = math.inf
    for pattern in itertools.product((0, 1, 2), repeat=n):
        fixed = np.array([s != 0 for s in pattern])
        if any(
            (s == 1 and not math.isfinite(lower[i])) or (s == 2 and not math.isfinite(upper[i]))
            for i, s in enumerate(pattern)
        ):
            continue
        z = np.zeros(n)
        for i, s in enumerate(pattern):
            if s == 1:
                z[i] = lower[i]
            elif s == 2:
                z[i] = upper[i]
        free = ~fixed
        if np.any(free):
            Qff = p.Q[np.ix_(free, free)]
            rhs = -(p.b[free] + 2.0 * p.Q[np.ix_(free, fixed)] @ z[fixed])
            z[free] = np.linalg.solve(2.0 * Qff, rhs)
        if np.all(z >= lower - 1e-12) and np.all(z <= upper + 1e-12):
            f = p.objective(z)
            if f < best_f:
                best_f, best_z = f, z
    if best_z is None:
        raise InfeasibleConstraintsError("no feasible pattern")
    return best_z
