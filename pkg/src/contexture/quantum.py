"""Quantum side of the Clauser-Horne inequality for two qubits.

Everything stays real: the projector family lives in the x-z plane, so the
4x4 operators are real symmetric and a small Jacobi solver is enough.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import minimize_scalar

I2 = np.eye(2)
BOUND = 0.5 * (math.sqrt(2.0) - 1.0)


class QuantumError(ValueError):
    pass


@dataclass(frozen=True)
class AngleSet:
    alpha: float
    beta: float
    gamma: float
    delta: float

    def __post_init__(self):
        if not all(math.isfinite(x) for x in self.as_tuple()):
            raise QuantumError("angles must be finite")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.alpha, self.beta, self.gamma, self.delta)

    @classmethod
    def theta_family(cls, theta: float) -> AngleSet:
        """alpha = 0, beta = 2 theta, gamma = theta, delta = 3 theta."""
        return cls(0.0, 2 * theta, theta, 3 * theta)


def sigma(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, s], [s, -c]])


def projector(theta: float) -> np.ndarray:
    """Spin-up projector along theta, ``(I + sigma(theta)) / 2``."""
    return 0.5 * (I2 + sigma(theta))


def q_single_left(theta: float) -> np.ndarray:
    return np.kron(projector(theta), I2)


def q_single_right(theta: float) -> np.ndarray:
    return np.kron(I2, projector(theta))


def q_joint(x: float, y: float) -> np.ndarray:
    return np.kron(projector(x), projector(y))


def q_observables(theta: float, theta2: float):
    """``(q1, q3, q13)``: left single, right single, and joint projectors."""
    return q_single_left(theta), q_single_right(theta2), q_joint(theta, theta2)


def _angles(a) -> AngleSet:
    return a if isinstance(a, AngleSet) else AngleSet(*a)


def ch_operator(a) -> np.ndarray:
    """q13(a,g) + q14(a,d) + q23(b,g) - q24(b,d) - q1(a) - q3(g)."""
    al, be, ga, de = _angles(a).as_tuple()
    return (
        q_joint(al, ga)
        + q_joint(al, de)
        + q_joint(be, ga)
        - q_joint(be, de)
        - q_single_left(al)
        - q_single_right(ga)
    )


def jacobi_eigenvalues(m: np.ndarray, max_sweeps: int = 30, tol: float = 1e-13) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations, ascending."""
    a = np.array(m, dtype=float)
    n = a.shape[0]
    if a.shape != (n, n) or not np.allclose(a, a.T, atol=1e-12):
        raise QuantumError("Jacobi needs a real symmetric matrix")
    for _ in range(max_sweeps):
        off = math.sqrt(float(np.sum(np.tril(a, -1) ** 2)))
        if off < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = float(a[p, q])
                if abs(apq) < 1e-300:
                    continue
                # rotation angle that zeroes a[p, q]
                tau = float(a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                rot = np.eye(n)
                rot[p, p] = rot[q, q] = c
                rot[p, q] = s
                rot[q, p] = -s
                a = rot.T @ a @ rot
    return np.sort(np.diag(a))


def ch_closed_form(a) -> np.ndarray:
    """Eigenvalues 1/2 (+-sqrt(1 +- s) - 1) with s = sin(a-b) sin(g-d), ascending."""
    al, be, ga, de = _angles(a).as_tuple()
    s = math.sin(al - be) * math.sin(ga - de)
    vals = [0.5 * (sign * math.sqrt(1.0 + pm * s) - 1.0) for sign in (1, -1) for pm in (1, -1)]
    return np.sort(np.array(vals))


def ch_eigenvalues(a, tol: float = 1e-8) -> np.ndarray:
    """Jacobi eigenvalues of the CH operator, cross-checked against the closed form."""
    numeric = jacobi_eigenvalues(ch_operator(a))
    closed = ch_closed_form(a)
    err = float(np.max(np.abs(numeric - closed)))
    if err > tol:
        raise QuantumError(f"closed form and Jacobi disagree by {err:.3e}")
    return numeric


def max_eigenvalue(a) -> float:
    return float(ch_eigenvalues(a)[-1])


def theta_family_value(theta: float) -> float:
    """Printed closed form 1/2 {[(3 - cos 4 theta)/2]^(1/2) - 1}."""
    return 0.5 * (math.sqrt((3.0 - math.cos(4.0 * theta)) / 2.0) - 1.0)


@dataclass(frozen=True)
class BoundResult:
    value: float
    angles: AngleSet


def _golden_max(f, lo: float, hi: float) -> tuple[float, float]:
    res = minimize_scalar(lambda x: -f(x), bounds=(lo, hi), method="bounded", options={"xatol": 1e-12})
    return float(res.x), float(-res.fun)


def ch_bound(family: str = "free", grid: int = 64) -> BoundResult:
    """Maximum of the largest CH eigenvalue over an angle family.

    ``free``: the spectrum only depends on ``u = alpha - beta`` and
    ``v = gamma - delta``, so a grid over ``(u, v)`` is refined by
    alternating one-dimensional bounded searches. ``theta``: the one-parameter
    family of :meth:`AngleSet.theta_family`.
    Ties keep the lexicographically smallest grid point.
    """
    if family in ("theta", "theta-family"):
        step = math.pi / grid
        best = max(((max_eigenvalue(AngleSet.theta_family(k * step)), -k) for k in range(grid + 1)))
        k0 = -best[1]
        lo, hi = max(0.0, (k0 - 1) * step), min(math.pi, (k0 + 1) * step)
        t, v = _golden_max(lambda t: max_eigenvalue(AngleSet.theta_family(t)), lo, hi)
        if best[0] >= v:
            t, v = k0 * step, best[0]
        return BoundResult(v, AngleSet.theta_family(t))
    if family != "free":
        raise QuantumError(f"unknown angle family {family!r}")

    def f(u, v):
        return max_eigenvalue(AngleSet(u, 0.0, v, 0.0))

    step = 2 * math.pi / grid
    best_val, best_u, best_v = -math.inf, 0.0, 0.0
    for i in range(grid):
        for j in range(grid):
            u, v = -math.pi + i * step, -math.pi + j * step
            val = f(u, v)
            if val > best_val:
                best_val, best_u, best_v = val, u, v
    u, v = best_u, best_v
    for _ in range(8):
        u, _ = _golden_max(lambda x: f(x, v), u - step, u + step)
        v, val = _golden_max(lambda y: f(u, y), v - step, v + step)
        if val > best_val:
            best_val = val
    return BoundResult(best_val, AngleSet(u, 0.0, v, 0.0))


def theta_sweep(n: int = 65, lo: float = 0.0, hi: float = math.pi):
    """Rows ``(theta, largest eigenvalue, printed closed form)``."""
    out = []
    for k in range(n):
        t = lo + (hi - lo) * k / (n - 1) if n > 1 else lo
        out.append((t, max_eigenvalue(AngleSet.theta_family(t)), theta_family_value(t)))
    return out


def check_density_matrix(rho: np.ndarray, tol: float = 1e-9) -> None:
    rho = np.asarray(rho, dtype=float)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise QuantumError("density matrix must be square")
    if np.max(np.abs(rho - rho.T)) > tol:
        raise QuantumError("density matrix is not symmetric")
    if abs(np.trace(rho) - 1.0) > tol:
        raise QuantumError(f"density matrix trace is {np.trace(rho):.12g}, not 1")
    if float(np.min(jacobi_eigenvalues(rho))) < -tol:
        raise QuantumError("density matrix is not positive semidefinite")


def born_expectation(rho: np.ndarray, obs: np.ndarray) -> float:
    """``tr(rho A)`` after checking that ``rho`` is a density matrix."""
    rho = np.asarray(rho, dtype=float)
    obs = np.asarray(obs, dtype=float)
    if rho.shape != obs.shape:
        raise QuantumError(f"dimension mismatch: {rho.shape} vs {obs.shape}")
    check_density_matrix(rho)
    return float(np.trace(rho @ obs))


def pure_state(vec: Sequence[float]) -> np.ndarray:
    v = np.asarray(vec, dtype=float)
    norm = float(np.linalg.norm(v))
    if not norm > 0.0:
        raise QuantumError("state vector must be nonzero")
    v = v / norm
    return np.outer(v, v)


def fmt(x: float) -> str:
    """Twelve significant digits; anything below 1e-12 in size prints as 0."""
    s = f"{round(x, 12):.12g}"
    return "0" if s in ("-0", "0") else s
