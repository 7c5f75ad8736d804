"""Scenario builders and parameter sweeps.

Two worked families are provided.  The first pairs two real non-normal
operators, assembled from polar parts, with a real planar state; it runs
under the Dirac product.  The second is the PT two-level model
``H(gamma) = [[i*gamma, 1], [1, -i*gamma]]`` in both of its spectral
phases, with the metric built from the right eigenvectors and the state a
weighted superposition of them.

Sweeps evaluate all four relations on a uniform inclusive grid and never
abort on a bad point; failures are recorded on the point itself.
"""

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import (
    ExceptionalPointError,
    NhurError,
    NonFiniteError,
    PhaseMismatchError,
)
from .linalg import SIGMA_Y, EigenSystem
from .metric import identity_metric, metric_from_right_eigenvectors
from .relations import Formalism, UrEvaluation, evaluate_all
from .states import superposition_state
from .tolerances import EPS_EP

SYMMETRIC = "symmetric"
BROKEN = "broken"


def pt_hamiltonian(gamma: float) -> np.ndarray:
    """The one-parameter PT two-level Hamiltonian."""
    return np.array([[1j * gamma, 1.0], [1.0, -1j * gamma]], dtype=complex)


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise NonFiniteError(f"{name} must be finite, got {value}")
    return value


@dataclass(frozen=True)
class Example1Config:
    """Angles for the polar-part scenario; theta0 is the sweep variable."""

    theta0: float = 0.0
    theta1: float = math.pi / 4
    theta3: float = math.pi / 3
    theta5: float = math.pi / 4
    theta7: float = 3 * math.pi / 4

    def validated(self) -> "Example1Config":
        for name in ("theta0", "theta1", "theta3", "theta5", "theta7"):
            _require_finite(name, getattr(self, name))
        return self


def _polar_operator(theta_u: float, theta_s: float, theta0: float) -> np.ndarray:
    """S U with U a reflection through angle 2(theta_u - theta0) and
    S = diag(-cos 2 theta_s, 1)."""
    d = 2.0 * (theta_u - theta0)
    u = np.array(
        [[math.cos(d), math.sin(d)], [math.sin(d), -math.cos(d)]], dtype=complex
    )
    s = np.array([[-math.cos(2.0 * theta_s), 0.0], [0.0, 1.0]], dtype=complex)
    return s @ u


def build_example1(cfg: Example1Config):
    """Operators, state, and (identity) metric for the polar-part scenario."""
    cfg = cfg.validated()
    a = _polar_operator(cfg.theta1, cfg.theta3, cfg.theta0)
    b = _polar_operator(cfg.theta5, cfg.theta7, cfg.theta0)
    psi = np.array(
        [math.cos(2.0 * cfg.theta0), math.sin(2.0 * cfg.theta0)], dtype=complex
    )
    return a, b, psi, identity_metric(2)


@dataclass(frozen=True)
class Example2Config:
    """PT-model scenario; alpha is the sweep variable.

    phase selects the spectral region and must be consistent with gamma:
    "symmetric" needs gamma^2 < 1, "broken" needs gamma > 1.
    """

    gamma: float
    p: float
    alpha: float = 0.0
    phase: str = SYMMETRIC

    @classmethod
    def symmetric_default(cls, alpha: float = 0.0) -> "Example2Config":
        return cls(gamma=0.9, p=0.5, alpha=alpha, phase=SYMMETRIC)

    @classmethod
    def broken_default(cls, alpha: float = 0.0) -> "Example2Config":
        return cls(gamma=1.2, p=1.5, alpha=alpha, phase=BROKEN)

    def validated(self) -> "Example2Config":
        _require_finite("gamma", self.gamma)
        _require_finite("p", self.p)
        _require_finite("alpha", self.alpha)
        if self.phase not in (SYMMETRIC, BROKEN):
            raise PhaseMismatchError(
                f"phase must be {SYMMETRIC!r} or {BROKEN!r}, got {self.phase!r}"
            )
        if abs(self.gamma * self.gamma - 1.0) <= EPS_EP:
            raise ExceptionalPointError(
                f"gamma={self.gamma:g} sits at the exceptional point gamma^2=1; "
                "the eigenvector frame and metric degenerate there"
            )
        if self.phase == SYMMETRIC and not self.gamma * self.gamma < 1.0:
            raise PhaseMismatchError(
                f"gamma={self.gamma:g} lies outside the symmetric phase "
                "(needs gamma^2 < 1)"
            )
        if self.phase == BROKEN and not self.gamma > 1.0:
            raise PhaseMismatchError(
                f"gamma={self.gamma:g} lies outside the broken phase "
                "(needs gamma > 1)"
            )
        return self


def symmetric_eigensystem(gamma: float) -> EigenSystem:
    """Closed-form eigensystem of the PT Hamiltonian for gamma^2 < 1.

    Eigenvalues are +-cos(theta) with sin(theta) = gamma; the eigenvector
    scale 1/sqrt(2 cos theta) makes the frame-sum metric come out in its
    standard closed form.
    """
    theta = math.asin(gamma)
    c = math.cos(theta)
    norm = 1.0 / math.sqrt(2.0 * c)
    half = 0.5 * theta
    e_plus = norm * np.array([np.exp(1j * half), np.exp(-1j * half)])
    e_minus = 1j * norm * np.array([np.exp(-1j * half), -np.exp(1j * half)])
    values = np.array([c, -c], dtype=complex)
    return EigenSystem.from_right(values, np.column_stack([e_plus, e_minus]))


def broken_eigensystem(gamma: float) -> EigenSystem:
    """Closed-form eigensystem of the PT Hamiltonian for gamma > 1.

    Eigenvalues are the conjugate pair +-i*lambda, lambda = sqrt(gamma^2-1).
    """
    lam = math.sqrt(gamma * gamma - 1.0)
    norm = math.sqrt(2.0 * gamma * lam - 2.0 * lam * lam)
    e_plus = np.array([1.0, -1j * (gamma - lam)]) / norm
    e_minus = np.array([1j * (gamma - lam), 1.0]) / norm
    values = np.array([1j * lam, -1j * lam], dtype=complex)
    return EigenSystem.from_right(values, np.column_stack([e_plus, e_minus]))


def build_example2(cfg: Example2Config):
    """Operators, state, and eigenframe metric for the PT scenario.

    In the symmetric phase the observable pair is (H(gamma), sigma_y); in
    the broken phase H(gamma) stops being a good observable for the
    broken-phase metric and the pair is (H(1/gamma), sigma_y).  The state
    superposes the two right eigenvectors with weights (1, p e^{i alpha}).
    """
    cfg = cfg.validated()
    h = pt_hamiltonian(cfg.gamma)
    if cfg.phase == SYMMETRIC:
        sys = symmetric_eigensystem(cfg.gamma)
        a = h
    else:
        sys = broken_eigensystem(cfg.gamma)
        a = pt_hamiltonian(1.0 / cfg.gamma)
    g = metric_from_right_eigenvectors(sys, hamiltonian=h)
    weights = np.array([1.0, cfg.p * np.exp(1j * cfg.alpha)])
    psi = superposition_state([sys.right_vector(0), sys.right_vector(1)], weights, g)
    return a, np.array(SIGMA_Y), psi, g


@dataclass(frozen=True)
class ScenarioPoint:
    """One sweep sample: the four evaluations, or a recorded failure."""

    param: float
    evaluations: tuple[UrEvaluation, ...]
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


def sweep(builder, param_range, points: int,
          formalism: Formalism = Formalism.PLAIN,
          *, ur_tol: float | None = None) -> list[ScenarioPoint]:
    """Evaluate all relations on a uniform inclusive grid.

    builder maps a parameter value to (A, B, psi, metric).  A point whose
    build or evaluation fails is recorded with its error message; the
    sweep itself always completes.
    """
    if points < 2:
        raise ValueError(f"a sweep needs at least 2 points, got {points}")
    lo, hi = float(param_range[0]), float(param_range[1])
    out = []
    for value in np.linspace(lo, hi, points):
        value = float(value)
        try:
            a, b, psi, g = builder(value)
            evals = evaluate_all(a, b, psi, g, formalism, ur_tol=ur_tol)
            out.append(ScenarioPoint(param=value, evaluations=evals))
        except NhurError as exc:
            out.append(ScenarioPoint(
                param=value, evaluations=(),
                error=f"{type(exc).__name__}: {exc}",
            ))
    return out


def example1_sweep(cfg: Example1Config | None = None, points: int = 721,
                   formalism: Formalism = Formalism.PLAIN,
                   *, ur_tol: float | None = None) -> list[ScenarioPoint]:
    """Sweep theta0 over [0, pi]."""
    base = (cfg or Example1Config()).validated()

    def builder(theta0: float):
        return build_example1(replace(base, theta0=theta0))

    return sweep(builder, (0.0, math.pi), points, formalism, ur_tol=ur_tol)


def example2_sweep(cfg: Example2Config, points: int = 721,
                   formalism: Formalism = Formalism.GOOD,
                   *, ur_tol: float | None = None) -> list[ScenarioPoint]:
    """Sweep alpha over [0, 2 pi] at fixed gamma and p."""
    base = cfg.validated()

    def builder(alpha: float):
        return build_example2(replace(base, alpha=alpha))

    return sweep(builder, (0.0, 2.0 * math.pi), points, formalism, ur_tol=ur_tol)
