"""Shared test utilities: closed-form metrics, random inputs, and
independent oracles that do not go through the library's own formulas."""

import numpy as np

from nhur import metric_from_matrix


def gs_closed(gamma: float) -> np.ndarray:
    """Closed-form metric of the PT model in the symmetric phase."""
    return np.array([[1.0, -1j * gamma], [1j * gamma, 1.0]]) / np.sqrt(
        1.0 - gamma * gamma
    )


def gb_closed(gamma: float) -> np.ndarray:
    """Closed-form metric of the PT model in the broken phase."""
    return np.array([[gamma, -1j], [1j, gamma]]) / np.sqrt(gamma * gamma - 1.0)


def metric_gs(gamma: float = 0.9):
    return metric_from_matrix(gs_closed(gamma))


def metric_gb(gamma: float = 1.2):
    return metric_from_matrix(gb_closed(gamma))


def random_operator(rng, dim: int = 2) -> np.ndarray:
    """Matrix with entries uniform in the closed unit disc."""
    r = np.sqrt(rng.uniform(0.0, 1.0, (dim, dim)))
    phi = rng.uniform(0.0, 2.0 * np.pi, (dim, dim))
    return r * np.exp(1j * phi)


def random_hermitian(rng, dim: int = 2) -> np.ndarray:
    m = random_operator(rng, dim)
    return (m + m.conj().T) / 2.0


def random_state(rng, metric) -> np.ndarray:
    """Normalized state in the metric's inner product."""
    v = rng.normal(size=metric.dim) + 1j * rng.normal(size=metric.dim)
    nsq = complex(np.vdot(v, metric.g @ v)).real
    return v / np.sqrt(nsq)


def metric_sqrt(g: np.ndarray) -> np.ndarray:
    """Principal square root of a Hermitian positive-definite matrix."""
    w, v = np.linalg.eigh(g)
    return (v * np.sqrt(w)) @ v.conj().T


def good_observable_for(rng, metric) -> np.ndarray:
    """Random operator satisfying X^dag G = G X, via G^(-1/2) H G^(1/2)."""
    s = metric_sqrt(np.asarray(metric.g))
    return np.linalg.inv(s) @ random_hermitian(rng, metric.dim) @ s


def dirac_expect(x: np.ndarray, psi: np.ndarray) -> complex:
    return complex(np.vdot(psi, x @ psi))


def dirac_variance(x: np.ndarray, psi: np.ndarray) -> float:
    w = x @ psi
    val = complex(np.vdot(w, w) - np.vdot(w, psi) * np.vdot(psi, w))
    return val.real


def dirac_covariance(a: np.ndarray, b: np.ndarray, psi: np.ndarray) -> complex:
    wa = a @ psi
    wb = b @ psi
    return complex(np.vdot(wa, wb) - np.vdot(wa, psi) * np.vdot(psi, wb))
