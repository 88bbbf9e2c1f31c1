"""Parameter updates for the attack loop.

All three methods spend one cost evaluation ("measurement") per probe and
charge it to a ``MeasurementCounter``. The cost at the current parameters is
passed in by the caller, which has already paid for it.

* ``gd``: forward-difference gradient descent.
* ``hyperspherical``: lift (params, cost) to n+1 dimensions, switch to
  hyperspherical coordinates and descend on the angles and the radius.
* ``plane_rotation``: rotate the plane spanned by one random parameter axis and
  the cost axis, descend on the rotated height, rotate back.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from .errors import ConfigError

METHODS = ("gd", "hyperspherical", "plane_rotation")

CostFn = Callable[[np.ndarray], float]


@dataclass(frozen=True)
class OptimizerConfig:
    method: str = "hyperspherical"
    learning_rate: float = 0.05
    fd_step: float = 0.3
    rotation_angle: float = 0.3
    max_iterations: int = 1000
    patience: int = 20  # steps without a new best sampled cost before restarting; 0 disables

    def __post_init__(self):
        if self.method not in METHODS:
            raise ConfigError(f"unknown optimizer {self.method!r}; choose from {METHODS}")
        if not self.learning_rate > 0:
            raise ConfigError("learning_rate must be positive")
        if not self.fd_step > 0:
            raise ConfigError("fd_step must be positive")
        if self.max_iterations < 0:
            raise ConfigError("max_iterations must be >= 0")
        if self.patience < 0:
            raise ConfigError("patience must be >= 0")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "OptimizerConfig":
        unknown = set(d) - set(cls.__dataclass_fields__)
        if unknown:
            raise ConfigError(f"unknown optimizer keys: {sorted(unknown)}")
        return cls(**d)


@dataclass
class MeasurementCounter:
    total_measurements: int = 0
    iterations: int = 0

    def probe(self, n: int = 1) -> None:
        self.total_measurements += n


def probes_per_step(method: str, n_params: int) -> int:
    """Cost evaluations one optimiser step spends."""
    if method == "hyperspherical":
        return n_params + 1
    return n_params


def wrap_angles(x) -> np.ndarray:
    """Map angles into (-pi, pi]."""
    x = np.asarray(x, dtype=float)
    return np.pi - np.mod(np.pi - x, 2 * np.pi)


def estimate_gradient(
    cost_at: CostFn,
    params,
    fd_step: float,
    counter: MeasurementCounter | None = None,
    base_cost: float | None = None,
) -> np.ndarray:
    """Forward-difference gradient; one counted probe per parameter."""
    params = np.asarray(params, dtype=float)
    if base_cost is None:
        base_cost = cost_at(params)
        if counter is not None:
            counter.probe()
    grad = np.empty_like(params)
    for i in range(params.size):
        shifted = params.copy()
        shifted[i] += fd_step
        grad[i] = (cost_at(shifted) - base_cost) / fd_step
        if counter is not None:
            counter.probe()
    return grad


def gd_step(params, gradient, learning_rate: float) -> np.ndarray:
    params = np.asarray(params, dtype=float)
    gradient = np.asarray(gradient, dtype=float)
    if params.shape != gradient.shape:
        raise ConfigError(f"shape mismatch {params.shape} vs {gradient.shape}")
    return wrap_angles(params - learning_rate * gradient)


# -- hyperspherical coordinates ------------------------------------------------


def to_hyperspherical(point) -> tuple[float, np.ndarray]:
    """Cartesian (n+1 values) -> (r, n angles).

    x_1 = r cos t_1, x_k = r cos t_k prod_{j<k} sin t_j, x_{n+1} = r prod sin t_j.
    The first n-1 angles lie in [0, pi], the last in (-pi, pi].
    """
    x = np.asarray(point, dtype=float)
    if x.ndim != 1 or x.size < 2:
        raise ConfigError("need a point with at least 2 coordinates")
    r = float(np.linalg.norm(x))
    if r == 0.0:
        raise ConfigError("angles are undefined at the origin")
    n = x.size - 1
    # tail norms: sqrt(x_k^2 + ... + x_{n+1}^2)
    tail = np.sqrt(np.cumsum((x**2)[::-1])[::-1])
    angles = np.empty(n)
    for k in range(n - 1):
        angles[k] = np.arctan2(tail[k + 1], x[k])
    angles[n - 1] = np.arctan2(x[n], x[n - 1])
    if angles[n - 1] == -np.pi:
        angles[n - 1] = np.pi
    return r, angles


def from_hyperspherical(r: float, angles) -> np.ndarray:
    angles = np.asarray(angles, dtype=float)
    n = angles.size
    out = np.empty(n + 1)
    sin_prod = 1.0
    for k in range(n):
        out[k] = r * sin_prod * np.cos(angles[k])
        sin_prod *= np.sin(angles[k])
    out[n] = r * sin_prod
    return out


def hyperspherical_step(
    params,
    sampled_cost: float,
    cost_at: CostFn,
    config: OptimizerConfig,
    counter: MeasurementCounter | None = None,
) -> np.ndarray:
    params = np.asarray(params, dtype=float)
    if sampled_cost == 0:
        return params.copy()
    point = np.append(params, sampled_cost)
    if not np.any(point):
        grad = estimate_gradient(cost_at, params, config.fd_step, counter, sampled_cost)
        return gd_step(params, grad, config.learning_rate)
    n = params.size
    h = config.fd_step
    r, theta = to_hyperspherical(point)
    grad = np.empty(n)
    for j in range(n):
        shifted = theta.copy()
        shifted[j] += h
        grad[j] = (cost_at(from_hyperspherical(r, shifted)[:n]) - sampled_cost) / h
        if counter is not None:
            counter.probe()
    grad_r = (cost_at(from_hyperspherical(r + h, theta)[:n]) - sampled_cost) / h
    if counter is not None:
        counter.probe()
    theta = theta - config.learning_rate * grad
    r = abs(r - config.learning_rate * grad_r)
    return wrap_angles(from_hyperspherical(r, theta)[:n])


# -- plane rotations -------------------------------------------------------------


def plane_rotation_matrix(dim: int, i: int, j: int, angle: float) -> np.ndarray:
    """Givens rotation by ``angle`` in the (i, j) plane."""
    R = np.eye(dim)
    c, s = np.cos(angle), np.sin(angle)
    R[i, i] = R[j, j] = c
    R[i, j] = -s
    R[j, i] = s
    return R


def plane_rotation_step(
    params,
    sampled_cost: float,
    cost_at: CostFn,
    config: OptimizerConfig,
    counter: MeasurementCounter | None = None,
    rng: np.random.Generator | None = None,
) -> np.ndarray:
    """One descent step on the landscape seen from a rotated frame.

    Rotating the (x_i, cost) plane by ``a`` turns the height into
    ``sin(a) x_i + cos(a) cost``, i.e. the surface gets a linear tilt along
    axis i. The tilt moves the point even where the cost is flat.
    """
    params = np.asarray(params, dtype=float)
    if sampled_cost == 0:
        return params.copy()
    n = params.size
    rng = np.random.default_rng() if rng is None else rng
    i = int(rng.integers(n))
    R = plane_rotation_matrix(n + 1, i, n, config.rotation_angle)
    grad_cost = estimate_gradient(cost_at, params, config.fd_step, counter, sampled_cost)
    # gradient of the rotated height coordinate w.r.t. the parameters
    grad = R[n, n] * grad_cost
    grad[i] += R[n, i]
    return gd_step(params, grad, config.learning_rate)


def step(
    params,
    sampled_cost: float,
    cost_at: CostFn,
    config: OptimizerConfig,
    counter: MeasurementCounter | None = None,
    rng: np.random.Generator | None = None,
) -> np.ndarray:
    """Dispatch one update according to ``config.method``."""
    if config.method == "gd":
        if sampled_cost == 0:
            return np.asarray(params, dtype=float).copy()
        grad = estimate_gradient(cost_at, params, config.fd_step, counter, sampled_cost)
        return gd_step(params, grad, config.learning_rate)
    if config.method == "hyperspherical":
        return hyperspherical_step(params, sampled_cost, cost_at, config, counter)
    return plane_rotation_step(params, sampled_cost, cost_at, config, counter, rng)
