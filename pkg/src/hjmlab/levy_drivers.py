"""Wiener and pure-jump Levy drivers: Levy measures, cumulants, sampling.

Two jump driver kinds are supported:

* finite jump tables (compound Poisson with finitely many jump sizes),
  where every integral against the Levy measure is an exact finite sum;
* bilateral Gamma, an infinite-activity driver with Levy density
  a+ exp(-l+ x)/x on x>0 and a- exp(-l- |x|)/|x| on x<0, whose cumulant
  has the closed form a+ ln(l+/(l+ - z)) + a- ln(l-/(l- + z)) on
  (-l-, l+).  The closed form is cross-checked against direct quadrature
  of the density in the test suite before anything downstream trusts it.

Components flagged ``compensated`` use the martingale form of the jump
integral; compensation enters the cumulant (subtract z * mean jump) and
the increment sampler (drift-corrected increments).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "LevyComponentSpec",
    "DriverConfig",
    "DriverIncrements",
    "cumulant",
    "cumulant_deriv",
    "raw_exp_transform",
    "raw_exp_transform_deriv",
    "sample_increments",
]

MAX_DERIV_ORDER = 12
_BG_DOMAIN_MARGIN = 1e-9


@dataclass(frozen=True)
class LevyComponentSpec:
    """One pure-jump component: finite table or bilateral Gamma."""

    kind: str  # "finite_jump_table" | "bilateral_gamma"
    compensated: bool = False
    jump_table: tuple[tuple[float, float], ...] = field(default_factory=tuple)
    bg_params: tuple[float, float, float, float] | None = None

    def __post_init__(self) -> None:
        if self.kind == "finite_jump_table":
            if not self.jump_table:
                raise ValueError("jump table must be nonempty")
            xs = [x for x, _ in self.jump_table]
            if any(x == 0.0 for x in xs):
                raise ValueError("jump sizes must be nonzero")
            if len(set(xs)) != len(xs):
                raise ValueError("jump sizes must be pairwise distinct")
            if any(rho <= 0.0 for _, rho in self.jump_table):
                raise ValueError("jump intensities must be positive")
        elif self.kind == "bilateral_gamma":
            if self.bg_params is None or len(self.bg_params) != 4:
                raise ValueError("bilateral_gamma needs (a+, l+, a-, l-)")
            if any(p <= 0.0 for p in self.bg_params):
                raise ValueError("bilateral Gamma parameters must be positive")
        else:
            raise ValueError(f"unknown Levy component kind: {self.kind!r}")

    # -- structure helpers -------------------------------------------------

    @property
    def is_table(self) -> bool:
        return self.kind == "finite_jump_table"

    def atoms(self) -> np.ndarray:
        return np.array([x for x, _ in self.jump_table])

    def intensities(self) -> np.ndarray:
        return np.array([rho for _, rho in self.jump_table])

    def total_intensity(self) -> float:
        return float(sum(rho for _, rho in self.jump_table))

    def mean_jump(self) -> float:
        """int x F(dx)."""
        if self.is_table:
            return float(sum(x * rho for x, rho in self.jump_table))
        ap, lp, am, lm = self.bg_params
        return ap / lp - am / lm

    def admissible_interval(self) -> tuple[float, float]:
        """Open interval on which the cumulant is evaluated."""
        if self.is_table:
            return (-math.inf, math.inf)
        _, lp, _, lm = self.bg_params
        eps = _BG_DOMAIN_MARGIN * min(lp, lm)
        return (-lm + eps, lp - eps)

    def check_domain(self, z: np.ndarray | float) -> None:
        lo, hi = self.admissible_interval()
        z = np.asarray(z, dtype=float)
        if np.any(z <= lo) or np.any(z >= hi):
            raise ValueError(
                f"cumulant argument outside admissible interval ({lo:g}, {hi:g})"
            )


def raw_exp_transform(spec: LevyComponentSpec, z: np.ndarray | float):
    """int (e^{zx} - 1) F(dx), regardless of the compensation flag.

    This is the transform whose differences produce the jump-deformation
    curves; compensation only shifts it by a term linear in z.
    """
    spec.check_domain(z)
    z = np.asarray(z, dtype=float)
    if spec.is_table:
        xs = spec.atoms()
        rhos = spec.intensities()
        out = np.expm1(np.multiply.outer(z, xs)) @ rhos
    else:
        ap, lp, am, lm = spec.bg_params
        out = ap * np.log(lp / (lp - z)) + am * np.log(lm / (lm + z))
    return out if out.ndim else float(out)


def raw_exp_transform_deriv(spec: LevyComponentSpec, z: np.ndarray | float, order: int):
    """d^m/dz^m of the raw transform, m >= 1: int x^m e^{zx} F(dx)."""
    if order < 1 or order > MAX_DERIV_ORDER:
        raise ValueError(f"derivative order must be in 1..{MAX_DERIV_ORDER}")
    spec.check_domain(z)
    z = np.asarray(z, dtype=float)
    if spec.is_table:
        xs = spec.atoms()
        rhos = spec.intensities()
        out = np.exp(np.multiply.outer(z, xs)) @ (rhos * xs**order)
    else:
        ap, lp, am, lm = spec.bg_params
        fac = math.factorial(order - 1)
        out = fac * (ap / (lp - z) ** order + (-1.0) ** order * am / (lm + z) ** order)
    return out if out.ndim else float(out)


def cumulant(spec: LevyComponentSpec, z: np.ndarray | float):
    """Cumulant generating function of the component.

    Uncompensated: int (e^{zx} - 1) F(dx);
    compensated:   int (e^{zx} - 1 - zx) F(dx).
    """
    out = raw_exp_transform(spec, z)
    if spec.compensated:
        out = out - np.asarray(z, dtype=float) * spec.mean_jump()
        return out if np.ndim(out) else float(out)
    return out


def cumulant_deriv(spec: LevyComponentSpec, z: np.ndarray | float, order: int):
    """Exact derivative of the cumulant; compensation affects only order 1."""
    out = raw_exp_transform_deriv(spec, z, order)
    if order == 1 and spec.compensated:
        out = out - spec.mean_jump()
        return out if np.ndim(out) else float(out)
    return out


@dataclass(frozen=True)
class DriverConfig:
    """Driver dimensions: d Wiener components plus n independent jump components."""

    d: int
    components: tuple[LevyComponentSpec, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if self.d < 0:
            raise ValueError("d must be nonnegative")
        if self.d + len(self.components) < 1:
            raise ValueError("need at least one driver component")

    @property
    def n(self) -> int:
        return len(self.components)


@dataclass(frozen=True)
class DriverIncrements:
    """Sampled path increments for one path.

    wiener has shape (n_steps, d).  For finite-table components,
    jump_counts[k] has shape (n_steps, q_k) with per-atom Poisson counts;
    for bilateral Gamma it is None and the raw increment is stored
    directly.  jump_x aggregates each component into its (compensated,
    when flagged) increment per step.
    """

    dt: float
    wiener: np.ndarray
    jump_counts: tuple[np.ndarray | None, ...]
    jump_x: np.ndarray

    @property
    def n_steps(self) -> int:
        return self.wiener.shape[0] if self.wiener.size else self.jump_x.shape[0]

    def matrix(self) -> np.ndarray:
        """Increment matrix with Wiener columns first, jump columns after."""
        return np.hstack([self.wiener, self.jump_x])


def sample_increments(
    config: DriverConfig, dt: float, n_steps: int, rng_seed: int
) -> DriverIncrements:
    """Draw one path of driver increments; deterministic given the seed."""
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    rng = np.random.default_rng(rng_seed)
    wiener = rng.normal(0.0, math.sqrt(dt), size=(n_steps, config.d))
    counts: list[np.ndarray | None] = []
    jump_x = np.zeros((n_steps, config.n))
    for k, spec in enumerate(config.components):
        if spec.is_table:
            xs = spec.atoms()
            rhos = spec.intensities()
            total = rhos.sum()
            n_jumps = rng.poisson(total * dt, size=n_steps)
            ck = rng.multinomial(n_jumps, rhos / total)
            counts.append(ck)
            jump_x[:, k] = ck @ xs
            if spec.compensated:
                jump_x[:, k] -= dt * spec.mean_jump()
        else:
            ap, lp, am, lm = spec.bg_params
            pos = rng.gamma(ap * dt, 1.0 / lp, size=n_steps)
            neg = rng.gamma(am * dt, 1.0 / lm, size=n_steps)
            counts.append(None)
            jump_x[:, k] = pos - neg
            if spec.compensated:
                jump_x[:, k] -= dt * spec.mean_jump()
    return DriverIncrements(dt, wiener, tuple(counts), jump_x)
