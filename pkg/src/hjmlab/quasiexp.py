"""Quasi-exponential curve algebra.

A quasi-exponential curve is a finite sum of terms p(xi) * exp(rate * xi)
with polynomial p.  The family is closed under differentiation,
antidifferentiation, addition and multiplication, which makes integrated
volatilities, drift products and subspace generators exactly computable.
Rates are kept nonpositive so that curves (and all their derivatives)
have finite weighted-Sobolev norm for any admissible weight.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = ["QETerm", "QECurve", "QuasiExponentialSpec", "state_scale"]

_TRIM = 1e-300


@dataclass(frozen=True)
class QETerm:
    """One term p(xi) * exp(rate * xi); coeffs are p's coefficients, low order first."""

    coeffs: tuple[float, ...]
    rate: float

    def degree(self) -> int:
        return len(self.coeffs) - 1


def _trim(coeffs: tuple[float, ...]) -> tuple[float, ...]:
    cs = list(coeffs)
    while len(cs) > 1 and cs[-1] == 0.0:
        cs.pop()
    return tuple(cs)


def _poly_mul(a: tuple[float, ...], b: tuple[float, ...]) -> tuple[float, ...]:
    out = [0.0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return tuple(out)


@dataclass(frozen=True)
class QECurve:
    """Finite sum of quasi-exponential terms."""

    terms: tuple[QETerm, ...] = field(default_factory=tuple)

    @classmethod
    def constant(cls, c: float) -> "QECurve":
        return cls((QETerm((float(c),), 0.0),))

    @classmethod
    def exponential(cls, scale: float, rate: float) -> "QECurve":
        """scale * exp(rate * xi)."""
        return cls((QETerm((float(scale),), float(rate)),))

    @classmethod
    def monomial(cls, power: int, rate: float) -> "QECurve":
        coeffs = tuple([0.0] * power + [1.0])
        return cls((QETerm(coeffs, float(rate)),))

    def _merged(self) -> "QECurve":
        by_rate: dict[float, list[float]] = {}
        for t in self.terms:
            cs = by_rate.setdefault(t.rate, [])
            for i, c in enumerate(t.coeffs):
                if i < len(cs):
                    cs[i] += c
                else:
                    cs.append(c)
        terms = []
        for rate, cs in sorted(by_rate.items()):
            cs_t = _trim(tuple(cs))
            if any(abs(c) > _TRIM for c in cs_t):
                terms.append(QETerm(cs_t, rate))
        return QECurve(tuple(terms))

    def __add__(self, other: "QECurve") -> "QECurve":
        return QECurve(self.terms + other.terms)._merged()

    def __sub__(self, other: "QECurve") -> "QECurve":
        return self + other.scaled(-1.0)

    def scaled(self, c: float) -> "QECurve":
        return QECurve(
            tuple(QETerm(tuple(c * x for x in t.coeffs), t.rate) for t in self.terms)
        )._merged()

    def __mul__(self, other: "QECurve") -> "QECurve":
        terms = []
        for a in self.terms:
            for b in other.terms:
                terms.append(QETerm(_poly_mul(a.coeffs, b.coeffs), a.rate + b.rate))
        return QECurve(tuple(terms))._merged()

    def values(self, xi: np.ndarray) -> np.ndarray:
        xi = np.asarray(xi, dtype=float)
        out = np.zeros_like(xi)
        for t in self.terms:
            p = np.zeros_like(xi)
            for c in reversed(t.coeffs):
                p = p * xi + c
            out += p * np.exp(t.rate * xi)
        return out

    def derivative(self) -> "QECurve":
        """d/dxi of p e^{r xi} = (p' + r p) e^{r xi}."""
        terms = []
        for t in self.terms:
            cs = list(t.coeffs)
            dp = [i * cs[i] for i in range(1, len(cs))] or [0.0]
            rp = [t.rate * c for c in cs]
            n = max(len(dp), len(rp))
            dp += [0.0] * (n - len(dp))
            rp += [0.0] * (n - len(rp))
            terms.append(QETerm(_trim(tuple(d + r for d, r in zip(dp, rp))), t.rate))
        return QECurve(tuple(terms))._merged()

    def antiderivative(self) -> "QECurve":
        """Antiderivative vanishing at xi = 0 (exact)."""
        terms = []
        const = 0.0
        for t in self.terms:
            if t.rate == 0.0:
                cs = [0.0] + [c / (i + 1) for i, c in enumerate(t.coeffs)]
                terms.append(QETerm(_trim(tuple(cs)), 0.0))
            else:
                # solve q' + r q = p by descending degree
                d = t.degree()
                q = [0.0] * (d + 1)
                q[d] = t.coeffs[d] / t.rate
                for j in range(d - 1, -1, -1):
                    q[j] = (t.coeffs[j] - (j + 1) * q[j + 1]) / t.rate
                terms.append(QETerm(_trim(tuple(q)), t.rate))
                const -= q[0]
        if const != 0.0:
            terms.append(QETerm((const,), 0.0))
        return QECurve(tuple(terms))._merged()

    def monomial_generators(self) -> list["QECurve"]:
        """Curves xi^j e^{rate xi} spanning all derivatives of this curve.

        The returned set is closed under differentiation, which is what
        subspace construction relies on.
        """
        gens = []
        seen = set()
        for t in self.terms:
            for j in range(t.degree() + 1):
                key = (j, t.rate)
                if key not in seen:
                    seen.add(key)
                    gens.append(QECurve.monomial(j, t.rate))
        return gens

    def max_rate(self) -> float:
        return max((t.rate for t in self.terms), default=0.0)

    def is_zero(self) -> bool:
        return len(self.terms) == 0


@dataclass(frozen=True)
class QuasiExponentialSpec:
    """Volatility specification: a quasi-exponential base curve, optionally
    rescaled by a scalar functional of the current forward curve.

    With ``state_scaled`` the volatility is s(h) * base where
    s(h) = clip(h(0), 0, 1).  The clip maps forward-curve rays onto the unit
    segment, so the integrated volatility sweeps the segment [0, Gamma_base],
    which is the configuration the span-dimension experiments need.
    """

    base: QECurve
    state_scaled: bool = False

    def __post_init__(self) -> None:
        if self.base.max_rate() > 0.0:
            raise ValueError("quasi-exponential volatility rates must be <= 0")

    def scale(self, h_values: np.ndarray) -> float:
        if not self.state_scaled:
            return 1.0
        return float(min(max(h_values[0], 0.0), 1.0))

    def curve_values(self, xi: np.ndarray, h_values: np.ndarray | None = None) -> np.ndarray:
        s = 1.0 if h_values is None else self.scale(h_values)
        return s * self.base.values(xi)

    def integral_values(self, xi: np.ndarray, h_values: np.ndarray | None = None) -> np.ndarray:
        """Integrated volatility -int_0^xi vol, exact antiderivative."""
        s = 1.0 if h_values is None else self.scale(h_values)
        return -s * self.base.antiderivative().values(xi)


def state_scale(h_values: np.ndarray) -> float:
    """The fixed scalar functional used by state-scaled volatilities."""
    return float(min(max(h_values[0], 0.0), 1.0))
