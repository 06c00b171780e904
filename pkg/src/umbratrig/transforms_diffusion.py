"""Borel-type transforms and spectral solvers for Laguerre-type heat equations.

The solvers superpose eigenfunctions: for ``d/dtau F = L F`` with
``L f(x t) = t f(x t)``, an initial condition
``f(x) = int rho(t) f(x t) dt`` evolves into
``F(x, tau) = int rho(t) exp(t tau) f(x t) dt``.  Continuous spectral
densities are integrated with Gauss-Laguerre after rescaling the spectral
axis by the margin ``decay - tau``; discrete atoms are summed directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np
from numpy.polynomial.laguerre import laggauss
from scipy.special import roots_jacobi

from .errors import ConvergenceError, DivergenceError, DomainError, QuadratureError
from .series_core import (DerivOp, EvalConfig, SeriesFamily, Tag, beta, coefficients,
                          evaluate, polyval, sum_terms)
from .umbral_algebra import LAGUERRE, embed, umbral_sum, weight_matrix

__all__ = [
    "QuadratureSpec",
    "SpectralDensity",
    "DiffusionProblem",
    "borel_transform",
    "g_alpha_integral",
    "laguerre_heat_closed",
    "heat_spectral",
    "heat_spectral_coeffs",
    "airy_heat_spectral",
    "airy_heat_coeffs",
    "ll_heat_umbral",
    "ll_heat_bivariate",
    "evolve_power_series",
    "solve",
]

# Large-argument evaluations at the outer quadrature nodes need more terms.
TRANSFORM_CONFIG = EvalConfig(max_terms=4000)
BOREL_DOMAIN = 10.0


@dataclass(frozen=True)
class QuadratureSpec:
    """Quadrature rule.

    ``gauss_laguerre`` integrates against ``exp(-t)`` on ``(0, inf)``;
    ``gauss_jacobi`` against ``t**exp_at_0 (1-t)**exp_at_1`` on ``(0, 1)``;
    ``simpson`` is composite Simpson on ``[0, upper]``.
    """

    rule: str = "gauss_laguerre"
    nodes: int = 96
    exp_at_1: float = 0.0
    exp_at_0: float = -1.0 / 3.0
    panels: int = 400
    upper: float = 10.0

    def __post_init__(self) -> None:
        if self.rule not in ("gauss_laguerre", "gauss_jacobi", "simpson"):
            raise DomainError(f"unknown quadrature rule {self.rule!r}")
        if self.rule != "simpson" and self.nodes < 2:
            raise DomainError("quadrature needs at least 2 nodes")
        if self.rule == "gauss_jacobi" and not (self.exp_at_1 > -1 and self.exp_at_0 > -1):
            raise DomainError("Jacobi exponents must exceed -1")
        if self.rule == "simpson" and (self.panels < 2 or not self.upper > 0):
            raise DomainError("simpson needs panels >= 2 and a positive upper limit")

    @classmethod
    def gauss_laguerre(cls, nodes: int = 96) -> "QuadratureSpec":
        return cls("gauss_laguerre", nodes=nodes)

    @classmethod
    def gauss_jacobi(cls, nodes: int = 64, exp_at_1: float = 0.0,
                     exp_at_0: float = -1.0 / 3.0) -> "QuadratureSpec":
        return cls("gauss_jacobi", nodes=nodes, exp_at_1=exp_at_1, exp_at_0=exp_at_0)

    @classmethod
    def simpson(cls, panels: int = 400, upper: float = 10.0) -> "QuadratureSpec":
        return cls("simpson", panels=panels, upper=upper)


GAUSS_LAGUERRE_96 = QuadratureSpec.gauss_laguerre(96)


@lru_cache(maxsize=32)
def _laguerre_rule(n: int) -> tuple[np.ndarray, np.ndarray]:
    try:
        t, w = laggauss(n)
    except Exception as exc:  # pragma: no cover - numpy failure
        raise QuadratureError(f"Gauss-Laguerre rule with {n} nodes failed: {exc}") from exc
    if not (np.all(np.isfinite(t)) and np.all(np.isfinite(w))):
        raise QuadratureError(f"Gauss-Laguerre rule with {n} nodes is not finite")
    t.flags.writeable = False
    w.flags.writeable = False
    return t, w


@lru_cache(maxsize=64)
def _jacobi_rule01(n: int, exp_at_1: float, exp_at_0: float) -> tuple[np.ndarray, np.ndarray]:
    """Nodes/weights on (0, 1) for the weight ``t**exp_at_0 (1-t)**exp_at_1``."""
    try:
        x, w = roots_jacobi(n, exp_at_1, exp_at_0)
    except Exception as exc:
        raise QuadratureError(f"Gauss-Jacobi rule failed: {exc}") from exc
    t = 0.5 * (1.0 + x)
    w = w * 2.0 ** (-(exp_at_1 + exp_at_0 + 1.0))
    if not (np.all(np.isfinite(t)) and np.all(np.isfinite(w))):
        raise QuadratureError("Gauss-Jacobi rule is not finite")
    t.flags.writeable = False
    w.flags.writeable = False
    return t, w


def _simpson_rule(panels: int, upper: float) -> tuple[np.ndarray, np.ndarray]:
    panels += panels % 2
    t = np.linspace(0.0, upper, panels + 1)
    w = np.full(panels + 1, 2.0)
    w[1::2] = 4.0
    w[0] = w[-1] = 1.0
    return t, w * (upper / panels) / 3.0


def _value(family: SeriesFamily, z: float, cfg: EvalConfig) -> float:
    return float(evaluate(family, z, cfg).value.real)


def borel_transform(family: SeriesFamily, x: float,
                    quad: QuadratureSpec = GAUSS_LAGUERRE_96) -> float:
    """``int_0^inf exp(-t) f(x t) dt`` by Gauss-Laguerre.

    Maps the Laguerre cosine, sine and exponential onto ``cos``, ``sin``
    and ``exp``.
    """
    if quad.rule != "gauss_laguerre":
        raise DomainError("borel_transform needs a Gauss-Laguerre rule")
    if abs(x) > BOREL_DOMAIN:
        raise DomainError(f"borel_transform is supported for |x| <= {BOREL_DOMAIN}")
    t, w = _laguerre_rule(quad.nodes)
    total = 0.0
    for tk, wk in zip(t, w):
        if wk == 0.0:
            continue
        total += wk * _value(family, x * tk, TRANSFORM_CONFIG)
    return total


def g_alpha_integral(eta: float, alpha: float, quad: QuadratureSpec | None = None) -> float:
    """Integral representation of ``G_alpha``:

    ``1/B(2/3, a) int_0^1 t**(-1/3) (1-t)**(a-1) e_[0,3](eta t**(1/3)) dt``
    with the weight absorbed into a Gauss-Jacobi rule.
    """
    if not alpha > 0:
        raise DomainError(f"g_alpha_integral needs alpha > 0, got {alpha}")
    if quad is None:
        quad = QuadratureSpec.gauss_jacobi(64, alpha - 1.0, -1.0 / 3.0)
    if quad.rule != "gauss_jacobi":
        raise DomainError("g_alpha_integral needs a Gauss-Jacobi rule")
    if not (math.isclose(quad.exp_at_1, alpha - 1.0) and math.isclose(quad.exp_at_0, -1.0 / 3.0)):
        raise DomainError("Jacobi exponents must be (alpha - 1, -1/3)")
    t, w = _jacobi_rule01(quad.nodes, quad.exp_at_1, quad.exp_at_0)
    phf = SeriesFamily.phf(0, 3)
    total = sum(wk * _value(phf, eta * tk ** (1.0 / 3.0), TRANSFORM_CONFIG) for tk, wk in zip(t, w))
    return float(total / beta(2.0 / 3.0, alpha))


def laguerre_heat_closed(x: float, tau: float) -> float:
    """``exp(x/(1-tau)) / (1-tau)``: the evolution of ``exp(x)`` under the
    Laguerre heat equation; blows up at ``tau = 1``."""
    if tau >= 1:
        raise DomainError(f"closed form exists only for tau < 1, got {tau}")
    return math.exp(x / (1.0 - tau)) / (1.0 - tau)


# ---------------------------------------------------------------------------
# Spectral solvers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpectralDensity:
    """Spectral weight ``rho`` on ``(0, inf)`` plus point masses.

    ``decay`` is a rate ``c`` with ``rho(t) = O(exp(-c t))``; it sets the
    Gauss-Laguerre scaling.  ``log_continuous``, when given, is used in
    place of ``log(continuous)`` to keep extreme nodes free of overflow.
    """

    continuous: Callable[[float], float] | None = None
    atoms: tuple[tuple[float, float], ...] = ()
    decay: float = 1.0
    log_continuous: Callable[[float], float] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "atoms", tuple((float(l), float(w)) for l, w in self.atoms))
        for loc, _ in self.atoms:
            if not loc > 0:
                raise DomainError(f"atom locations must be positive, got {loc}")
        if not self.decay > 0:
            raise DomainError("decay rate must be positive")

    @classmethod
    def exponential(cls, rate: float = 1.0, amplitude: float = 1.0) -> "SpectralDensity":
        """``amplitude * exp(-rate t)``."""
        log_amp = math.log(amplitude) if amplitude > 0 else None
        return cls(
            continuous=lambda t: amplitude * math.exp(-rate * t),
            decay=rate,
            log_continuous=(lambda t: log_amp - rate * t) if log_amp is not None else None,
        )

    @classmethod
    def point_masses(cls, atoms: Sequence[tuple[float, float]]) -> "SpectralDensity":
        return cls(atoms=tuple(atoms))


def _spectral_nodes(density: SpectralDensity, log_growth: Callable[[np.ndarray], np.ndarray],
                    margin: float, quad: QuadratureSpec) -> tuple[np.ndarray, np.ndarray]:
    """Nodes ``t`` and weights ``W`` with ``int rho(t) exp(g(t)) h(t) dt ~ sum W h(t)``.

    Atoms are appended with weight ``w exp(g(loc))``.
    """
    ts: list[np.ndarray] = []
    ws: list[np.ndarray] = []
    if density.continuous is not None:
        if quad.rule == "gauss_laguerre":
            if not margin > 0:
                raise DivergenceError(
                    f"spectral integral diverges: decay margin {margin} is not positive")
            s, w = _laguerre_rule(quad.nodes)
            keep = w > 0
            s, w = s[keep], w[keep]
            t = s / margin
            log_w = np.log(w) + s - math.log(margin)
        elif quad.rule == "simpson":
            # the closed rule samples t = 0, so rho must extend continuously there
            t, w = _simpson_rule(quad.panels, quad.upper)
            log_w = np.log(w)
        else:
            raise DomainError("spectral integrals use Gauss-Laguerre or Simpson rules")
        if density.log_continuous is not None:
            log_rho = np.array([density.log_continuous(v) for v in t])
            with np.errstate(over="ignore"):
                weights = np.exp(log_w + log_rho + log_growth(t))
        else:
            rho = np.array([density.continuous(v) for v in t], dtype=float)
            with np.errstate(over="ignore", invalid="ignore"):
                weights = np.exp(log_w + log_growth(t)) * rho
        ts.append(t)
        ws.append(weights)
    if density.atoms:
        loc = np.array([a[0] for a in density.atoms])
        amp = np.array([a[1] for a in density.atoms])
        with np.errstate(over="ignore"):
            ts.append(loc)
            ws.append(amp * np.exp(log_growth(loc)))
    if not ts:
        return np.zeros(0), np.zeros(0)
    return np.concatenate(ts), np.concatenate(ws)


def _check_tail(contrib: np.ndarray, n_continuous: int) -> None:
    if not np.all(np.isfinite(contrib)):
        raise DivergenceError("spectral integrand overflowed: growth contract violated")
    if n_continuous < 6:
        return
    tail = np.abs(contrib[n_continuous - 5:n_continuous])
    total = abs(contrib.sum())
    if tail[-1] > 1e-8 * max(total, 1e-300) and np.all(np.diff(tail) >= 0):
        raise DivergenceError("spectral tail contributions do not decay: growth contract violated")


def _n_continuous(density: SpectralDensity, n_total: int) -> int:
    return n_total - len(density.atoms)


def _check_eigenfamily(family: SeriesFamily) -> None:
    if family.tag not in (Tag.LEXP, Tag.HUMBERT):
        raise DomainError("heat_spectral eigenfamily must be lexp or humbert")


def heat_spectral(density: SpectralDensity, eigenfamily: SeriesFamily, x: float, tau: float,
                  quad: QuadratureSpec = GAUSS_LAGUERRE_96) -> float:
    """``int rho(t) exp(t tau) f(x t) dt + sum w_i exp(l_i tau) f(x l_i)``.

    ``eigenfamily`` is the l-exponential (Laguerre heat equation) or a
    Humbert function (its two-index extension).
    """
    _check_eigenfamily(eigenfamily)
    t, W = _spectral_nodes(density, lambda v: tau * v, density.decay - tau, quad)
    vals = np.array([_value(eigenfamily, x * v, TRANSFORM_CONFIG) if W[i] != 0 else 0.0
                     for i, v in enumerate(t)])
    contrib = W * vals
    _check_tail(contrib, _n_continuous(density, len(t)))
    return float(contrib.sum())


def heat_spectral_coeffs(density: SpectralDensity, eigenfamily: SeriesFamily, tau: float,
                         n_max: int, quad: QuadratureSpec = GAUSS_LAGUERRE_96) -> np.ndarray:
    """Power-series coefficients in ``x`` of the :func:`heat_spectral` solution."""
    _check_eigenfamily(eigenfamily)
    t, W = _spectral_nodes(density, lambda v: tau * v, density.decay - tau, quad)
    c = coefficients(eigenfamily, n_max)
    moments = np.array([np.sum(W * t ** n) for n in range(n_max + 1)])
    return c * moments


def airy_heat_spectral(density: SpectralDensity, alpha: float, x: float, t: float,
                       quad: QuadratureSpec = GAUSS_LAGUERRE_96) -> float:
    """Superposition ``int rho(l) exp(l**3 t) G_alpha(l x) dl`` (plus atoms)
    for the Airy-type equation ``dF/dt = theta_alpha F``."""
    g = SeriesFamily.g_alpha(alpha)
    lam, W = _spectral_nodes(density, lambda v: t * v ** 3, density.decay, quad)
    vals = np.array([_value(g, x * v, TRANSFORM_CONFIG) if W[i] != 0 else 0.0
                     for i, v in enumerate(lam)])
    contrib = W * vals
    _check_tail(contrib, _n_continuous(density, len(lam)))
    return float(contrib.sum())


def airy_heat_coeffs(density: SpectralDensity, alpha: float, t: float, n_max: int,
                     quad: QuadratureSpec = GAUSS_LAGUERRE_96) -> np.ndarray:
    """Power-series coefficients in ``x`` of the :func:`airy_heat_spectral` solution."""
    g = SeriesFamily.g_alpha(alpha)
    lam, W = _spectral_nodes(density, lambda v: t * v ** 3, density.decay, quad)
    c = coefficients(g, n_max)
    moments = np.array([np.sum(W * lam ** n) if c[n] else 0.0 for n in range(n_max + 1)])
    return c * moments


# ---------------------------------------------------------------------------
# Umbral and power-series solutions
# ---------------------------------------------------------------------------


def ll_heat_umbral(init_coeffs: Sequence[float], x: float, tau: float, N: int = 60,
                   cfg: EvalConfig = EvalConfig()) -> float:
    """``f(x (+)_l tau)``: solution of the Laguerre-Laguerre equation
    ``LD_tau F = LD_x F`` with ``F(x, 0) = f(x) = sum c_n x**n``.

    Finite coefficient lists are summed exactly; longer ones must satisfy
    the stopping rule within order ``N``.
    """
    c = np.asarray(init_coeffs, dtype=float)
    seq = umbral_sum(embed(x, N), embed(tau, N), LAGUERRE)
    if len(c) - 1 <= N:
        return float(sum(c[n] * seq[n] for n in range(len(c))).real)
    terms = (c[n] * seq[n] for n in range(N + 1))
    try:
        res = sum_terms(terms, cfg)
    except ConvergenceError as exc:
        raise ConvergenceError(f"ll_heat_umbral: order {N} too small ({exc})") from exc
    return float(res.value.real)


def ll_heat_bivariate(init_coeffs: Sequence[float], N: int | None = None) -> np.ndarray:
    """Coefficient grid ``B[i, j]`` of ``x**i tau**j`` in ``f(x (+)_l tau)``,
    truncated to total degree ``N``."""
    c = np.asarray(init_coeffs, dtype=float)
    if N is None:
        N = len(c) - 1
    N = min(N, len(c) - 1)
    w = weight_matrix(LAGUERRE, N)
    grid = np.zeros((N + 1, N + 1))
    for n in range(N + 1):
        for j in range(n + 1):
            grid[n - j, j] = c[n] * w[n, j]
    return grid


def evolve_power_series(init_coeffs: Sequence[float], op: DerivOp, tau: float,
                        n_out: int | None = None) -> np.ndarray:
    """Coefficients of ``exp(tau L) f`` for a diagonal operator ``L``.

    ``F_j = sum_k tau**k / k! * m(j+s) ... m(j+ks) * c_{j+ks}``, using every
    available input coefficient; only the first ``n_out`` outputs (default:
    half the input length) are returned, since higher ones see few terms.
    """
    c = np.asarray(init_coeffs, dtype=float)
    N = len(c) - 1
    s = op.shift
    if n_out is None:
        n_out = len(c) // 2
    out = np.zeros(n_out)
    for j in range(n_out):
        acc = 0.0
        fac = 1.0
        idx = j
        k = 0
        while idx <= N:
            acc += fac * c[idx]
            k += 1
            idx = j + k * s
            if idx > N:
                break
            fac *= tau / k * float(op.multiplier(idx))
        out[j] = acc
    return out


@dataclass(frozen=True)
class DiffusionProblem:
    """``dF/dtau = L F`` with ``L`` one of ``LD``, ``LD_AB``, ``THETA``.

    ``initial`` is ``("spectral", SpectralDensity)``,
    ``("power_series", coefficients)`` or ``("exp",)`` for ``f = exp(x)``
    (only with ``LD``).
    """

    operator: DerivOp
    initial: tuple
    tau: float

    def __post_init__(self) -> None:
        if self.operator.tag not in ("LD", "LD_AB", "THETA"):
            raise DomainError("diffusion operator must be LD, LD_AB or THETA")
        if not self.tau >= 0:
            raise DomainError("tau must be non-negative")
        kind = self.initial[0] if self.initial else None
        if kind not in ("spectral", "power_series", "exp"):
            raise DomainError(f"unknown initial condition {kind!r}")
        if kind == "exp" and self.operator.tag != "LD":
            raise DomainError("the exponential closed form applies to LD only")


def solve(problem: DiffusionProblem, x: float,
          quad: QuadratureSpec = GAUSS_LAGUERRE_96) -> float:
    """Evaluate ``F(x, tau)`` for ``problem``."""
    op, kind, tau = problem.operator, problem.initial[0], problem.tau
    if kind == "exp":
        return laguerre_heat_closed(x, tau)
    if kind == "power_series":
        return float(polyval(evolve_power_series(problem.initial[1], op, tau), x).real)
    density = problem.initial[1]
    if op.tag == "LD":
        return heat_spectral(density, SeriesFamily.lexp(), x, tau, quad)
    if op.tag == "LD_AB":
        return heat_spectral(density, SeriesFamily.humbert(op.alpha, op.beta), x, tau, quad)
    return airy_heat_spectral(density, op.alpha, x, tau, quad)
