"""Coefficient generators, truncated-series evaluation and diagonal derivative operators.

Every function family handled by the package is an entire function given by a
power series ``sum_n c_n z**n``.  Coefficients are produced by forward
recurrence on the ratio ``c_{n+p}/c_n`` (``p`` being the stride of the support),
never from fresh factorials, so they stay finite far beyond ``170!``.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Callable, Iterable, NamedTuple

import numpy as np

from .errors import ConvergenceError, DomainError, PoleError

__all__ = [
    "gamma",
    "lgamma",
    "beta",
    "Tag",
    "SeriesFamily",
    "EvalConfig",
    "EvalResult",
    "DerivOp",
    "coeff",
    "coefficients",
    "support",
    "evaluate",
    "sum_terms",
    "apply_derivative",
    "polyval",
]

# ---------------------------------------------------------------------------
# Gamma and Beta
# ---------------------------------------------------------------------------

_LANCZOS_G = 7
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_2PI = math.sqrt(2.0 * math.pi)
_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)
GAMMA_MAX_ARG = 171.6


def _lanczos_series(z: float) -> float:
    # z is the shifted argument x - 1
    acc = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[i] / (z + i)
    return acc


def _sinpi(x: float) -> float:
    # exact reduction to [-1/2, 1/2] keeps sin accurate next to the integers
    n = round(x)
    r = x - n
    return -math.sin(math.pi * r) if n % 2 else math.sin(math.pi * r)


_RECUR_FROM = 20.0


def _check_pole(x: float) -> None:
    if x <= 0 and x == math.floor(x):
        raise PoleError(f"gamma has a pole at {x!r}")


def gamma(x: float) -> float:
    """Gamma function by the Lanczos approximation (g=7, 9 terms).

    Uses the reflection formula below 1/2 and downward recurrence onto
    ``[10, 11)`` above 20.  Raises :class:`PoleError` at
    non-positive integers and :class:`OverflowError` above 171.6.
    """
    x = float(x)
    _check_pole(x)
    if x > GAMMA_MAX_ARG:
        raise OverflowError(f"gamma({x}) overflows double precision")
    if x < 0.5:
        return math.pi / (_sinpi(x) * gamma(1.0 - x))
    if x > _RECUR_FROM:
        # the 9-term fit drifts by ~6e-16*x; recur down instead (x - i is exact)
        shift = math.floor(x - 10.0)
        prod = 1.0
        for i in range(1, shift + 1):
            prod *= x - i
        return gamma(x - shift) * prod
    z = x - 1.0
    t = z + _LANCZOS_G + 0.5
    return _SQRT_2PI * t ** (z + 0.5) * math.exp(-t) * _lanczos_series(z)


def lgamma(x: float) -> float:
    """``log|Gamma(x)|`` from the same Lanczos sum; valid for any non-pole real."""
    x = float(x)
    _check_pole(x)
    if x < 0.5:
        return math.log(math.pi / abs(_sinpi(x))) - lgamma(1.0 - x)
    z = x - 1.0
    t = z + _LANCZOS_G + 0.5
    return _LOG_SQRT_2PI + (z + 0.5) * math.log(t) - t + math.log(_lanczos_series(z))


def beta(x: float, y: float) -> float:
    """Euler Beta function ``Gamma(x)Gamma(y)/Gamma(x+y)``.

    Falls back to log-gamma once ``x + y`` is large enough for the plain
    ratio to overflow.
    """
    if x <= 0 or y <= 0:
        raise DomainError(f"beta requires positive arguments, got ({x}, {y})")
    if x + y < 160.0:
        return gamma(x) * gamma(y) / gamma(x + y)
    return math.exp(lgamma(x) + lgamma(y) - lgamma(x + y))


# ---------------------------------------------------------------------------
# Series families
# ---------------------------------------------------------------------------


class Tag(str, Enum):
    LEXP = "lexp"
    LEXP_ALPHA = "lexp_alpha"
    HUMBERT = "humbert"
    LCOS = "lcos"
    LSIN = "lsin"
    LCOSH = "lcosh"
    LSINH = "lsinh"
    LCOS_ALPHA = "lcos_alpha"
    LSIN_ALPHA = "lsin_alpha"
    LCOS_AB = "lcos_ab"
    LSIN_AB = "lsin_ab"
    PHF = "phf"
    PHF_CH = "phf_ch"
    PHF_SH = "phf_sh"
    G_ALPHA = "g_alpha"


_NEEDS_ALPHA = {Tag.LEXP_ALPHA, Tag.HUMBERT, Tag.LCOS_ALPHA, Tag.LSIN_ALPHA,
                Tag.LCOS_AB, Tag.LSIN_AB, Tag.G_ALPHA}
_NEEDS_BETA = {Tag.HUMBERT, Tag.LCOS_AB, Tag.LSIN_AB}


@dataclass(frozen=True)
class SeriesFamily:
    """Descriptor of an entire function through its coefficient rule.

    ``alpha``/``beta`` are the Bessel-type orders (``alpha > -1``, or
    ``alpha > 0`` for ``G_ALPHA``); ``k``/``m`` select the pseudo-hyperbolic
    function ``sum x**(m*r+k)/(m*r+k)!``.
    """

    tag: Tag
    alpha: float | None = None
    beta: float | None = None
    k: int | None = None
    m: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "tag", Tag(self.tag))
        tag = self.tag
        if tag in _NEEDS_ALPHA:
            if self.alpha is None:
                raise DomainError(f"{tag.value} needs alpha")
            lo = 0.0 if tag is Tag.G_ALPHA else -1.0
            if not (math.isfinite(self.alpha) and self.alpha > lo):
                raise DomainError(f"{tag.value}: alpha must exceed {lo}, got {self.alpha}")
        if tag in _NEEDS_BETA:
            if self.beta is None or not (math.isfinite(self.beta) and self.beta > -1.0):
                raise DomainError(f"{tag.value}: beta must exceed -1, got {self.beta}")
        if tag is Tag.PHF:
            if self.k is None or self.m is None:
                raise DomainError("phf needs k and m")
            if int(self.m) != self.m or int(self.k) != self.k:
                raise DomainError("phf indices must be integers")
            if self.m < 2 or not 0 <= self.k < self.m:
                raise DomainError(f"phf requires m >= 2 and 0 <= k < m, got k={self.k}, m={self.m}")

    # convenience constructors
    @classmethod
    def lexp(cls) -> "SeriesFamily":
        return cls(Tag.LEXP)

    @classmethod
    def lexp_alpha(cls, alpha: float) -> "SeriesFamily":
        return cls(Tag.LEXP_ALPHA, alpha=alpha)

    @classmethod
    def humbert(cls, alpha: float, beta: float) -> "SeriesFamily":
        return cls(Tag.HUMBERT, alpha=alpha, beta=beta)

    @classmethod
    def phf(cls, k: int, m: int) -> "SeriesFamily":
        return cls(Tag.PHF, k=k, m=m)

    @classmethod
    def g_alpha(cls, alpha: float) -> "SeriesFamily":
        return cls(Tag.G_ALPHA, alpha=alpha)


def support(family: SeriesFamily) -> tuple[int, int]:
    """``(residue, modulus)``: coefficient ``n`` may be nonzero only if ``n % modulus == residue``."""
    tag = family.tag
    if tag in (Tag.LEXP, Tag.LEXP_ALPHA, Tag.HUMBERT):
        return 0, 1
    if tag in (Tag.LCOS, Tag.LCOSH, Tag.LCOS_ALPHA, Tag.LCOS_AB):
        return 0, 2
    if tag in (Tag.LSIN, Tag.LSINH, Tag.LSIN_ALPHA, Tag.LSIN_AB):
        return 1, 2
    if tag is Tag.PHF:
        return int(family.k), int(family.m)
    if tag is Tag.PHF_CH:
        return 0, 6
    if tag is Tag.PHF_SH:
        return 3, 6
    if tag is Tag.G_ALPHA:
        return 0, 3
    raise DomainError(f"unknown family {tag}")  # pragma: no cover


def _first_and_ratio(family: SeriesFamily) -> tuple[float, Callable[[int], float]]:
    """First nonzero coefficient and ``n -> c_{n+p}/c_n`` along the support."""
    tag, a, b = family.tag, family.alpha, family.beta
    if tag is Tag.LEXP:
        return 1.0, lambda n: 1.0 / ((n + 1) * (n + 1))
    if tag is Tag.LEXP_ALPHA:
        return 1.0 / gamma(a + 1), lambda n: 1.0 / ((n + 1) * (n + 1 + a))
    if tag is Tag.HUMBERT:
        return (1.0 / (gamma(a + 1) * gamma(b + 1)),
                lambda n: 1.0 / ((n + 1) * (n + 1 + a) * (n + 1 + b)))
    if tag in (Tag.LCOS, Tag.LSIN, Tag.LCOSH, Tag.LSINH):
        sign = -1.0 if tag in (Tag.LCOS, Tag.LSIN) else 1.0
        return 1.0, lambda n: sign / ((n + 1) * (n + 2)) ** 2
    if tag in (Tag.LCOS_ALPHA, Tag.LSIN_ALPHA):
        first = 1.0 / gamma(a + 1) if tag is Tag.LCOS_ALPHA else 1.0 / gamma(a + 2)
        return first, lambda n: -1.0 / ((n + 1) * (n + 2) * (n + 1 + a) * (n + 2 + a))
    if tag in (Tag.LCOS_AB, Tag.LSIN_AB):
        if tag is Tag.LCOS_AB:
            first = 1.0 / (gamma(a + 1) * gamma(b + 1))
        else:
            first = 1.0 / (gamma(a + 2) * gamma(b + 2))
        return first, lambda n: -1.0 / ((n + 1) * (n + 2) * (n + 1 + a) * (n + 2 + a)
                                        * (n + 1 + b) * (n + 2 + b))
    if tag in (Tag.PHF, Tag.PHF_CH, Tag.PHF_SH):
        k, m = support(family)

        def ratio(n: int) -> float:
            d = 1.0
            for i in range(1, m + 1):
                d *= n + i
            return 1.0 / d

        return 1.0 / math.factorial(k), ratio
    if tag is Tag.G_ALPHA:
        # B(r+5/3, a)/B(r+2/3, a) = (3r+2)/(3r+2+3a), against (3r)!/(3r+3)!
        return 1.0, lambda n: 1.0 / ((n + 1) * (n + 3) * (n + 2 + 3 * a))
    raise DomainError(f"unknown family {tag}")  # pragma: no cover


@lru_cache(maxsize=256)
def _coefficients_cached(family: SeriesFamily, n_max: int) -> np.ndarray:
    out = np.zeros(n_max + 1)
    k, p = support(family)
    if k > n_max:
        out.flags.writeable = False
        return out
    c, ratio = _first_and_ratio(family)
    n = k
    while n <= n_max:
        out[n] = c
        c *= ratio(n)
        n += p
    out.flags.writeable = False
    return out


def coefficients(family: SeriesFamily, n_max: int) -> np.ndarray:
    """Read-only array of the coefficients ``c_0 .. c_{n_max}``."""
    if n_max < 0:
        raise DomainError("n_max must be non-negative")
    return _coefficients_cached(family, int(n_max))


def coeff(family: SeriesFamily, n: int) -> float:
    """The ``n``-th power-series coefficient of ``family`` (0 off its support)."""
    if n < 0:
        raise DomainError("coefficient index must be non-negative")
    k, p = support(family)
    if n % p != k:
        return 0.0
    return float(coefficients(family, n)[n])


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EvalConfig:
    """Stopping rule for truncated series.

    Summation stops once ``stop_streak`` consecutive support terms have
    magnitude at most ``rel_tol * |partial sum|``.
    """

    rel_tol: float = 1e-15
    max_terms: int = 200
    stop_streak: int = 3

    def __post_init__(self) -> None:
        if not self.rel_tol > 0:
            raise DomainError("rel_tol must be positive")
        if self.max_terms < 1:
            raise DomainError("max_terms must be at least 1")
        if self.stop_streak < 1:
            raise DomainError("stop_streak must be at least 1")

    @classmethod
    def from_env(cls, **overrides) -> "EvalConfig":
        """Default config with ``UMBRATRIG_MAX_TERMS`` applied when set."""
        env = os.environ.get("UMBRATRIG_MAX_TERMS")
        if env is not None and "max_terms" not in overrides:
            try:
                overrides["max_terms"] = int(env)
            except ValueError as exc:
                raise DomainError(f"UMBRATRIG_MAX_TERMS is not an integer: {env!r}") from exc
        return cls(**overrides)


DEFAULT_CONFIG = EvalConfig()


class EvalResult(NamedTuple):
    value: complex
    terms: int
    converged: bool


def sum_terms(terms: Iterable[complex], cfg: EvalConfig = DEFAULT_CONFIG,
              *, exhausted_ok: bool = False) -> EvalResult:
    """Accumulate ``terms`` under the stopping rule of ``cfg``.

    ``terms`` should already be restricted to the support of the series.
    Running out of terms before the rule is met raises
    :class:`ConvergenceError` unless ``exhausted_ok`` (finite series).
    """
    total = 0j
    streak = 0
    count = 0
    for term in terms:
        if count >= cfg.max_terms:
            raise ConvergenceError(
                f"series did not converge within {cfg.max_terms} terms (partial sum {total})")
        total += term
        count += 1
        if abs(term) <= cfg.rel_tol * abs(total):
            streak += 1
            if streak >= cfg.stop_streak:
                return EvalResult(total, count, True)
        else:
            streak = 0
    if exhausted_ok:
        return EvalResult(total, count, True)
    raise ConvergenceError(f"ran out of terms after {count} (partial sum {total})")


def _family_terms(family: SeriesFamily, z: complex, cfg: EvalConfig, derivative: int):
    # term recurrence: neither z**n nor c_n alone is formed, so large |z| at
    # quadrature nodes cannot overflow while the terms themselves are finite
    k, p = support(family)
    c, ratio = _first_and_ratio(family)
    n = k
    while n < derivative:
        c *= ratio(n)
        n += p
    zp = z ** p
    term = c * math.perm(n, derivative) * z ** (n - derivative)
    while True:
        yield term
        step = ratio(n) * zp
        for i in range(derivative):
            step *= (n + p - i) / (n - i)
        term *= step
        n += p


def evaluate(family: SeriesFamily, z: complex, cfg: EvalConfig = DEFAULT_CONFIG,
             derivative: int = 0) -> EvalResult:
    """Sum the series of ``family`` at ``z`` (real or complex).

    ``derivative`` selects the ordinary ``d``-th derivative, summed term-wise.
    ``max_terms`` counts terms on the family's support.
    """
    if derivative < 0:
        raise DomainError("derivative order must be non-negative")
    return sum_terms(_family_terms(family, complex(z), cfg, derivative), cfg)


def polyval(coeffs, z: complex) -> complex:
    """Horner evaluation of a finite coefficient sequence (lowest degree first)."""
    acc = 0j
    for c in reversed(list(coeffs)):
        acc = acc * z + c
    return acc


# ---------------------------------------------------------------------------
# Generalized derivatives
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DerivOp:
    """Derivative acting diagonally on monomials: ``x**n -> m(n) x**(n-s)``.

    ``D``: ordinary derivative; ``D3``: third derivative; ``LD``: the
    Laguerre derivative ``d/dx x d/dx``; ``LD_ALPHA``/``LD_AB``: its one- and
    two-index extensions; ``THETA``: the Airy-type operator
    ``d/dx x**(-3a) d/dx x**(3a) d/dx``.
    """

    tag: str
    alpha: float | None = None
    beta: float | None = None

    _SHIFTS = {"D": 1, "D3": 3, "LD": 1, "LD_ALPHA": 1, "LD_AB": 1, "THETA": 3}

    def __post_init__(self) -> None:
        tag = str(self.tag).upper()
        object.__setattr__(self, "tag", tag)
        if tag not in self._SHIFTS:
            raise DomainError(f"unknown derivative operator {self.tag!r}")
        if tag in ("LD_ALPHA", "LD_AB", "THETA") and self.alpha is None:
            raise DomainError(f"{tag} needs alpha")
        if tag == "LD_AB" and self.beta is None:
            raise DomainError("LD_AB needs beta")

    @property
    def shift(self) -> int:
        return self._SHIFTS[self.tag]

    def multiplier(self, n):
        """``m(n)``; vectorized over numpy arrays, zero for ``n < shift``."""
        n = np.asarray(n, dtype=float)
        a, b = self.alpha, self.beta
        tag = self.tag
        if tag == "D":
            m = n
        elif tag == "D3":
            m = n * (n - 1) * (n - 2)
        elif tag == "LD":
            m = n * n
        elif tag == "LD_ALPHA":
            m = n * (n + a)
        elif tag == "LD_AB":
            m = n * (n + a) * (n + b)
        else:
            m = n * (n - 2) * (n + 3 * a - 1)
        return np.where(n < self.shift, 0.0, m)


def apply_derivative(coeffs, op: DerivOp, axis: int = 0) -> np.ndarray:
    """Apply ``op`` to a coefficient array along ``axis``.

    Output index ``j`` holds ``m(j+s) * c[j+s]``; the axis shrinks by ``s``
    (to length zero for sequences shorter than the shift).
    """
    c = np.asarray(coeffs)
    c = np.moveaxis(c, axis, 0)
    s = op.shift
    if c.shape[0] <= s:
        out = np.zeros((0,) + c.shape[1:], dtype=np.result_type(c, float))
        return np.moveaxis(out, 0, axis)
    n = np.arange(s, c.shape[0])
    mult = op.multiplier(n).reshape((-1,) + (1,) * (c.ndim - 1))
    return np.moveaxis(mult * c[s:], 0, axis)
