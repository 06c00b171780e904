"""Umbral sequences and the weighted-binomial composition rules.

A sequence ``a_0..a_N`` stands for the umbral powers ``A**n`` of a symbol
``A``.  Composing two symbols under a family of weights gives

    (A (+) B)**n = sum_r w(n, r) * A**(n-r) * B**r

Every weight kernel used here has the shape ``w(n, r) = c_{n-r} c_r / c_n``
for the coefficients ``c`` of the matching exponential-like series, so the
rule turns products of series into series of composed symbols and is
associative.  PHF03 and Airy sequences are block-indexed: entry ``j``
stands for the power ``3j``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DomainError, SupportMismatchError
from .series_core import (DEFAULT_CONFIG, EvalConfig, EvalResult, SeriesFamily, gamma,
                          coefficients, sum_terms, support)

__all__ = [
    "SumTag",
    "SumFamily",
    "ORDINARY",
    "LAGUERRE",
    "PHF03",
    "UmbralSequence",
    "UnityRoots",
    "weight",
    "weight_matrix",
    "embed",
    "umbral_sum",
    "scale",
    "eval_on_sequence",
    "bivariate_coeffs",
    "hybrid_polynomial",
    "napier_term",
    "j0_term",
    "phf_roots_average",
]


class SumTag(str, Enum):
    ORDINARY = "ordinary"
    LAGUERRE = "laguerre"
    ALPHA = "alpha"
    AB = "ab"
    PHF03 = "phf03"
    AIRY = "airy"


_INTEGRAL = {SumTag.ORDINARY, SumTag.LAGUERRE, SumTag.PHF03}
_BLOCKED = {SumTag.PHF03, SumTag.AIRY}


@dataclass(frozen=True)
class SumFamily:
    """Weight kernel of a composition rule."""

    tag: SumTag
    alpha: float | None = None
    beta: float | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "tag", SumTag(self.tag))
        if self.tag in (SumTag.ALPHA, SumTag.AB):
            if self.alpha is None or not self.alpha > -1:
                raise DomainError(f"{self.tag.value} sum needs alpha > -1, got {self.alpha}")
        if self.tag is SumTag.AB and (self.beta is None or not self.beta > -1):
            raise DomainError(f"ab sum needs beta > -1, got {self.beta}")
        if self.tag is SumTag.AIRY and (self.alpha is None or not self.alpha > 0):
            raise DomainError(f"airy sum needs alpha > 0, got {self.alpha}")

    @property
    def block(self) -> int:
        """Power stride of the sequences this rule acts on."""
        return 3 if self.tag in _BLOCKED else 1

    @property
    def integral(self) -> bool:
        return self.tag in _INTEGRAL


ORDINARY = SumFamily(SumTag.ORDINARY)
LAGUERRE = SumFamily(SumTag.LAGUERRE)
PHF03 = SumFamily(SumTag.PHF03)


def _exact_weight(family: SumFamily, n: int, r: int) -> int:
    if family.tag is SumTag.ORDINARY:
        return math.comb(n, r)
    if family.tag is SumTag.LAGUERRE:
        return math.comb(n, r) ** 2
    return math.comb(3 * n, 3 * r)


def _check_indices(n: int, r: int) -> None:
    if not 0 <= r <= n:
        raise DomainError(f"weight needs 0 <= r <= n, got n={n}, r={r}")


@lru_cache(maxsize=128)
def _float_rows(family: SumFamily, n_max: int) -> np.ndarray:
    """Lower-triangular table ``W[n, r]`` in double precision."""
    w = np.zeros((n_max + 1, n_max + 1))
    tag, a, b = family.tag, family.alpha, family.beta
    if tag in _INTEGRAL:
        for n in range(n_max + 1):
            for r in range(n + 1):
                w[n, r] = float(_exact_weight(family, n, r))
    else:
        if tag is SumTag.ALPHA:
            first = 1.0 / gamma(a + 1)
        elif tag is SumTag.AB:
            first = 1.0 / (gamma(a + 1) * gamma(b + 1))
        else:
            first = 1.0
        for n in range(n_max + 1):
            v = first
            w[n, 0] = v
            for r in range(n):
                # ratio w(n, r+1)/w(n, r) read off the Gamma quotients
                q = (n - r) / (r + 1)
                if tag is SumTag.ALPHA:
                    q *= (n - r + a) / (r + 1 + a)
                elif tag is SumTag.AB:
                    q *= (n - r + a) / (r + 1 + a) * (n - r + b) / (r + 1 + b)
                else:
                    q *= (n - r - 2.0 / 3.0) / (r + 1.0 / 3.0)
                    q *= (n - r + a - 1.0 / 3.0) / (r + a + 2.0 / 3.0)
                v *= q
                w[n, r + 1] = v
    w.flags.writeable = False
    return w


def weight_matrix(family: SumFamily, n_max: int) -> np.ndarray:
    """Read-only float table of ``w(n, r)`` for ``0 <= r <= n <= n_max``."""
    return _float_rows(family, int(n_max))


def weight(family: SumFamily, n: int, r: int):
    """Kernel value ``w(n, r)``; an exact ``int`` for the integral kernels.

    For PHF03 and Airy, ``n`` and ``r`` are block indices (powers ``3n``,
    ``3r``).
    """
    _check_indices(n, r)
    if family.integral:
        return _exact_weight(family, n, r)
    return float(_float_rows(family, n)[n, r])


# ---------------------------------------------------------------------------
# Sequences
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class UmbralSequence:
    """Entries ``a_0..a_N`` standing for umbral powers.

    ``block`` is the power stride (3 for PHF03/Airy sequences).  ``entries``
    is a complex array, or an object array of exact Python numbers.
    """

    entries: np.ndarray
    block: int = 1

    @property
    def order(self) -> int:
        return len(self.entries) - 1

    @property
    def exact(self) -> bool:
        return self.entries.dtype == object

    def __getitem__(self, n: int):
        return self.entries[n]

    def __len__(self) -> int:
        return len(self.entries)

    def __repr__(self) -> str:
        return f"UmbralSequence(order={self.order}, block={self.block}, entries={self.entries!r})"


def embed(x, N: int, block: int = 1, exact: bool = False) -> UmbralSequence:
    """The sequence ``a_n = x**(block*n)``, ``n = 0..N`` (with ``0**0 = 1``).

    ``exact=True`` keeps Python arithmetic (``int``, ``Fraction``, symbolic
    numbers) in an object array instead of converting to complex.
    """
    if N < 0:
        raise DomainError("order must be non-negative")
    if block < 1:
        raise DomainError("block stride must be positive")
    if exact:
        step = x ** block
        vals = [1]
        for _ in range(N):
            vals.append(vals[-1] * step)
        arr = np.empty(N + 1, dtype=object)
        arr[:] = vals
        return UmbralSequence(arr, block)
    step = complex(x) ** block
    arr = np.empty(N + 1, dtype=complex)
    acc = 1 + 0j
    for n in range(N + 1):
        arr[n] = acc
        acc *= step
    return UmbralSequence(arr, block)


def _check_block(seq: UmbralSequence, family: SumFamily) -> None:
    if seq.block != family.block:
        raise DomainError(
            f"{family.tag.value} sums act on block-{family.block} sequences, got block {seq.block}")


def umbral_sum(a: UmbralSequence, b: UmbralSequence, family: SumFamily) -> UmbralSequence:
    """Compose two symbols: ``(a (+) b)_n = sum_r w(n, r) a_{n-r} b_r``.

    The result has the smaller of the two orders.  Exact inputs under an
    integral kernel produce an exact result.
    """
    _check_block(a, family)
    _check_block(b, family)
    N = min(a.order, b.order)
    if (a.exact or b.exact) and family.integral:
        out = np.empty(N + 1, dtype=object)
        for n in range(N + 1):
            acc = 0
            for r in range(n + 1):
                acc = acc + _exact_weight(family, n, r) * a[n - r] * b[r]
            out[n] = acc
        return UmbralSequence(out, family.block)
    w = weight_matrix(family, N)
    av = np.asarray(a.entries[: N + 1], dtype=complex)
    bv = np.asarray(b.entries[: N + 1], dtype=complex)
    out = np.empty(N + 1, dtype=complex)
    for n in range(N + 1):
        out[n] = np.dot(w[n, : n + 1], av[n::-1] * bv[: n + 1])
    return UmbralSequence(out, family.block)


_SCALABLE = {SumTag.ORDINARY, SumTag.LAGUERRE, SumTag.PHF03}


def scale(k: int, x, family: SumFamily = LAGUERRE, N: int = 60,
          exact: bool = False) -> UmbralSequence:
    """``k (x) x``: the left fold ``x (+) (x (+) (... (+) x))`` of ``k`` copies."""
    if k < 1 or int(k) != k:
        raise DomainError(f"scale needs an integer k >= 1, got {k}")
    if family.tag not in _SCALABLE:
        raise DomainError(f"scale is defined for ordinary, laguerre and phf03 sums, not {family.tag.value}")
    base = embed(x, N, block=family.block, exact=exact)
    acc = base
    for _ in range(int(k) - 1):
        acc = umbral_sum(base, acc, family)
    return acc


def _sequence_terms(c: np.ndarray, seq: UmbralSequence, residue: int, mod: int):
    # seq entry j stands for power block*j; only support indices contribute
    for j in range(len(seq)):
        n = seq.block * j
        if n >= len(c):
            return
        if n % mod == residue:
            yield c[n] * seq[j]


def eval_on_sequence(family: SeriesFamily, seq: UmbralSequence,
                     cfg: EvalConfig = DEFAULT_CONFIG) -> EvalResult:
    """Evaluate ``family`` at the umbral symbol: ``sum_n c_n a_n``.

    For block sequences the family's support must lie on multiples of the
    block stride, otherwise :class:`SupportMismatchError`.
    """
    residue, mod = support(family)
    if seq.block > 1:
        if residue % seq.block or mod % seq.block:
            raise SupportMismatchError(
                f"{family.tag.value} has support {residue} mod {mod}, "
                f"incompatible with block-{seq.block} sequences")
    c = coefficients(family, seq.block * seq.order)
    return sum_terms(_sequence_terms(c, seq, residue, mod), cfg)


def bivariate_coeffs(family: SumFamily, n: int) -> np.ndarray:
    """Coefficient grid ``C[i, j]`` of ``x**i y**j`` in ``(x (+) y)**n``.

    Block families index powers in steps of three (``C[i, j]`` multiplies
    ``x**(3i) y**(3j)``).
    """
    grid = np.zeros((n + 1, n + 1))
    w = weight_matrix(family, n)
    for r in range(n + 1):
        grid[n - r, r] = w[n, r]
    return grid


def hybrid_polynomial(x, y, n: int, family: SumFamily = LAGUERRE):
    """``(x (+) y)**n`` for scalar ``x``, ``y``; exact for exact integral input."""
    exact = family.integral and all(isinstance(v, (int, Fraction)) for v in (x, y))
    seq = umbral_sum(embed(x, n, family.block, exact), embed(y, n, family.block, exact), family)
    return seq[n]


def _laguerre_one_plus(y: float, n: int) -> float:
    # sum_r C(n,r)^2 y^r by term ratios; C(n,r)^2 alone overflows for n ~ 500
    term = 1.0
    total = 1.0
    for r in range(n):
        term *= ((n - r) / (r + 1)) ** 2 * y
        total += term
    return total


def napier_term(x: float, n: int) -> float:
    """``(1 (+)_l x/n**2)**n``, tending to the l-exponential of ``x``."""
    if n < 1:
        raise DomainError("n must be at least 1")
    return _laguerre_one_plus(x / n ** 2, n)


def j0_term(x: float, n: int) -> float:
    """``(1 (+)_l -(x/(2n))**2)**n``, tending to ``J0(x)``."""
    if n < 1:
        raise DomainError("n must be at least 1")
    return _laguerre_one_plus(-(x / (2.0 * n)) ** 2, n)


@dataclass(frozen=True)
class UnityRoots:
    """The ``m``-th roots of unity ``exp(2 i pi p / m)``."""

    m: int

    def __post_init__(self) -> None:
        if self.m < 2 or int(self.m) != self.m:
            raise DomainError(f"m must be an integer >= 2, got {self.m}")

    @property
    def values(self) -> np.ndarray:
        p = np.arange(self.m)
        return np.array([cmath.exp(2j * math.pi * q / self.m) for q in p])

    def power_sum(self, k: int) -> complex:
        return complex(np.sum(self.values ** k))


def _mul_sqrt_m3(u: tuple, v: tuple) -> tuple:
    # (p + q s)(p' + q' s) with s = i sqrt(3), s**2 = -3
    return (u[0] * v[0] - 3 * u[1] * v[1], u[0] * v[1] + u[1] * v[0])


def _pow_sqrt_m3(u: tuple, e: int) -> tuple:
    out = (Fraction(1), Fraction(0))
    while e:
        if e & 1:
            out = _mul_sqrt_m3(out, u)
        u = _mul_sqrt_m3(u, u)
        e >>= 1
    return out


def phf_roots_average(x: complex, y: complex, n: int) -> complex:
    """``(1/3) sum_p (x + w_p y)**(3n)`` over the cube roots of unity ``w_p``.

    Real arguments are averaged exactly in Q(i sqrt 3), where
    ``w = -1/2 +- s/2``, and rounded once: the three terms can be many
    orders of magnitude larger than their average.
    """
    if n < 0:
        raise DomainError("block index must be non-negative")
    if complex(x).imag == 0 and complex(y).imag == 0:
        fx, fy = Fraction(complex(x).real), Fraction(complex(y).real)
        # x + w y = (x - y/2) + (y/2) s; its conjugate has the same real part
        p, _ = _pow_sqrt_m3((fx - fy / 2, fy / 2), 3 * n)
        return complex(float(((fx + fy) ** (3 * n) + 2 * p) / 3))
    roots = UnityRoots(3).values
    return complex(sum((complex(x) + w * complex(y)) ** (3 * n) for w in roots) / 3.0)
