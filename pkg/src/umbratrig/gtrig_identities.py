"""Generalized trigonometric functions and their identity residuals.

Each identity is turned into a number: ``|lhs - rhs|``, with the umbral side
``f(x (+) y)`` evaluated as ``eval_on_sequence(f, umbral_sum(embed(x),
embed(y), family))``.  ``PYTHAGORAS_DEFECT`` is the exception and returns
the signed value ``lc(x)**2 + ls(x)**2 - 1``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .errors import DomainError
from .series_core import DEFAULT_CONFIG, EvalConfig, SeriesFamily, Tag, evaluate
from .umbral_algebra import (LAGUERRE, PHF03, SumFamily, SumTag, UnityRoots, embed,
                             eval_on_sequence, scale, umbral_sum)

__all__ = [
    "lc", "ls", "lch", "lsh", "lc_alpha", "ls_alpha", "lc_ab", "ls_ab",
    "phf_e", "phf_ch", "phf_sh", "g_alpha",
    "IdentityTag", "IdentityKind", "identity_residual", "all_kinds",
    "lissajous_points", "SectorArea", "sector_area", "revisits", "CIRCULAR_PAIR",
]

# Umbral order used for the composed symbols; enough for |x|, |y| <= 4.
UMBRAL_ORDER = 80


def _value(family: SeriesFamily, x, cfg: EvalConfig):
    v = evaluate(family, x, cfg).value
    return float(v.real) if isinstance(x, (int, float, np.floating, np.integer)) else complex(v)


def lc(x, cfg: EvalConfig = DEFAULT_CONFIG):
    """Laguerre cosine ``sum (-1)**r x**(2r) / ((2r)!)**2``."""
    return _value(SeriesFamily(Tag.LCOS), x, cfg)


def ls(x, cfg: EvalConfig = DEFAULT_CONFIG):
    """Laguerre sine ``sum (-1)**r x**(2r+1) / ((2r+1)!)**2``."""
    return _value(SeriesFamily(Tag.LSIN), x, cfg)


def lch(x, cfg: EvalConfig = DEFAULT_CONFIG):
    return _value(SeriesFamily(Tag.LCOSH), x, cfg)


def lsh(x, cfg: EvalConfig = DEFAULT_CONFIG):
    return _value(SeriesFamily(Tag.LSINH), x, cfg)


def lc_alpha(x, alpha: float, cfg: EvalConfig = DEFAULT_CONFIG):
    return _value(SeriesFamily(Tag.LCOS_ALPHA, alpha=alpha), x, cfg)


def ls_alpha(x, alpha: float, cfg: EvalConfig = DEFAULT_CONFIG):
    return _value(SeriesFamily(Tag.LSIN_ALPHA, alpha=alpha), x, cfg)


def lc_ab(x, alpha: float, beta: float, cfg: EvalConfig = DEFAULT_CONFIG):
    return _value(SeriesFamily(Tag.LCOS_AB, alpha=alpha, beta=beta), x, cfg)


def ls_ab(x, alpha: float, beta: float, cfg: EvalConfig = DEFAULT_CONFIG):
    return _value(SeriesFamily(Tag.LSIN_AB, alpha=alpha, beta=beta), x, cfg)


def phf_e(x, k: int, m: int, cfg: EvalConfig = DEFAULT_CONFIG):
    """Pseudo-hyperbolic function ``sum x**(m r + k) / (m r + k)!``."""
    return _value(SeriesFamily.phf(k, m), x, cfg)


def phf_ch(x, cfg: EvalConfig = DEFAULT_CONFIG):
    return _value(SeriesFamily(Tag.PHF_CH), x, cfg)


def phf_sh(x, cfg: EvalConfig = DEFAULT_CONFIG):
    return _value(SeriesFamily(Tag.PHF_SH), x, cfg)


def g_alpha(x, alpha: float, cfg: EvalConfig = DEFAULT_CONFIG):
    """Beta-weighted cubic series, eigenfunction of the Airy-type operator."""
    return _value(SeriesFamily.g_alpha(alpha), x, cfg)


# ---------------------------------------------------------------------------
# Identity residuals
# ---------------------------------------------------------------------------


class IdentityTag(str, Enum):
    EULER = "euler"
    ADDITION_COS = "addition_cos"
    ADDITION_SIN = "addition_sin"
    ADDITION_COS_ALPHA = "addition_cos_alpha"
    ADDITION_SIN_ALPHA = "addition_sin_alpha"
    ADDITION_COS_AB = "addition_cos_ab"
    ADDITION_SIN_AB = "addition_sin_ab"
    ADDITION_CH_PHF = "addition_ch_phf"
    ADDITION_SH_PHF = "addition_sh_phf"
    SEMIGROUP_L = "semigroup_l"
    SEMIGROUP_ALPHA = "semigroup_alpha"
    SEMIGROUP_PHF = "semigroup_phf"
    DUPLICATION = "duplication"
    DE_MOIVRE = "de_moivre"
    EULER_DECOMP_PHF = "euler_decomp_phf"
    PYTHAGORAS_DEFECT = "pythagoras_defect"


@dataclass(frozen=True)
class IdentityKind:
    """An identity; ``n`` is the De Moivre power, ``m`` the PHF order."""

    tag: IdentityTag
    n: int | None = None
    m: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "tag", IdentityTag(self.tag))
        if self.tag is IdentityTag.DE_MOIVRE and (self.n is None or self.n < 1):
            raise DomainError("de_moivre needs n >= 1")
        if self.tag is IdentityTag.EULER_DECOMP_PHF and (self.m is None or self.m < 2):
            raise DomainError("euler_decomp_phf needs m >= 2")

    @property
    def label(self) -> str:
        if self.tag is IdentityTag.DE_MOIVRE:
            return f"de_moivre({self.n})"
        if self.tag is IdentityTag.EULER_DECOMP_PHF:
            return f"euler_decomp_phf({self.m})"
        return self.tag.value

    @property
    def uses_y(self) -> bool:
        return self.tag.value.startswith(("addition", "semigroup"))

    @property
    def uses_alpha(self) -> bool:
        return self.tag.value.endswith(("_alpha", "_ab"))

    @property
    def uses_beta(self) -> bool:
        return self.tag.value.endswith("_ab")


def all_kinds(max_de_moivre: int = 5, phf_orders: Sequence[int] = (2, 3, 4, 5)) -> list[IdentityKind]:
    """Every identity with the De Moivre powers and PHF orders expanded."""
    kinds = []
    for tag in IdentityTag:
        if tag is IdentityTag.DE_MOIVRE:
            kinds.extend(IdentityKind(tag, n=n) for n in range(1, max_de_moivre + 1))
        elif tag is IdentityTag.EULER_DECOMP_PHF:
            kinds.extend(IdentityKind(tag, m=m) for m in phf_orders)
        else:
            kinds.append(IdentityKind(tag))
    return kinds


def _ev(family: SeriesFamily, z, cfg):
    return complex(evaluate(family, z, cfg).value)


def _umbral(family: SeriesFamily, seq, cfg):
    return complex(eval_on_sequence(family, seq, cfg).value)


def _composed(x, y, family: SumFamily, order: int = UMBRAL_ORDER):
    return umbral_sum(embed(x, order, family.block), embed(y, order, family.block), family)


def _addition(cos_f, sin_f, sum_family, x, y, cfg, want_sin: bool) -> float:
    seq = _composed(x, y, sum_family)
    cx, sx, cy, sy = (_ev(cos_f, x, cfg), _ev(sin_f, x, cfg),
                      _ev(cos_f, y, cfg), _ev(sin_f, y, cfg))
    if want_sin:
        return abs(_umbral(sin_f, seq, cfg) - (cx * sy + sx * cy))
    return abs(_umbral(cos_f, seq, cfg) - (cx * cy - sx * sy))


def identity_residual(kind: IdentityKind, x: float, y: float = 0.0,
                      alpha: float = 1.0, beta: float = 1.0,
                      cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """``|lhs - rhs|`` for ``kind`` at the given arguments.

    ``y`` is the second operand of addition and semigroup laws; ``alpha`` and
    ``beta`` the orders of the parameterized families.  Other kinds ignore
    the arguments they do not use.
    """
    tag = kind.tag
    lcos, lsin = SeriesFamily(Tag.LCOS), SeriesFamily(Tag.LSIN)
    if tag is IdentityTag.EULER:
        return abs(_ev(SeriesFamily(Tag.LEXP), 1j * x, cfg) - (_ev(lcos, x, cfg) + 1j * _ev(lsin, x, cfg)))
    if tag in (IdentityTag.ADDITION_COS, IdentityTag.ADDITION_SIN):
        return _addition(lcos, lsin, LAGUERRE, x, y, cfg, tag is IdentityTag.ADDITION_SIN)
    if tag in (IdentityTag.ADDITION_COS_ALPHA, IdentityTag.ADDITION_SIN_ALPHA):
        return _addition(SeriesFamily(Tag.LCOS_ALPHA, alpha=alpha),
                         SeriesFamily(Tag.LSIN_ALPHA, alpha=alpha),
                         SumFamily(SumTag.ALPHA, alpha=alpha), x, y, cfg,
                         tag is IdentityTag.ADDITION_SIN_ALPHA)
    if tag in (IdentityTag.ADDITION_COS_AB, IdentityTag.ADDITION_SIN_AB):
        return _addition(SeriesFamily(Tag.LCOS_AB, alpha=alpha, beta=beta),
                         SeriesFamily(Tag.LSIN_AB, alpha=alpha, beta=beta),
                         SumFamily(SumTag.AB, alpha=alpha, beta=beta), x, y, cfg,
                         tag is IdentityTag.ADDITION_SIN_AB)
    if tag in (IdentityTag.ADDITION_CH_PHF, IdentityTag.ADDITION_SH_PHF):
        ch, sh = SeriesFamily(Tag.PHF_CH), SeriesFamily(Tag.PHF_SH)
        seq = _composed(x, y, PHF03)
        chx, shx, chy, shy = _ev(ch, x, cfg), _ev(sh, x, cfg), _ev(ch, y, cfg), _ev(sh, y, cfg)
        if tag is IdentityTag.ADDITION_CH_PHF:
            return abs(_umbral(ch, seq, cfg) - (chx * chy + shx * shy))
        return abs(_umbral(sh, seq, cfg) - (chx * shy + shx * chy))
    if tag is IdentityTag.SEMIGROUP_L:
        f = SeriesFamily(Tag.LEXP)
        return abs(_umbral(f, _composed(x, y, LAGUERRE), cfg) - _ev(f, x, cfg) * _ev(f, y, cfg))
    if tag is IdentityTag.SEMIGROUP_ALPHA:
        f = SeriesFamily.lexp_alpha(alpha)
        seq = _composed(x, y, SumFamily(SumTag.ALPHA, alpha=alpha))
        return abs(_umbral(f, seq, cfg) - _ev(f, x, cfg) * _ev(f, y, cfg))
    if tag is IdentityTag.SEMIGROUP_PHF:
        f = SeriesFamily.phf(0, 3)
        return abs(_umbral(f, _composed(x, y, PHF03), cfg) - _ev(f, x, cfg) * _ev(f, y, cfg))
    if tag is IdentityTag.DUPLICATION:
        seq = scale(2, x, LAGUERRE, UMBRAL_ORDER)
        cx, sx = _ev(lcos, x, cfg), _ev(lsin, x, cfg)
        return max(abs(_umbral(lcos, seq, cfg) - (cx * cx - sx * sx)),
                   abs(_umbral(lsin, seq, cfg) - 2 * cx * sx))
    if tag is IdentityTag.DE_MOIVRE:
        seq = scale(kind.n, x, LAGUERRE, UMBRAL_ORDER)
        lhs = (_ev(lcos, x, cfg) + 1j * _ev(lsin, x, cfg)) ** kind.n
        return abs(lhs - (_umbral(lcos, seq, cfg) + 1j * _umbral(lsin, seq, cfg)))
    if tag is IdentityTag.EULER_DECOMP_PHF:
        m = kind.m
        parts = [_ev(SeriesFamily.phf(k, m), x, cfg) for k in range(m)]
        worst = 0.0
        for w in UnityRoots(m).values:
            rhs = sum(w ** k * parts[k] for k in range(m))
            worst = max(worst, abs(cmath.exp(w * x) - rhs))
        return float(worst)
    if tag is IdentityTag.PYTHAGORAS_DEFECT:
        return float((_ev(lcos, x, cfg) ** 2 + _ev(lsin, x, cfg) ** 2 - 1).real)
    raise DomainError(f"unknown identity {tag}")  # pragma: no cover


# ---------------------------------------------------------------------------
# Figures
# ---------------------------------------------------------------------------


def lissajous_points(x_max: float, steps: int,
                     cfg: EvalConfig = DEFAULT_CONFIG) -> list[tuple[float, float, float]]:
    """``(x, lc(x), ls(x))`` on ``steps`` evenly spaced points of ``[0, x_max]``."""
    if steps < 2:
        raise DomainError("steps must be at least 2")
    if not x_max > 0:
        raise DomainError("x_max must be positive")
    pts = []
    for i in range(steps):
        x = x_max * i / (steps - 1)
        pts.append((x, lc(x, cfg), ls(x, cfg)))
    return pts


def revisits(points: Sequence[tuple[float, float, float]], tol: float = 1e-6,
             min_gap: float = 0.5) -> list[tuple[int, int]]:
    """Index pairs whose ``(lc, ls)`` agree within ``tol`` although their
    parameters differ by more than ``min_gap``."""
    from scipy.spatial import cKDTree

    xy = np.array([(p[1], p[2]) for p in points])
    xs = np.array([p[0] for p in points])
    pairs = cKDTree(xy).query_pairs(r=tol)
    return sorted((i, j) for i, j in pairs if abs(xs[i] - xs[j]) > min_gap)


class SectorArea(NamedTuple):
    area: float
    double: float


def _simpson(f: Callable[[float], float], a: float, b: float, panels: int) -> float:
    if panels % 2:
        panels += 1
    h = (b - a) / panels
    acc = f(a) + f(b)
    for i in range(1, panels):
        acc += (4 if i % 2 else 2) * f(a + i * h)
    return acc * h / 3.0


def sector_area(x: float, quad_steps: int = 200, cfg: EvalConfig = DEFAULT_CONFIG,
                pair: tuple[Callable, Callable, Callable, Callable] | None = None) -> SectorArea:
    """Area swept by the ray to ``(lc(t), ls(t))`` for ``t`` in ``[0, x]``.

    ``A = 1/2 * int_0^x (lc ls' - ls lc') dt`` with ordinary derivatives and
    composite Simpson on ``quad_steps`` panels.  ``pair`` replaces the
    functions by ``(c, s, c', s')``; passing ``(cos, sin, -sin, cos)`` gives
    the circular sector ``x/2``.
    """
    if x < 0:
        raise DomainError("sector_area needs x >= 0")
    if pair is None:
        lcos, lsin = SeriesFamily(Tag.LCOS), SeriesFamily(Tag.LSIN)

        def integrand(t: float) -> float:
            c = evaluate(lcos, t, cfg).value.real
            s = evaluate(lsin, t, cfg).value.real
            dc = evaluate(lcos, t, cfg, derivative=1).value.real
            ds = evaluate(lsin, t, cfg, derivative=1).value.real
            return c * ds - s * dc
    else:
        c_f, s_f, dc_f, ds_f = pair

        def integrand(t: float) -> float:
            return c_f(t) * ds_f(t) - s_f(t) * dc_f(t)

    if x == 0:
        return SectorArea(0.0, 0.0)
    area = float(0.5 * _simpson(integrand, 0.0, float(x), quad_steps))
    return SectorArea(area, 2.0 * area)


CIRCULAR_PAIR = (math.cos, math.sin, lambda t: -math.sin(t), math.cos)
