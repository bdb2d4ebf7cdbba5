"""Closed-form concentration bounds and their epsilon constants.

All of these are plain formula evaluations. The epsilon constants shrink
like sqrt(log n / n)-type expressions and are only meaningful below 1; at
desk scale they are frequently vacuous (a lower band (1 - eps) * mean <= 0),
which callers should surface rather than hide, so every epsilon result
carries a vacuous flag.
"""

from __future__ import annotations

import dataclasses
import math
from typing import Callable, NamedTuple

from .errors import ConfigError, DomainError
from .geometry import PathLossModel
from .sinr import CouplingRadii, SinrParams, coupling_radii

CHERNOFF_LOWER = "chernoff-lower"
CHERNOFF_UPPER = "chernoff-upper"
AZUMA_LOWER = "azuma-lower"
AZUMA_UPPER = "azuma-upper"
_CUT_BOUND_KINDS = (CHERNOFF_LOWER, CHERNOFF_UPPER, AZUMA_LOWER, AZUMA_UPPER)


class EpsilonPair(NamedTuple):
    """Relative band half-widths around a mean interference value.

    The band is [(1 - lower) * mean, (1 + upper) * mean]; `mean` is the
    expected interference sum the pair was derived from.
    """

    lower: float
    upper: float
    mean: float

    @property
    def lower_vacuous(self) -> bool:
        return self.lower >= 1.0


class MincutEpsilons(NamedTuple):
    """Relative half-widths of the min-cut concentration band.

    lower/upper come from the independent-link (Chernoff) route and
    bounded_difference from the martingale route; all three are relative to
    expected_mincut = m * cbar.
    """

    lower: float
    upper: float
    bounded_difference: float
    expected_mincut: float

    @property
    def lower_vacuous(self) -> bool:
        return self.lower >= 1.0


def interference_epsilons(n: int, mean_attenuation: float) -> EpsilonPair:
    """Band half-widths for the unweighted interference sum J.

    lower = sqrt(4 ln n / ((n-1) E[L])), upper = sqrt(6 ln n / ((n-1) E[L])).
    Either tail of the band is exceeded with probability O(1/n^2).
    """
    if n < 2:
        raise ConfigError(f"need n >= 2, got {n}")
    if mean_attenuation <= 0:
        raise ConfigError(f"mean attenuation must be positive, got {mean_attenuation}")
    mean_sum = (n - 1) * mean_attenuation
    return EpsilonPair(
        lower=math.sqrt(4.0 * math.log(n) / mean_sum),
        upper=math.sqrt(6.0 * math.log(n) / mean_sum),
        mean=mean_sum,
    )


def weighted_interference_epsilons(n: int, mean_power: float, mean_attenuation: float) -> EpsilonPair:
    """Band half-widths for the power-weighted interference sum I.

    Same square-root forms with (n-1) E[P] E[L] in the denominator; reduces
    to interference_epsilons when E[P] = 1.
    """
    if mean_power <= 0:
        raise ConfigError(f"mean power must be positive, got {mean_power}")
    base = interference_epsilons(n, mean_power * mean_attenuation)
    return base


def chernoff_tail(mean: float, eps: float, side: str) -> float:
    """Chernoff tail bound for a sum with the given mean.

    lower side: P(S <= (1-eps) mean) <= exp(-mean eps^2 / 2), for eps in [0, 1];
    upper side: P(S >= (1+eps) mean) <= exp(-mean eps^2 / 3), for eps >= 0.
    eps = 0 gives the vacuous bound 1.
    """
    if mean <= 0:
        raise ConfigError(f"mean must be positive, got {mean}")
    if eps < 0:
        raise DomainError(f"eps must be nonnegative, got {eps}")
    if side == "lower":
        if eps > 1:
            raise DomainError(f"lower-tail bound needs eps <= 1, got {eps}")
        return math.exp(-mean * eps * eps / 2.0)
    if side == "upper":
        return math.exp(-mean * eps * eps / 3.0)
    raise ConfigError(f"side must be 'lower' or 'upper', got {side!r}")


def azuma_bound(lam: float, increments) -> float:
    """Azuma tail bound exp(-lam^2 / (2 sum c_i^2)) for a bounded-difference
    martingale; identical for both tails."""
    cs = [float(c) for c in increments]
    if not cs:
        raise ConfigError("need at least one increment bound")
    if any(c <= 0 for c in cs):
        raise ConfigError("increment bounds must all be positive")
    if lam < 0:
        raise DomainError(f"lambda must be nonnegative, got {lam}")
    return math.exp(-lam * lam / (2.0 * sum(c * c for c in cs)))


def mincut_epsilons(m: int, cbar: float, tail_exp: float = 1.0, eta: float = 1.0, rate: float = 1.0) -> MincutEpsilons:
    """Relative band half-widths for the min-cut value around m * cbar.

    Chernoff route: lower = sqrt(2 a ln m / (m cbar)), upper with 3 a; their
    ratio is always sqrt(1.5). Bounded-difference route:
    (eta + 1) R sqrt(2 a m ln m) / (m cbar). The tail exponent a controls the
    polynomial failure probability and is unrelated to the path-loss exponent.
    """
    if m < 2:
        raise ConfigError(f"need m >= 2, got {m}")
    if cbar <= 0:
        raise ConfigError(f"mean link capacity must be positive, got {cbar}")
    if tail_exp <= 0:
        raise ConfigError(f"tail exponent must be positive, got {tail_exp}")
    if eta < 0:
        raise ConfigError(f"eta must be nonnegative, got {eta}")
    if rate <= 0:
        raise ConfigError(f"rate must be positive, got {rate}")
    expected = m * cbar
    log_m = math.log(m)
    return MincutEpsilons(
        lower=math.sqrt(2.0 * tail_exp * log_m / expected),
        upper=math.sqrt(3.0 * tail_exp * log_m / expected),
        bounded_difference=(eta + 1.0) * rate * math.sqrt(2.0 * tail_exp * m * log_m) / expected,
        expected_mincut=expected,
    )


def cut_tail_bound(kind: str, m: int, k: int, cbar: float, eps: float, eta: float = 0.0, rate: float = 1.0) -> float:
    """Tail bound for the capacity of a size-k cut.

    Chernoff kinds (independent links): exp(-coef cbar eps^2 / 2) below the
    mean and / 3 above, with coef = m + k(m-k). Azuma kinds (dependent links
    under heterogeneous power): exp(-coef cbar^2 eps^2 / (2 (eta+1)^2 R^2))
    for both tails.
    """
    if kind not in _CUT_BOUND_KINDS:
        raise ConfigError(f"unknown cut bound kind {kind!r}; valid: {', '.join(_CUT_BOUND_KINDS)}")
    if not 0 <= k <= m:
        raise ConfigError(f"cut size must lie in [0, {m}], got {k}")
    if cbar <= 0:
        raise ConfigError(f"mean link capacity must be positive, got {cbar}")
    if eps < 0:
        raise DomainError(f"eps must be nonnegative, got {eps}")
    if kind in (CHERNOFF_LOWER, AZUMA_LOWER) and eps > 1:
        raise DomainError(f"lower-tail bounds need eps <= 1, got {eps}")
    coef = m + k * (m - k)
    if kind == CHERNOFF_LOWER:
        return math.exp(-coef * cbar * eps * eps / 2.0)
    if kind == CHERNOFF_UPPER:
        return math.exp(-coef * cbar * eps * eps / 3.0)
    if eta < 0 or rate <= 0:
        raise ConfigError("azuma kinds need eta >= 0 and rate > 0")
    return math.exp(-coef * cbar * cbar * eps * eps / (2.0 * (eta + 1.0) ** 2 * rate * rate))


class AnnulusGap(NamedTuple):
    """Closed-form annulus-width constant plus an exact cross-check.

    closed_form evaluates (p_max^(2a) - p_min^(2a)) [c (1+gamma beta)/beta]^(2a)
    with a the path-loss exponent; the squared-radius gap then scales like
    closed_form / (N0 + gamma f E[I])^(2a). exact_gap(n0, mean_interference,
    eps, upper=True) recomputes r_max^2 - r_min^2 from the radius definitions
    themselves, which invert the attenuation law with exponent 1/a; the two
    conventions do not agree and the callable is the self-consistent one.
    """

    closed_form: float
    exact_gap: Callable[..., float]


def annulus_gap_constant(
    p_min: float,
    p_max: float,
    c: float,
    gamma: float,
    beta: float,
    alpha_pl: float,
    d0: float = 0.0,
) -> AnnulusGap:
    """Constant controlling the width of the ambiguous-connectivity annulus."""
    if not 0 < p_min <= p_max:
        raise ConfigError(f"need 0 < p_min <= p_max, got [{p_min}, {p_max}]")
    if c <= 0 or beta <= 0 or alpha_pl <= 0:
        raise ConfigError("c, beta and the path-loss exponent must be positive")
    if gamma < 0:
        raise ConfigError(f"gamma must be nonnegative, got {gamma}")
    two_a = 2.0 * alpha_pl
    closed_form = (p_max**two_a - p_min**two_a) * (c * (1.0 + gamma * beta) / beta) ** two_a

    def exact_gap(n0: float, mean_interference: float, eps: float, upper: bool = True) -> float:
        params = SinrParams(n0=n0, gamma=gamma, beta=beta, rate=1.0)
        loss = PathLossModel(c=c, alpha=alpha_pl, d0=d0)
        radii: CouplingRadii = coupling_radii(params, loss, p_min, p_max, mean_interference, (eps, eps))
        if upper:
            return radii.max_inflated**2 - radii.min_inflated**2
        return radii.max_deflated**2 - radii.min_deflated**2

    return AnnulusGap(closed_form=closed_form, exact_gap=exact_gap)


@dataclasses.dataclass(frozen=True)
class BoundParams:
    """One bag of inputs for every bound calculator, mirroring what a
    campaign measures: empirical E[L], E[P] and cbar plus the scenario sizes."""

    n: int
    m: int
    l: int = 1
    h: int = 1
    mean_attenuation: float = 1.0
    mean_power: float = 1.0
    cbar: float = 1.0
    eta: float = 1.0
    rate: float = 1.0
    tail_exp: float = 1.0

    def table(self) -> list[tuple[str, float, bool]]:
        """(name, value, vacuous) rows for every constant derivable here."""
        rows: list[tuple[str, float, bool]] = []
        j_pair = interference_epsilons(self.n, self.mean_attenuation)
        i_pair = weighted_interference_epsilons(self.n, self.mean_power, self.mean_attenuation)
        rows.append(("interference_eps_lower", j_pair.lower, j_pair.lower_vacuous))
        rows.append(("interference_eps_upper", j_pair.upper, False))
        rows.append(("mean_interference_sum", j_pair.mean, False))
        rows.append(("weighted_interference_eps_lower", i_pair.lower, i_pair.lower_vacuous))
        rows.append(("weighted_interference_eps_upper", i_pair.upper, False))
        rows.append(("mean_weighted_interference_sum", i_pair.mean, False))
        eps = mincut_epsilons(self.m, self.cbar, self.tail_exp, self.eta, self.rate)
        rows.append(("mincut_eps_lower", eps.lower, eps.lower_vacuous))
        rows.append(("mincut_eps_upper", eps.upper, False))
        rows.append(("mincut_eps_bounded_difference", eps.bounded_difference, eps.bounded_difference >= 1.0))
        rows.append(("expected_mincut", eps.expected_mincut, False))
        return rows
