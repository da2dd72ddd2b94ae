"""CHSH functional over four settings, with bound classification.

S = E(a, b) + E(a, b') + E(a', b) - E(a', b').  |S| is compared against
the local bound 2, the Tsirelson bound 2*sqrt(2), and the algebraic
bound 4; both classification thresholds are closed on the lower side,
since the inequalities themselves are non-strict.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .angles import normalize_angle, separation
from .errors import DomainError, InvariantViolationError
from .laws import CorrelationLaw
from .montecarlo import CorrelationEstimate, child_seed, estimate_correlation
from .protocols import ProtocolSpec

LOCAL_BOUND = 2.0
TSIRELSON_BOUND = 2.0 * math.sqrt(2.0)
ALGEBRAIC_BOUND = 4.0


class ChshClass(Enum):
    LOCAL = "Local"
    SUPERCLASSICAL = "Superclassical"
    SUPERQUANTUM = "Superquantum"


@dataclass(frozen=True)
class ChshSettings:
    """The four measurement directions of a CHSH experiment."""

    a: float
    a_prime: float
    b: float
    b_prime: float

    def __post_init__(self) -> None:
        for name in ("a", "a_prime", "b", "b_prime"):
            object.__setattr__(self, name, normalize_angle(getattr(self, name)))

    def separations(self) -> tuple[float, float, float, float]:
        """Folded angles for the pairs (a,b), (a,b'), (a',b), (a',b')."""
        return (
            separation(self.a, self.b),
            separation(self.a, self.b_prime),
            separation(self.a_prime, self.b),
            separation(self.a_prime, self.b_prime),
        )


# Three separations of pi/4 and one of 3*pi/4; these values make every
# piecewise law land on exact dyadic arithmetic.
CANONICAL_SETTINGS = ChshSettings(
    a=math.pi / 2,
    a_prime=0.0,
    b=math.pi / 4,
    b_prime=3.0 * (math.pi / 4),
)


def classify(abs_s: float) -> ChshClass:
    """Place |S| against the three bounds."""
    if abs_s < 0.0:
        raise DomainError(f"|S| cannot be negative, got {abs_s!r}")
    if abs_s > ALGEBRAIC_BOUND + 1e-9:
        raise InvariantViolationError(
            f"|S| = {abs_s!r} exceeds the algebraic bound 4; "
            "this signals a protocol or estimator bug"
        )
    if abs_s <= LOCAL_BOUND:
        return ChshClass.LOCAL
    if abs_s <= TSIRELSON_BOUND:
        return ChshClass.SUPERCLASSICAL
    return ChshClass.SUPERQUANTUM


@dataclass(frozen=True)
class ChshResult:
    """Four correlations, the functional, and its classification."""

    e_ab: float
    e_abp: float
    e_apb: float
    e_apbp: float
    s: float
    abs_s: float
    classification: ChshClass
    stderr_s: float | None = None


def _assemble(
    e_ab: float,
    e_abp: float,
    e_apb: float,
    e_apbp: float,
    stderr_s: float | None,
) -> ChshResult:
    s = e_ab + e_abp + e_apb - e_apbp
    return ChshResult(
        e_ab=e_ab,
        e_abp=e_abp,
        e_apb=e_apb,
        e_apbp=e_apbp,
        s=s,
        abs_s=abs(s),
        classification=classify(abs(s)),
        stderr_s=stderr_s,
    )


def chsh_analytic(
    law: CorrelationLaw, settings: ChshSettings = CANONICAL_SETTINGS
) -> ChshResult:
    """Evaluate the functional from a closed-form law."""
    values = [law.evaluate(theta) for theta in settings.separations()]
    return _assemble(*values, stderr_s=None)


def chsh_sampled(
    spec: ProtocolSpec,
    settings: ChshSettings = CANONICAL_SETTINGS,
    n_per_pair: int = 100_000,
    seed: int = 0,
    workers: int = 1,
) -> ChshResult:
    """Evaluate the functional from four seeded estimates.

    Pair i draws from the child seed of (seed, i), so each pair's
    estimate is reproducible on its own, and the combined standard error
    is the root sum of squares of the four pair errors.
    """
    pairs = (
        (settings.a, settings.b),
        (settings.a, settings.b_prime),
        (settings.a_prime, settings.b),
        (settings.a_prime, settings.b_prime),
    )
    estimates: list[CorrelationEstimate] = [
        estimate_correlation(
            spec, x, y, n_per_pair, child_seed(seed, i), workers=workers
        )
        for i, (x, y) in enumerate(pairs)
    ]
    stderr_s = math.sqrt(sum(e.stderr**2 for e in estimates))
    return _assemble(*(e.mean for e in estimates), stderr_s=stderr_s)
