"""Trial-level protocol state machines.

Each trial function is a pure map from measurement settings and explicit
shares to a TrialRecord; all randomness is injected by the caller.
Alice's outcome reads (a, shares) only and Bob's outcome reads
(b, shares, received bits) only.  The bob_output_* helpers take no
setting a at all, so the locality split is visible in the signatures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .angles import TWO_PI, normalize_angle, resultant_sign, separation, sgn
from .errors import ConfigurationError

HALF_PI = 0.5 * math.pi


class ProtocolKind(Enum):
    PLAIN = "plain"
    FIXED_SHIFT = "fixed-shift"
    RANDOM_SHIFT = "random-shift"
    TWO_SHARE = "two-share"
    ADAPTIVE = "adaptive"
    QUANTUM = "quantum"


@dataclass(frozen=True)
class ProtocolSpec:
    """Tagged protocol choice with its parameters.

    delta is meaningful only for the fixed-shift protocol and k_bits only
    for the adaptive protocol; carrying either elsewhere is rejected.
    """

    kind: ProtocolKind
    delta: float | None = None
    k_bits: int | None = None

    def __post_init__(self) -> None:
        if self.kind is ProtocolKind.FIXED_SHIFT:
            if self.delta is None:
                raise ConfigurationError("fixed-shift requires delta")
            if not 0.0 <= self.delta <= HALF_PI:
                raise ConfigurationError(
                    f"delta must lie in [0, pi/2], got {self.delta!r}"
                )
        elif self.delta is not None:
            raise ConfigurationError(
                f"{self.kind.value} carries no delta parameter"
            )
        if self.kind is ProtocolKind.ADAPTIVE:
            if self.k_bits is None or self.k_bits < 1:
                raise ConfigurationError("adaptive requires k_bits >= 1")
        elif self.k_bits is not None:
            raise ConfigurationError(
                f"{self.kind.value} carries no k_bits parameter"
            )


@dataclass(frozen=True)
class TrialRecord:
    """One experiment: settings, shares, sent bits, and both outcomes."""

    a: float
    b: float
    shares: tuple[float, ...]
    comm_bits: tuple[int, ...]
    alpha: int
    beta: int

    @property
    def product(self) -> int:
        return self.alpha * self.beta


def alice_output(a: float, lam: float) -> int:
    """Alice's outcome sgn(cos(a - lam))."""
    return sgn(math.cos(a - lam))


def comm_bit_fixed(a: float, lam: float, delta: float) -> int:
    """The bit Alice sends: her sign along the share times her sign along
    the shifted share."""
    if not 0.0 <= delta <= HALF_PI:
        raise ConfigurationError(f"delta must lie in [0, pi/2], got {delta!r}")
    return sgn(math.cos(a - lam)) * sgn(math.cos((a - lam) - delta))


def bob_output_fixed(b: float, lam: float, c: int, delta: float) -> int:
    """Bob's outcome from the share, the received bit, and the known shift.

    The received bit picks between the two resultants of the share and
    its shifted copy; the overall minus is the anticorrelation convention
    that pins E(0) = -1.
    """
    return -resultant_sign(b, lam, c, lam + delta)


def run_trial_fixed(a: float, b: float, lam: float, delta: float) -> TrialRecord:
    """One trial of the fixed-shift protocol.

    Degenerate resultants propagate as DegenerateResultantError; samplers
    resample the share, direct callers see the error.
    """
    alpha = alice_output(a, lam)
    c = comm_bit_fixed(a, lam, delta)
    beta = bob_output_fixed(b, lam, c, delta)
    return TrialRecord(
        a=a, b=b, shares=(lam,), comm_bits=(c,), alpha=alpha, beta=beta
    )


def run_trial_plain(a: float, b: float, lam: float) -> TrialRecord:
    """One trial of the no-communication protocol.

    Identical outcomes to run_trial_fixed at delta = 0, where the bit is
    the constant +1.  A constant bit carries no information, so none is
    recorded.
    """
    rec = run_trial_fixed(a, b, lam, 0.0)
    return TrialRecord(
        a=a, b=b, shares=(lam,), comm_bits=(), alpha=rec.alpha, beta=rec.beta
    )


def run_trial_random_shift(
    a: float, b: float, lam: float, delta_draw: float
) -> TrialRecord:
    """One trial with the shift redrawn per trial, uniform on [0, pi/2].

    The drawn shift is a share known to both sides, so it is recorded
    alongside the angular share.
    """
    if not 0.0 <= delta_draw <= HALF_PI:
        raise ConfigurationError(
            f"delta_draw must lie in [0, pi/2], got {delta_draw!r}"
        )
    rec = run_trial_fixed(a, b, lam, delta_draw)
    return TrialRecord(
        a=a,
        b=b,
        shares=(lam, delta_draw),
        comm_bits=rec.comm_bits,
        alpha=rec.alpha,
        beta=rec.beta,
    )


def comm_bit_twoshare(a: float, lam1: float, lam2: float) -> int:
    """The bit Alice sends when the parties hold two independent shares."""
    return sgn(math.cos(a - lam1)) * sgn(math.cos(a - lam2))


def bob_output_twoshare(b: float, lam1: float, c: int, lam2: float) -> int:
    """Bob's outcome: minus the sign of b-hat on the resultant of the first
    share and the bit-flipped second share.

    The product alpha * beta is then invariant under negating either
    share, which is what makes the two-share average collapse to the
    shift-averaged law.
    """
    return -resultant_sign(b, lam1, c, lam2)


def run_trial_twoshare(
    a: float, b: float, lam1: float, lam2: float
) -> TrialRecord:
    """One trial of the two-share protocol."""
    alpha = alice_output(a, lam1)
    c = comm_bit_twoshare(a, lam1, lam2)
    beta = bob_output_twoshare(b, lam1, c, lam2)
    return TrialRecord(
        a=a, b=b, shares=(lam1, lam2), comm_bits=(c,), alpha=alpha, beta=beta
    )


def quantized_direction(index: int, k: int) -> float:
    """Center of sector `index` out of 2**k equal sectors of the circle."""
    return (index + 0.5) * TWO_PI / (1 << k)


def sector_index(a: float, k: int) -> int:
    """Index of the sector containing the direction a."""
    index = int(normalize_angle(a) / TWO_PI * (1 << k))
    # guard the right edge: a just below 2*pi can round the ratio up to 1
    return min(index, (1 << k) - 1)


def comm_bits_adaptive(a: float, k: int) -> tuple[int, ...]:
    """k-bit binary expansion of Alice's sector index, MSB first, 0 -> -1."""
    index = sector_index(a, k)
    return tuple(
        1 if (index >> (k - 1 - i)) & 1 else -1 for i in range(k)
    )


def bob_output_adaptive(b: float, bits: tuple[int, ...], lam: float) -> int:
    """Bob rebuilds the announced sector center, mirrors Alice's outcome
    along it, and steps the sign when the rebuilt separation reaches pi/2."""
    index = 0
    for bit in bits:
        index = (index << 1) | (1 if bit > 0 else 0)
    a_q = quantized_direction(index, len(bits))
    step = -1 if separation(a_q, b) < HALF_PI else 1
    return sgn(math.cos(a_q - lam)) * step


def run_trial_adaptive(a: float, b: float, k: int, lam: float) -> TrialRecord:
    """One trial of the k-bit quantize-and-step protocol.

    Alice measures along the sector center she announces, so the product
    is the deterministic step of the rebuilt separation and the share
    value drops out of it.
    """
    if k < 1:
        raise ConfigurationError(f"k must be at least 1, got {k!r}")
    bits = comm_bits_adaptive(a, k)
    a_q = quantized_direction(sector_index(a, k), k)
    alpha = sgn(math.cos(a_q - lam))
    beta = bob_output_adaptive(b, bits, lam)
    return TrialRecord(
        a=a, b=b, shares=(lam,), comm_bits=bits, alpha=alpha, beta=beta
    )


def run_trial_quantum(a: float, b: float, u: float, v: float) -> TrialRecord:
    """Reference sampler whose ensemble mean is -cos(separation(a, b)).

    u and v are uniform draws on [0, 1).  Alice's outcome is a fair coin
    on u; Bob anticorrelates when v falls below cos(theta/2)**2, so the
    mean of the product is sin(theta/2)**2 - cos(theta/2)**2 = -cos(theta).
    No shares, no communication.
    """
    theta = separation(a, b)
    threshold = math.cos(0.5 * theta) ** 2
    alpha = 1 if u < 0.5 else -1
    beta = -alpha if v < threshold else alpha
    return TrialRecord(
        a=a, b=b, shares=(), comm_bits=(), alpha=alpha, beta=beta
    )
