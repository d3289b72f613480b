"""Exact rational constants shared across modules.

Everything here is a ``fractions.Fraction`` so that no binary-float
contamination can enter comparisons that are meant to be exact.
"""

from fractions import Fraction

# Exponent of the guaranteed prime-gap window [x, x + x^theta].
PRIME_GAP_EXPONENT = Fraction(21, 40)

# Decay exponent of the distance between a cubic-chain power and its prime:
# 3*theta - 2 = -17/40.
CUBIC_NEARNESS_EXPONENT = 3 * PRIME_GAP_EXPONENT - 2

# Coefficient of log(p_1) in the closed-form decay rate for cubic chains:
# (2 - 3*theta)/6 = 17/240.
CUBIC_DECAY_COEFF = (2 - 3 * PRIME_GAP_EXPONENT) / 6


def step_decay_exponent(b: int) -> Fraction:
    """theta_b = 1 - theta - 1/b, the per-step nearness decay exponent.

    Positive only for b >= 3, which is the regime where the degree bound
    argument applies.
    """
    if b < 3:
        raise ValueError(f"step decay exponent needs b >= 3, got {b}")
    return 1 - PRIME_GAP_EXPONENT - Fraction(1, b)
