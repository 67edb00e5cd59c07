from fractions import Fraction


# LLL parameter; the 2^{(d-1)/4} first-vector bound is the guarantee at this value.
LLL_DELTA = Fraction(3, 4)

# theta is stored as a rational with this denominator, rounded down.
THETA_DENOMINATOR = 64

# Accounting slack: H >= (s / 24) * N^{theta^2 / r}.
INTERVAL_HALF_WIDTH_DIVISOR = 24
