"""Printed reference polynomials, rewritten in the parser grammar (explicit '*')."""

CUBIC_DISC = "b^2*c^2 - 4*a*c^3 - 4*b^3*d + 18*a*b*c*d - 27*a^2*d^2"

QUADRATIC_RES = "c^2*d^2 - b*c*d*e + a*c*e^2 + b^2*d*f - 2*a*c*d*f - a*b*e*f + a^2*f^2"

QUARTIC_DISC = (
    "b^2*c^2*d^2 - 4*a*c^3*d^2 - 4*b^3*d^3 + 18*a*b*c*d^3 - 27*a^2*d^4 - 4*b^2*c^3*e"
    " + 16*a*c^4*e + 18*b^3*c*d*e - 80*a*b*c^2*d*e - 6*a*b^2*d^2*e + 144*a^2*c*d^2*e"
    " - 27*b^4*e^2 + 144*a*b^2*c*e^2 - 128*a^2*c^2*e^2 - 192*a^2*b*d*e^2 + 256*a^3*e^3")

CIRCLE_QUADRATIC_PHI = (
    "a^6 - 3*a^4*b^2 + 3*a^2*b^4 - b^6 - 3*a^4*c^2 - 21*a^2*b^2*c^2 - 3*b^4*c^2"
    " + 3*a^2*c^4 - 3*b^2*c^4 - c^6 + 36*a^3*b*c*d + 18*a*b^3*c*d + 18*a*b*c^3*d"
    " - 8*a^4*d^2 - 20*a^2*b^2*d^2 + b^4*d^2 - 20*a^2*c^2*d^2 + 2*b^2*c^2*d^2 + c^4*d^2"
    " - 16*a*b*c*d^3 + 16*a^2*d^4 + 18*a^3*b*c - 18*a*b^3*c + 36*a*b*c^3 - 8*a^4*d"
    " - 2*a^2*b^2*d + 10*b^4*d - 38*a^2*c^2*d + 2*b^2*c^2*d - 8*c^4*d - 24*a*b*c*d^2"
    " + 32*a^2*d^3 - 8*b^2*d^3 + 8*c^2*d^3 + a^4 - 2*a^2*b^2 + b^4 - 20*a^2*c^2"
    " + 20*b^2*c^2 - 8*c^4 + 24*a*b*c*d + 8*a^2*d^2 - 32*b^2*d^2 - 8*c^2*d^2 + 16*d^4"
    " + 16*a*b*c - 8*a^2*d - 8*b^2*d - 32*c^2*d + 32*d^3 - 16*c^2 + 16*d^2")

CIRCLE_QUARTIC_PHI = (
    "4*a^3*b^3 + 27*a^4*c^2 - 36*a^3*b*c^2 + 2*a^2*b^2*c^2 - 36*a*b^3*c^2 + 27*b^4*c^2"
    " - 256*a^2*c^4 + 512*a*b*c^4 - 256*b^2*c^4 + 6*a^2*b^2*c - 36*a*b^3*c + 54*b^4*c"
    " - 288*a^2*c^3 + 704*a*b*c^3 - 544*b^2*c^3 + 27*b^4 + 192*a*b*c^2 - 288*b^2*c^2"
    " - 256*c^4 - 256*c^3")

FOURNORM_QUARTIC_PHI = (
    "4*a^3*b^3 + 27*a^4*c^2 + 6*a^2*b^2*c^2 + 27*b^4*c^2 + 192*a*b*c^4 - 256*c^6"
    " + 6*a^2*b^2*c + 54*b^4*c + 384*a*b*c^3 - 768*c^5 + 27*b^4 + 192*a*b*c^2"
    " - 768*c^4 - 256*c^3")

# (factor, multiplicity); leading sign -1
COPOSITIVE_4_PHI = [("a - 1", 5), ("a + 1", 3), ("b - 1", 3), ("b + 1", 5),
                    ("-2*b^2 + a + 1", 2), ("2*a^2 + b - 1", 2),
                    ("a^2 + 3*a*b + a + b^2 - b - 1", 1), ("-a^2 + a*b + a - b^2 - b + 1", 1)]
COPOSITIVE_4_SIGN = -1

# The printed 5x5 product is not symmetric under a <-> b although the matrix
# family is (index map i -> 2i mod 5), so only the factors it shares with a
# symmetric product are kept here.
COPOSITIVE_5_SHARED = [("b", 10), ("2*a^2 + 4*a - b", 5), ("2*b^2 + 4*b - a", 5),
                       ("a^2 - 3*a*b + b^2", 7), ("2*a + 2*b + 5", 1),
                       ("a^2 + a*b + 2*a + b^2 + 2*b", 5)]
