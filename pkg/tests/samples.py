"""
Sample terms and documents shared by the tests.
"""

OMEGA = "(\\x. x x) (\\x. x x)"
SHARED = "(\\x. x x) ((\\y. y) z)"

# ->->-<-<- over a concrete valley; the crossed point is M_2 = z
VALLEY = "(\\x. x) ((\\y. y) z)\n->\n(\\y. y) z\n->\nz\n<-\n(\\u. u) z\n<-\n(\\v. v) ((\\u. u) z)\n"

SINGLE_LEFT = "y\n<-\n(\\x. x) y\n"

# Both sides of the peak start at SHARED
PEAK_LEFT = f"{SHARED}\n->\n(\\x. x x) z\n"
PEAK_RIGHT = f"{SHARED}\n->\n(\\y. y) z ((\\y. y) z)\n"

# Canonical printed form: a trailing abstraction argument needs no parentheses
OMEGA_PRINTED = "(\\x. x x) \\x. x x"
