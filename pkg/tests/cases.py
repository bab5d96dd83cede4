"""Systems shared by several test modules."""

from pathlib import Path

from flexpuiseux import ConstraintSystem, parse_polynomial

DATA = Path(__file__).resolve().parent.parent / "data"

XYZ = ("x", "y", "z")
THREE_QUADRICS_TEXT = ("x^2 + y^2 - 2*z", "y^2 + x*y - z", "2*x^2 - 3*x*y - 2*y^2 - 2*y*z + z")

ABCD = ("a", "b", "c", "d")
FOUR_BAR_TEXT = ("(a+1)^2 + b^2 - 1", "(3+c-a)^2 + (d-b)^2 - 9", "(c-2)^2 + d^2 - 4")

P_BC = (
    "144*b^4*c^2 + 144*b^2*c^4 + 384*b^4*c + 456*b^2*c^3 + 256*b^4 + 1376*b^2*c^2"
    " + 1225*c^4 + 1024*b^2*c + 2800*c^3 + 1600*c^2"
)
P_BD = (
    "144*b^4*d^2 - 288*b^3*d^3 + 144*b^2*d^4 + 1024*b^4 - 1408*b^3*d + 1968*b^2*d^2"
    " - 2080*b*d^3 + 1225*d^4 + 11520*b^2 - 5760*b*d + 7200*d^2"
)


def three_quadrics() -> ConstraintSystem:
    return ConstraintSystem(XYZ, tuple(parse_polynomial(t, XYZ) for t in THREE_QUADRICS_TEXT))


def four_bar() -> ConstraintSystem:
    return ConstraintSystem(ABCD, tuple(parse_polynomial(t, ABCD) for t in FOUR_BAR_TEXT))
