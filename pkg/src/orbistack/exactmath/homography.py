from orbistack.errors import NotUnimodular, ZeroDenominator
from orbistack.exactmath.matrix import IntegerMatrix
from orbistack.exactmath.quadratic import QuadraticNumber


def qn_apply_homography(m: IntegerMatrix, tau: QuadraticNumber) -> QuadraticNumber:
    """Send tau to (a*tau + b)/(c*tau + d) for m = [[a, c], [b, d]].

    The layout is column-wise: the first column holds the numerator
    coefficients.  This is the transpose of the more common
    [[a, b], [c, d]] convention, and with it composition reads right to
    left: h(M*N, tau) == h(N, h(M, tau)).
    """
    if m.n != 2:
        raise ValueError("homographies need a 2x2 matrix")
    if not m.is_unimodular():
        raise NotUnimodular(f"{m} is not in GL2(Z)")
    (a, c), (b, d) = m.rows
    den = c * tau + d
    if not den:
        raise ZeroDenominator(f"c*tau + d vanishes for tau = {tau}")
    return (a * tau + b) / den
