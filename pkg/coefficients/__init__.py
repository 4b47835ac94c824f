from .local_polynomials import DiagonalProfile, LaurentSymmetric, katsurada_poly, tilde
from .fourier import EisensteinCoefficient, eisenstein_coeff, ikeda_coeff, rank_of

__all__ = [
    "DiagonalProfile",
    "LaurentSymmetric",
    "katsurada_poly",
    "tilde",
    "EisensteinCoefficient",
    "eisenstein_coeff",
    "ikeda_coeff",
    "rank_of",
]
