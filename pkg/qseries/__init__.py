from .series import PowerSeries, delta_expansion, f2, theta_basic, theta_E7, theta_E8
from .arithmetic import bernoulli, eisenstein_constants, sigma
from .eigenforms import EigenvalueTable, eigenvalue_table, tau_table

__all__ = [
    "PowerSeries",
    "delta_expansion",
    "f2",
    "theta_basic",
    "theta_E7",
    "theta_E8",
    "bernoulli",
    "eisenstein_constants",
    "sigma",
    "EigenvalueTable",
    "eigenvalue_table",
    "tau_table",
]
