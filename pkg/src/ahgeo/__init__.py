"""Numerics for asymptotically hyperbolic model geometries.

Computes the relative volume of geodesic spheres at infinity, collar
heights of geodesic defining functions, and p-capacities of balls on
three analytic models (hyperbolic space, a hyperbolic circle quotient
in Fermi coordinates, and Riemannian AdS-Schwarzschild), and audits the
inequalities relating them.
"""

from .models import (
    AdSSchwarzschild, FermiQuotient, Hyperbolic, ModelMetric, ModelPoint,
    WarpProfile, ads_horizon, ads_lambda, ads_r_of_t, ads_t_of_r,
    model_from_json, model_to_json, point, ricci_deviation,
    unit_sphere_volume, warp_profile,
)
from .errors import NumericError

__version__ = "0.1.0"
