"""
wnc-scatter: quasilinear wave scattering toolkit.

Simulates radial solutions of quasilinear wave equations that violate the
null condition, extracts their nonlinear scattering data along outgoing
characteristics, and checks the interior, decay and vanishing statements
built on that data.
"""

__version__ = "0.1.0"
__description__ = "Nonlinear scattering data for quasilinear wave equations without the null condition"
