"""Frozen physical constants (CODATA 2018).

All golden-value tests in this package assume these exact numbers; do not
swap in a live constants source.
"""

# SI
SPEED_OF_LIGHT = 2.99792458e8        # m/s (exact)
EPSILON_0 = 8.8541878128e-12         # F/m
HBAR = 1.054571817e-34               # J s
ELEMENTARY_CHARGE = 1.602176634e-19  # C (exact)
BOHR_RADIUS = 5.29177210903e-11      # m

# One atomic dipole unit e*a0 in C m
DIPOLE_EA0 = ELEMENTARY_CHARGE * BOHR_RADIUS

# Magnetons divided by h, in MHz per gauss
MU_B_MHZ_PER_G = 1.3996245
MU_N_MHZ_PER_G = 7.62259e-4

# 87Sr nuclear data: spin 9/2, magnetic moment in units of the nuclear magneton
SR87_TWICE_I = 9
SR87_NUCLEAR_MOMENT = -1.0924
