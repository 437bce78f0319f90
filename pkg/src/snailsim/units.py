"""Unit conventions and the single conversion layer.

Interfaces throughout the package use non-angular frequencies (GHz for mode
frequencies, MHz for couplings and shifts, kHz for Kerrs) and microseconds
for times.  All dynamics internals work in angular units, rad/us.

1 MHz = 1 cycle/us, so the MHz <-> rad/us conversion is a bare factor 2*pi.
"""

import numpy as np

TWO_PI = 2.0 * np.pi

GHZ_TO_MHZ = 1e3
KHZ_TO_MHZ = 1e-3
HZ_TO_MHZ = 1e-6
NS_TO_US = 1e-3


def mhz_to_angular(f_mhz):
    """Non-angular MHz -> angular rad/us."""
    return TWO_PI * np.asarray(f_mhz, dtype=float) if np.ndim(f_mhz) else TWO_PI * float(f_mhz)


def angular_to_mhz(w_rad_per_us):
    """Angular rad/us -> non-angular MHz."""
    return np.asarray(w_rad_per_us) / TWO_PI if np.ndim(w_rad_per_us) else float(w_rad_per_us) / TWO_PI


def ghz_to_angular(f_ghz):
    """Non-angular GHz -> angular rad/us."""
    return mhz_to_angular(np.asarray(f_ghz) * GHZ_TO_MHZ if np.ndim(f_ghz) else f_ghz * GHZ_TO_MHZ)


def khz_to_angular(f_khz):
    """Non-angular kHz -> angular rad/us."""
    return mhz_to_angular(np.asarray(f_khz) * KHZ_TO_MHZ if np.ndim(f_khz) else f_khz * KHZ_TO_MHZ)


def ns_to_us(t_ns):
    return np.asarray(t_ns) * NS_TO_US if np.ndim(t_ns) else float(t_ns) * NS_TO_US


def us_to_ns(t_us):
    return np.asarray(t_us) / NS_TO_US if np.ndim(t_us) else float(t_us) / NS_TO_US
