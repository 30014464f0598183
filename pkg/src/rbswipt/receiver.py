"""Receiver model: beam splitter, photovoltaic output, APD noise and
spectral efficiency.

The received beam is split by ratio mu: a fraction mu feeds the photovoltaic
converter (linear fit with slope eta_p and intercept p_pth), the remainder
feeds the APD whose photocurrent competes against thermal and shot noise in
the half-log AWGN capacity expression.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# Fixed to the model's stated values rather than CODATA, for curve fidelity.
ELECTRON_CHARGE = 1.6e-19   # C
BOLTZMANN = 1.38e-23        # J/K


@dataclass(frozen=True)
class ReceiverModel:
    """Beam split ratio, PV linear-fit coefficients, and APD noise
    parameters.

    mu: fraction of the beam routed to the PV converter, in [0, 1]
    eta_p: PV slope efficiency
    p_pth: PV linear-fit intercept (W, typically negative)
    nu: APD responsivity (A/W)
    b_x: noise bandwidth (Hz)
    i_bg: background current (A)
    r_l: load resistance (Ohm)
    t_bg: background temperature (K)
    """

    mu: float
    eta_p: float
    p_pth: float
    nu: float
    b_x: float
    i_bg: float
    r_l: float
    t_bg: float

    def __post_init__(self):
        if not 0 <= self.mu <= 1:
            raise ValueError(f"split ratio mu={self.mu} outside [0, 1]")
        for name in ("nu", "b_x", "r_l", "t_bg"):
            if getattr(self, name) <= 0:
                raise ValueError(f"ReceiverModel.{name} must be positive")
        if self.i_bg < 0:
            raise ValueError("background current must be >= 0")


@dataclass(frozen=True)
class SwiptResult:
    """Receiver-side state for one received beam power."""

    p_pv_in: float        # W
    p_apd_in: float       # W
    p_e_out_raw: float    # W, linear fit before clamping
    p_e_out: float        # W, delivered (clamped at zero)
    eta_e: float          # end-to-end efficiency, unclamped numerator
    i_d: float            # A
    n_thermal_sq: float   # A^2
    n_shot_sq: float      # A^2
    n_total_sq: float     # A^2
    c_tilde: float        # bit/s/Hz


def split_beam(p_beam: float, mu: float) -> tuple[float, float]:
    """Split the received beam: (mu * p_beam, (1 - mu) * p_beam)."""
    if not 0 <= mu <= 1:
        raise ValueError(f"split ratio mu={mu} outside [0, 1]")
    if p_beam < 0:
        raise ValueError("beam power must be >= 0")
    p_pv = mu * p_beam
    return p_pv, p_beam - p_pv


def pv_output(p_pv: float, eta_p: float, p_pth: float) -> tuple[float, float]:
    """Photovoltaic electrical output (raw, clamped).

    raw = eta_p * p_pv + p_pth reproduces the linear experimental fit;
    the clamped value max(0, raw) is the physically delivered power.
    """
    if p_pv < 0:
        raise ValueError("PV input power must be >= 0")
    raw = eta_p * p_pv + p_pth
    return raw, max(0.0, raw)


def end_to_end_efficiency(p_pv: float, p_in: float, eta_p: float,
                          p_pth: float) -> float:
    """(eta_p * p_pv + p_pth) / p_in, deliberately unclamped: near zero PV
    input the linear fit goes negative and the efficiency is reported as
    such."""
    if p_in <= 0:
        raise ValueError("input power must be positive")
    return (eta_p * p_pv + p_pth) / p_in


def apd_current(p_apd: float, nu: float) -> float:
    """APD photocurrent nu * p_apd (A)."""
    if p_apd < 0:
        raise ValueError("APD input power must be >= 0")
    return nu * p_apd


def thermal_noise_sq(t: float, b_x: float, r_l: float) -> float:
    """Thermal (Johnson) noise power 4 k T B_x / R_L (A^2)."""
    if t <= 0 or b_x <= 0 or r_l <= 0:
        raise ValueError("temperature, bandwidth and load must be positive")
    return 4.0 * BOLTZMANN * t * b_x / r_l


def shot_noise_sq(i_d: float, i_bg: float, b_x: float) -> float:
    """Shot noise power 2 q (I_D + I_bg) B_x (A^2)."""
    if i_d < 0 or i_bg < 0:
        raise ValueError("currents must be >= 0")
    return 2.0 * ELECTRON_CHARGE * (i_d + i_bg) * b_x


def spectral_efficiency(i_d: float, n_total_sq: float) -> float:
    """Half-log AWGN capacity bound (bit/s/Hz):
    0.5 * log2(1 + I_D^2 / (2 pi e N^2))."""
    if n_total_sq <= 0:
        raise ValueError("total noise power must be positive")
    snr = i_d * i_d / (2.0 * math.pi * math.e * n_total_sq)
    return 0.5 * math.log2(1.0 + snr)


def evaluate_receiver(p_beam: float, p_in: float,
                      rm: ReceiverModel) -> SwiptResult:
    """Full receiver chain for one received beam power at input p_in."""
    p_pv, p_apd = split_beam(p_beam, rm.mu)
    raw, clamped = pv_output(p_pv, rm.eta_p, rm.p_pth)
    eta_e = end_to_end_efficiency(p_pv, p_in, rm.eta_p, rm.p_pth)
    i_d = apd_current(p_apd, rm.nu)
    n_th = thermal_noise_sq(rm.t_bg, rm.b_x, rm.r_l)
    n_sh = shot_noise_sq(i_d, rm.i_bg, rm.b_x)
    n_tot = n_th + n_sh
    return SwiptResult(p_pv_in=p_pv, p_apd_in=p_apd, p_e_out_raw=raw,
                       p_e_out=clamped, eta_e=eta_e, i_d=i_d,
                       n_thermal_sq=n_th, n_shot_sq=n_sh, n_total_sq=n_tot,
                       c_tilde=spectral_efficiency(i_d, n_tot))
