"""Semiconductor gain-medium power model.

Threshold behaviour of the resonant beam: the round-trip gain must balance
the round-trip loss (saturation), which fixes the threshold carrier density,
the carrier lifetime, and hence the pump threshold power.  Above threshold
the external beam power grows linearly with the slope efficiency.

Physical constants are fixed to the tabulated values used throughout the
model (not CODATA) so that computed curves match the reference parameter
studies exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .ray_optics import (
    ResonatorGeometry,
    diffraction_survival,
    one_trip_matrix,
    spot_radius_on_gain,
)

PLANCK = 6.6260693e-34   # J s
LIGHT_SPEED = 3e8        # m/s


@dataclass(frozen=True)
class GainModel:
    """Semiconductor gain-medium constants plus geometry.

    g0: small-signal gain coefficient (m^-1)
    n0: transparency carrier density (m^-3)
    gamma_conf: longitudinal confinement factor (dimensionless; the tabulated
        value 2.0 is used as-is even though confinement factors are
        conventionally <= 1)
    alpha, beta, auger: recombination coefficients (s^-1, m^3/s, m^6/s)
    l: effective gain layer thickness (m)
    a_s: effective active cross-section (m^2)
    a: gain medium radius (m)
    """

    g0: float
    n0: float
    gamma_conf: float
    alpha: float
    beta: float
    auger: float
    l: float
    a_s: float
    a: float

    def __post_init__(self):
        for name in self.__dataclass_fields__:
            if getattr(self, name) <= 0:
                raise ValueError(f"GainModel.{name} must be strictly positive")


@dataclass(frozen=True)
class PumpModel:
    """Pump source: conversion and absorption efficiencies plus wavelength."""

    eta_pc: float
    eta_pa: float
    lambda_pump: float

    def __post_init__(self):
        for name in ("eta_pc", "eta_pa"):
            v = getattr(self, name)
            if not 0 < v <= 1:
                raise ValueError(f"PumpModel.{name}={v} outside (0, 1]")
        if self.lambda_pump <= 0:
            raise ValueError("pump wavelength must be positive")


@dataclass(frozen=True)
class LossModel:
    """Cavity loss factors: constant loss vc, diffraction survival vd,
    and the overall factor v = vc * vd."""

    vc: float
    vd: float

    def __post_init__(self):
        for name in ("vc", "vd"):
            v = getattr(self, name)
            if not 0 < v <= 1:
                raise ValueError(f"LossModel.{name}={v} outside (0, 1]")

    @property
    def v(self) -> float:
        return self.vc * self.vd


@dataclass(frozen=True)
class PowerResult:
    """Fully evaluated power state of the link at one input power."""

    spot_radius: float      # m, on the gain medium
    losses: LossModel
    g_sat: float            # m^-1
    n_th: float             # m^-3
    tau: float              # s
    p_th: float             # W
    eta_s: float            # dimensionless
    p_beam: float           # W
    eta_b: float            # dimensionless


def saturation_gain(r1: float, r2: float, v: float, l: float,
                    gamma_conf: float) -> float:
    """Gain coefficient (m^-1) at which round-trip gain balances round-trip
    loss:  g = -ln(r1 r2 v^2) / (2 Gamma l)."""
    _check_unit_interval("r1", r1)
    _check_unit_interval("r2", r2)
    _check_unit_interval("v", v)
    if l <= 0:
        raise ValueError("gain thickness must be positive")
    prod = r1 * r2 * v * v
    if prod > 1:
        raise ValueError(f"r1*r2*v^2 = {prod} > 1: saturation gain would be negative")
    return -math.log(prod) / (2.0 * gamma_conf * l)


def threshold_carrier_density(gm: GainModel, r1: float, r2: float,
                              v: float) -> float:
    """Carrier density (m^-3) needed to reach the saturation gain:
    N_th = N0 * (r1 r2 v^2) ** (-1 / (2 g0 l Gamma))."""
    g = saturation_gain(r1, r2, v, gm.l, gm.gamma_conf)
    return gm.n0 * math.exp(g / gm.g0)


def carrier_lifetime(n: float, gm: GainModel) -> float:
    """Carrier lifetime (s) at density n:  1 / (alpha + beta n + auger n^2)."""
    if not math.isfinite(n) or n < 0:
        raise ValueError(f"carrier density must be finite and >= 0, got {n}")
    return 1.0 / (gm.alpha + gm.beta * n + gm.auger * n * n)


def threshold_power(gm: GainModel, pm: PumpModel, n_th: float, tau: float,
                    lambda_beam: float) -> float:
    """Pump power (W) at threshold:
    P_th = A_s h c l N_th / (lambda_beam eta_pc eta_pa tau)."""
    if tau <= 0:
        raise ValueError("carrier lifetime must be positive")
    if lambda_beam <= 0:
        raise ValueError("wavelength must be positive")
    return (gm.a_s * PLANCK * LIGHT_SPEED * gm.l * n_th
            / (lambda_beam * pm.eta_pc * pm.eta_pa * tau))


def slope_efficiency(pm: PumpModel, r1: float, r2: float, v: float,
                     lambda_beam: float, loss_exponent: int = 1) -> float:
    """Slope efficiency of beam power versus pump power above threshold:

        eta_s = eta_pc eta_pa (lambda_pump / lambda_beam)
                * ln(r2) / ln(r1 r2 v**loss_exponent)

    loss_exponent defaults to 1, the single power of v in the source model;
    2 makes the loss term consistent with the saturation condition (the two
    conventions coexist in the source model, so the choice is exposed).
    """
    _check_unit_interval("v", v)
    if loss_exponent not in (1, 2):
        raise ValueError("loss_exponent must be 1 or 2")
    prod = r1 * r2 * v ** loss_exponent
    if prod >= 1:
        # ln(1) = 0 would divide by zero; > 1 flips the sign
        raise ValueError(f"r1*r2*v^{loss_exponent} = {prod} >= 1")
    return (pm.eta_pc * pm.eta_pa * (pm.lambda_pump / lambda_beam)
            * math.log(r2) / math.log(prod))


def beam_power(p_in: float, p_th: float, eta_s: float) -> float:
    """External beam power (W): (p_in - p_th) * eta_s above threshold, zero
    below (no oscillation without net gain)."""
    if p_in < 0:
        raise ValueError("input power must be >= 0")
    return max(0.0, (p_in - p_th) * eta_s)


def transmission_efficiency(p_in: float, p_th: float, eta_s: float) -> float:
    """Beam transmission efficiency p_beam / p_in, clamped at zero below
    threshold."""
    if p_in <= 0:
        raise ValueError("input power must be positive")
    return beam_power(p_in, p_th, eta_s) / p_in


def evaluate_link(geometry: ResonatorGeometry, gain: GainModel,
                  pump: PumpModel, vc: float, p_in: float,
                  loss_exponent: int = 1) -> PowerResult:
    """Evaluate the transmitter-side chain at one input power.

    Pipeline: one-trip matrix -> spot radius -> diffraction survival ->
    overall loss -> saturation gain -> threshold carrier density -> carrier
    lifetime -> threshold power and slope efficiency -> beam power.
    Raises UnstableResonatorError for unstable geometries.
    """
    w = spot_radius_on_gain(one_trip_matrix(geometry), geometry.lambda_beam)
    losses = LossModel(vc=vc, vd=diffraction_survival(gain.a, w))
    v = losses.v
    g = saturation_gain(geometry.r1, geometry.r2, v, gain.l, gain.gamma_conf)
    n_th = gain.n0 * math.exp(g / gain.g0)
    tau = carrier_lifetime(n_th, gain)
    p_th = threshold_power(gain, pump, n_th, tau, geometry.lambda_beam)
    eta_s = slope_efficiency(pump, geometry.r1, geometry.r2, v,
                             geometry.lambda_beam, loss_exponent)
    p_beam = beam_power(p_in, p_th, eta_s)
    eta_b = p_beam / p_in if p_in > 0 else 0.0
    return PowerResult(spot_radius=w, losses=losses, g_sat=g, n_th=n_th,
                       tau=tau, p_th=p_th, eta_s=eta_s, p_beam=p_beam,
                       eta_b=eta_b)


def _check_unit_interval(name: str, value: float) -> None:
    if not 0 < value <= 1:
        raise ValueError(f"{name}={value} outside (0, 1]")
