"""Whole-link evaluation: one configuration in, one operating point out."""

from __future__ import annotations

from dataclasses import dataclass

from .config import (
    Config,
    build_gain,
    build_geometry,
    build_pump,
    build_receiver,
)
from .gain_power import evaluate_link
from .ray_optics import CavityError
from .receiver import evaluate_receiver

STATUS_OK = "ok"
STATUS_UNSTABLE = "unstable"
STATUS_SUB_THRESHOLD = "sub-threshold"


@dataclass(frozen=True)
class OperatingPoint:
    """One fully evaluated link state.  All SI."""

    status: str
    p_in: float
    spot_radius: float | None = None
    vd: float | None = None
    v: float | None = None
    g_sat: float | None = None
    n_th: float | None = None
    tau: float | None = None
    p_th: float | None = None
    eta_s: float | None = None
    p_beam: float | None = None
    eta_b: float | None = None
    p_pv_in: float | None = None
    p_apd_in: float | None = None
    p_e_out_raw: float | None = None
    p_e_out: float | None = None
    eta_e: float | None = None
    i_d: float | None = None
    n_thermal_sq: float | None = None
    n_shot_sq: float | None = None
    n_total_sq: float | None = None
    c_tilde: float | None = None
    detail: str = ""


# column name -> unit, for report/CSV emission
FIELD_UNITS = {
    "p_in": "W", "spot_radius": "m", "vd": "", "v": "",
    "g_sat": "m^-1", "n_th": "m^-3", "tau": "s", "p_th": "W",
    "eta_s": "", "p_beam": "W", "eta_b": "", "p_pv_in": "W",
    "p_apd_in": "W", "p_e_out_raw": "W", "p_e_out": "W", "eta_e": "",
    "i_d": "A", "n_thermal_sq": "A^2", "n_shot_sq": "A^2",
    "n_total_sq": "A^2", "c_tilde": "bit/s/Hz",
}


def evaluate_operating_point(cfg: Config) -> OperatingPoint:
    """Evaluate geometry, gain chain, and receiver chain for one Config.

    Unstable resonators yield an OperatingPoint with status "unstable" and
    no numeric fields; sub-threshold points carry the full chain (the beam
    power is zero) under status "sub-threshold".
    """
    geometry = build_geometry(cfg)
    gain = build_gain(cfg)
    pump = build_pump(cfg)
    rm = build_receiver(cfg)
    p_in = cfg["link"]["p_in"]
    vc = cfg["losses"]["vc"]
    exponent = int(cfg["losses"].get("slope_loss_exponent", 1))
    try:
        power = evaluate_link(geometry, gain, pump, vc, p_in,
                              loss_exponent=exponent)
    except CavityError as e:
        return OperatingPoint(status=STATUS_UNSTABLE, p_in=p_in,
                              detail=str(e))
    swipt = evaluate_receiver(power.p_beam, p_in, rm) if p_in > 0 else None
    status = STATUS_OK if power.p_beam > 0 else STATUS_SUB_THRESHOLD
    fields = dict(
        status=status, p_in=p_in,
        spot_radius=power.spot_radius, vd=power.losses.vd,
        v=power.losses.v, g_sat=power.g_sat, n_th=power.n_th, tau=power.tau,
        p_th=power.p_th, eta_s=power.eta_s, p_beam=power.p_beam,
        eta_b=power.eta_b,
    )
    if swipt is not None:
        fields.update(
            p_pv_in=swipt.p_pv_in, p_apd_in=swipt.p_apd_in,
            p_e_out_raw=swipt.p_e_out_raw, p_e_out=swipt.p_e_out,
            eta_e=swipt.eta_e, i_d=swipt.i_d,
            n_thermal_sq=swipt.n_thermal_sq, n_shot_sq=swipt.n_shot_sq,
            n_total_sq=swipt.n_total_sq, c_tilde=swipt.c_tilde,
        )
    return OperatingPoint(**fields)
