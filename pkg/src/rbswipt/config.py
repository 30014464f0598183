"""Unit-aware configuration: parsing, validation, presets, serialization.

Config files are sectioned key/value text.  Every dimensioned value carries
an explicit unit suffix (`f1 = -5 mm`, `g0 = 2000 cm^-1`); dimensionless
values are bare numbers.  Parsing normalizes everything to SI base units;
the rest of the package never sees a non-SI number.

A Config is a plain nested dict ``{section: {key: float}}`` addressable by
dotted parameter paths such as ``"geometry.fr2"``.
"""

from __future__ import annotations

import copy
import hashlib
import math

from .gain_power import GainModel, PumpModel
from .ray_optics import ResonatorGeometry
from .receiver import ReceiverModel

Config = dict[str, dict[str, float]]


class ConfigError(Exception):
    """Malformed or out-of-range configuration input."""


# unit name -> factor to the SI base unit, grouped by dimension kind
_UNIT_TABLES = {
    "length": {"m": 1.0, "cm": 1e-2, "mm": 1e-3, "um": 1e-6, "nm": 1e-9},
    "inv_length": {"m^-1": 1.0, "cm^-1": 1e2},
    "inv_volume": {"m^-3": 1.0, "cm^-3": 1e6},
    "inv_time": {"s^-1": 1.0, "ms^-1": 1e3, "us^-1": 1e6, "ns^-1": 1e9},
    "vol_rate": {"m^3/s": 1.0, "cm^3/s": 1e-6},
    "vol2_rate": {"m^6/s": 1.0, "cm^6/s": 1e-12},
    "area": {"m^2": 1.0, "cm^2": 1e-4, "mm^2": 1e-6, "um^2": 1e-12},
    "power": {"W": 1.0, "mW": 1e-3, "kW": 1e3},
    "current": {"A": 1.0, "mA": 1e-3, "uA": 1e-6},
    "frequency": {"Hz": 1.0, "kHz": 1e3, "MHz": 1e6, "GHz": 1e9},
    "resistance": {"Ohm": 1.0, "kOhm": 1e3, "MOhm": 1e6},
    "temperature": {"K": 1.0},
    "responsivity": {"A/W": 1.0},
    "dimensionless": {},
}

# canonical unit emitted on serialization, per kind
_CANONICAL_UNIT = {
    "length": "m", "inv_length": "m^-1", "inv_volume": "m^-3",
    "inv_time": "s^-1", "vol_rate": "m^3/s", "vol2_rate": "m^6/s",
    "area": "m^2", "power": "W", "current": "A", "frequency": "Hz",
    "resistance": "Ohm", "temperature": "K", "responsivity": "A/W",
    "dimensionless": "",
}


def _positive(v):
    return v > 0


def _nonneg(v):
    return v >= 0


def _unit_open(v):
    return 0 < v <= 1


def _unit_closed(v):
    return 0 <= v <= 1


def _nonzero(v):
    return v != 0 and math.isfinite(v)


def _finite(v):
    return math.isfinite(v)


def _pos_or_inf(v):
    return v > 0 or math.isinf(v)


def _exponent(v):
    return v in (1.0, 2.0)


# section -> key -> (kind, optional?, range check, description of the range)
SCHEMA = {
    "geometry": {
        "d1": ("length", False, _positive, "> 0"),
        "d2": ("length", False, _positive, "> 0"),
        "d3": ("length", False, _positive, "> 0"),
        "lt": ("length", True, _finite, "finite"),
        "f1": ("length", False, _nonzero, "nonzero"),
        "f2": ("length", True, _nonzero, "nonzero"),
        "tim_magnification": ("dimensionless", True, _positive, "> 0"),
        "fr1": ("length", True, _pos_or_inf, "> 0 or inf"),
        "fr2": ("length", True, _pos_or_inf, "> 0 or inf"),
        "r1": ("dimensionless", False, _unit_open, "in (0, 1]"),
        "r2": ("dimensionless", False, _unit_open, "in (0, 1]"),
        "lambda_beam": ("length", False, _positive, "> 0"),
    },
    "gain": {
        "g0": ("inv_length", False, _positive, "> 0"),
        "n0": ("inv_volume", False, _positive, "> 0"),
        "gamma_conf": ("dimensionless", False, _positive, "> 0"),
        "alpha": ("inv_time", False, _positive, "> 0"),
        "beta": ("vol_rate", False, _positive, "> 0"),
        "auger": ("vol2_rate", False, _positive, "> 0"),
        "l": ("length", False, _positive, "> 0"),
        "a_s": ("area", False, _positive, "> 0"),
        "a": ("length", False, _positive, "> 0"),
    },
    "pump": {
        "eta_pc": ("dimensionless", False, _unit_open, "in (0, 1]"),
        "eta_pa": ("dimensionless", False, _unit_open, "in (0, 1]"),
        "lambda_pump": ("length", False, _positive, "> 0"),
    },
    "losses": {
        "vc": ("dimensionless", False, _unit_open, "in (0, 1]"),
        "slope_loss_exponent": ("dimensionless", True, _exponent, "1 or 2"),
    },
    "receiver": {
        "mu": ("dimensionless", False, _unit_closed, "in [0, 1]"),
        "eta_p": ("dimensionless", False, _positive, "> 0"),
        "p_pth": ("power", False, _finite, "finite"),
        "nu": ("responsivity", False, _positive, "> 0"),
        "b_x": ("frequency", False, _positive, "> 0"),
        "i_bg": ("current", False, _nonneg, ">= 0"),
        "r_l": ("resistance", False, _positive, "> 0"),
        "t_bg": ("temperature", False, _positive, "> 0"),
    },
    "link": {
        "p_in": ("power", False, _nonneg, ">= 0"),
    },
}


def parse_quantity(text: str, kind: str) -> float:
    """Parse '2000 cm^-1' / '-5 mm' / '0.999' to an SI float.

    Dimensioned kinds require a unit suffix; dimensionless values must not
    carry one.  A unit directly appended to the number ('150W') is accepted.
    """
    text = text.strip()
    table = _UNIT_TABLES[kind]
    parts = text.split()
    if len(parts) == 1 and table:
        # allow '150W' by splitting the trailing unit off the number
        for unit in sorted(table, key=len, reverse=True):
            if text.endswith(unit):
                head = text[: -len(unit)].strip()
                if head:
                    parts = [head, unit]
                break
    if kind == "dimensionless":
        if len(parts) != 1:
            raise ConfigError(f"dimensionless value must be bare, got {text!r}")
        return _parse_number(parts[0])
    if len(parts) != 2:
        raise ConfigError(
            f"expected '<number> <unit>' with unit in {sorted(table)}, got {text!r}")
    value, unit = parts
    if unit not in table:
        raise ConfigError(f"unknown unit {unit!r}; expected one of {sorted(table)}")
    return _parse_number(value) * table[unit]


def _parse_number(s: str) -> float:
    try:
        return float(s)
    except ValueError:
        raise ConfigError(f"invalid number {s!r}") from None


def parse_config(text: str, base: Config | None = None) -> Config:
    """Parse sectioned unit-suffixed text into an SI-normalized Config.

    Keys missing from the text are filled from `base` (a preset); unknown
    sections or keys are rejected with the offending line number.
    """
    cfg: Config = copy.deepcopy(base) if base is not None else {}
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip()
            if section not in SCHEMA:
                raise ConfigError(f"line {lineno}: unknown section [{section}]")
            cfg.setdefault(section, {})
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        if section is None:
            raise ConfigError(f"line {lineno}: key outside any [section]")
        key, value = (p.strip() for p in line.split("=", 1))
        if key not in SCHEMA[section]:
            raise ConfigError(f"line {lineno}: unknown key {section}.{key}")
        kind, _, check, bounds = SCHEMA[section][key]
        try:
            si = parse_quantity(value, kind)
        except ConfigError as e:
            raise ConfigError(f"line {lineno}: {section}.{key}: {e}") from None
        if not check(si):
            raise ConfigError(
                f"line {lineno}: {section}.{key} = {si} out of range ({bounds})")
        cfg[section][key] = si
    validate_config(cfg)
    return cfg


def validate_config(cfg: Config) -> None:
    """Check completeness, ranges, and the f2/tim_magnification exclusivity."""
    for section, keys in SCHEMA.items():
        if section not in cfg:
            raise ConfigError(f"missing section [{section}]")
        for key, (kind, optional, check, bounds) in keys.items():
            if key not in cfg[section]:
                if optional:
                    continue
                raise ConfigError(f"missing key {section}.{key}")
            v = cfg[section][key]
            if not check(v):
                raise ConfigError(f"{section}.{key} = {v} out of range ({bounds})")
        for key in cfg[section]:
            if key not in keys:
                raise ConfigError(f"unknown key {section}.{key}")
    geo = cfg["geometry"]
    if ("f2" in geo) == ("tim_magnification" in geo):
        raise ConfigError(
            "geometry must define exactly one of f2 or tim_magnification")


def serialize_config(cfg: Config) -> str:
    """Canonical text form: SI base units, full-precision floats, keys in
    schema order.  parse(serialize(cfg)) == cfg."""
    lines = []
    for section in SCHEMA:
        lines.append(f"[{section}]")
        for key in SCHEMA[section]:
            if key not in cfg.get(section, {}):
                continue
            kind = SCHEMA[section][key][0]
            unit = _CANONICAL_UNIT[kind]
            value = repr(cfg[section][key])
            lines.append(f"{key} = {value} {unit}".rstrip())
        lines.append("")
    return "\n".join(lines)


def config_digest(cfg: Config) -> str:
    """Stable hex digest of the resolved configuration."""
    return hashlib.sha256(serialize_config(cfg).encode()).hexdigest()[:16]


def get_path(cfg: Config, path: str) -> float:
    section, _, key = path.partition(".")
    try:
        return cfg[section][key]
    except KeyError:
        raise ConfigError(f"unresolvable parameter path {path!r}") from None


def set_path(cfg: Config, path: str, value: float) -> None:
    section, _, key = path.partition(".")
    if section not in SCHEMA or key not in SCHEMA[section]:
        raise ConfigError(f"unresolvable parameter path {path!r}")
    cfg[section][key] = value
    if key == "tim_magnification":
        cfg[section].pop("f2", None)
    elif key == "f2":
        cfg[section].pop("tim_magnification", None)


# ---------------------------------------------------------------------------
# domain object construction

def build_geometry(cfg: Config) -> ResonatorGeometry:
    g = cfg["geometry"]
    f1 = g["f1"]
    if "f2" in g:
        f2 = g["f2"]
    else:
        # magnification = compression of the beam arriving at the gain,
        # i.e. the telescope expands by this factor on the way out
        f2 = -f1 * g["tim_magnification"]
    return ResonatorGeometry(
        d1=g["d1"], d2=g["d2"], d3=g["d3"], f1=f1, f2=f2,
        lt=g.get("lt", math.nan),
        fr1=g.get("fr1", math.inf), fr2=g.get("fr2", math.inf),
        r1=g["r1"], r2=g["r2"], lambda_beam=g["lambda_beam"],
    )


def build_gain(cfg: Config) -> GainModel:
    return GainModel(**cfg["gain"])


def build_pump(cfg: Config) -> PumpModel:
    return PumpModel(**cfg["pump"])


def build_receiver(cfg: Config) -> ReceiverModel:
    return ReceiverModel(**cfg["receiver"])


# ---------------------------------------------------------------------------
# presets

def _paper_2022() -> Config:
    """Default scenario: 10 m link, compressing telescope, GaAsP gain.

    Geometry follows the published setup (d1 = d2 = 20 mm, f1 = -5 mm,
    ideal retro-reflector at M1, 980 nm).  The M2 curvature factor and the
    telescope magnification are not stated there; fr2 = 18 m with
    magnification 12 keeps the cavity stable over the whole 2-10 m distance
    range while compressing the spot to ~0.1 mm.  r2 = 0.90 and l = 3 um
    are the documented reproduction choices for the power operating point.
    """
    return {
        "geometry": {
            "d1": 20e-3, "d2": 20e-3, "d3": 10.0,
            "f1": -5e-3, "tim_magnification": 12.0,
            "fr1": math.inf, "fr2": 18.0,
            "r1": 0.999, "r2": 0.90, "lambda_beam": 980e-9,
        },
        "gain": {
            "g0": 2e5,            # 2000 cm^-1
            "n0": 1.7e24,         # 1.7e18 cm^-3
            "gamma_conf": 2.0,    # tabulated as-is (conventionally <= 1)
            "alpha": 1e7,
            "beta": 1e-16,        # 1e-10 cm^3/s
            "auger": 6e-42,       # 6e-30 cm^6/s
            "l": 3e-6,
            "a_s": 3e-8,          # 3e-4 cm^2
            "a": 0.2e-3,
        },
        "pump": {"eta_pc": 0.6, "eta_pa": 0.85, "lambda_pump": 808e-9},
        "losses": {"vc": 0.99, "slope_loss_exponent": 1.0},
        "receiver": {
            "mu": 0.99, "eta_p": 0.3487, "p_pth": -1.535,
            "nu": 0.6, "b_x": 811.7e6, "i_bg": 5100e-6,
            "r_l": 10e3, "t_bg": 300.0,
        },
        "link": {"p_in": 100.0},
    }


def get_preset(name: str) -> Config:
    if name not in PRESETS:
        raise ConfigError(
            f"unknown preset {name!r}; available: {sorted(PRESETS)}")
    return copy.deepcopy(PRESETS[name]())


PRESETS = {
    "paper-2022": _paper_2022,
}
