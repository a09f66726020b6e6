"""Run configuration: a flat key-value file with dotted section keys.

Format: one `key = value` per line, `#` starts a comment line, blank lines
ignored. Relative paths resolve against the config file's directory.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from pathlib import Path

from .capacity import RadioTiming, TrafficModel
from .errors import ValidationError
from .fire_model import FireModelParams
from .geo import GeoPoint, SatelliteConfig
from .link_budget import DEFAULT_MCS_TABLE, DeviceConfig, McsTable, load_mcs_table


def parse_kv_file(path) -> dict[str, str]:
    result: dict[str, str] = {}
    with open(path) as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if not sep or not key:
                raise ValidationError(f"{path}:{lineno}: expected 'key = value'")
            if key in result:
                raise ValidationError(f"{path}:{lineno}: duplicate key {key!r}")
            result[key] = value
    return result


# key -> (converter, default); _REQUIRED marks keys without defaults
_REQUIRED = object()

_SCHEMA: dict[str, tuple] = {
    "paths.regions": (str, _REQUIRED),
    "paths.fires": (str, _REQUIRED),
    "paths.mcs_table": (str, ""),
    "grid.cell_area_km2": (float, 100.0),
    "fire.theta_wilt": (float, _REQUIRED),
    "fire.theta_field": (float, _REQUIRED),
    "fire.b_low": (float, 0.2),
    "fire.b_up": (float, 1.0),
    "fire.beta_e": (float, 0.35),
    "fire.l_low": (float, 0.02),
    "fire.l_up": (float, 0.85),
    "plan.t_hours": (float, 4.0),
    "plan.budget": (int, _REQUIRED),
    "satellite.sub_satellite_lon": (float, -125.0),
    "satellite.altitude_km": (float, 35786.0),
    "satellite.beam_center_lat": (float, 37.0),
    "satellite.beam_center_lon": (float, -122.0),
    "satellite.beam_radius_km": (float, 1000.0),
    "satellite.g_s_max_dbi": (float, 25.0),
    "device.tx_power_dbm": (float, 23.0),
    "device.g_t_max_dbi": (float, 7.38),
    "device.off_boresight_deg": (float, 50.0),
    "device.carrier_hz": (float, 2e9),
    "device.noise_power_dbm": (float, -167.42),
    "device.other_losses_db": (float, -10.0),
    "radio.rtt_ms": (float, 500.0),
    "radio.ru_time_ms": (float, 32.0),
    "radio.ru_bw_khz": (float, 3.75),
    "radio.carrier_bw_khz": (float, 180.0),
    "radio.rus_per_report": (int, 3),
    "radio.tx_attempts": (int, 1),
    "traffic.payload_bytes": (int, 20),
    "traffic.reference_period_s": (float, 10.0),
    "traffic.sessions_per_day": (float, 11.2),
    "econ.carbon_price_usd_per_ton": (float, 200.0),
    "econ.device_cost_case_a_usd": (float, 10.0),
    "econ.device_cost_case_b_usd": (float, 100.0),
    "econ.usd_per_hz": (float, 0.6),
    "campaign.trials": (int, 20),
    "seed": (int, 1234),
}


@dataclass(frozen=True)
class RunConfig:
    regions_csv: Path
    fires_csv: Path
    mcs_table_csv: Path | None
    cell_area_km2: float
    theta_wilt: float
    theta_field: float
    b_low: float
    b_up: float
    beta_e: float
    l_low: float
    l_up: float
    t_hours: float
    budget: int
    sub_satellite_lon: float
    altitude_km: float
    beam_center_lat: float
    beam_center_lon: float
    beam_radius_km: float
    g_s_max_dbi: float
    tx_power_dbm: float
    g_t_max_dbi: float
    off_boresight_deg: float
    carrier_hz: float
    noise_power_dbm: float
    other_losses_db: float
    rtt_ms: float
    ru_time_ms: float
    ru_bw_khz: float
    carrier_bw_khz: float
    rus_per_report: int
    tx_attempts: int
    payload_bytes: int
    reference_period_s: float
    sessions_per_day: float
    carbon_price_usd_per_ton: float
    device_cost_case_a_usd: float
    device_cost_case_b_usd: float
    usd_per_hz: float
    trials: int
    seed: int

    def __post_init__(self):
        if self.t_hours <= 0:
            raise ValidationError("plan.t_hours must be > 0")
        if self.budget < 0:
            raise ValidationError("plan.budget must be >= 0")
        if self.trials < 1:
            raise ValidationError("campaign.trials must be >= 1")
        for p in (self.regions_csv, self.fires_csv, self.mcs_table_csv):
            if p is not None and not Path(p).is_file():
                raise ValidationError(f"configured file does not exist: {p}")

    def fire_params(self) -> FireModelParams:
        return FireModelParams(
            theta_wilt=self.theta_wilt,
            theta_field=self.theta_field,
            b_low=self.b_low,
            b_up=self.b_up,
            beta_e=self.beta_e,
            l_low=self.l_low,
            l_up=self.l_up,
        )

    def satellite(self) -> SatelliteConfig:
        return SatelliteConfig(
            sub_satellite_lon=self.sub_satellite_lon,
            beam_center=GeoPoint(self.beam_center_lat, self.beam_center_lon),
            beam_radius_km=self.beam_radius_km,
            g_s_max_dbi=self.g_s_max_dbi,
            altitude_km=self.altitude_km,
        )

    def device(self) -> DeviceConfig:
        return DeviceConfig(
            tx_power_dbm=self.tx_power_dbm,
            g_t_max_dbi=self.g_t_max_dbi,
            off_boresight_deg=self.off_boresight_deg,
            carrier_hz=self.carrier_hz,
            noise_power_dbm=self.noise_power_dbm,
            other_losses_db=self.other_losses_db,
        )

    def timing(self, rus_per_report: int | None = None) -> RadioTiming:
        return RadioTiming(
            rtt_ms=self.rtt_ms,
            ru_time_ms=self.ru_time_ms,
            ru_bw_khz=self.ru_bw_khz,
            carrier_bw_khz=self.carrier_bw_khz,
            rus_per_report=self.rus_per_report if rus_per_report is None else rus_per_report,
            tx_attempts=self.tx_attempts,
        )

    def traffic(self, kind: str) -> TrafficModel:
        return TrafficModel(
            kind=kind,
            payload_bytes=self.payload_bytes,
            reference_period_s=self.reference_period_s,
            sessions_per_day_coeff=self.sessions_per_day,
        )

    def mcs_table(self) -> McsTable:
        if self.mcs_table_csv is None:
            return DEFAULT_MCS_TABLE
        return load_mcs_table(self.mcs_table_csv)


def load_config(path, overrides: dict | None = None) -> RunConfig:
    """Parse and validate a config file; overrides replace parsed values."""
    path = Path(path)
    if not path.is_file():
        raise ValidationError(f"config file not found: {path}")
    raw = parse_kv_file(path)
    unknown = sorted(set(raw) - set(_SCHEMA))
    if unknown:
        raise ValidationError(f"{path}: unknown config keys: {', '.join(unknown)}")
    values: dict[str, object] = {}
    for key, (conv, default) in _SCHEMA.items():
        if key in raw:
            try:
                values[key] = conv(raw[key])
            except ValueError as exc:
                raise ValidationError(f"{path}: bad value for {key}: {exc}") from exc
        elif default is _REQUIRED:
            raise ValidationError(f"{path}: missing required key {key}")
        else:
            values[key] = default
    if overrides:
        values.update(overrides)

    base = path.parent

    def respath(v: str) -> Path:
        p = Path(v)
        return p if p.is_absolute() else base / p

    mcs = values["paths.mcs_table"]
    kwargs = {
        "regions_csv": respath(values["paths.regions"]),
        "fires_csv": respath(values["paths.fires"]),
        "mcs_table_csv": respath(mcs) if mcs else None,
        "cell_area_km2": values["grid.cell_area_km2"],
        "theta_wilt": values["fire.theta_wilt"],
        "theta_field": values["fire.theta_field"],
        "b_low": values["fire.b_low"],
        "b_up": values["fire.b_up"],
        "beta_e": values["fire.beta_e"],
        "l_low": values["fire.l_low"],
        "l_up": values["fire.l_up"],
        "t_hours": values["plan.t_hours"],
        "budget": values["plan.budget"],
        "sub_satellite_lon": values["satellite.sub_satellite_lon"],
        "altitude_km": values["satellite.altitude_km"],
        "beam_center_lat": values["satellite.beam_center_lat"],
        "beam_center_lon": values["satellite.beam_center_lon"],
        "beam_radius_km": values["satellite.beam_radius_km"],
        "g_s_max_dbi": values["satellite.g_s_max_dbi"],
        "tx_power_dbm": values["device.tx_power_dbm"],
        "g_t_max_dbi": values["device.g_t_max_dbi"],
        "off_boresight_deg": values["device.off_boresight_deg"],
        "carrier_hz": values["device.carrier_hz"],
        "noise_power_dbm": values["device.noise_power_dbm"],
        "other_losses_db": values["device.other_losses_db"],
        "rtt_ms": values["radio.rtt_ms"],
        "ru_time_ms": values["radio.ru_time_ms"],
        "ru_bw_khz": values["radio.ru_bw_khz"],
        "carrier_bw_khz": values["radio.carrier_bw_khz"],
        "rus_per_report": values["radio.rus_per_report"],
        "tx_attempts": values["radio.tx_attempts"],
        "payload_bytes": values["traffic.payload_bytes"],
        "reference_period_s": values["traffic.reference_period_s"],
        "sessions_per_day": values["traffic.sessions_per_day"],
        "carbon_price_usd_per_ton": values["econ.carbon_price_usd_per_ton"],
        "device_cost_case_a_usd": values["econ.device_cost_case_a_usd"],
        "device_cost_case_b_usd": values["econ.device_cost_case_b_usd"],
        "usd_per_hz": values["econ.usd_per_hz"],
        "trials": values["campaign.trials"],
        "seed": values["seed"],
    }
    assert set(kwargs) == {f.name for f in fields(RunConfig)}
    return RunConfig(**kwargs)
