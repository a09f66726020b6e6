"""Wildfire-detection sensor planning and satellite IoT link analysis toolkit."""

from .errors import FiresatError, NumericError, UnservableLocationError, ValidationError
from .geo import (
    EARTH_RADIUS_KM,
    GEO_ALTITUDE_KM,
    GeoPoint,
    SatelliteConfig,
    elevation_deg,
    great_circle_km,
    slant_range_km,
)
from .fire_model import (
    FireModelParams,
    RegionEnv,
    RegionGrid,
    burned_area_km2,
    p_biomass,
    p_detection,
    p_ignition,
    p_lightning_human,
    p_moisture,
    system_utility,
)
from .placement import (
    Placement,
    biomass_uniform,
    optimize_bruteforce,
    optimize_greedy,
)
from .link_budget import (
    DEFAULT_MCS_TABLE,
    DeviceConfig,
    FadingParams,
    LinkResult,
    McsTable,
    antenna_gain_dbi,
    beam_rolloff_factor,
    fading_params,
    fading_pdf,
    fading_sample,
    fspl_db,
    snr_db,
)
from .capacity import (
    RadioTiming,
    TrafficModel,
    bandwidth_required_hz,
    devices_per_carrier_exception,
    devices_per_carrier_periodic,
    periodic_sessions,
    report_duration_ms,
    spectrum_cost_usd,
    traffic_total_bytes,
)
from .campaign import (
    CampaignResult,
    EconomicsParams,
    FireEvent,
    GridFrame,
    run_campaign,
    scatter_sensors,
    simulate_fire,
)
from .config import RunConfig, load_config
from .ingest import ingest_fires, ingest_regions

__version__ = "0.1.0"

__all__ = [
    "FiresatError",
    "NumericError",
    "UnservableLocationError",
    "ValidationError",
    "EARTH_RADIUS_KM",
    "GEO_ALTITUDE_KM",
    "GeoPoint",
    "SatelliteConfig",
    "elevation_deg",
    "great_circle_km",
    "slant_range_km",
    "FireModelParams",
    "RegionEnv",
    "RegionGrid",
    "burned_area_km2",
    "p_biomass",
    "p_detection",
    "p_ignition",
    "p_lightning_human",
    "p_moisture",
    "system_utility",
    "Placement",
    "biomass_uniform",
    "optimize_bruteforce",
    "optimize_greedy",
    "DEFAULT_MCS_TABLE",
    "DeviceConfig",
    "FadingParams",
    "LinkResult",
    "McsTable",
    "antenna_gain_dbi",
    "beam_rolloff_factor",
    "fading_params",
    "fading_pdf",
    "fading_sample",
    "fspl_db",
    "snr_db",
    "RadioTiming",
    "TrafficModel",
    "bandwidth_required_hz",
    "devices_per_carrier_exception",
    "devices_per_carrier_periodic",
    "periodic_sessions",
    "report_duration_ms",
    "spectrum_cost_usd",
    "traffic_total_bytes",
    "CampaignResult",
    "EconomicsParams",
    "FireEvent",
    "GridFrame",
    "run_campaign",
    "scatter_sensors",
    "simulate_fire",
    "RunConfig",
    "load_config",
    "ingest_fires",
    "ingest_regions",
]
