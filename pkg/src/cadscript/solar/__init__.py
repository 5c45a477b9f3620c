"""Sun position, day-long sun paths, shadow masks, insolation statistics."""

from .insolation import GroundGrid, InsolationGrid, insolation_study, shadow_mask
from .position import (
    DERBY,
    GeoLocation,
    Instant,
    SolarAngles,
    SunPath,
    SunSample,
    solar_declination,
    solar_position,
    sun_direction,
    sun_path,
)

__all__ = [
    "DERBY",
    "GeoLocation",
    "GroundGrid",
    "InsolationGrid",
    "Instant",
    "SolarAngles",
    "SunPath",
    "SunSample",
    "insolation_study",
    "shadow_mask",
    "solar_declination",
    "solar_position",
    "sun_direction",
    "sun_path",
]
