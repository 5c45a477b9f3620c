"""Sun position from time and place.

Low-accuracy NOAA-style series (fractional year, equation of time,
declination) rather than a full ephemeris; good to roughly half a degree,
which is plenty for shade studies.  All clock times are UTC; no timezone
or daylight-saving handling anywhere.  Frame for direction vectors:
x = east, y = north, z = up.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass
from math import asin, atan2, cos, degrees, pi, radians, sin, tan

import numpy as np

INTERVAL_RANGE = (1, 120)


@dataclass(frozen=True)
class GeoLocation:
    latitude_deg: float
    longitude_deg: float  # east positive

    def __post_init__(self):
        if not -90.0 <= self.latitude_deg <= 90.0:
            raise ValueError(f"latitude must be in [-90, 90], got {self.latitude_deg}")
        if not -180.0 <= self.longitude_deg <= 180.0:
            raise ValueError(f"longitude must be in [-180, 180], got {self.longitude_deg}")


# Named default location for under-specified studies ("UK" phrasing).
DERBY = GeoLocation(52.92, -1.48)


@dataclass(frozen=True)
class Instant:
    """A calendar date plus minutes from 00:00 UTC."""

    date: dt.date
    minute: float

    def __post_init__(self):
        if not 0.0 <= self.minute < 1440.0:
            raise ValueError(f"minute of day must be in [0, 1440), got {self.minute}")


@dataclass(frozen=True)
class SolarAngles:
    azimuth_deg: float  # [0, 360) clockwise from true north
    altitude_deg: float  # [-90, 90]


@dataclass(frozen=True)
class SunSample:
    instant: Instant
    angles: SolarAngles


@dataclass(frozen=True)
class SunPath:
    location: GeoLocation
    date: dt.date
    interval_min: int
    samples: tuple[SunSample, ...]

    @property
    def daylight_hours(self) -> float:
        """interval times the count of above-horizon samples; quantized to
        one interval by construction."""
        up = sum(1 for s in self.samples if s.angles.altitude_deg > 0.0)
        return up * self.interval_min / 60.0


def _fractional_year(day_of_year: int, hour: float) -> float:
    return 2.0 * pi / 365.0 * (day_of_year - 1 + (hour - 12.0) / 24.0)


def _declination_rad(g: float) -> float:
    return (
        0.006918
        - 0.399912 * cos(g)
        + 0.070257 * sin(g)
        - 0.006758 * cos(2 * g)
        + 0.000907 * sin(2 * g)
        - 0.002697 * cos(3 * g)
        + 0.00148 * sin(3 * g)
    )


def _equation_of_time_min(g: float) -> float:
    return 229.18 * (
        0.000075
        + 0.001868 * cos(g)
        - 0.032077 * sin(g)
        - 0.014615 * cos(2 * g)
        - 0.040849 * sin(2 * g)
    )


def solar_declination(day_of_year: int) -> float:
    """Sun's declination in degrees for a day number (1..366), at midday."""
    if not 1 <= day_of_year <= 366:
        raise ValueError(f"day_of_year must be in 1..366, got {day_of_year}")
    return degrees(_declination_rad(_fractional_year(day_of_year, 12.0)))


def solar_position(loc: GeoLocation, t: Instant) -> SolarAngles:
    """Azimuth/altitude of the sun at a UTC instant."""
    day = t.date.timetuple().tm_yday
    hour = t.minute / 60.0
    g = _fractional_year(day, hour)
    decl = _declination_rad(g)
    eqtime = _equation_of_time_min(g)

    # true solar time, minutes; 4 minutes of time per degree of longitude
    tst = t.minute + eqtime + 4.0 * loc.longitude_deg
    ha = radians(tst / 4.0 - 180.0)

    phi = radians(loc.latitude_deg)
    sin_alt = sin(phi) * sin(decl) + cos(phi) * cos(decl) * cos(ha)
    sin_alt = min(1.0, max(-1.0, sin_alt))
    altitude = degrees(asin(sin_alt))
    # atan2 form measures from south, westward positive; shift to
    # clockwise-from-north
    azimuth = (degrees(atan2(sin(ha), cos(ha) * sin(phi) - tan(decl) * cos(phi))) + 180.0) % 360.0
    return SolarAngles(azimuth_deg=azimuth, altitude_deg=altitude)


def sun_path(loc: GeoLocation, date: dt.date, interval_min: int) -> SunPath:
    """Solar angles sampled over one date at a fixed interval.

    Samples run from 00:00 inclusive to 24:00 exclusive, so a 10-minute
    interval gives exactly 144 of them.
    """
    interval_min = int(interval_min)
    if not INTERVAL_RANGE[0] <= interval_min <= INTERVAL_RANGE[1]:
        raise ValueError(
            f"interval must be in [{INTERVAL_RANGE[0]}, {INTERVAL_RANGE[1]}] minutes,"
            f" got {interval_min}"
        )
    samples = []
    minute = 0
    while minute < 1440:
        t = Instant(date, float(minute))
        samples.append(SunSample(t, solar_position(loc, t)))
        minute += interval_min
    return SunPath(loc, date, interval_min, tuple(samples))


def sun_direction(a: SolarAngles) -> np.ndarray:
    """Unit vector toward the sun in the x=east, y=north, z=up frame."""
    az = radians(a.azimuth_deg)
    alt = radians(a.altitude_deg)
    return np.array([sin(az) * cos(alt), cos(az) * cos(alt), sin(alt)])
