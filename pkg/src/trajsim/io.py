"""Reading trajectories from CSV and projecting geodetic samples to meters."""

import csv
import math
from pathlib import Path
from typing import NamedTuple, Optional

import numpy as np

from .geometry import EmptyTrajectoryError, Trajectory

__all__ = [
    "EARTH_RADIUS",
    "GeoPoint",
    "TrajectoryParseError",
    "haversine",
    "project_geo",
    "load_trajectory",
    "read_rows",
]

EARTH_RADIUS = 6371000.0


class TrajectoryParseError(ValueError):
    """A CSV file could not be turned into a trajectory."""

    def __init__(self, message, path=None, lineno=None):
        where = ""
        if path is not None:
            where = f"{path}"
            if lineno is not None:
                where += f":{lineno}"
            where += ": "
        super().__init__(where + message)
        self.path = path
        self.lineno = lineno


class GeoPoint(NamedTuple):
    lat: float
    lon: float
    t: Optional[float] = None


def haversine(a, b):
    """Great-circle distance in meters between two ``(lat, lon)`` pairs."""
    lat1, lon1 = math.radians(a[0]), math.radians(a[1])
    lat2, lon2 = math.radians(b[0]), math.radians(b[1])
    h = (math.sin((lat2 - lat1) / 2) ** 2
         + math.cos(lat1) * math.cos(lat2) * math.sin((lon2 - lon1) / 2) ** 2)
    return 2 * EARTH_RADIUS * math.asin(min(1.0, math.sqrt(h)))


def _check_geo(g):
    if not (-90.0 <= g.lat <= 90.0) or not (-180.0 <= g.lon <= 180.0):
        raise ValueError(f"geo point out of range: {g}")


def project_geo(points, origin=None, id="geo"):
    """Local equirectangular projection of geodetic samples.

    ``x = R (lon - lon0) cos(lat0) pi/180`` and ``y = R (lat - lat0) pi/180``
    with ``R = 6371 km``. Accurate to well under 0.5% at city scale.

    Parameters
    ----------
    points : sequence of GeoPoint
    origin : GeoPoint, optional
        Projection origin; defaults to the first point.
    id : str
        Label of the returned trajectory.

    Returns
    -------
    Trajectory
    """
    pts = [p if isinstance(p, GeoPoint) else GeoPoint(*p) for p in points]
    if not pts:
        raise EmptyTrajectoryError("cannot project an empty point sequence")
    for g in pts:
        _check_geo(g)
    if origin is None:
        origin = pts[0]
    elif not isinstance(origin, GeoPoint):
        origin = GeoPoint(*origin)
    _check_geo(origin)

    lat = np.array([g.lat for g in pts])
    lon = np.array([g.lon for g in pts])
    k = EARTH_RADIUS * math.pi / 180.0
    x = k * (lon - origin.lon) * math.cos(math.radians(origin.lat))
    y = k * (lat - origin.lat)
    times = None
    if all(g.t is not None for g in pts):
        times = [g.t for g in pts]
    return Trajectory(id, np.column_stack([x, y]), times=times)


def read_rows(path):
    """Parse a 2- or 3-column numeric CSV into ``(times | None, a, b)`` arrays.

    A leading non-numeric header row is skipped. Blank lines are ignored.
    """
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))

    values = []
    ncols = None
    for lineno, row in enumerate(rows, start=1):
        cells = [c.strip() for c in row]
        if not cells or all(c == "" for c in cells):
            continue
        try:
            nums = [float(c) for c in cells]
        except ValueError:
            if not values and lineno == _first_nonblank(rows):
                continue
            raise TrajectoryParseError("non-numeric value", path, lineno) from None
        if len(nums) not in (2, 3):
            raise TrajectoryParseError(
                f"expected 2 or 3 columns, got {len(nums)}", path, lineno)
        if ncols is None:
            ncols = len(nums)
        elif len(nums) != ncols:
            raise TrajectoryParseError(
                f"expected {ncols} columns, got {len(nums)}", path, lineno)
        if not all(math.isfinite(v) for v in nums):
            raise TrajectoryParseError("non-finite value", path, lineno)
        values.append(nums)

    if not values:
        raise TrajectoryParseError("no data rows", path)
    arr = np.array(values)
    if ncols == 3:
        return arr[:, 0], arr[:, 1], arr[:, 2]
    return None, arr[:, 0], arr[:, 1]


def _first_nonblank(rows):
    for lineno, row in enumerate(rows, start=1):
        if any(c.strip() for c in row):
            return lineno
    return None


def load_trajectory(path, format="csv-xy", origin=None, id=None):
    """Load a trajectory from a CSV file.

    Parameters
    ----------
    path : str or Path
    format : {"csv-xy", "csv-geo"}
        ``csv-xy`` rows are ``x,y`` or ``t,x,y`` in meters; ``csv-geo`` rows are
        ``lat,lon`` or ``t,lat,lon`` and get projected with :func:`project_geo`.
    origin : GeoPoint, optional
        Projection origin for ``csv-geo`` (default: the file's first point).
    id : str, optional
        Trajectory label, defaults to the file stem.

    Notes
    -----
    Consecutive duplicate points are kept.
    """
    path = Path(path)
    if id is None:
        id = path.stem
    times, a, b = read_rows(path)
    if format == "csv-xy":
        return Trajectory(id, np.column_stack([a, b]), times=times)
    if format == "csv-geo":
        ts = times if times is not None else [None] * len(a)
        geo = []
        for k, (lat, lon, t) in enumerate(zip(a, b, ts)):
            g = GeoPoint(float(lat), float(lon), None if t is None else float(t))
            try:
                _check_geo(g)
            except ValueError as exc:
                raise TrajectoryParseError(str(exc), path) from None
            geo.append(g)
        return project_geo(geo, origin=origin, id=id)
    raise ValueError(f"unknown format {format!r}")
