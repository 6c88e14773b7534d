#!/usr/bin/env python3
"""Regenerates the binary test fixtures under tests/data.

The NetCDF files are written with scipy's classic-format writer and the
GeoTIFF with tifffile, so the C++ readers are always exercised against
independently produced files. Values follow the closed formulas below;
tests assert spot values computed from the same formulas.
"""

import pathlib

import numpy as np
from scipy.io import netcdf_file

DATA = pathlib.Path(__file__).resolve().parent.parent / "tests" / "data"

N_TIME = 48
LATS = np.array([40.0, 41.0, 42.0, 43.0])
LONS = np.array([10.0, 11.0, 12.0, 13.0])
LEVELS = np.array([10.0, 100.0])


def u_formula(t, level_idx, lat_idx, lon_idx):
    return 3.0 + 0.01 * t + 0.1 * lat_idx + 0.05 * lon_idx + 2.0 * level_idx


def v_formula(t, level_idx, lat_idx, lon_idx):
    del level_idx
    return 4.0 - 0.01 * t + 0.1 * lon_idx + 0.02 * lat_idx


def component_grids():
    u = np.zeros((N_TIME, 2, LATS.size, LONS.size))
    v = np.zeros_like(u)
    for t in range(N_TIME):
        for l in range(2):
            for i in range(LATS.size):
                for j in range(LONS.size):
                    u[t, l, i, j] = u_formula(t, l, i, j)
                    v[t, l, i, j] = v_formula(t, l, i, j)
    return u, v


def write_plain_netcdf(path):
    u, v = component_grids()
    with netcdf_file(path, "w", version=1) as nc:
        nc.createDimension("time", N_TIME)
        nc.createDimension("level", 2)
        nc.createDimension("lat", LATS.size)
        nc.createDimension("lon", LONS.size)

        time = nc.createVariable("time", "d", ("time",))
        time[:] = np.arange(N_TIME, dtype=np.float64)
        time.units = b"hours since 2014-01-01 00:00:00"

        nc.createVariable("level", "d", ("level",))[:] = LEVELS
        nc.createVariable("lat", "d", ("lat",))[:] = LATS
        nc.createVariable("lon", "d", ("lon",))[:] = LONS

        for name, data in (("u", u), ("v", v)):
            var = nc.createVariable(name, "d", ("time", "level", "lat", "lon"))
            var[:] = data
            var.units = b"m s**-1"


def write_packed_netcdf(path):
    """int16 storage with scale/offset, descending latitude, CDF-2 container."""
    u, v = component_grids()
    scale, offset = 0.001, 10.0
    with netcdf_file(path, "w", version=2) as nc:
        nc.createDimension("time", N_TIME)
        nc.createDimension("level", 2)
        nc.createDimension("latitude", LATS.size)
        nc.createDimension("longitude", LONS.size)

        time = nc.createVariable("time", "i", ("time",))
        time[:] = np.arange(N_TIME, dtype=np.int32)
        time.units = b"hours since 2014-01-01 00:00:00"

        nc.createVariable("level", "d", ("level",))[:] = LEVELS
        nc.createVariable("latitude", "d", ("latitude",))[:] = LATS[::-1]
        nc.createVariable("longitude", "d", ("longitude",))[:] = LONS

        for name, data in (("u", u), ("v", v)):
            flipped = data[:, :, ::-1, :]
            packed = np.round((flipped - offset) / scale).astype(np.int16)
            var = nc.createVariable(name, "h", ("time", "level", "latitude", "longitude"))
            var[:] = packed
            var.scale_factor = scale
            var.add_offset = offset
            var.units = b"m s**-1"
            var._FillValue = np.int16(-32767)


def write_record_netcdf(path):
    """time as the unlimited (record) dimension, float32 payload."""
    u, v = component_grids()
    with netcdf_file(path, "w", version=1) as nc:
        nc.createDimension("time", None)
        nc.createDimension("level", 2)
        nc.createDimension("lat", LATS.size)
        nc.createDimension("lon", LONS.size)

        time = nc.createVariable("time", "d", ("time",))
        time[:] = np.arange(N_TIME, dtype=np.float64)
        time.units = b"hours since 2014-01-01 00:00:00"

        nc.createVariable("level", "d", ("level",))[:] = LEVELS
        nc.createVariable("lat", "d", ("lat",))[:] = LATS
        nc.createVariable("lon", "d", ("lon",))[:] = LONS

        for name, data in (("u", u), ("v", v)):
            var = nc.createVariable(name, "f", ("time", "level", "lat", "lon"))
            var[:] = data.astype(np.float32)
            var.units = b"m s**-1"


def write_geotiff(path):
    import tifffile

    rows, cols = 6, 6
    pixel = 0.05
    origin_lat, origin_lon = 45.0, 20.0
    nodata = -9999.0
    values = np.zeros((rows, cols), dtype=np.float32)
    for r in range(rows):
        for c in range(cols):
            values[r, c] = 5.0 + 0.1 * r + 0.01 * c
    values[2, 3] = nodata
    values[0, 0] = nodata

    tifffile.imwrite(
        path,
        values,
        extratags=[
            (33550, "d", 3, (pixel, pixel, 0.0)),              # ModelPixelScale
            (33922, "d", 6, (0.0, 0.0, 0.0, origin_lon, origin_lat, 0.0)),  # ModelTiepoint
            (42113, "s", 0, str(nodata)),                      # GDAL_NODATA
        ],
    )


def main():
    DATA.mkdir(parents=True, exist_ok=True)
    write_plain_netcdf(DATA / "wind_small.nc")
    write_packed_netcdf(DATA / "wind_packed.nc")
    write_record_netcdf(DATA / "wind_record.nc")
    write_geotiff(DATA / "gwa_small.tif")
    print("fixtures written to", DATA)


if __name__ == "__main__":
    main()
