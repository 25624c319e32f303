import math
import warnings

import pytest

from leosrp.errors import ChecksumError, ChecksumWarning, FormatError, TleFormatWarning
from leosrp.kepler import orbital_period, true_to_mean
from leosrp.timeframe import jd_to_calendar
from leosrp.tle import (format_tle, parse_tle, read_tle_file, tle_checksum,
                        tle_to_elements)
from tests.conftest import TLE_TOKENS_1, TLE_TOKENS_2

# A canonical strict-layout pair (ISS, a historical epoch); checksums are the
# published trailing digits.
ISS_1 = "1 25544U 98067A   08264.51782528 -.00002182  00000-0 -11606-4 0  2927"
ISS_2 = "2 25544  51.6416 247.4627 0006703 130.5360 325.0288 15.72125391563537"


def test_checksum_known_lines():
    assert tle_checksum(ISS_1[:68]) == int(ISS_1[68])
    assert tle_checksum(ISS_2[:68]) == int(ISS_2[68])


def test_checksum_counts_minus_as_one():
    blank = " " * 68
    assert tle_checksum(blank) == 0
    assert tle_checksum("1-" + " " * 66) == 2
    assert tle_checksum("ABC" + " " * 65) == 0
    with pytest.raises(FormatError):
        tle_checksum("short line")


def test_strict_parse_iss():
    rec = parse_tle(ISS_1, ISS_2)
    assert rec.catalog_number == 25544
    assert rec.intl_designator == "98067A"
    assert rec.inclination == 51.6416
    assert rec.raan == 247.4627
    assert rec.eccentricity == 0.0006703
    assert rec.argp == 130.536
    assert rec.mean_anomaly == 325.0288
    assert rec.mean_motion == 15.72125391
    assert rec.line_checksums == (7, 7)


def test_strict_epoch_decode():
    rec = parse_tle(ISS_1, ISS_2)
    # 08264.51782528 = 2008, day-of-year 264.51782528
    y, mo, d, h, mi, s = jd_to_calendar(rec.epoch)
    assert (y, mo, d) == (2008, 9, 20)
    assert h == 12


def test_strict_checksum_error():
    bad = ISS_1[:68] + "9"
    with pytest.raises(ChecksumError):
        parse_tle(bad, ISS_2)


def test_tolerant_parse_token_lines():
    with pytest.warns(TleFormatWarning):
        rec = parse_tle(TLE_TOKENS_1, TLE_TOKENS_2)
    assert rec.catalog_number == 53693
    assert rec.intl_designator == "22105AX"
    assert rec.inclination == 97.6562
    assert rec.raan == 134.0486
    assert rec.eccentricity == 0.0001715
    assert rec.argp == 125.8937
    assert rec.mean_anomaly == 299.3955
    assert rec.mean_motion == 15.70295930


def test_tolerant_checksums_verify():
    # re-prefixed token lines still digit-sum to the printed trailing digit
    with warnings.catch_warnings():
        warnings.simplefilter("error", ChecksumWarning)
        warnings.simplefilter("ignore", TleFormatWarning)
        parse_tle(TLE_TOKENS_1, TLE_TOKENS_2)


def test_tolerant_checksum_warning():
    doctored = TLE_TOKENS_2[:-1] + "9"
    with pytest.warns(ChecksumWarning):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", TleFormatWarning)
            parse_tle(TLE_TOKENS_1, doctored)


def test_parse_rejects_garbage():
    with pytest.raises(FormatError):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            parse_tle("not a tle", "still not a tle")


def test_epoch_year_pivot():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        rec22 = parse_tle(TLE_TOKENS_1, TLE_TOKENS_2)
    assert 2459000.0 < rec22.epoch.jd < 2460000.0  # 2022
    old1 = "1 00005U 58002B   57001.00000000  .00000000  00000-0  00000-0 0    9"
    line1 = old1[:68] + str(tle_checksum(old1[:68]))
    old2 = "2 00005  34.2682 348.7242 1859667 331.7664  19.3264 10.82419157    1"
    line2 = old2[:68] + str(tle_checksum(old2[:68]))
    rec57 = parse_tle(line1, line2)
    assert rec57.epoch.jd < 2440000.0  # pivots to 1957


def test_format_parse_round_trip():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        rec = parse_tle(TLE_TOKENS_1, TLE_TOKENS_2)
    line1, line2 = format_tle(rec)
    assert len(line1) == 69 and len(line2) == 69
    back = parse_tle(line1, line2)  # strict path, checksums recomputed
    assert back.catalog_number == rec.catalog_number
    assert back.inclination == rec.inclination
    assert back.eccentricity == rec.eccentricity
    assert back.mean_motion == rec.mean_motion
    assert back.epoch.jd == pytest.approx(rec.epoch.jd, abs=1e-7)


def test_derived_semi_major_axis():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        rec = parse_tle(TLE_TOKENS_1, TLE_TOKENS_2)
    el = tle_to_elements(rec)
    # third-law inversion of n = 15.70295930 rev/day
    assert el.a == pytest.approx(6736.19, abs=0.05)
    assert orbital_period(el.a) == pytest.approx(86400.0 / rec.mean_motion, rel=1e-9)
    assert math.degrees(el.i) == pytest.approx(97.6562, abs=1e-10)
    assert el.e == 0.0001715


def test_tle_to_elements_anomaly():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        rec = parse_tle(TLE_TOKENS_1, TLE_TOKENS_2)
    el = tle_to_elements(rec)
    # true anomaly comes from solving Kepler's equation for M = 299.3955 deg
    m = math.radians(rec.mean_anomaly)
    assert true_to_mean(el.true_anomaly, el.e) == pytest.approx(m, abs=1e-10)


def test_read_tle_file(tle_file, tmp_path):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        records = read_tle_file(tle_file)
    assert len(records) == 1
    assert records[0].catalog_number == 53693

    named = tmp_path / "named.tle"
    named.write_text(f"ISS (ZARYA)\n{ISS_1}\n{ISS_2}\n")
    records = read_tle_file(str(named))
    assert len(records) == 1
    assert records[0].catalog_number == 25544
