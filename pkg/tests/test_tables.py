from fractions import Fraction

import numpy as np
import pytest

from ewn.distance import POW5, TABLE_SIZE, decode
from ewn.oracle import simple_pdf_reference
from ewn.rng import SplitMix64
from ewn.tables import (
    NUM_BUCKETS,
    TableFileError,
    build_tables,
    cdf_from_pdf,
    expected_dtc,
    load_tables,
    right_shift,
    save_tables,
)


def exact_forced_race_pdf() -> list[Fraction]:
    """Independent oracle for the array {label 1 at 1, label 2 at 4}.

    Dice 1 is the only roll matching label 1; every other roll moves label 2
    (nearest below 2..6 is 2, nothing above). So DTC = k when the first k-1
    rolls are all >= 2 and piece 2 still has distance left, capped by piece 2
    reaching distance 0 on the fourth move.
    """
    p = [Fraction(0)] * NUM_BUCKETS
    stay = Fraction(5, 6)
    hit = Fraction(1, 6)
    p[1] = hit
    p[2] = stay * hit
    p[3] = stay * stay * hit
    p[4] = stay ** 3  # both pieces at distance 1: any roll finishes
    assert sum(p) == 1
    return p


FORCED_RACE_INDEX = 1 * POW5[0] + 4 * POW5[1]  # {1: d1, 2: d4} -> 21


class TestHandDerivedRow:
    def test_matches_fraction_oracle(self, tables):
        exact = exact_forced_race_pdf()
        row = tables.pdf[FORCED_RACE_INDEX]
        for i in range(NUM_BUCKETS):
            assert abs(row[i] - float(exact[i])) <= 1e-15
        assert all(row[i] == 0.0 for i in range(NUM_BUCKETS) if exact[i] == 0)

    def test_expectation_is_671_216(self, tables):
        # sum of d * p[d] = 1/6 + 2*5/36 + 3*25/216 + 4*125/216 = 671/216
        exact = sum(d * p for d, p in enumerate(exact_forced_race_pdf()))
        assert exact == Fraction(671, 216)
        got = expected_dtc(tables.pdf_rows[FORCED_RACE_INDEX])
        assert abs(got - float(exact)) <= 1e-13
        assert tables.expected[FORCED_RACE_INDEX] == got


class TestTableIntegrity:
    def test_row_zero_is_sentinel(self, tables):
        assert not tables.pdf[0].any()
        assert not tables.cdf[0].any()

    def test_live_rows_normalized(self, tables):
        sums = tables.pdf[1:].sum(axis=1)
        assert np.abs(sums - 1.0).max() <= 1e-9

    def test_bucket_zero_empty(self, tables):
        assert not tables.pdf[:, 0].any()

    def test_no_negative_mass(self, tables):
        assert tables.pdf.min() >= 0.0

    def test_single_piece_rows_deterministic(self, tables):
        for lab in range(1, 7):
            for d in range(1, 5):
                row = tables.pdf[d * POW5[lab - 1]]
                assert row[d] == 1.0
                assert row.sum() == 1.0

    def test_support_starts_at_closest_piece(self, tables):
        # the fastest finish walks the closest piece straight home
        idx = np.arange(TABLE_SIZE)
        digits = (idx[:, None] // np.array(POW5)) % 5
        masked = np.where(digits == 0, 5, digits)
        closest = masked.min(axis=1)
        for index in range(1, TABLE_SIZE, 97):
            row = tables.pdf[index]
            assert not row[: closest[index]].any()

    def test_expectation_monotone_in_any_distance(self, tables):
        idx = np.arange(TABLE_SIZE, dtype=np.int64)
        digits = (idx[:, None] // np.array(POW5, dtype=np.int64)) % 5
        expected = np.asarray(tables.expected)
        for lab in range(6):
            sel = np.nonzero(digits[:, lab] >= 2)[0]
            closer = expected[sel - POW5[lab]]
            assert (closer <= expected[sel]).all()

    def test_builds_are_byte_identical(self, tables):
        again = build_tables()
        assert again.pdf.tobytes() == tables.pdf.tobytes()
        assert again.cdf.tobytes() == tables.cdf.tobytes()


class TestReferenceEquivalence:
    def test_random_indices_match(self, tables):
        rng = SplitMix64(7)
        worst = 0.0
        for _ in range(120):
            index = 1 + rng.randrange(TABLE_SIZE - 1)
            ref = simple_pdf_reference(decode(index))
            worst = max(worst, np.abs(tables.pdf[index] - np.array(ref)).max())
        assert worst <= 1e-12

    def test_forced_race_row_bit_equal(self, tables):
        ref = simple_pdf_reference(decode(FORCED_RACE_INDEX))
        assert tuple(tables.pdf[FORCED_RACE_INDEX]) == ref


class TestRightShift:
    def test_moves_mass_up(self):
        pdf = [1.0] + [0.0] * 19
        assert right_shift(pdf) == (0.0, 1.0) + (0.0,) * 18

    def test_preserves_mass(self):
        pdf = [0.0, 0.25, 0.75] + [0.0] * 17
        assert sum(right_shift(pdf)) == sum(pdf)

    def test_repeated_shifts_place_mass(self):
        pdf = (1.0,) + (0.0,) * 19
        for d in range(1, 5):
            pdf = right_shift(pdf)
            assert pdf[d] == 1.0

    def test_overflow_rejected(self):
        pdf = [0.0] * 19 + [0.5]
        with pytest.raises(ValueError, match="mass overflow"):
            right_shift(pdf)


class TestExpectedDtc:
    def test_point_mass(self):
        pdf = [0.0] * 20
        pdf[2] = 1.0
        assert expected_dtc(pdf) == 2.0

    def test_two_point(self):
        pdf = [0.0] * 20
        pdf[1] = 0.5
        pdf[19] = 0.5
        assert expected_dtc(pdf) == 10.0


class TestCdf:
    def test_point_mass_becomes_step(self, tables):
        pdf = np.zeros((1, 20))
        pdf[0, 3] = 1.0
        cdf = cdf_from_pdf(pdf)[0]
        assert not cdf[:3].any()
        assert (cdf[3:] == 1.0).all()

    def test_rows_nondecreasing(self, tables):
        assert (np.diff(tables.cdf, axis=1) >= -1e-15).all()

    def test_last_bucket_is_total(self, tables):
        assert np.abs(tables.cdf[1:, -1] - 1.0).max() <= 1e-9


class TestPersistence:
    def test_roundtrip_bit_identical(self, tables, tmp_path):
        path = tmp_path / "tables.zwst"
        save_tables(path, tables)
        loaded = load_tables(path)
        assert loaded.pdf.tobytes() == tables.pdf.tobytes()
        assert loaded.cdf.tobytes() == tables.cdf.tobytes()

    def _saved(self, tables, tmp_path):
        path = tmp_path / "tables.zwst"
        save_tables(path, tables)
        return path, bytearray(path.read_bytes())

    def test_bad_magic(self, tables, tmp_path):
        path, blob = self._saved(tables, tmp_path)
        blob[:4] = b"NOPE"
        path.write_bytes(bytes(blob))
        with pytest.raises(TableFileError) as err:
            load_tables(path)
        assert err.value.code == "bad-magic"

    def test_bad_version(self, tables, tmp_path):
        path, blob = self._saved(tables, tmp_path)
        blob[4] = 99
        path.write_bytes(bytes(blob))
        with pytest.raises(TableFileError) as err:
            load_tables(path)
        assert err.value.code == "bad-version"

    def test_truncated(self, tables, tmp_path):
        path, blob = self._saved(tables, tmp_path)
        path.write_bytes(bytes(blob[:-100]))
        with pytest.raises(TableFileError) as err:
            load_tables(path)
        assert err.value.code == "truncated"

    def test_checksum_mismatch(self, tables, tmp_path):
        path, blob = self._saved(tables, tmp_path)
        blob[100] ^= 0xFF
        path.write_bytes(bytes(blob))
        with pytest.raises(TableFileError) as err:
            load_tables(path)
        assert err.value.code == "checksum-mismatch"

    def test_error_codes_distinct(self):
        codes = {"bad-magic", "bad-version", "bad-shape", "truncated", "checksum-mismatch"}
        assert len(codes) == 5
