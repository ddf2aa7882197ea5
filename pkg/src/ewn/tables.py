"""Distance-to-corner probability tables.

For every one of the 15625 distance arrays we store the distribution of the
number of moves until the first piece reaches the goal corner (DTC), under
the policy that each dice outcome moves the piece whose resulting position
minimizes the expected DTC, lowest label on ties. Distributions live in 20
buckets: bucket 0 is always empty for live arrays (a finished side never
gets evaluated) and the worst case is 19 moves, six pieces walking from
distance 4 down to 1 before one of them is forced home.

The fixpoint is

    pdf(terminal child)   = [1, 0, ..., 0]
    pdf(arr)              = right_shift( (1/6) * sum over dice of pdf(best child) )

computed bottom-up over total remaining distance, so every child row exists
before its parents. The sweep is vectorized with numpy but keeps plain
sequential summation order (dice 1..6, then expectation terms in bucket
order), which makes builds byte-identical across runs and bit-comparable
with the plain-recursion reference in ewn.oracle.

Row 0 (everything captured) is never produced by the recursion; it is stored
as all zeros and means "side already eliminated".
"""

from __future__ import annotations

import struct
import zlib
from functools import cached_property
from typing import Sequence

import numpy as np

from .board import movable_labels
from .distance import POW5, TABLE_SIZE

NUM_BUCKETS = 20

_MAGIC = b"ZWST"
_VERSION = 1
_HEADER = struct.Struct("<4sIII")

# movable-label candidates per (alive bitmask, dice): (first, second-or-0),
# ascending label order so the tie-break is positional
_MOV_A = np.zeros((64, 7), dtype=np.int64)
_MOV_B = np.zeros((64, 7), dtype=np.int64)
for _mask in range(1, 64):
    _alive = [lab for lab in range(1, 7) if _mask >> (lab - 1) & 1]
    for _dice in range(1, 7):
        _labs = sorted(movable_labels(_alive, _dice))
        _MOV_A[_mask, _dice] = _labs[0]
        _MOV_B[_mask, _dice] = _labs[1] if len(_labs) > 1 else 0


class TableFileError(Exception):
    """Table file rejected; .code is one of bad-magic, bad-version,
    bad-shape, truncated, checksum-mismatch."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


class Tables:
    """Immutable pdf/cdf pair plus cached native-Python views.

    The numpy arrays back the vectorized paths (bench, bulk verification);
    the tuple views back the scalar hot path in search, where per-row numpy
    indexing would dominate the cost of a 19-term dot product.
    """

    def __init__(self, pdf: np.ndarray, cdf: np.ndarray):
        if pdf.shape != (TABLE_SIZE, NUM_BUCKETS) or cdf.shape != (TABLE_SIZE, NUM_BUCKETS):
            raise ValueError(f"tables must be {TABLE_SIZE}x{NUM_BUCKETS}")
        self.pdf = np.ascontiguousarray(pdf, dtype=np.float64)
        self.cdf = np.ascontiguousarray(cdf, dtype=np.float64)
        self.pdf.setflags(write=False)
        self.cdf.setflags(write=False)

    @cached_property
    def pdf_rows(self) -> tuple[tuple[float, ...], ...]:
        return tuple(map(tuple, self.pdf.tolist()))

    @cached_property
    def cdf_rows(self) -> tuple[tuple[float, ...], ...]:
        return tuple(map(tuple, self.cdf.tolist()))

    @cached_property
    def expected(self) -> tuple[float, ...]:
        """expected_dtc of every row, summation order matching expected_dtc."""
        acc = np.zeros(TABLE_SIZE)
        for i in range(1, NUM_BUCKETS):
            acc += i * self.pdf[:, i]
        return tuple(acc.tolist())


def expected_dtc(pdf: Sequence[float]) -> float:
    """Mean of a DTC distribution: sum of i * p[i]."""
    total = 0.0
    for i, p in enumerate(pdf):
        total += i * p
    return total


def right_shift(pdf: Sequence[float]) -> tuple[float, ...]:
    """Shift a distribution one bucket up (every DTC grows by one move)."""
    if pdf[NUM_BUCKETS - 1] != 0.0:
        raise ValueError("mass overflow beyond DTC 19")
    return (0.0,) + tuple(pdf[: NUM_BUCKETS - 1])


def cdf_from_pdf(pdf_table: np.ndarray) -> np.ndarray:
    """Per-row prefix sums."""
    return np.cumsum(pdf_table, axis=1)


def build_tables() -> Tables:
    """Build the full pdf and cdf tables; deterministic and sub-second."""
    idx = np.arange(TABLE_SIZE, dtype=np.int64)
    pow5 = np.array(POW5, dtype=np.int64)
    digits = (idx[:, None] // pow5[None, :]) % 5
    mask = ((digits > 0).astype(np.int64) << np.arange(6)).sum(axis=1)
    total = digits.sum(axis=1)

    pdf = np.zeros((TABLE_SIZE, NUM_BUCKETS))
    exp = np.zeros(TABLE_SIZE)
    base = np.zeros(NUM_BUCKETS)
    base[0] = 1.0

    # Levels: all rows with total remaining distance T depend only on rows
    # with total T-1 (or on the terminal base distribution).
    for level in range(1, 25):
        rows = np.nonzero(total == level)[0]
        level_mask = mask[rows]
        acc = np.zeros((len(rows), NUM_BUCKETS))
        for dice in range(1, 7):
            lab_a = _MOV_A[level_mask, dice]
            lab_b = _MOV_B[level_mask, dice]

            dig_a = digits[rows, lab_a - 1]
            term_a = dig_a == 1
            child_a = rows - pow5[lab_a - 1]
            exp_a = np.where(term_a, 0.0, exp[child_a])

            has_b = lab_b > 0
            lab_b_safe = np.where(has_b, lab_b, 1)
            dig_b = digits[rows, lab_b_safe - 1]
            term_b = (dig_b == 1) & has_b
            child_b = rows - pow5[lab_b_safe - 1]
            exp_b = np.where(term_b, 0.0, exp[child_b])

            # strict < keeps the first minimum, i.e. the lower label
            pick_a = ~has_b | (exp_a <= exp_b)
            chosen_child = np.where(pick_a, child_a, child_b)
            chosen_term = np.where(pick_a, term_a, term_b)

            picked = pdf[chosen_child]
            picked[chosen_term] = base
            acc += picked
        acc /= 6.0
        if acc[:, NUM_BUCKETS - 1].any():
            raise AssertionError("mass overflow beyond DTC 19")
        pdf[rows, 1:] = acc[:, : NUM_BUCKETS - 1]
        # expectation in the same order as expected_dtc, term by term
        level_exp = np.zeros(len(rows))
        for i in range(1, NUM_BUCKETS):
            level_exp += i * acc[:, i - 1]
        exp[rows] = level_exp

    return Tables(pdf, cdf_from_pdf(pdf))


def save_tables(path, tables: Tables) -> None:
    """Write tables in the ZWST v1 format (little-endian, CRC32-tailed)."""
    payload = bytearray()
    payload += _HEADER.pack(_MAGIC, _VERSION, TABLE_SIZE, NUM_BUCKETS)
    payload += tables.pdf.astype("<f8").tobytes()
    payload += tables.cdf.astype("<f8").tobytes()
    crc = zlib.crc32(bytes(payload)) & 0xFFFFFFFF
    payload += struct.pack("<I", crc)
    with open(path, "wb") as fh:
        fh.write(payload)


def load_tables(path) -> Tables:
    """Read a ZWST v1 file, verifying header, length, and checksum."""
    with open(path, "rb") as fh:
        blob = fh.read()
    if len(blob) < _HEADER.size:
        raise TableFileError("truncated", f"file too short ({len(blob)} bytes)")
    magic, version, rows, width = _HEADER.unpack_from(blob)
    if magic != _MAGIC:
        raise TableFileError("bad-magic", f"bad magic {magic!r}")
    if version != _VERSION:
        raise TableFileError("bad-version", f"unsupported version {version}")
    if rows != TABLE_SIZE or width != NUM_BUCKETS:
        raise TableFileError("bad-shape", f"unexpected table shape {rows}x{width}")
    body = rows * width * 8
    expect = _HEADER.size + 2 * body + 4
    if len(blob) != expect:
        raise TableFileError(
            "truncated", f"expected {expect} bytes, got {len(blob)}"
        )
    crc_stored = struct.unpack_from("<I", blob, expect - 4)[0]
    crc_actual = zlib.crc32(blob[: expect - 4]) & 0xFFFFFFFF
    if crc_stored != crc_actual:
        raise TableFileError(
            "checksum-mismatch",
            f"CRC32 mismatch: stored {crc_stored:#010x}, computed {crc_actual:#010x}",
        )
    off = _HEADER.size
    pdf = np.frombuffer(blob, dtype="<f8", count=rows * width, offset=off)
    cdf = np.frombuffer(blob, dtype="<f8", count=rows * width, offset=off + body)
    return Tables(pdf.reshape(rows, width).copy(), cdf.reshape(rows, width).copy())
