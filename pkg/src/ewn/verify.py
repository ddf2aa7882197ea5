"""Cross-check suite wiring the tables against their independent references.

Each check returns (name, passed, detail); the CLI prints one line per
check. These are the same oracles the test suite leans on: the
plain-recursion pdf reference, the explicit double-sum form of the win
rate, structural table invariants, and the exact game solver on small
capture-free positions.
"""

from __future__ import annotations

import numpy as np

from .board import BoardState, Color
from .distance import POW5, TABLE_SIZE, decode
from .evaluate import evaluate_board, EvaluatorKind, zweistein_batch
from .oracle import ExactSolver, double_sum_batch, simple_pdf_reference
from .rng import SplitMix64
from .tables import Tables

Check = tuple[str, bool, str]


def check_integrity(tables: Tables) -> list[Check]:
    pdf = tables.pdf
    live = pdf[1:]
    out = []
    sum_err = np.abs(live.sum(axis=1) - 1.0).max()
    out.append(("row-sums", sum_err <= 1e-9, f"max |sum-1| = {sum_err:.3e}"))
    p0 = float(np.abs(pdf[:, 0]).max())
    out.append(("bucket-zero-empty", p0 == 0.0, f"max p[0] = {p0:.3e}"))
    neg = float(pdf.min())
    out.append(("no-negative-mass", neg >= 0.0, f"min p = {neg:.3e}"))

    singles_ok = True
    for lab in range(1, 7):
        for d in range(1, 5):
            row = pdf[d * POW5[lab - 1]]
            if row[d] != 1.0 or row.sum() != 1.0:
                singles_ok = False
    out.append(("single-piece-rows", singles_ok, "24 deterministic rows"))

    idx = np.arange(TABLE_SIZE, dtype=np.int64)
    pow5 = np.array(POW5, dtype=np.int64)
    digits = (idx[:, None] // pow5[None, :]) % 5
    expected = np.asarray(tables.expected)
    worst = 0.0
    for lab in range(6):
        sel = np.nonzero(digits[:, lab] >= 2)[0]
        gap = expected[sel - POW5[lab]] - expected[sel]
        if len(gap):
            worst = max(worst, float(gap.max()))
    out.append(
        ("expectation-monotonic", worst <= 0.0, f"max E[closer]-E[farther] = {worst:.3e}")
    )
    return out


def check_reference(tables: Tables, indices: int = 100, seed: int = 2024) -> Check:
    rng = SplitMix64(seed)
    worst = 0.0
    for _ in range(indices):
        i = 1 + rng.randrange(TABLE_SIZE - 1)
        ref = np.array(simple_pdf_reference(decode(i)))
        worst = max(worst, float(np.abs(tables.pdf[i] - ref).max()))
    return (
        "reference-equivalence",
        worst <= 1e-12,
        f"{indices} indices, max |table-ref| = {worst:.3e}",
    )


def check_consistency(tables: Tables, pairs: int = 1_000_000, seed: int = 99) -> Check:
    rng = np.random.default_rng(seed)
    ours = rng.integers(1, TABLE_SIZE, size=pairs)
    theirs = rng.integers(1, TABLE_SIZE, size=pairs)
    via_cdf = zweistein_batch(ours, theirs, tables)
    direct = double_sum_batch(ours, theirs, tables)
    worst = float(np.abs(via_cdf - direct).max())
    return (
        "cdf-pdf-consistency",
        worst <= 1e-12,
        f"{pairs} pairs, max |cdf-form - double-sum| = {worst:.3e}",
    )


def check_exact_spot(tables: Tables) -> Check:
    """Capture-free single-piece races: table value vs exact solver."""
    solver = ExactSolver()
    worst = 0.0
    cases = 0
    for red_sq in ((4, 0), (4, 1), (4, 2), (3, 0)):
        for blue_sq in ((0, 4), (0, 3), (0, 2), (1, 4)):
            state = BoardState.from_placements({1: red_sq}, {1: blue_sq})
            value = evaluate_board(state, Color.RED, EvaluatorKind.ZWEISTEIN, tables)
            exact = solver.win_prob_for(state, Color.BLUE, Color.RED)
            worst = max(worst, abs(value - exact))
            cases += 1
    return (
        "exact-win-rate-spotcheck",
        worst <= 0.05,
        f"{cases} capture-free races, max |zweistein-exact| = {worst:.3e}",
    )


def run_verification(
    tables: Tables, pairs: int = 1_000_000, indices: int = 100, seed: int = 2024
) -> list[Check]:
    checks = check_integrity(tables)
    checks.append(check_reference(tables, indices=indices, seed=seed))
    checks.append(check_consistency(tables, pairs=pairs, seed=seed))
    checks.append(check_exact_spot(tables))
    return checks
