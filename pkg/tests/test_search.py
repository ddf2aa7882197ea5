import random

import pytest

from ewn.board import BoardState, Color, Move, initial_board, legal_moves, status
from ewn.evaluate import EvaluatorKind, evaluate_board
from ewn.oracle import ExactSolver
from ewn.search import SearchLimits, best_move, search_value, time_budget


def random_position(rng, max_per_side=3):
    n_red = rng.randint(1, max_per_side)
    n_blue = rng.randint(1, max_per_side)
    squares = rng.sample(range(25), n_red + n_blue)
    red_labels = rng.sample(range(1, 7), n_red)
    blue_labels = rng.sample(range(1, 7), n_blue)
    red = {lab: divmod(sq, 5) for lab, sq in zip(red_labels, squares[:n_red])}
    blue = {lab: divmod(sq, 5) for lab, sq in zip(blue_labels, squares[n_red:])}
    state = BoardState.from_placements(red, blue)
    if status(state) is not None:
        return None
    return state


class TestSearchValue:
    def test_depth_zero_equals_static_eval(self, tables):
        rng = random.Random(3)
        for _ in range(50):
            state = random_position(rng)
            if state is None:
                continue
            for kind in EvaluatorKind:
                assert search_value(state, Color.RED, 0, kind, tables) == evaluate_board(
                    state, Color.RED, kind, tables
                )

    def test_terminal_value_ignores_depth(self, tables):
        won = BoardState.from_placements({1: (4, 4)}, {1: (0, 4)})
        for depth in (0, 1, 3, 7):
            assert search_value(won, Color.RED, depth, EvaluatorKind.ZWEISTEIN, tables) == 1.0
            assert search_value(won, Color.BLUE, depth, EvaluatorKind.ZWEISTEIN, tables) == 0.0

    def test_every_opponent_reply_loses(self, tables):
        # both red pieces sit one step from the goal and blue can neither
        # finish nor capture: whatever blue plays, red wins; value 1 at
        # depth >= 1
        state = BoardState.from_placements({1: (3, 4), 2: (4, 3)}, {1: (2, 3)})
        for depth in (1, 2):
            value = search_value(state, Color.RED, depth, EvaluatorKind.ZWEISTEIN, tables)
            assert value == pytest.approx(1.0, abs=1e-12)

    def test_capture_blind_spot_correction(self, tables):
        # red 2 stands one step from the goal but blue's piece on the goal
        # corner captures it at will; the static view is near-certain win,
        # one ply of search collapses it
        state = BoardState.from_placements({2: (3, 3), 5: (0, 2)}, {1: (4, 4)})
        static = evaluate_board(state, Color.RED, EvaluatorKind.ZWEISTEIN, tables)
        depth1 = search_value(state, Color.RED, 1, EvaluatorKind.ZWEISTEIN, tables)
        assert abs(depth1 - static) > 0.1

    def test_values_bounded(self, tables):
        rng = random.Random(4)
        for _ in range(40):
            state = random_position(rng)
            if state is None:
                continue
            depth = rng.randint(0, 3)
            v = search_value(state, Color.BLUE, depth, EvaluatorKind.ZWEISTEIN, tables)
            assert 0.0 <= v <= 1.0
            s = search_value(state, Color.BLUE, depth, EvaluatorKind.SCHWARZ, tables)
            assert -19.0 <= s <= 19.0

    def test_single_piece_race_matches_exact_oracle(self, tables):
        # full expansion before the horizon: expectimax equals the solver
        solver = ExactSolver()
        cases = [
            ({1: (2, 2)}, {1: (2, 3)}),
            ({3: (1, 0)}, {4: (3, 4)}),
            ({6: (0, 3)}, {2: (3, 1)}),
            ({2: (3, 3)}, {5: (1, 1)}),
        ]
        for red, blue in cases:
            state = BoardState.from_placements(red, blue)
            exact = solver.win_prob_for(state, Color.BLUE, Color.RED)
            got = search_value(state, Color.RED, 12, EvaluatorKind.ZWEISTEIN, tables)
            assert got == pytest.approx(exact, abs=1e-9)


class TestBestMove:
    def test_goal_step_always_chosen(self, tables):
        state = BoardState.from_placements({3: (3, 3), 1: (0, 0)}, {2: (1, 3)})
        for depth in (1, 2, 3):
            result = best_move(
                state, Color.RED, 3, SearchLimits(depth=depth),
                EvaluatorKind.ZWEISTEIN, tables,
            )
            assert result.best == Move(3, (3, 3), (4, 4))
            assert result.value == 1.0

    def test_single_legal_move_returned(self, tables):
        state = BoardState.from_placements({1: (0, 4)}, {1: (4, 0)})
        result = best_move(
            state, Color.RED, 1, SearchLimits(depth=3), EvaluatorKind.ZWEISTEIN, tables
        )
        assert result.best == Move(1, (0, 4), (1, 4))

    def test_deeper_search_avoids_capture_exposure(self, tables):
        # stepping to (3,3) looks best statically but walks into the blue
        # defender on (4,4); one ply of opponent replies steers away
        state = BoardState.from_placements({2: (2, 2), 5: (0, 0)}, {1: (4, 4), 6: (1, 4)})
        greedy = best_move(
            state, Color.RED, 2, SearchLimits(depth=1), EvaluatorKind.ZWEISTEIN, tables
        )
        careful = best_move(
            state, Color.RED, 2, SearchLimits(depth=2), EvaluatorKind.ZWEISTEIN, tables
        )
        assert greedy.best.to_sq == (3, 3)
        assert careful.best.to_sq != (3, 3)
        assert careful.value < greedy.value

    def test_terminal_rejected(self, tables):
        state = BoardState.from_placements({1: (4, 4)}, {1: (2, 2)})
        with pytest.raises(ValueError, match="game over"):
            best_move(state, Color.RED, 1, SearchLimits(depth=1), EvaluatorKind.ZWEISTEIN, tables)

    def test_determinism(self, tables):
        state = initial_board()
        results = [
            best_move(state, Color.RED, 4, SearchLimits(depth=3), EvaluatorKind.ZWEISTEIN, tables)
            for _ in range(2)
        ]
        assert results[0] == results[1]

    def test_best_move_in_legal_moves(self, tables):
        rng = random.Random(5)
        for _ in range(30):
            state = random_position(rng)
            if state is None:
                continue
            dice = rng.randint(1, 6)
            result = best_move(
                state, Color.RED, dice, SearchLimits(depth=2), EvaluatorKind.ZWEISTEIN, tables
            )
            assert result.best in legal_moves(state, Color.RED, dice)

    def test_schwarz_agent_runs(self, tables):
        state = initial_board()
        result = best_move(
            state, Color.RED, 1, SearchLimits(depth=2), EvaluatorKind.SCHWARZ, tables
        )
        assert result.best in legal_moves(state, Color.RED, 1)
        assert -19.0 <= result.value <= 19.0


class TestPruningEquivalence:
    def test_star1_identical_to_plain(self, tables):
        rng = random.Random(99)
        checked = 0
        while checked < 1000:
            state = random_position(rng)
            if state is None:
                continue
            dice = rng.randint(1, 6)
            depth = rng.randint(1, 4)
            kind = EvaluatorKind.ZWEISTEIN if rng.random() < 0.8 else EvaluatorKind.SCHWARZ
            plain = best_move(state, Color.RED, dice, SearchLimits(depth=depth), kind, tables)
            pruned = best_move(
                state, Color.RED, dice, SearchLimits(depth=depth), kind, tables, prune=True
            )
            assert pruned.best == plain.best
            assert pruned.value == plain.value
            assert pruned.nodes <= plain.nodes
            checked += 1


class TestDeadlineMode:
    def test_always_returns_a_move(self, tables):
        state = initial_board()
        result = best_move(
            state, Color.RED, 2, SearchLimits(deadline=0.0), EvaluatorKind.ZWEISTEIN, tables
        )
        assert result.reached_depth >= 1
        assert result.best in legal_moves(state, Color.RED, 2)

    def test_bigger_budget_deepens(self, tables):
        state = initial_board()
        quick = best_move(
            state, Color.RED, 2, SearchLimits(deadline=0.0), EvaluatorKind.ZWEISTEIN, tables
        )
        slow = best_move(
            state, Color.RED, 2, SearchLimits(deadline=0.5), EvaluatorKind.ZWEISTEIN, tables,
            prune=True,
        )
        assert slow.reached_depth > quick.reached_depth


class TestLimitsValidation:
    def test_exactly_one_limit(self):
        with pytest.raises(ValueError):
            SearchLimits()
        with pytest.raises(ValueError):
            SearchLimits(depth=2, deadline=1.0)

    def test_depth_bounds(self):
        with pytest.raises(ValueError):
            SearchLimits(depth=0)
        with pytest.raises(ValueError):
            SearchLimits(depth=33)


class TestTimeBudget:
    def test_fresh_clock(self):
        assert time_budget(9.0, 0) == pytest.approx(0.6)

    def test_divisor_floor_reached(self):
        assert time_budget(6.0, 12) == pytest.approx(2.0)

    def test_divisor_clamped_late(self):
        assert time_budget(6.0, 14) == pytest.approx(2.0)

    def test_nonpositive_remaining_rejected(self):
        with pytest.raises(ValueError):
            time_budget(0.0, 3)

    def test_negative_steps_rejected(self):
        with pytest.raises(ValueError):
            time_budget(1.0, -1)
