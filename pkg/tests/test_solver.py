"""Winning regions, ranks, strategies and play enumeration."""

import pytest

from bisimgames.checks import naive_ranks, fixed_point_failures
from bisimgames.games import (SpoilerPair, all_pairs, build_branching_game,
                              build_strong_game, owner)
from bisimgames.randgen import corpus
from bisimgames.solver import (Play, Strategy, StrategyError,
                               check_determinacy, enumerate_plays, solve)

INF = float("inf")


@pytest.fixture(scope="module")
def choice_solved(choice_lts):
    game = build_strong_game(choice_lts, all_pairs(choice_lts))
    return game, solve(game)


@pytest.fixture(scope="module")
def silent_solved(silent_lts):
    game = build_branching_game(silent_lts, all_pairs(silent_lts))
    return game, solve(game)


def pair_index(game, lts, a, b):
    return game.index_of(SpoilerPair(lts.state_index(a), lts.state_index(b)))


class TestRegionsAndRanks:
    def test_choice_root_rank_two(self, choice_lts, choice_solved):
        game, sol = choice_solved
        root = pair_index(game, choice_lts, "x0", "y0")
        assert root in sol.spoiler_region
        assert sol.rank[root] == 2

    def test_deadlock_pair_safe(self, deadlock_lts):
        game = build_strong_game(deadlock_lts, [(0, 1)])
        sol = solve(game)
        assert game.index_of(SpoilerPair(0, 1)) in sol.duplicator_region

    def test_silent_root_rank_two(self, silent_lts, silent_solved):
        game, sol = silent_solved
        root = pair_index(game, silent_lts, "x0", "y0")
        assert root in sol.spoiler_region
        assert sol.rank[root] == 2

    def test_rank_one_means_immediate_stuck_reply(self, choice_lts, choice_solved):
        game, sol = choice_solved
        i = pair_index(game, choice_lts, "x1", "y1")
        assert sol.rank[i] == 1

    def test_rank_defined_exactly_on_spoiler_region(self, choice_solved):
        game, sol = choice_solved
        assert set(sol.rank) == set(sol.spoiler_region)

    @pytest.mark.parametrize("solved", ["choice_solved", "silent_solved"])
    def test_ranks_match_value_iteration(self, solved, request):
        game, sol = request.getfixturevalue(solved)
        ref = naive_ranks(game)
        for i in range(len(game.configs)):
            assert sol.rank.get(i, INF) == ref[i]

    @pytest.mark.parametrize("solved", ["choice_solved", "silent_solved"])
    def test_fixed_point_post_checks(self, solved, request):
        game, sol = request.getfixturevalue(solved)
        assert fixed_point_failures(game, sol) == []

    @pytest.mark.parametrize("solved", ["choice_solved", "silent_solved"])
    def test_rank_strictly_decreases_along_strategy(self, solved, request):
        """One challenge round under the extracted strategy always lowers
        the remaining rank, whatever the reply."""
        game, sol = request.getfixturevalue(solved)
        for i in sol.spoiler_region:
            cfg = game.configs[i]
            if not isinstance(cfg, SpoilerPair):
                continue
            chal = sol.spoiler_strategy.moves[i]
            for j in game.moves[chal]:
                if game.kind == "strong":
                    assert sol.rank[j] <= sol.rank[i] - 1
                else:
                    split = sol.spoiler_strategy.moves[j]
                    assert sol.rank[split] <= sol.rank[i] - 1

    def test_duplicator_strategy_stays_safe(self, choice_solved):
        game, sol = choice_solved
        for i, j in sol.duplicator_strategy.moves.items():
            assert j in sol.duplicator_region


class TestDeterminacy:
    @pytest.mark.parametrize("solved", ["choice_solved", "silent_solved"])
    def test_fixture_games_determined(self, solved, request):
        game, sol = request.getfixturevalue(solved)
        assert check_determinacy(game, sol)

    def test_empty_game_vacuously_determined(self, choice_lts):
        from bisimgames.games import GameGraph
        empty = GameGraph(choice_lts, "strong", (), (), ())
        assert check_determinacy(empty, solve(empty))

    def test_empty_overlap_detected(self, choice_solved):
        game, sol = choice_solved
        from bisimgames.solver import Solution
        broken = Solution(
            spoiler_region=sol.spoiler_region | {next(iter(sol.duplicator_region))},
            duplicator_region=sol.duplicator_region,
            rank=sol.rank, spoiler_strategy=sol.spoiler_strategy,
            duplicator_strategy=sol.duplicator_strategy)
        assert not check_determinacy(game, broken)


class TestEnumeratePlays:
    def test_spoiler_wins_within_two_rounds(self, choice_lts, choice_solved):
        game, sol = choice_solved
        root = pair_index(game, choice_lts, "x0", "y0")
        plays = enumerate_plays(game, sol.spoiler_strategy, root, round_bound=2)
        assert plays
        for p in plays:
            assert p.winner == "spoiler"
            assert not p.cut_off

    def test_deadlocked_root_single_empty_play(self, choice_lts, choice_solved):
        game, sol = choice_solved
        root = pair_index(game, choice_lts, "x3", "y2")
        plays = enumerate_plays(game, sol.duplicator_strategy, root, round_bound=5)
        assert plays == [Play((root,), "duplicator")]

    def test_duplicator_strategy_never_loses(self, choice_lts, choice_solved):
        game, sol = choice_solved
        bound = len(game.configs) + 1
        for a, b in [("x3", "y2"), ("x3", "x4"), ("y2", "y3")]:
            root = pair_index(game, choice_lts, a, b)
            assert root in sol.duplicator_region
            for p in enumerate_plays(game, sol.duplicator_strategy, root, bound):
                assert p.winner == "duplicator"

    def test_exact_bound_cut_offs_witness_repetition(self, tau_cycle_lts):
        """With the pigeonhole bound, every cut-off play already revisits
        a configuration, so it genuinely extends to an infinite play."""
        game = build_strong_game(tau_cycle_lts, all_pairs(tau_cycle_lts))
        sol = solve(game)
        bound = len(game.configs) + 1
        for root in game.roots:
            assert root in sol.duplicator_region
            for p in enumerate_plays(game, sol.duplicator_strategy, root, bound):
                assert p.winner == "duplicator"
                if p.cut_off:
                    assert len(set(p.configs)) < len(p.configs)

    def test_round_bound_validated(self, choice_solved):
        game, sol = choice_solved
        with pytest.raises(ValueError):
            enumerate_plays(game, sol.spoiler_strategy, game.roots[0], round_bound=0)

    def test_missing_strategy_entry_raises(self, choice_lts, choice_solved):
        game, sol = choice_solved
        root = pair_index(game, choice_lts, "x0", "y0")
        with pytest.raises(StrategyError):
            enumerate_plays(game, Strategy("spoiler", {}), root, round_bound=3)

    def test_branching_spoiler_plays(self, silent_lts, silent_solved):
        game, sol = silent_solved
        root = pair_index(game, silent_lts, "x0", "y0")
        plays = enumerate_plays(game, sol.spoiler_strategy, root,
                                round_bound=sol.rank[root])
        assert all(p.winner == "spoiler" and not p.cut_off for p in plays)


class TestRandomised:
    @pytest.mark.parametrize("kind,tau_prob", [("strong", 0.0), ("branching", 0.3)])
    def test_solver_agrees_with_value_iteration(self, kind, tau_prob):
        build = build_strong_game if kind == "strong" else build_branching_game
        for lts in corpus(seed=11, count=40, max_states=5, tau_prob=tau_prob):
            game = build(lts, all_pairs(lts))
            sol = solve(game)
            assert check_determinacy(game, sol)
            ref = naive_ranks(game)
            for i in range(len(game.configs)):
                assert sol.rank.get(i, INF) == ref[i]
