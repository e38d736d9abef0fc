from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from covcomb.combinations import max_writes, pair_count, unique_combinations
from covcomb.core import WindowSpec
from covcomb.schedsim import (
    POLICY_FIFO,
    POLICY_LONGEST,
    TaskCost,
    ingest_measured_costs,
    model_costs,
    simulate,
    sweep,
    write_cost_trace,
)


def make_tasks(costs):
    return [TaskCost(i, 0, 0, Fraction(c)) for i, c in enumerate(costs)]


cost_lists = st.lists(st.integers(min_value=0, max_value=10**6), min_size=1, max_size=40).filter(
    lambda cs: sum(cs) > 0
)


class TestModelCosts:
    def test_task_counts(self):
        window = WindowSpec(13, 13)
        assert len(model_costs(window, (32, 32))) == 313
        assert len(model_costs(window, (32, 32), batch=2)) == 626
        assert len(model_costs(WindowSpec(1, 1), (4, 4))) == 1

    def test_cost_formula(self):
        window = WindowSpec(3, 2)
        n, m = 10, 8
        tasks = model_costs(window, (n, m))
        for task, comb in zip(tasks, unique_combinations(window)):
            assert (task.dr, task.dc) == (comb.dr, comb.dc)
            assert task.cost == pair_count(comb, n, m) * (1 + max_writes(comb, window))

    def test_batch_replicates_costs_with_matrix_index(self):
        window = WindowSpec(2, 2)
        tasks = model_costs(window, (6, 6), batch=3)
        per = len(unique_combinations(window))
        assert [t.matrix_index for t in tasks] == [b for b in range(3) for _ in range(per)]
        assert all(t.task_id == i for i, t in enumerate(tasks))

    def test_negative_cost_rejected(self):
        with pytest.raises(ValueError):
            TaskCost(0, 0, 0, Fraction(-1))


class TestSimulate:
    def test_single_core_speedup_is_exactly_one(self):
        result = simulate(make_tasks([3, 1, 4, 1, 5]), cores=1)
        assert result.speedup == 1
        assert result.makespan == 14

    def test_perfect_split(self):
        result = simulate(make_tasks([2, 2, 2, 2]), cores=2)
        assert result.makespan == 4
        assert result.speedup == 2

    def test_longest_first_beats_fifo_here(self):
        # classic list-scheduling case: FIFO strands the long task
        costs = [1, 1, 1, 3]
        fifo = simulate(make_tasks(costs), cores=2, policy=POLICY_FIFO)
        lpt = simulate(make_tasks(costs), cores=2, policy=POLICY_LONGEST)
        assert lpt.makespan == 3 < fifo.makespan

    def test_deterministic_tie_breaking(self):
        result = simulate(make_tasks([1, 1, 1, 1]), cores=2, policy=POLICY_FIFO)
        # equal costs: tasks go to cores 0,1,0,1 at starts 0,0,1,1
        assert result.trace == ((Fraction(0), 0, 0), (Fraction(0), 1, 1),
                                (Fraction(1), 0, 2), (Fraction(1), 1, 3))

    def test_dispatch_overhead_stretches_makespan_not_busy(self):
        plain = simulate(make_tasks([2, 2]), cores=1)
        slowed = simulate(make_tasks([2, 2]), cores=1, dispatch_overhead=Fraction(1, 2))
        assert slowed.makespan == plain.makespan + 1
        assert sum(slowed.per_core_busy) == sum(plain.per_core_busy)

    def test_input_validation(self):
        with pytest.raises(ValueError):
            simulate([], cores=1)
        with pytest.raises(ValueError):
            simulate(make_tasks([1]), cores=0)
        with pytest.raises(ValueError):
            simulate(make_tasks([0, 0]), cores=1)
        with pytest.raises(ValueError):
            simulate(make_tasks([1]), cores=1, policy="random")


class TestScheduleProperties:
    @given(cost_lists, st.integers(1, 24))
    @settings(max_examples=150, deadline=None)
    def test_work_conservation_and_bounds(self, costs, cores):
        tasks = make_tasks(costs)
        result = simulate(tasks, cores)
        total = sum(costs)
        assert sum(result.per_core_busy) == total
        assert result.makespan >= max(Fraction(total, cores), Fraction(max(costs)))
        assert 1 <= result.speedup <= cores

    @given(cost_lists, st.integers(1, 23))
    @settings(max_examples=150, deadline=None)
    def test_more_cores_never_hurt(self, costs, cores):
        tasks = make_tasks(costs)
        assert simulate(tasks, cores + 1).makespan <= simulate(tasks, cores).makespan

    @given(cost_lists)
    @settings(max_examples=100, deadline=None)
    def test_speedup_plateaus_at_task_count(self, costs):
        tasks = make_tasks(costs)
        at_task_count = simulate(tasks, len(tasks)).speedup
        assert simulate(tasks, len(tasks) + 5).speedup == at_task_count

    @given(cost_lists, st.integers(1, 16), st.sampled_from([POLICY_FIFO, POLICY_LONGEST]))
    @settings(max_examples=100, deadline=None)
    def test_every_task_scheduled_exactly_once(self, costs, cores, policy):
        tasks = make_tasks(costs)
        result = simulate(tasks, cores, policy)
        assert sorted(entry[2] for entry in result.trace) == list(range(len(tasks)))


class TestSweep:
    def test_single_core_point(self):
        points = sweep(make_tasks([5, 5]), [1])
        assert points[0].cores == 1 and points[0].speedup == 1 and points[0].region == "I"

    def test_flagship_128_core_speedup_window(self):
        # 313 modeled tasks cannot reach linear scaling at 128 cores, but
        # stay well above half of it
        tasks = model_costs(WindowSpec(13, 13), (32, 32))
        result = simulate(tasks, 128, POLICY_LONGEST)
        assert 64 < result.speedup < 128

    def test_batching_restores_scaling_at_128_cores(self):
        window = WindowSpec(13, 13)
        single = simulate(model_costs(window, (32, 32)), 128, POLICY_LONGEST)
        double = simulate(model_costs(window, (32, 32), batch=2), 128, POLICY_LONGEST)
        assert double.speedup > single.speedup

    def test_moderate_class_count_scales_linearly_through_16(self):
        tasks = model_costs(WindowSpec(8, 8), (20, 20))
        for point in sweep(tasks, list(range(1, 17))):
            assert point.region == "I"
            assert point.speedup >= Fraction(19, 20) * point.cores

    def test_regions_progress_with_core_count(self):
        tasks = model_costs(WindowSpec(13, 13), (32, 32))
        points = sweep(tasks, [1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024])
        regions = [pt.region for pt in points]
        assert regions[0] == "I"
        assert "III" in regions  # the longest class eventually pins the makespan
        assert [r for r in regions if r != "I"] == sorted(
            (r for r in regions if r != "I"), key=["II", "III"].index
        )  # II never reappears after III

    def test_empty_core_list_rejected(self):
        with pytest.raises(ValueError):
            sweep(make_tasks([1]), [])


class TestMeasuredCostRoundTrip:
    def test_trace_round_trip(self, tmp_path):
        window = WindowSpec(3, 2)
        combos = unique_combinations(window)
        entries = [(comb, 0.001 * (i + 1)) for i, comb in enumerate(combos)]
        path = tmp_path / "trace.csv"
        write_cost_trace(path, entries)
        tasks = ingest_measured_costs(path, window)
        assert len(tasks) == len(combos)
        for task, (comb, cost) in zip(tasks, entries):
            assert (task.dr, task.dc) == (comb.dr, comb.dc)
            assert task.cost == Fraction(repr(cost))
        assert path.read_text().splitlines()[0] == "task_id,dr,dc,cost"

    def test_count_mismatch_rejected(self, tmp_path):
        window = WindowSpec(3, 2)
        path = tmp_path / "trace.csv"
        write_cost_trace(path, [(unique_combinations(window)[0], 1.0)])
        with pytest.raises(ValueError, match="expected 8 tasks"):
            ingest_measured_costs(path, window)

    def test_malformed_rows_rejected(self, tmp_path):
        path = tmp_path / "trace.csv"
        path.write_text("task_id,dr,dc,cost\n0,0,0,fast\n")
        with pytest.raises(ValueError, match="malformed"):
            ingest_measured_costs(path, WindowSpec(1, 1))

    def test_wrong_header_rejected(self, tmp_path):
        path = tmp_path / "trace.csv"
        path.write_text("id,dr,dc,cost\n0,0,0,1\n")
        with pytest.raises(ValueError, match="header"):
            ingest_measured_costs(path, WindowSpec(1, 1))

    def test_negative_cost_rejected(self, tmp_path):
        path = tmp_path / "trace.csv"
        path.write_text("task_id,dr,dc,cost\n0,0,0,-1\n")
        with pytest.raises(ValueError):
            ingest_measured_costs(path, WindowSpec(1, 1))

    def test_offset_outside_window_rejected(self, tmp_path):
        path = tmp_path / "trace.csv"
        path.write_text("task_id,dr,dc,cost\n0,5,0,1\n")
        with pytest.raises(ValueError, match="not a class"):
            ingest_measured_costs(path, WindowSpec(1, 1))
