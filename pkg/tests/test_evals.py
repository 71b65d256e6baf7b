"""Tests for the growth report of the scaling eval."""

import pytest

from evals.eval_scaling import OPERATIONS, fitted_exponent, growth_table, task


def synthetic_rows(power: float):
    return [
        {"product_size": n, **{op: 1e-4 * n**power for op in OPERATIONS}}
        for n in (10, 20, 40, 80)
    ]


class TestGrowthReport:
    @pytest.mark.parametrize("power", [1.0, 2.0, 2.5])
    def test_exponent_of_a_power_law(self, power):
        xs = [10, 20, 40, 80]
        assert fitted_exponent(xs, [n**power for n in xs]) == pytest.approx(power)

    def test_quadratic_growth_is_sub_cubic(self):
        table, sub_cubic = growth_table(synthetic_rows(2.0))
        assert sub_cubic
        assert table.row_count == len(OPERATIONS)

    def test_quartic_growth_is_flagged(self):
        _, sub_cubic = growth_table(synthetic_rows(4.0))
        assert not sub_cubic

    def test_task_times_every_operation(self):
        output = task({"size": 10})
        assert output["holds"]
        assert output["product_size"] == 10
        assert all(output[op] >= 0 for op in OPERATIONS)
