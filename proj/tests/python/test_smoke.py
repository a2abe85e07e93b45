import math

import pytest

import switchlab as sl


def test_closed_forms():
    assert sl.quadratic_bound(2, 0.0) == pytest.approx(0.5)
    assert sl.fugal_quadratic_closed_form(2, 0.0) == pytest.approx(math.sqrt(2) - 1)
    plus, minus = sl.switch_targets(2, 0.0)
    assert plus == pytest.approx(math.sqrt(2) - 1)
    assert minus == pytest.approx(1 - math.sqrt(2))
    assert sl.one_block_regret(10.0, 3.0) == 10.0
    u4, z0 = sl.u4_exact()
    assert u4 == pytest.approx(0.362975009226, abs=1e-11)
    assert 0 < z0 < 1
    with pytest.raises(sl.DomainError):
        sl.quadratic_bound(2, 2.0)
    with pytest.raises(ValueError):
        sl.extraspherical_value(1.0, 1.0)


def test_game_helpers():
    assert sl.count_switches([[0.1], [-0.2], [-0.2], [0.3]]) == 2
    assert sl.dual_norm([3.0, 4.0]) == pytest.approx(5.0)
    assert sl.dual_norm([1.0, -2.0], "linf") == pytest.approx(3.0)


def test_play():
    r = sl.play("halfsplit", "constant", 4, 2, adversary_params={"w": 1.0})
    assert r["regret"] == pytest.approx(2.0)
    assert r["switch_count"] == 1
    assert [a[0] for a in r["actions"]] == [0.0, 0.0, -1.0, -1.0]
    r = sl.play("random_switch", "orthogonal", 200, 4, n=3, seed=5)
    assert r["regret"] >= 200 / 2 - 1e-6
    with pytest.raises(sl.UnsupportedConfig):
        sl.play("halfsplit", "zero", 4, 3)


def test_simulate_csv():
    text = sl.simulate_csv({"sweep": {"T": 50, "K": 5}, "player": "minibatch", "adversary": "stopping"})
    lines = text.strip().splitlines()
    assert lines[0].startswith("T,K,n,player_id")
    assert len(lines) == 2


def test_fugal():
    n = 200
    ones = [1.0] * (n + 1)
    u2 = sl.fugal_apply(ones)
    assert u2[n // 2] == pytest.approx(0.5, abs=1e-9)
    grids, policy = sl.fugal_solve(3, 400)
    assert len(grids) == 3
    assert grids[2][200] == pytest.approx(math.sqrt(2) - 1, abs=1e-4)
    assert policy["K"] == 3
    assert len(policy["nodes"]) == 7
    assert policy["nodes"][""]["M_plus"] == pytest.approx(1 - math.sqrt(2) / 2, abs=1e-4)


def test_oracle():
    assert sl.exact_minimax_1d(4, 2)["value"] == pytest.approx(2.0)
    assert sl.exact_minimax_1d(2, 2)["value"] == pytest.approx(1.0)
    assert sl.unconstrained_R_closed_form(4) == 1.5
    assert sl.tk_inequality_check(10, 3)
    with pytest.raises(sl.ArgumentError):
        sl.exact_minimax_1d(13, 2)
