"""Python access to the switchlab core: games under a switch budget, the
fugal recursion solver and the small-game minimax oracle."""

import json as _json

from ._core import (  # noqa: F401
    ArgumentError,
    BudgetViolation,
    CapacityError,
    DependencyError,
    DomainError,
    NumericError,
    UnsupportedConfig,
    count_switches,
    crossing_point,
    dual_norm,
    exact_minimax_1d,
    extraspherical_value,
    fugal_apply,
    fugal_quadratic_closed_form,
    one_block_regret,
    quadratic_bound,
    switch_targets,
    tk_inequality_check,
    u4_exact,
    unconstrained_R_closed_form,
)
from . import _core


def play(player, adversary, T, K, n=1, norm="l2", seed=0, player_params=None, adversary_params=None):
    """Play one game; returns regret, switch_count, cumulative_loss and actions."""
    return _core.play(
        player,
        adversary,
        T,
        K,
        n,
        norm,
        seed,
        _json.dumps(player_params) if player_params else "",
        _json.dumps(adversary_params) if adversary_params else "",
    )


def simulate_csv(spec):
    """Run a simulate-mode experiment spec (dict) and return the CSV text."""
    return _core.simulate_csv(_json.dumps(spec))


def fugal_solve(K, N=2000):
    """Return (grids, policy) where grids[k-1] samples u_k on z_j = (2j - N)/N."""
    grids, policy = _core.fugal_solve(K, N)
    return grids, _json.loads(policy)
