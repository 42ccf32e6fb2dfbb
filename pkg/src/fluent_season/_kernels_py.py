"""Pure-numpy fallback for the compiled season kernel (same arithmetic, same bits)."""
from __future__ import annotations

import numpy as np

from .rng import SALT_OUTCOME, SALT_TIE, derive_array, stream_array, to_unit_array

CHUNK = 4096


def season_counts(c1, c2, home, away, fixture_ids, base_points, base_key, start, stop):
    c1 = np.asarray(c1, dtype=np.float64)
    c2 = np.asarray(c2, dtype=np.float64)
    home = np.asarray(home, dtype=np.int64)
    away = np.asarray(away, dtype=np.int64)
    fixture_ids = np.asarray(fixture_ids, dtype=np.uint64)
    base_points = np.asarray(base_points, dtype=np.int64)
    n_teams = base_points.shape[0]
    n_fix = c1.shape[0]
    rank_counts = np.zeros((n_teams, n_teams), dtype=np.int64)
    outcome_counts = np.zeros((n_fix, 3), dtype=np.int64)
    team_idx = np.arange(n_teams, dtype=np.uint64)
    rank_cols = np.arange(n_teams)

    for lo in range(start, stop, CHUNK):
        hi = min(stop, lo + CHUNK)
        reps = np.arange(lo, hi, dtype=np.uint64)
        keys = derive_array(np.full(reps.shape, base_key, dtype=np.uint64), reps)
        okey = stream_array(keys, SALT_OUTCOME)
        tkey = stream_array(keys, SALT_TIE)

        u = to_unit_array(derive_array(okey[:, None], fixture_ids[None, :]))
        hw = u < c1
        dr = ~hw & (u < c2)
        aw = ~hw & ~dr
        outcome_counts[:, 0] += hw.sum(axis=0)
        outcome_counts[:, 1] += dr.sum(axis=0)
        outcome_counts[:, 2] += aw.sum(axis=0)

        gained_home = np.where(hw, 3, np.where(dr, 1, 0))
        gained_away = np.where(aw, 3, np.where(dr, 1, 0))
        pts = np.broadcast_to(base_points, (hi - lo, n_teams)).copy()
        for f in range(n_fix):
            pts[:, home[f]] += gained_home[:, f]
            pts[:, away[f]] += gained_away[:, f]

        tk = derive_array(tkey[:, None], team_idx[None, :])
        idx = np.broadcast_to(np.arange(n_teams), pts.shape)
        order = np.lexsort((idx, tk, -pts), axis=-1)
        np.add.at(rank_counts, (order, np.broadcast_to(rank_cols, order.shape)), 1)
    return rank_counts, outcome_counts
