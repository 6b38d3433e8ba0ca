"""Generate data/sigma2_role_returns.csv, a synthetic one-year daily returns
table for 30 large-cap-like stocks.

Returns follow a market factor plus five sector factors plus idiosyncratic
noise, with Student-t(4) shocks, which gives pairwise correlations in the
0.1-0.7 range typical of a blue-chip index. The table stands in for a real
index constituent history; run `mgraph estimate` on it to obtain
data/sigma2_role.csv.
"""

import csv
import datetime as dt

import numpy as np

N_STOCKS = 30
N_DAYS = 252
N_SECTORS = 5
SEED = 2013


def main(path="data/sigma2_role_returns.csv"):
    rng = np.random.default_rng(SEED)
    beta = rng.uniform(0.6, 1.3, N_STOCKS)
    sector = np.arange(N_STOCKS) % N_SECTORS
    sector_load = rng.uniform(0.3, 0.8, N_STOCKS)
    idio_vol = rng.uniform(0.7, 1.4, N_STOCKS)

    def shocks(shape):
        return rng.standard_t(4, size=shape) / np.sqrt(2.0)

    market = 0.008 * shocks(N_DAYS)
    sectors = 0.006 * shocks((N_SECTORS, N_DAYS))
    idio = 0.009 * idio_vol[:, None] * shocks((N_STOCKS, N_DAYS))
    returns = 0.0004 + beta[:, None] * market + sector_load[:, None] * sectors[sector] + idio

    day = dt.date(2013, 1, 2)
    dates = []
    while len(dates) < N_DAYS:
        if day.weekday() < 5:
            dates.append(day.isoformat())
        day += dt.timedelta(days=1)

    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["date"] + [f"S{i + 1:02d}" for i in range(N_STOCKS)])
        for t in range(N_DAYS):
            w.writerow([dates[t]] + [f"{returns[i, t]:.6f}" for i in range(N_STOCKS)])


if __name__ == "__main__":
    main()
