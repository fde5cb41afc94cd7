"""Reference values for data/synthetic_cointegrated.csv.

Computed with numpy and statsmodels, independently of the C++ code:
ADF (fixed lags), Johansen (unrestricted constant, k=2) and the VECM
equations by OLS on the normalised first eigenvector.

    python3 tests/oracle/fixture_oracle.py > tests/data/fixture_oracle.json
"""

import csv
import json
import pathlib
import sys

import numpy as np
from statsmodels.tsa.stattools import adfuller
from statsmodels.tsa.vector_ar.vecm import VECM, coint_johansen

ROOT = pathlib.Path(__file__).resolve().parents[2]
NAMES = ["gdp", "lac", "fdi", "hc"]


def load():
    with open(ROOT / "data" / "synthetic_cointegrated.csv") as f:
        rows = list(csv.DictReader(f))
    years = [int(r["year"]) for r in rows]
    y = np.log(np.array([[float(r[n]) for n in NAMES] for r in rows]))
    return years, y


def adf(x, regression):
    # lag order 0 as chosen by BIC with max lag 1
    res = adfuller(x, maxlag=0, regression=regression, autolag=None)
    return {"t": float(res[0]), "n_obs": int(res[3])}


def ols(yv, x):
    coef, *_ = np.linalg.lstsq(x, yv, rcond=None)
    resid = yv - x @ coef
    n, p = x.shape
    s2 = resid @ resid / (n - p)
    se = np.sqrt(s2 * np.diag(np.linalg.inv(x.T @ x)))
    tss = ((yv - yv.mean()) ** 2).sum()
    return coef, se, 1.0 - resid @ resid / tss


def main():
    years, y = load()
    out = {"source": "data/synthetic_cointegrated.csv", "variables": ["l_" + n for n in NAMES]}

    out["adf_level_ct"] = [adf(y[:, i], "ct") for i in range(4)]
    out["adf_diff_c"] = [adf(np.diff(y[:, i]), "c") for i in range(4)]

    jo = coint_johansen(y, det_order=0, k_ar_diff=1)
    out["johansen"] = {
        "eigenvalues": [float(v) for v in jo.eig],
        "trace": [float(v) for v in jo.lr1],
        "max_eigen": [float(v) for v in jo.lr2],
    }

    beta = jo.evec[:, 0] / jo.evec[0, 0]
    dy = np.diff(y, axis=0)
    target = dy[1:]
    ect = y[1:-1] @ beta
    x = np.column_stack([ect, dy[:-1], np.ones(len(target))])
    eqs = []
    for j in range(4):
        coef, se, r2 = ols(target[:, j], x)
        eqs.append({"coef": coef.tolist(), "se": se.tolist(), "r2": float(r2)})
    out["vecm"] = {
        "beta": beta.tolist(),
        "labels": ["CointEq1", "D(l_gdp(-1))", "D(l_lac(-1))", "D(l_fdi(-1))", "D(l_hc(-1))", "C"],
        "equations": eqs,
    }

    # second opinion on the normalised relation and loadings
    sm = VECM(y, k_ar_diff=1, coint_rank=1, deterministic="co").fit()
    out["statsmodels_vecm"] = {
        "beta": (sm.beta[:, 0] / sm.beta[0, 0]).tolist(),
        "alpha": (sm.alpha[:, 0] * sm.beta[0, 0]).tolist(),
    }

    json.dump(out, sys.stdout, indent=2)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
