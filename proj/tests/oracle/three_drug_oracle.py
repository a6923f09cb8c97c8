#!/usr/bin/env python3
"""Reference values for the three-drug example, computed without the C++ library.

Every covariate is written out from its definition, the coefficients come from the
normal equations (X'X) b = X'y, and model averaging is evaluated term by term.
Run from the repository root; writes tests/data/three_drug_oracle.json.
"""
import itertools
import json
import math

import numpy as np

RUNS = [("A", "B", "C"), ("A", "C", "B"), ("B", "A", "C"),
        ("B", "C", "A"), ("C", "A", "B"), ("C", "B", "A")]
Y = np.array([26.7, 35.3, 32.4, 48.7, 35.9, 37.6])
LABELS = ["A", "B", "C"]
M = 3


def positions(run):
    return {LABELS.index(c) + 1: i + 1 for i, c in enumerate(run)}


def row(model, run):
    q = positions(run)
    p = {c: 2.0 * q[c] / (M * (M + 1)) for c in q}
    pairs = [(c, d) for c in range(1, M + 1) for d in range(c + 1, M + 1)]
    if model == "pwo":
        return [1.0] + [1.0 if q[c] < q[d] else -1.0 for c, d in pairs]
    if model == "tpwo:invh":
        return [1.0] + [(1.0 if q[c] < q[d] else -1.0) / abs(q[c] - q[d]) for c, d in pairs]
    if model == "cp":
        return [1.0] + [1.0 if q[c] == j else 0.0 for c in range(1, M) for j in range(1, M)]
    if model == "rs2":
        return ([p[c] for c in range(1, M)] + [p[c] ** 2 for c in range(1, M)] +
                [p[c] * p[d] for c in range(1, M - 1) for d in range(c + 1, M)])
    if model == "nn":
        return [1.0 if q[d] == q[c] + 1 else 0.0
                for c in range(1, M + 1) for d in range(1, M + 1) if c != d]
    raise ValueError(model)


def labels(model):
    pairs = [(c, d) for c in range(1, M + 1) for d in range(c + 1, M + 1)]
    if model == "pwo":
        return ["b0"] + [f"x_{c}_{d}" for c, d in pairs]
    if model == "tpwo:invh":
        return ["b0"] + [f"t_{c}_{d}" for c, d in pairs]
    if model == "cp":
        return ["b0"] + [f"tau_{c}_{j}" for c in range(1, M) for j in range(1, M)]
    if model == "rs2":
        return ([f"p_{c}" for c in range(1, M)] + [f"p_{c}^2" for c in range(1, M)] +
                [f"p_{c}*p_{d}" for c in range(1, M - 1) for d in range(c + 1, M)])
    if model == "nn":
        return [f"w_{c}_{d}" for c in range(1, M + 1) for d in range(1, M + 1) if c != d]


def ranks(est):
    order = sorted(range(len(est)), key=lambda i: (-est[i], i))
    r = [0] * len(est)
    for k, i in enumerate(order):
        r[i] = k + 1
    return r


ORDERS = list(itertools.permutations(LABELS))
MODELS = ["pwo", "tpwo:invh", "cp", "rs2", "nn"]
out = {"orders": [" ".join(o) for o in ORDERS], "models": []}
fits = {}
for model in MODELS:
    X = np.array([row(model, r) for r in RUNS])
    n, p = X.shape
    G = X.T @ X
    beta = np.linalg.solve(G, X.T @ Y)
    resid = Y - X @ beta
    rss = float(resid @ resid)
    df = n - p
    Xf = np.array([row(model, o) for o in ORDERS])
    est = Xf @ beta
    entry = {"model": model, "terms": labels(model), "coefficients": beta.tolist(),
             "df_error": df, "estimates": est.tolist(), "ranks": ranks(est.tolist())}
    if df > 0:
        s2 = rss / df
        loglik = -(n / 2.0) * (math.log(2 * math.pi * rss / n) + 1)
        entry.update(rss=rss, sigma2=s2, rmse=math.sqrt(s2),
                     aic=-2 * loglik + 2 * (p + 1), bic=-2 * loglik + math.log(n) * (p + 1))
        Ginv = np.linalg.inv(G)
        entry["variances"] = [float(x @ Ginv @ x * s2) for x in Xf]
    else:
        entry.update(rss=rss, sigma2=None, aic=None, bic=None, variances=None)
    fits[model] = entry
    out["models"].append(entry)

usable = [m for m in MODELS if fits[m]["aic"] is not None]
aics = np.array([fits[m]["aic"] for m in usable])
raw = np.exp(-(aics - aics.min()) / 2)
weights = raw / raw.sum()
out["weights"] = {m: (float(w) if m in usable else 0.0)
                  for m, w in zip(usable, weights)} | {m: 0.0 for m in MODELS if m not in usable}
ma, var = [], []
for i in range(len(ORDERS)):
    e = sum(w * fits[m]["estimates"][i] for m, w in zip(usable, weights))
    s = sum(w * math.sqrt(fits[m]["variances"][i] + (fits[m]["estimates"][i] - e) ** 2)
            for m, w in zip(usable, weights))
    ma.append(e)
    var.append(s * s)
out["ma_estimates"] = ma
out["ma_se"] = [math.sqrt(v) for v in var]
out["ma_ranks"] = ranks(ma)
out["ma_mean_variance"] = sum(var) / len(var)

with open("tests/data/three_drug_oracle.json", "w") as fh:
    json.dump(out, fh, indent=1)
print(json.dumps({"weights": out["weights"], "ma": ma, "se": out["ma_se"]}, indent=1))
