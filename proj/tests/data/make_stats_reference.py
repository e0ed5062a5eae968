"""Regenerates stats_reference.json: 20 fixtures evaluated at 50 digits with
mpmath, cross-checked against scipy. Inputs are rounded to 6 decimals so the
JSON round-trip is exact."""
import json
import random

import mpmath as mp
import numpy as np
from scipy import stats

mp.mp.dps = 50


def ranks(v):
    order = sorted(range(len(v)), key=lambda i: v[i])
    r = [0] * len(v)
    i = 0
    while i < len(v):
        j = i
        while j < len(v) and v[order[j]] == v[order[i]]:
            j += 1
        for t in range(i, j):
            r[order[t]] = mp.mpf(i + 1 + j) / 2
        i = j
    return r


def pearson(x, y):
    x = [mp.mpf(str(a)) for a in x]
    y = [mp.mpf(str(b)) for b in y]
    mx, my = sum(x) / len(x), sum(y) / len(y)
    sxy = sum((a - mx) * (b - my) for a, b in zip(x, y))
    sxx = sum((a - mx) ** 2 for a in x)
    syy = sum((b - my) ** 2 for b in y)
    return sxy / mp.sqrt(sxx * syy)


def ols(x, y):
    x = [mp.mpf(str(a)) for a in x]
    y = [mp.mpf(str(b)) for b in y]
    mx, my = sum(x) / len(x), sum(y) / len(y)
    sxy = sum((a - mx) * (b - my) for a, b in zip(x, y))
    sxx = sum((a - mx) ** 2 for a in x)
    syy = sum((b - my) ** 2 for b in y)
    slope = sxy / sxx
    return my - slope * mx, slope, sxy * sxy / (sxx * syy)


def welch(a, b):
    a = [mp.mpf(str(v)) for v in a]
    b = [mp.mpf(str(v)) for v in b]
    na, nb = len(a), len(b)
    ma, mb = sum(a) / na, sum(b) / nb
    va = sum((v - ma) ** 2 for v in a) / (na - 1)
    vb = sum((v - mb) ** 2 for v in b) / (nb - 1)
    qa, qb = va / na, vb / nb
    t = (ma - mb) / mp.sqrt(qa + qb)
    df = (qa + qb) ** 2 / (qa ** 2 / (na - 1) + qb ** 2 / (nb - 1))
    # two-sided p = I_{df/(df+t^2)}(df/2, 1/2)
    p = mp.betainc(df / 2, mp.mpf(1) / 2, 0, df / (df + t * t), regularized=True)
    return t, df, p


def kruskal(groups):
    pooled = [v for g in groups for v in g]
    r = ranks(pooled)
    n = mp.mpf(len(pooled))
    s, off = mp.mpf(0), 0
    for g in groups:
        rs = sum(r[off:off + len(g)])
        s += rs * rs / len(g)
        off += len(g)
    counts = {}
    for v in pooled:
        counts[v] = counts.get(v, 0) + 1
    ties = sum(mp.mpf(t) ** 3 - t for t in counts.values())
    h = (12 / (n * (n + 1)) * s - 3 * (n + 1)) / (1 - ties / (n ** 3 - n))
    df = len(groups) - 1
    p = mp.gammainc(mp.mpf(df) / 2, h / 2, mp.inf, regularized=True)
    return h, df, p


def rnd(rng, n, mu=0.0, sd=1.0, integer=False):
    if integer:
        return [float(rng.randint(0, 6)) for _ in range(n)]
    return [round(rng.gauss(mu, sd), 6) for _ in range(n)]


rng = random.Random(20240611)
fixtures = []
for k in range(4):
    n = [8, 15, 30, 60][k]
    x = rnd(rng, n, integer=(k == 2))
    y = [round(0.7 * a + rng.gauss(0, 1), 6) for a in x]
    r = pearson(x, y)
    assert abs(float(r) - stats.pearsonr(x, y)[0]) < 1e-12
    fixtures.append({"kind": "pearson", "x": x, "y": y, "expected": {"r": float(r)}})
for k in range(4):
    n = [6, 12, 25, 50][k]
    x = rnd(rng, n, integer=(k % 2 == 0))
    y = [round(a * a + rng.gauss(0, 0.5), 6) if k % 2 else float(int(a) % 3) for a in x]
    rho = pearson(ranks(x), ranks(y))
    assert abs(float(rho) - stats.spearmanr(x, y)[0]) < 1e-12
    fixtures.append({"kind": "spearman", "x": x, "y": y, "expected": {"rho": float(rho)}})
for k in range(4):
    n = [5, 10, 40, 100][k]
    x = rnd(rng, n, 3.0, 2.0)
    y = [round(1.5 - 0.4 * a + rng.gauss(0, 0.8), 6) for a in x]
    a, b, r2 = ols(x, y)
    ref = stats.linregress(x, y)
    assert abs(float(b) - ref.slope) < 1e-10 and abs(float(r2) - ref.rvalue ** 2) < 1e-10
    fixtures.append({"kind": "ols", "x": x, "y": y,
                     "expected": {"intercept": float(a), "slope": float(b), "r_squared": float(r2)}})
for k in range(4):
    na, nb = [(5, 7), (12, 9), (30, 45), (100, 80)][k]
    a = rnd(rng, na, 0.0, 1.0)
    b = rnd(rng, nb, [0.3, 1.0, 0.2, 0.05][k], [1.0, 2.5, 0.7, 1.3][k])
    t, df, p = welch(a, b)
    ref = stats.ttest_ind(a, b, equal_var=False)
    assert abs(float(t) - ref.statistic) < 1e-10 and abs(float(p) - ref.pvalue) < 1e-9
    fixtures.append({"kind": "welch", "a": a, "b": b,
                     "expected": {"t": float(t), "df": float(df), "p_value": float(p)}})
for k in range(4):
    sizes = [(4, 5), (6, 6, 6), (10, 3, 8, 12), (20, 25)][k]
    integer = k in (1, 3)
    groups = [rnd(rng, s, 0.4 * g, 1.0, integer) for g, s in enumerate(sizes)]
    h, df, p = kruskal(groups)
    ref = stats.kruskal(*groups)
    assert abs(float(h) - ref.statistic) < 1e-10 and abs(float(p) - ref.pvalue) < 1e-10
    fixtures.append({"kind": "kruskal", "groups": groups,
                     "expected": {"h": float(h), "df": df, "p_value": float(p)}})

assert len(fixtures) == 20
with open("stats_reference.json", "w") as f:
    json.dump({"fixtures": fixtures}, f, indent=1)
print("wrote", len(fixtures), "fixtures")
