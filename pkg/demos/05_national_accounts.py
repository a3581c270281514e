"""
Reading recession pressure off a national input-output table
============================================================

A national table in value form records intermediate flows, gross outputs,
final consumption, exports and imports.  Treating industries, their
households, and foreign trade as agents of one big exchange economy gives
a per-industry demand vector D; supply is gross output plus imports.
Industries with D_k < S_k are recession-creating, and the ratio

    r = (total shortfall) / (gross value added)

summarises how far the economy sits from clearing.  The same accounts also
feed a constructive equilibrium solve that certifies prices when the
scaled production matrix has spectral radius one.
"""

import numpy as np

from demandgap import (
    IOAccounts,
    analyze_accounts,
    build_exchange_from_iot,
    check_value_equilibrium,
    excess_demand,
    solve_national_equilibrium,
)
from demandgap.fixtures import toy_accounts
from demandgap.reporting import histogram_csv

# --- the toy two-industry table --------------------------------------------
acc = toy_accounts()
print("intermediate flows X:\n", acc.X)
print("gross output:", acc.Xout, "| final consumption:", acc.Cf)
print("exports:", acc.E, "| imports:", acc.Imp, "| tax shares:", acc.pi)

report = analyze_accounts(acc, names=("Alpha", "Beta"))
print("\ndemand D =", report.D)
print("supply S =", report.S)
print("deficit  =", report.deficit, " (total demand equals total supply)")
print("recession industries:", report.recession_set)
print(f"recession ratio r = {report.r:.5f} on value added {report.gdp:.0f}")
for row in report.rankings["contributing"]:
    print(f"  worst contributor: {row.name}, shortfall {row.demand_reduction}")

# plot-ready two-sided histogram (supply right, shortfall left)
print("\nhistogram data:\n" + histogram_csv(report))

# --- the same verdict through the agent model -------------------------------
econ = build_exchange_from_iot(acc, p=np.ones(2), x=acc.Xout)
z = excess_demand(econ, np.ones(2))
print("agent-model excess demand, in value units:", z * 1.0)
print("matches D - S:", np.allclose(z, report.deficit))

balance = check_value_equilibrium(acc)
print("value-form clearing verdict:", balance.is_equilibrium,
      "| violations:", balance.violated)

# --- a table engineered to certify an equilibrium ---------------------------
rng = np.random.default_rng(5)
m = 3
A = rng.uniform(0.05, 1.0, (m, m))
A = A / A.sum(axis=1, keepdims=True) * 0.4
pi = rng.uniform(0.4, 1.0, m)
scaled = A * (1.0 + pi)[None, :] / pi[:, None]
A = A / np.abs(np.linalg.eigvals(scaled)).max()       # puts the radius at one
x = np.linalg.solve(np.eye(m) - A, rng.uniform(5.0, 10.0, m))
e = (x - A @ x) * 0.2
balanced = IOAccounts.from_physical(A, x, np.ones(m), cf=x - A @ x, e=e, imp=e, pi=pi)

solution = solve_national_equilibrium(balanced, strict=False)
print(f"\nengineered table: spectral radius {solution.rho:.9f}")
print("certified:", solution.certified)
print("prices:", np.round(solution.p, 6))
print("industry scales:", np.round(solution.y[:m], 6),
      "| household/trade scales:", np.round(solution.y[m:], 6))

# The toy table is NOT at such an equilibrium; the solve reports instead of
# certifying (the CLI maps this to exit code 4).
solution = solve_national_equilibrium(acc, strict=False)
print(f"\ntoy table: spectral radius {solution.rho:.4f} -> certified: {solution.certified}")
