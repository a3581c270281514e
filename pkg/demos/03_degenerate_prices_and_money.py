"""
Degenerate equilibria and the erosion of money
==============================================

When some goods carry no price, a value-neutral redistribution can hand
every consumer exactly the amount of free goods they would demand.  After
that, the free goods' prices become arbitrary: a whole family of price
vectors clears the same economy.  The real value of money (non-money
supply value per unit of money supply) then ranges over a set instead of
being a number, which is how a loss of the value function of money shows
up in this model.
"""

import numpy as np

from demandgap import (
    ExchangeEconomy,
    check_equilibrium,
    degeneracy_multiplicity,
    degenerate_transform,
    real_money_value,
)
from demandgap.fixtures import economy_e2, random_equilibrium

# --- the two-good family -------------------------------------------------
econ, p = economy_e2(b21=0.3)
print("endowments B:\n", econ.B)
print("at p =", p, "->", check_equilibrium(econ, p).is_equilibrium)

transform = degenerate_transform(econ, p, I=(0,))
print("\nafter the value-neutral transfer:\n", transform.B_bar)
print("transfer columns:\n", transform.transfer)
print("guaranteed family dimension >=", transform.multiplicity_lower_bound)
print("measured multiplicity:",
      degeneracy_multiplicity(transform.B_bar, econ.C, transform.y))

# Any price for good 1 now clears the market; money value grows without
# bound along the family.
degenerate = ExchangeEconomy(econ.C, transform.B_bar)
psi = degenerate.total_supply()
print("\n q1    equilibrium   real money value")
for q1 in (0.0, 0.5, 1.0, 5.0, 50.0):
    q = np.array([1.0, q1])
    ok = check_equilibrium(degenerate, q).is_equilibrium
    print(f" {q1:5.1f}   {str(ok):<11}   {real_money_value(q, psi):.2f}")

# --- a bigger random economy ----------------------------------------------
econ, p, parts = random_equilibrium(7, n=5, l=4, support=2)
transform = degenerate_transform(econ, p, I=parts.I)
degenerate = ExchangeEconomy(econ.C, transform.B_bar)
psi = degenerate.total_supply()
free = [k for k in range(5) if k not in parts.I]
print("\n5 goods, price support", parts.I, "-> free goods", free)

rng = np.random.default_rng(0)
values = []
for _ in range(200):
    q = np.asarray(p, dtype=float).copy()
    q[free] = rng.uniform(0.0, 2.0, len(free))
    assert check_equilibrium(degenerate, q).is_equilibrium
    if q[0] > 0:
        values.append(real_money_value(q, psi))
print("money value across 200 equilibria of the same economy:"
      f" min {min(values):.3f}, max {max(values):.3f}")
print("one property distribution, a continuum of price systems.")
