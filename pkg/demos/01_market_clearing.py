"""
Market clearing in a tiny exchange economy
==========================================

Two goods (good 0 is money), two consumers.  Each consumer i owns the
endowment column b_i and wants a bundle proportional to the demand column
C_i.  At prices p, consumer i can afford y_i = <b_i, p> / <C_i, p> copies
of the bundle.  Markets clear when aggregate demand matches total supply.
"""

import numpy as np

from demandgap import check_equilibrium, demand_scales, excess_demand, verify_certificate
from demandgap.fixtures import economy_e1

econ, p = economy_e1()
print("demand matrix C (columns = consumers):\n", econ.C)
print("property matrix B:\n", econ.B)
print("total supply psi =", econ.total_supply())

# At p = (1, 1) both consumers can afford exactly one copy of their bundle.
print("\nprices p =", p)
print("demand scales y =", demand_scales(econ, p))
print("excess demand  =", excess_demand(econ, p))

report = check_equilibrium(econ, p)
print("is equilibrium:", report.is_equilibrium)
print("goods clearing with equality:", report.equality_set)

# The scales-and-satisfied-supply pair certifies the equilibrium: demand
# cone membership, bounded satisfied supply, zero-value transfers.
y = demand_scales(econ, p)
cert = verify_certificate(econ, p, y, psi_bar=econ.C @ y)
print("\ncertificate ok:", cert.ok, "| clause gaps:", cert.diagnostics)

# Mispriced goods break clearing: at p = (1, 10) the second good is so
# valuable that everyone's money-good demand explodes past supply.
bad = np.array([1.0, 10.0])
report = check_equilibrium(econ, bad)
print("\nat p =", bad)
print("residual (demand - supply):", report.residual)
print("violated goods:", report.violated_set, "| deficit goods:", report.strict_set)
print("deficit goods all carry zero price?", report.zero_price_on_deficit)

# The fundamental budget identity holds at any prices: the value of excess
# demand is zero, because every consumer spends exactly their endowment.
rng = np.random.default_rng(0)
for _ in range(3):
    q = rng.uniform(0.1, 2.0, 2)
    z = excess_demand(econ, q)
    print(f"value of excess demand at q={np.round(q, 3)}: {z @ (q / q[0]):+.2e}")
