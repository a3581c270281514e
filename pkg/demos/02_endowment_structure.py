"""
Which endowments make a given price an equilibrium?
===================================================

Fix the demand structure C and a price vector p with support I.  Every
clearing endowment matrix decomposes into three parts:

  * a rank-one term: each consumer holds a slice of total supply
    proportional to the value of their demand bundle;
  * zero-value transfers along the "clearing basis" directions on I
    (trading goods against each other at their relative prices);
  * transfers supported off I, where goods are free.

Synthesizing from random parts builds economies that clear by
construction; decomposing recovers the parts; the two are inverse.
"""

import numpy as np

from demandgap import (
    ExchangeEconomy,
    RepresentationParts,
    check_equilibrium,
    clearing_basis,
    decompose_property,
    is_equivalent,
    synthesize_property,
)
from demandgap.fixtures import random_equilibrium

rng = np.random.default_rng(42)

# --- the clearing basis -------------------------------------------------
# Each basis vector swaps one good against the basket, at zero value.
p = np.array([2.0, 1.0, 0.0])
basis = clearing_basis(p, I=(0, 1))
print("clearing basis columns:\n", basis.G)
print("value of each column at p:", basis.G.T @ p)
print("columns sum to:", basis.G.sum(axis=1), "| rank:", basis.rank)

# --- synthesis ----------------------------------------------------------
n, l = 4, 3
C = rng.uniform(0.2, 1.2, (n, l))
price = np.array([1.0, 0.5, 0.8, 0.0])          # good 3 is free
parts = RepresentationParts(
    y=np.array([1.2, 0.7, 1.0]),                 # demand scales to realise
    a=1.0 / l + 0.05 * np.array([[1, -1, 0], [0, 1, -1], [-1, 0, 1]]),
    d0=np.zeros((n, l)),
    I=(0, 1, 2),
)
B = synthesize_property(C, price, parts)
print("\nsynthesized B:\n", np.round(B, 4))
report = check_equilibrium(ExchangeEconomy(C, B), price)
print("clears at the chosen price:", report.is_equilibrium,
      "| max residual:", np.abs(report.residual).max())

# --- decomposition inverts synthesis ------------------------------------
recovered, roundtrip = decompose_property(ExchangeEconomy(C, B), price, I=parts.I)
print("\nrecovered scales:", np.round(recovered.y, 10))
print("round-trip residual:", roundtrip)

# --- equivalent redistributions -----------------------------------------
# Shifting endowments along the clearing basis changes who holds what but
# not what anything is worth, so the equilibrium survives untouched.
econ, p_eq, parts_eq = random_equilibrium(rng, n=5, l=4, support=3)
basis = clearing_basis(p_eq, parts_eq.I)
shift = rng.normal(0.0, 1.0, (3, 4))
shift -= shift.mean(axis=1, keepdims=True)      # transfers must net out
D = basis.G @ shift
mask = D < 0
D *= 0.4 * float((econ.B[mask] / np.abs(D[mask])).min())
B_shifted = econ.B + D

print("\nredistribution is value-neutral:", is_equivalent(econ.B, B_shifted, p_eq))
report = check_equilibrium(ExchangeEconomy(econ.C, B_shifted), p_eq)
print("equilibrium survives redistribution:", report.is_equilibrium)
