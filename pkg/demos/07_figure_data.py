"""
Trade-off curves as CSV
=======================

Generates the ratio-sweep data behind the advantage figures: exact
classical optima against the isoclinic closed forms over an epsilon grid,
including the alternative rank-ratio mechanism at n = 10.
"""

from qldp.exponents import ratio_sweep

eps_grid = [round(0.05 * k, 2) for k in range(1, 41)]

# Curves for n = 3, 6, 10 (the u = 1/2 mechanism against the classical optimum).
print(" n    eps    sym ratio   asym ratio")
for n in (3, 6, 10):
    for record in ratio_sweep(n, eps_grid):
        if record.epsilon in (0.05, 1.0, 2.0):
            print(f"{n:2d}  {record.epsilon:5.2f}   {record.s_ratio:8.4f}    {record.a_ratio:8.4f}")

# At n = 10 the rank-ratio u = 0.4 variant overtakes u = 1/2 once eps >= 1.5.
print("\nn = 10 with the u = 0.4 variant:")
print("  eps    sym u=1/2   sym u=0.4    asym u=1/2  asym u=0.4")
for record in ratio_sweep(10, eps_grid, alt_u=0.4):
    if record.epsilon in (0.5, 1.0, 1.5, 2.0):
        print(
            f"  {record.epsilon:4.2f}   {record.s_qstar:9.6f}   {record.s_qalt:9.6f}    "
            f"{record.a_qstar:9.6f}  {record.a_qalt:9.6f}"
        )

print("\nfor the CSV files used by the figures run:")
print("  qldp reproduce fig1 --out fig1.csv")
print("  qldp reproduce fig2 --out fig2.csv")
