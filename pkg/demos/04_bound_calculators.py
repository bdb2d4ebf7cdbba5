"""Every closed-form constant in one place, and how they shrink with scale.

The concentration statements are driven by a handful of square-root
epsilons plus Chernoff and Azuma (bounded-difference) tail bounds. All of
them are asymptotic: at desk scale several lower-band epsilons exceed 1 and
the package flags them as vacuous instead of hiding it.

Run:  python3 demos/04_bound_calculators.py
"""

from sinrcap import (
    BoundParams,
    annulus_gap_constant,
    azuma_bound,
    chernoff_tail,
    cut_tail_bound,
    interference_epsilons,
)

print("interference epsilons shrink like sqrt(ln n / n): ")
e_l = 0.0146  # a typical empirical E[L] for the canonical attenuation law
for n in (2_000, 20_000, 200_000, 2_000_000):
    pair = interference_epsilons(n, e_l)
    flag = "  <- vacuous lower band" if pair.lower_vacuous else ""
    print(f"  n={n:>9,}  eps_lower={pair.lower:.4f}  eps_upper={pair.upper:.4f}{flag}")

print()
print("tail bounds:")
print(f"  chernoff_tail(mean=100, eps=0.3, lower) = {chernoff_tail(100, 0.3, 'lower'):.6g}")
print(f"  chernoff_tail(mean=100, eps=0.3, upper) = {chernoff_tail(100, 0.3, 'upper'):.6g}")
print(f"  azuma_bound(lam=3, c=[1,2,2])           = {azuma_bound(3, [1, 2, 2]):.6g}")
print(f"  cut_tail_bound(chernoff-lower, m=100, k=50, cbar=0.5, eps=0.1) = "
      f"{cut_tail_bound('chernoff-lower', 100, 50, 0.5, 0.1):.6g}")
print(f"  cut_tail_bound(azuma-lower,   m=100, k=50, cbar=0.5, eps=0.1, eta=1) = "
      f"{cut_tail_bound('azuma-lower', 100, 50, 0.5, 0.1, eta=1.0):.6g}")

print()
print("full table from one parameter bag (vacuous flags included):")
params = BoundParams(n=2000, m=500, mean_attenuation=e_l, mean_power=0.01, cbar=0.003)
for name, value, vacuous in params.table():
    print(f"  {name:<34} {value:<12.6g} {'vacuous' if vacuous else ''}")

print()
gap = annulus_gap_constant(p_min=0.01, p_max=0.02, c=1e-3 / 64.0, gamma=0.02, beta=0.2, alpha_pl=3.0)
print(f"annulus gap constant (closed form): {gap.closed_form:.6g}")
print(f"exact squared-radius gap at N0=0.02, E[I]=0.44, eps=0.1: "
      f"{gap.exact_gap(0.02, 0.44, 0.1):.6g}")
print("(the closed form uses the displayed 2a exponent; the exact gap inverts")
print(" the attenuation law with exponent 1/a, so the conventions differ)")
