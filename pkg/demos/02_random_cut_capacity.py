"""The capacity of a random size-k relay cut matches its closed-form mean.

A cut puts k of the m relays on the source side; its capacity sums three
link classes (source -> far side, near relays -> far relays, near relays ->
destination), which is m + k(m-k) links in expectation terms, each with mean
capacity cbar. Link capacities are dependent through shared interference,
yet the sample mean of the cut capacity still lands on [m + k(m-k)] * cbar.

Run:  python3 demos/02_random_cut_capacity.py
"""

from sinrcap import ExperimentConfig, PlacementModel, RoleSpec, expected_cut_capacity, run_random_cut_study

m = 80

for k in (0, 20, 40, 60, 80):
    cfg = ExperimentConfig.baseline(
        placement=PlacementModel.fixed(m + 2),
        roles=RoleSpec(h=1, m=m, l=1),
        cut_size=k,
        trials=400,
        cbar_trials=150,
        seed=11,
    )
    meta = run_random_cut_study(cfg).meta
    print(
        f"k={k:3d}  coefficient={meta['coefficient']:5d}  "
        f"expected={meta['expected_cut_capacity']:8.3f}  "
        f"measured={meta['empirical_mean']:8.3f}  "
        f"deviation={meta['deviation_sigmas']:.2f} sigma"
    )

print()
print("same coefficient algebra, multiple sources (h=3): the symmetry in k breaks")
cbar = 1.0
for k in (0, 40, 80):
    single = expected_cut_capacity(m, k, cbar, h=1)
    multi = expected_cut_capacity(m, k, cbar, h=3)
    print(f"k={k:3d}  single-source {single:7.1f}   three-source {multi:7.1f}")
print("with h >= 2 the minimum sits at k = m: the only bottleneck is the destination end")
