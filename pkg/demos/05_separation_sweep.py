# %% [markdown]
# # Cycle counts versus the second eigenvalue
#
# Random graphs have 4-cycle counts close to p^4 n^4 and a small second
# eigenvalue.  A planted two-block bias inflates both.

# %%
from hyperquasi.experiment import separation_sweep, summarize_sweep

rows = separation_sweep([20, 40], k=2, p=0.5, seeds=[0, 1, 2], bias=0.4)
for g in summarize_sweep(rows)["groups"]:
    print(f"{g['kind']:8s} n={g['n']:3d} cycle ratio {g['median_cycle_ratio']:.3f} "
          f"lambda2/n {g['median_lambda2_upper_scaled']:.3f}")
