"""
Growing the truncation dimension
================================

Channels on infinite-dimensional spaces are probed here through their
leading N x N truncations. A replacement channel with geometric weights
``w_nn ~ 0.5**n`` (renormalized at each N) stays CP at every truncation,
while the transposition keeps its eigenvalue -1.
"""

from choikit import family, truncation_sweep

dims = [2, 4, 8, 16]
for kind, params in [("replacement", {"ratio": 0.5}), ("transposition", {}), ("identity", {})]:
    print(f"\n{kind}")
    print(f"{'dim':>4} {'min eigenvalue':>16} {'rank':>5}  CP")
    for r in truncation_sweep(family(kind, **params), dims):
        print(f"{r.dim:>4} {r.min_eigenvalue:>16.3e} {r.minimal_rank:>5}  {r.verdict}")

# %%
# The same table is available from the command line as CSV:
#
#     choikit sweep replacement --dims 2 4 8 16 --ratio 0.5
