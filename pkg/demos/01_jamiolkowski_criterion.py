"""
Deciding complete positivity from the Choi matrix
=================================================

A linear map on N x N matrices is completely positive exactly when its Choi
matrix ``J = sum_ij alpha(P_ij) (x) P_ij`` is positive semidefinite. This
script checks two textbook maps: the transposition (positive, not CP) and
the replacement channel ``X -> tr(X) W`` (CP).
"""

import numpy as np

from choikit import ChannelSpec, build_choi, is_completely_positive, make_channel

np.set_printoptions(precision=3, suppress=True)

# %%
# The transposition map. Its Choi matrix is the swap operator.
transpose = make_channel(ChannelSpec("transposition", 2))
j = build_choi(transpose).matrix
print("Choi matrix of X -> X^T:\n", j.real)

report = is_completely_positive(transpose)
print("CP?", report.verdict, " spectrum:", np.round(report.choi_spectrum, 12))

# %%
# The antisymmetric vectors e_p (x) e_q - e_q (x) e_p are eigenvectors with
# eigenvalue -1, in every dimension.
n = 4
j = build_choi(make_channel(ChannelSpec("transposition", n))).matrix
e = np.eye(n)
v = np.kron(e[0], e[2]) - np.kron(e[2], e[0])
print("J v == -v for N = 4:", np.allclose(j @ v, -v))

# %%
# The replacement channel with a positive unit-trace W has Choi matrix W (x) I.
rng = np.random.default_rng(0)
b = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
w = b @ b.conj().T
w /= np.trace(w)
replace = make_channel(ChannelSpec("replacement", 3, {"W": w}))
print("J == W (x) I:", np.allclose(build_choi(replace).matrix, np.kron(w, np.eye(3))))
report = is_completely_positive(replace)
print("CP?", report.verdict, " minimal Kraus rank:", report.minimal_rank)

# %%
# Mixing the replacement channel with the identity keeps complete positivity.
for mu in (0.0, 0.3, 1.0):
    dep = make_channel(ChannelSpec("depolarizing", 3, {"W": w, "mu": mu}))
    r = is_completely_positive(dep)
    print(f"mu = {mu}: CP = {r.verdict}, min eigenvalue = {r.min_eigenvalue:.4f}, rank = {r.minimal_rank}")
