"""
Reading Kraus operators off a factored Choi matrix
==================================================

A positive Choi matrix factors as ``J = Q^dagger Q``. Taking ``Q = D^{1/2} V^dagger``
from the eigendecomposition, each row of ``Q`` with a nonzero eigenvalue,
reshaped to N x N, is (the conjugate of) a Kraus operator. The number of
such rows is the minimal number of Kraus operators.
"""

import numpy as np

from choikit import (
    KrausSet,
    apply,
    apply_kraus,
    build_choi,
    channel_from_kraus,
    kraus_from_choi,
    minimal_kraus_rank,
    q_factor,
)
from choikit.random_ops import ginibre, random_kraus_set

rng = np.random.default_rng(1)

# %%
# Start from a redundant description: 6 random Kraus operators on C^3 that
# are linearly dependent combinations of only 2.
base = random_kraus_set(3, 2, rng)
mix = ginibre(6, 2, rng)
redundant = channel_from_kraus(KrausSet(np.einsum("pq,qab->pab", mix, base.operators)))
j = build_choi(redundant)

print("Choi eigenvalues:", np.round(np.linalg.eigvalsh(j.matrix)[::-1], 6))
print("minimal Kraus rank:", minimal_kraus_rank(j))

# %%
# Factor and check Q^dagger Q = J.
qf = q_factor(j)
print("||Q^dagger Q - J|| =", np.linalg.norm(qf.q.conj().T @ qf.q - j.matrix))

# %%
# Extract the minimal set and compare its action with the original map.
ks = kraus_from_choi(j)
x = ginibre(3, 3, rng)
print(len(ks), "Kraus operators; max deviation on a random X:",
      np.max(np.abs(apply_kraus(ks, x) - apply(redundant, x))))
