"""
All Kraus representations of one channel
========================================

For the replacement channel ``X -> tr(X) W`` with diagonal W a closed-form
Kraus set is ``M_ij = sqrt(w_ii) P_ij``. Any isometry ``u`` (``u^dagger u = I``)
mixes a Kraus set into another valid one, ``M'_p = sum_q u[p, q] M_q``; this
script shows that the closed form, the set extracted from the Choi matrix,
and random rotations of either all describe the same channel.
"""

import numpy as np

from choikit import (
    ChannelSpec,
    build_choi,
    channel_from_kraus,
    kraus_from_choi,
    make_channel,
    reference_kraus,
    rotate_kraus,
)
from choikit.random_ops import random_isometry

spec = ChannelSpec("replacement", 2, {"W": np.diag([0.25, 0.75])})
channel = make_channel(spec)
j = build_choi(channel).matrix

# %%
closed_form = reference_kraus(spec)
extracted = kraus_from_choi(j)
print("closed form:", len(closed_form), "operators; extracted:", len(extracted), "operators")
for name, ks in [("closed form", closed_form), ("extracted", extracted)]:
    err = np.max(np.abs(build_choi(channel_from_kraus(ks)).matrix - j))
    print(f"{name:12s} reproduces J to {err:.1e}")

# %%
# Rotations, including isometries that pad the set with extra operators.
rng = np.random.default_rng(2)
for rows in (4, 5, 7):
    u = random_isometry(rows, len(closed_form), rng)
    rotated = rotate_kraus(closed_form, u)
    err = np.max(np.abs(build_choi(channel_from_kraus(rotated)).matrix - j))
    print(f"{rows} rotated operators reproduce J to {err:.1e}")
