import numpy as np
import pytest

from choikit.builtin import replacement_channel, transposition_channel
from choikit.channels import (
    ChannelMap,
    ChoiMatrix,
    KrausSet,
    apply,
    apply_kraus,
    build_choi,
    channel_from_choi,
    channel_from_function,
    channel_from_kraus,
    compose,
    convex_mix,
    identity_channel,
    is_hermiticity_preserving,
    is_trace_preserving,
    linear_combination,
    partial_trace_output,
)
from choikit.linalg import DomainError, matrix_unit
from choikit.random_ops import ginibre, random_density, random_kraus_set, random_unitary

from conftest import brute_force_choi


def random_channel(n, rng):
    return ChannelMap(ginibre(n, n ** 3, rng).reshape(n, n, n, n))


def test_apply_examples(rng):
    x = ginibre(3, 3, rng)
    assert np.array_equal(apply(identity_channel(3), x), x)
    assert np.array_equal(apply(transposition_channel(2), matrix_unit(1, 2, 2)), matrix_unit(2, 1, 2))
    w = np.diag([0.5, 0.5])
    assert np.allclose(apply(replacement_channel(w), np.eye(2)), np.eye(2))
    with pytest.raises(DomainError):
        apply(identity_channel(2), np.eye(3))


def test_apply_kraus_examples(rng):
    x = ginibre(3, 3, rng)
    assert np.allclose(apply_kraus(KrausSet(np.eye(3)), x), x)
    w = np.array([0.2, 0.3, 0.5])
    ks = KrausSet([np.sqrt(w[i]) * matrix_unit(i + 1, j + 1, 3) for i in range(3) for j in range(3)])
    assert np.allclose(apply_kraus(ks, x), np.trace(x) * np.diag(w), atol=1e-14)
    u = random_unitary(3, rng)
    y = apply_kraus(KrausSet(u), x)
    assert np.allclose(y, u @ x @ u.conj().T)
    assert np.isclose(np.trace(y), np.trace(x), atol=1e-12)
    with pytest.raises(DomainError):
        apply_kraus(KrausSet(u), np.eye(2))


def test_channel_from_kraus_examples(rng):
    assert identity_channel(2).allclose(channel_from_kraus(KrausSet(np.eye(2))), atol=0)
    w = np.array([0.25, 0.75])
    ks = KrausSet([np.sqrt(w[i]) * matrix_unit(i + 1, j + 1, 2) for i in range(2) for j in range(2)])
    ch = channel_from_kraus(ks)
    for i in range(2):
        for j in range(2):
            expected = np.diag(w) if i == j else np.zeros((2, 2))
            assert np.allclose(ch.action[i, j], expected, atol=1e-15)


@pytest.mark.parametrize("n,k", [(2, 1), (2, 4), (3, 2), (4, 5)])
def test_channel_from_kraus_agrees_with_apply_kraus(n, k, rng):
    ks = random_kraus_set(n, k, rng)
    ch = channel_from_kraus(ks)
    scale = sum(np.linalg.norm(m) ** 2 for m in ks)
    for _ in range(5):
        x = ginibre(n, n, rng)
        assert np.max(np.abs(apply(ch, x) - apply_kraus(ks, x))) <= 1e-12 * np.linalg.norm(x) * scale


def test_build_choi_matches_brute_force(rng):
    for n in (1, 2, 3, 4):
        ch = random_channel(n, rng)
        assert np.allclose(build_choi(ch).matrix, brute_force_choi(ch, n), atol=0)


def test_build_choi_entry_identity(rng):
    n = 3
    ch = random_channel(n, rng)
    j = build_choi(ch).matrix
    for i in range(1, n + 1):
        for jj in range(1, n + 1):
            for m in range(1, n + 1):
                for nn in range(1, n + 1):
                    assert j[(m - 1) * n + i - 1, (nn - 1) * n + jj - 1] == ch.image(i, jj)[m - 1, nn - 1]


def test_identity_choi_is_rank_one():
    j = build_choi(identity_channel(2)).matrix
    omega = np.array([1, 0, 0, 1]) / np.sqrt(2)
    assert np.allclose(j, 2 * np.outer(omega, omega))
    lam = np.sort(np.linalg.eigvalsh(brute_force_choi(lambda x: x, 2)))[::-1]
    assert np.allclose(lam, [2, 0, 0, 0])


def test_transposition_choi_is_swap():
    j = build_choi(transposition_channel(2)).matrix
    swap = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
    assert np.array_equal(j, swap)
    assert np.allclose(np.sort(np.linalg.eigvalsh(swap)), [-1, 1, 1, 1])


def test_replacement_choi_is_w_kron_identity(rng):
    w = random_density(3, rng=rng)
    assert np.allclose(build_choi(replacement_channel(w)).matrix, np.kron(w, np.eye(3)), atol=0)


def test_channel_from_choi_examples(rng):
    ch = random_channel(3, rng)
    assert channel_from_choi(build_choi(ch)).allclose(ch, atol=0)
    w = random_density(2, rng=rng)
    back = channel_from_choi(ChoiMatrix(np.kron(w, np.eye(2))))
    for i in range(2):
        for j in range(2):
            assert np.allclose(back.action[i, j], w if i == j else 0)
    swap = build_choi(transposition_channel(3)).matrix
    back = channel_from_choi(ChoiMatrix(swap))
    for i in range(1, 4):
        for j in range(1, 4):
            assert np.array_equal(back.image(i, j), matrix_unit(j, i, 3))


def test_choi_round_trip_on_matrices(rng):
    m = ginibre(9, 9, rng)
    assert np.array_equal(build_choi(channel_from_choi(ChoiMatrix(m))).matrix, m)


def test_choi_shape_validation():
    with pytest.raises(DomainError, match="perfect square"):
        ChoiMatrix(np.eye(3))
    with pytest.raises(DomainError, match="ordering"):
        ChoiMatrix(np.eye(4), ordering="input-first")


def test_compose_and_convex_mix(rng):
    c = random_channel(2, rng)
    ident = identity_channel(2)
    assert compose(ident, c).allclose(c, atol=0)
    assert compose(c, ident).allclose(c, atol=0)
    a, b = random_channel(2, rng), random_channel(2, rng)
    x = ginibre(2, 2, rng)
    assert np.allclose(apply(compose(a, b), x), apply(a, apply(b, x)))
    mu = 0.3
    ja = build_choi(a).matrix
    jb = build_choi(b).matrix
    assert np.allclose(build_choi(convex_mix(a, b, mu)).matrix, mu * ja + (1 - mu) * jb, atol=1e-14)
    with pytest.raises(DomainError):
        compose(a, identity_channel(3))


def test_generalized_depolarizing_as_convex_mix(rng):
    w = random_density(3, rng=rng)
    mu = 0.4
    dep = convex_mix(replacement_channel(w), identity_channel(3), mu)
    x = ginibre(3, 3, rng)
    assert np.allclose(apply(dep, x), mu * np.trace(x) * w + (1 - mu) * x)


def test_choi_is_linear(rng):
    a, b = random_channel(3, rng), random_channel(3, rng)
    lam = 0.7 - 1.2j
    lhs = build_choi(linear_combination([lam, 1.0], [a, b])).matrix
    assert np.allclose(lhs, lam * build_choi(a).matrix + build_choi(b).matrix, atol=1e-14)


def test_channel_from_function(rng):
    u = random_unitary(2, rng)
    ch = channel_from_function(lambda x: u @ x @ u.conj().T, 2)
    assert ch.allclose(channel_from_kraus(KrausSet(u)), atol=1e-14)


def _hermiticity_preserved_on_samples(ch, rng, n):
    for _ in range(5):
        x = ginibre(n, n, rng)
        if not np.allclose(apply(ch, x.conj().T), apply(ch, x).conj().T, atol=1e-10):
            return False
    return True


def test_hermiticity_preservation_iff_hermitian_choi(rng):
    n = 3
    for _ in range(10):
        hp = linear_combination([1.0, -0.8], [channel_from_kraus(random_kraus_set(n, 2, rng)),
                                               channel_from_kraus(random_kraus_set(n, 3, rng))])
        assert is_hermiticity_preserving(hp)
        assert _hermiticity_preserved_on_samples(hp, rng, n)
        generic = random_channel(n, rng)
        assert not is_hermiticity_preserving(generic)
        assert not _hermiticity_preserved_on_samples(generic, rng, n)


def test_trace_preservation_via_partial_trace(rng):
    n = 3
    w = random_density(n, rng=rng)
    for ch in (identity_channel(n), replacement_channel(w), channel_from_kraus(KrausSet(random_unitary(n, rng))),
               channel_from_kraus(random_kraus_set(n, 4, rng, trace_preserving=True))):
        assert np.allclose(partial_trace_output(build_choi(ch)), np.eye(n), atol=1e-12)
        assert is_trace_preserving(ch)
    assert not is_trace_preserving(channel_from_kraus(random_kraus_set(n, 2, rng)))


def test_kraus_set_validation():
    with pytest.raises(DomainError):
        KrausSet(np.zeros((0, 2, 2)))
    with pytest.raises(DomainError):
        KrausSet(np.zeros((2, 2, 3)))
    with pytest.raises(DomainError):
        KrausSet([[np.nan, 0], [0, 1]])
    assert len(KrausSet(np.eye(2))) == 1
    assert KrausSet(np.eye(2)).is_trace_preserving()


def test_values_are_immutable():
    ch = identity_channel(2)
    with pytest.raises(ValueError):
        ch.action[0, 0, 0, 0] = 5
