import numpy as np
import pytest

from tscbench.convolution import (
    Kernel,
    HydraConfig,
    HydraTransform,
    MiniRocketTransform,
    MultiRocketTransform,
    MULTIROCKET_POOLS,
    apply_kernel,
    generate_rocket_kernels,
    pool,
    random_dilation,
    rocket_transform,
)


def _naive_apply(series, kernel):
    x = list(series)
    l, d = kernel.length, kernel.dilation
    if kernel.padding:
        pad = (l // 2) * d
        x = [0.0] * pad + x + [0.0] * pad
    out = []
    for i in range(len(x) - (l - 1) * d):
        acc = kernel.bias
        for j in range(l):
            acc += x[i + j * d] * kernel.weights[j]
        out.append(acc)
    return np.array(out)


@pytest.mark.parametrize("padding", [False, True])
def test_apply_kernel_vs_naive(padding):
    rng = np.random.default_rng(0)
    for _ in range(20):
        n = int(rng.integers(12, 40))
        l = int(rng.choice([3, 7, 9]))
        d = int(rng.integers(1, max(2, (n - 1) // (l - 1))))
        k = Kernel(rng.normal(size=l), float(rng.uniform(-1, 1)), d, padding)
        x = rng.normal(size=n)
        assert np.allclose(apply_kernel(x, k), _naive_apply(x, k), atol=1e-12)


def test_apply_kernel_map_lengths():
    x = np.zeros(20)
    k = Kernel(np.ones(9), 0.0, 2, padding=False)
    assert len(apply_kernel(x, k)) == 20 - 8 * 2
    k = Kernel(np.ones(9), 0.0, 2, padding=True)
    assert len(apply_kernel(x, k)) == 20


def test_apply_kernel_receptive_field_error():
    with pytest.raises(ValueError):
        apply_kernel(np.zeros(5), Kernel(np.ones(9), 0.0, 1, padding=False))


def test_pool_operators():
    a = np.array([1.0, -1.0, 2.0, 0.0, 3.0])
    assert pool(a, "max") == 3.0
    assert pool(a, "ppv") == pytest.approx(3 / 5)
    assert pool(a, "mpv") == pytest.approx(2.0)
    assert pool(a, "mipv") == pytest.approx((0 + 2 + 4) / 3)
    assert pool(a, "lspv") == 1.0
    assert pool(np.array([1.0, 2.0, 3.0, -1.0, 5.0]), "lspv") == 3.0


def test_pool_empty_positive_set():
    a = np.array([-1.0, -2.0, 0.0])
    assert pool(a, "ppv") == 0.0
    assert pool(a, "mpv") == 0.0  # mean of positives defaults to 0
    assert pool(a, "mipv") == -1.0  # mean index of positives defaults to -1
    assert pool(a, "lspv") == 0.0


def test_pool_unknown_operator():
    with pytest.raises(ValueError):
        pool(np.ones(3), "median")


def test_random_dilation_bounds():
    rng = np.random.default_rng(1)
    n, l = 100, 9
    draws = [random_dilation(rng, n, l) for _ in range(500)]
    assert min(draws) >= 1
    assert max(draws) <= (n - 1) // (l - 1)
    assert len(set(draws)) > 1  # actually random
    assert random_dilation(rng, 9, 9) == 1  # no room: bound collapses to 1


def test_rocket_kernel_generation():
    rng = np.random.default_rng(2)
    kernels = generate_rocket_kernels(rng, n=80, num_kernels=300)
    assert len(kernels) == 300
    lengths = {k.length for k in kernels}
    assert lengths == {7, 9, 11}
    for k in kernels:
        assert abs(k.weights.mean()) < 1e-12  # mean-centred
        assert -1.0 <= k.bias <= 1.0
        assert 1 <= k.dilation <= (80 - 1) // (k.length - 1)


def test_rocket_feature_count_and_layout():
    rng = np.random.default_rng(3)
    X = rng.normal(size=(5, 50))
    kernels = generate_rocket_kernels(rng, 50, 40)
    F = rocket_transform(X, kernels)
    assert F.shape == (5, 80)  # 2 features per kernel
    for i, k in enumerate(kernels):
        for r in range(5):
            amap = apply_kernel(X[r], k)
            assert F[r, 2 * i] == pytest.approx(pool(amap, "max"), abs=1e-12)
            assert F[r, 2 * i + 1] == pytest.approx(pool(amap, "ppv"), abs=1e-12)


def test_rocket_deterministic_given_seed():
    X = np.random.default_rng(4).normal(size=(3, 60))
    a = rocket_transform(X, generate_rocket_kernels(np.random.default_rng(9), 60, 50))
    b = rocket_transform(X, generate_rocket_kernels(np.random.default_rng(9), 60, 50))
    assert np.array_equal(a, b)


def test_rocket_ppv_affine_invariance():
    # Bias-free unpadded kernels with mean-centred weights: PPV is invariant
    # to per-series positive affine transforms x -> 2x + 3. (Zero padding
    # breaks this at the edges because the pad values are not transformed.)
    rng = np.random.default_rng(5)
    X = rng.normal(size=(4, 60))
    kernels = [
        Kernel(k.weights, 0.0, k.dilation, padding=False)
        for k in generate_rocket_kernels(rng, 60, 30)
    ]
    a = rocket_transform(X, kernels)[:, 1::2]
    b = rocket_transform(2.0 * X + 3.0, kernels)[:, 1::2]
    assert np.allclose(a, b, atol=1e-9)


def test_minirocket_kernel_set():
    t = MiniRocketTransform()
    W = t.weights
    assert W.shape == (84, 9)
    for row in W:
        assert sorted(row) == [-1.0] * 6 + [2.0] * 3
        assert row.sum() == 0.0
    # All 84 rows distinct: C(9,3) choices of the positions of the 2s.
    assert len({tuple(r) for r in W}) == 84


def test_minirocket_feature_count_and_range():
    rng = np.random.default_rng(6)
    X = rng.normal(size=(10, 60))
    t = MiniRocketTransform()
    F = t.fit_transform(X, np.random.default_rng(0))
    assert t.n_features == 84 * 119 == 9996
    assert F.shape == (10, 9996)
    assert (F >= 0.0).all() and (F <= 1.0).all()  # PPV features


def test_minirocket_deterministic_and_consistent():
    rng = np.random.default_rng(7)
    X = rng.normal(size=(6, 50))
    t1 = MiniRocketTransform().fit(X, np.random.default_rng(1))
    t2 = MiniRocketTransform().fit(X, np.random.default_rng(1))
    assert np.array_equal(t1.biases, t2.biases)
    assert np.array_equal(t1.transform(X), t2.transform(X))


def test_minirocket_matches_per_slot_oracle():
    rng = np.random.default_rng(8)
    X = rng.normal(size=(4, 40))
    t = MiniRocketTransform(num_slots=5)
    F = t.fit_transform(X, np.random.default_rng(2))
    for s in range(t.num_slots):
        d = int(t.dilations[s])
        for kappa in range(84):
            k = Kernel(t.weights[kappa], -t.biases[kappa, s], d, bool(t.paddings[s]))
            col = kappa * t.num_slots + s
            for r in range(4):
                expected = pool(apply_kernel(X[r], k), "ppv")
                assert F[r, col] == pytest.approx(expected, abs=1e-12)


def test_multirocket_feature_count():
    t = MultiRocketTransform()
    assert t.n_features == 2 * 84 * 74 * 4 == 49728
    assert abs(t.n_features - 50_000) / 50_000 < 0.10


def test_multirocket_matches_per_slot_oracle():
    rng = np.random.default_rng(9)
    X = rng.normal(size=(3, 40))
    t = MultiRocketTransform(num_slots=3)
    F = t.fit_transform(X, np.random.default_rng(3))
    from tscbench.series import first_difference

    half = F.shape[1] // 2
    for rep, (engine, Xr) in enumerate(
        [(t.base, X), (t.diff, first_difference(X))]
    ):
        per_kernel = engine.num_slots * len(MULTIROCKET_POOLS)
        for s in range(engine.num_slots):
            d = int(engine.dilations[s])
            for kappa in range(0, 84, 17):  # sample kernels to keep it fast
                k = Kernel(
                    engine.weights[kappa],
                    -engine.biases[kappa, s],
                    d,
                    bool(engine.paddings[s]),
                )
                for o, op in enumerate(MULTIROCKET_POOLS):
                    col = rep * half + kappa * per_kernel + s * 4 + o
                    for r in range(3):
                        expected = pool(apply_kernel(Xr[r], k), op)
                        assert F[r, col] == pytest.approx(expected, abs=1e-12)


def test_hydra_feature_count_and_group_conservation():
    rng = np.random.default_rng(10)
    X = rng.normal(size=(5, 64))
    cfg = HydraConfig(groups=4, kernels_per_group=3)
    t = HydraTransform(cfg).fit(X, np.random.default_rng(4))
    F = t.transform(X)
    n_blocks = sum(len(ds) for ds in t.dilations)
    assert t.n_features == 4 * 3 * n_blocks
    assert F.shape == (5, t.n_features)
    # Counts are sqrt-compressed; per (block, group) the squared counts sum
    # to the activation-map length (one winner per timepoint).
    gk = 4 * 3
    offset = 0
    for rep, dils in enumerate(t.dilations):
        L = 64 if rep == 0 else 63  # padded maps keep series length
        for _ in dils:
            block = F[:, offset : offset + gk] ** 2
            sums = block.reshape(5, 4, 3).sum(axis=2)
            assert np.allclose(sums, L)
            offset += gk


def test_hydra_dilations_are_powers_of_two():
    t = HydraTransform().fit(np.zeros((2, 100)), np.random.default_rng(0))
    for dils in t.dilations:
        for d in dils:
            assert d & (d - 1) == 0  # power of two
        assert dils[0] == 1
        assert dils == sorted(dils)


def test_hydra_config_validation():
    with pytest.raises(ValueError):
        HydraConfig(groups=0)
    with pytest.raises(ValueError):
        HydraConfig(kernels_per_group=1)
