"""Smoke tests for the python module."""

import math

import numpy as np
import pytest

import spinterp


def test_log_partition_and_gibbs():
    w = spinterp.WeightVector.uniform(2)
    assert spinterp.log_partition_f(np.zeros(2), w) == pytest.approx(
        math.log(2.0), abs=1e-15
    )
    assert spinterp.log_partition_f(np.array([1000.0, 1000.0]), w) == pytest.approx(
        1000.0 + math.log(2.0), abs=1e-12
    )
    mu = spinterp.gibbs_weights(np.array([math.log(3.0), 0.0]), w)
    assert mu == pytest.approx([0.75, 0.25], abs=1e-15)


def test_metric_and_euclidean():
    cov = spinterp.validate_covariance(np.eye(2))
    d = spinterp.metric_from_covariance(cov)
    assert d.entries[0, 1] == pytest.approx(math.sqrt(2.0))
    test = spinterp.is_euclidean_metric(d)
    assert test.euclidean

    star = np.array(
        [
            [0.0, 1.0, 1.0, 1.0],
            [1.0, 0.0, 2.0, 2.0],
            [1.0, 2.0, 0.0, 2.0],
            [1.0, 2.0, 2.0, 0.0],
        ]
    )
    bad = spinterp.is_euclidean_metric(spinterp.validate_metric(star))
    assert not bad.euclidean
    assert bad.min_eigenvalue == pytest.approx(-0.25, abs=1e-12)


def test_psd_rejection():
    with pytest.raises(spinterp.Error):
        spinterp.validate_covariance(np.array([[1.0, 2.0], [2.0, 1.0]]))


def test_comparison_conditions_and_inequality():
    cx = spinterp.validate_covariance(np.eye(2))
    cy = spinterp.validate_covariance(np.array([[2.0, 0.5], [0.5, 2.0]]))
    verdict = spinterp.check_classic_conditions(cx, cy)
    assert not verdict.classic_diag_ok
    assert not verdict.classic_offdiag_ok
    assert verdict.metric_ok
    rep = spinterp.verify_inequality(
        cx, cy, spinterp.WeightVector.uniform(2), 20000, 1
    )
    assert rep.holds
    assert rep.csv_row().count(",") == 10


def test_estimate_determinism():
    cov = spinterp.validate_covariance(np.eye(3))
    w = spinterp.WeightVector.uniform(3)
    a = spinterp.estimate_F(cov, w, 5000, 42)
    b = spinterp.estimate_F(cov, w, 5000, 42, threads=3)
    assert a.mean == b.mean
    assert a.std_error == b.std_error


def test_sk_basics():
    a = spinterp.SpinConfig(4, 0b0000)
    b = spinterp.SpinConfig(4, 0b1111)
    assert spinterp.sk.overlap(a, b) == -1.0
    assert spinterp.sk.metric_entry(a, b, 1.0) == 0.0
    est = spinterp.sk.quenched_alpha(4, 1e-6, 50, 1)
    assert est.mean == pytest.approx(-4.0 * math.log(2.0), abs=1e-4)
    rep = spinterp.sk.check_superpythagorean(3, 3, 1.0)
    assert rep.holds


def test_grem_golden():
    tree = spinterp.grem.tree_from_branching([1, 2, 1])
    spec = spinterp.grem.GremSpec.geometric()
    sigma = spinterp.grem.leaf_config(tree, [0, 1, 0])
    assert [sigma.spin(i) for i in range(4)] == [-1, -1, 1, -1]
    tau = spinterp.grem.leaf_config(tree, [0, 3, 1])
    assert [tau.spin(i) for i in range(4)] == [-1, 1, 1, 1]
    assert spinterp.grem.merge_level(tree, sigma, tau) == 1
    dist = spinterp.grem.distance(tree, spec, sigma, tau)
    assert dist.s == pytest.approx(math.sqrt(0.75), abs=0)

    split = spinterp.grem.split(spec, 8, 4, 4)
    assert split.lost == 1
    assert split.full.total_spins == 7


def test_alignment_roundtrip():
    rng = np.random.default_rng(3)
    v = rng.normal(size=(5, 3))
    theta = 0.3
    q = np.array(
        [
            [math.cos(theta), -math.sin(theta), 0.0],
            [math.sin(theta), math.cos(theta), 0.0],
            [0.0, 0.0, 1.0],
        ]
    )
    w = v @ q.T + np.array([1.0, -2.0, 0.5])
    motion = spinterp.recover_isometry(v, w)
    assert spinterp.orthogonality_defect(motion.rotation) <= 1e-10
    assert (
        spinterp.alignment_residual(v, w, motion.rotation, motion.offset) <= 1e-8
    )


def test_harness_roundtrip(tmp_path):
    config = {
        "model": "sk",
        "sizes": [2, 4],
        "beta": 1.0,
        "samples": 60,
        "seed": 3,
        "out_dir": str(tmp_path / "out"),
    }
    import json

    ok, files = spinterp.harness.run_config(json.dumps(config))
    assert ok
    names = {f.split("/")[-1] for f in files}
    assert "trend.csv" in names
    assert "manifest.json" in names
