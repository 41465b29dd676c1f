import json
from pathlib import Path

import numpy as np
import pytest

import sigverify


@pytest.fixture(scope="module")
def corpus(tmp_path_factory):
    root = tmp_path_factory.mktemp("corpus")
    sigverify.synth_corpus(root, writers=3, seed=4, genuine=12, forgery=6)
    return root


def images(root, writer, kind):
    return [sigverify.read_image(p) for p in sorted((root / writer / kind).glob("*.pgm"))]


def test_default_k():
    assert sigverify.DEFAULT_K == 2.18


def test_otsu_and_descriptors():
    img = np.full((40, 60), 230.0)
    img[10:20, 5:50] = 20.0
    threshold, degenerate = sigverify.otsu_threshold(img)
    assert not degenerate
    assert 20 <= threshold < 230

    lpq = np.asarray(sigverify.lpq_descriptor(img))
    dwt = np.asarray(sigverify.wavelet_descriptor(img))
    assert lpq.shape == (256,)
    assert dwt.shape == (120,)
    assert lpq.sum() == pytest.approx(1.0)
    assert sigverify.lpq_descriptor(np.full((20, 20), 9.0))[255] == 1.0

    a, b = sigverify.extract_features(img)
    assert len(a) == 256 and len(b) == 120


def test_train_ocsvm_is_feasible():
    rng = np.random.default_rng(3)
    data = rng.normal(size=(30, 4)).tolist()
    alphas, _ = sigverify.train_ocsvm(data, nu=0.2, sigma=0.5)
    alphas = np.asarray(alphas)
    assert alphas.sum() == pytest.approx(1.0, abs=1e-8)
    assert (alphas >= 0).all() and (alphas <= 1 / (0.2 * 30) + 1e-12).all()


def test_enroll_verify_and_round_trip(corpus, tmp_path):
    genuine = images(corpus, "w000", "genuine")
    cfg = json.dumps({"ocsvm": {"dwt_sigma": 0.05}})
    profile = sigverify.enroll("w000", genuine[:8], config_json=cfg)
    assert profile.threshold == pytest.approx(profile.mean + 2.18 * profile.std)
    assert profile.verify(genuine[0])

    lpq, dwt, fused = profile.score(genuine[9])
    assert fused == (lpq + dwt) / 2

    relaxed = profile.with_k(-3.0)
    assert relaxed.threshold == relaxed.mean - 3.0 * relaxed.std

    path = tmp_path / "profiles.json"
    sigverify.save_profiles([profile, relaxed], path, k=-3.0)
    loaded = sigverify.load_profiles(path)
    assert [p.threshold for p in loaded] == [profile.threshold, relaxed.threshold]
    for img in genuine[8:] + images(corpus, "w000", "forgery"):
        assert loaded[1].verify(img) == relaxed.verify(img)
        assert loaded[1].score(img) == relaxed.score(img)


def test_evaluate_is_deterministic(corpus):
    cfg = json.dumps({"protocol": {"n_genuine_train": 6, "repeats": 2}, "verifier": {"k": "calibrate"}})
    a = sigverify.evaluate(corpus, mode="fused", config_json=cfg)
    b = sigverify.evaluate(corpus, mode="fused", config_json=cfg)
    assert a == b
    assert 0.0 <= a["aer"] <= 1.0
    assert a["eer"] is not None


def test_cli_and_errors(corpus, tmp_path):
    code, out, _ = sigverify.cli(["ingest", str(corpus), "--manifest-out", str(tmp_path / "m.json")])
    assert code == 0
    assert "writers=3" in out

    code, _, err = sigverify.cli(["verify", str(tmp_path / "none.json"), "x.png", "--writer", "w000"])
    assert code == 2
    assert err.startswith("error: ")

    with pytest.raises(sigverify.SigverifyError, match="^io: "):
        sigverify.read_image(tmp_path / "missing.png")
    with pytest.raises(sigverify.SigverifyError):
        sigverify.lpq_descriptor(np.zeros((5, 5)))
    with pytest.raises(ValueError):
        sigverify.evaluate(corpus, mode="sum")
