import math

import numpy as np
import pytest

import softctc


def vocab(*symbols):
    return softctc.Vocabulary(["<blank>", *symbols], 0)


def test_ctc_two_frame_example():
    # V = {a, #}: P(a) = 0.8, P(empty) = 0.2.
    v = softctc.Vocabulary(["a", "<blank>"], 1)
    y = np.array([[0.6, 0.4], [0.5, 0.5]])
    loss, grad = softctc.ctc_loss(y, "a", v)
    assert loss == pytest.approx(-math.log(0.8), abs=1e-12)
    assert grad.shape == (2, 2)
    nbest = softctc.prefix_beam_search(y, 1, 2)
    assert nbest[0] == ([0], pytest.approx(0.8))
    assert nbest[1] == ([], pytest.approx(0.2))


def test_trivial_cn_matches_ctc():
    v = vocab("c", "a", "t")
    rng = np.random.default_rng(7)
    y = rng.random((9, 4)) + 0.05
    y /= y.sum(axis=1, keepdims=True)
    cn = softctc.build_cn([(v.parse("cat"), 1.0)])
    target = softctc.compile_cn(cn, v.blank)
    soft, soft_grad = softctc.soft_ctc_loss(y, target)
    ctc, ctc_grad = softctc.ctc_loss(y, "cat", v)
    assert soft == pytest.approx(ctc, abs=1e-12)
    np.testing.assert_allclose(soft_grad, ctc_grad, atol=1e-12)


def test_nbest_matches_multi_ctc():
    v = vocab("c", "a", "t", "u")
    rng = np.random.default_rng(11)
    y = rng.random((8, 5)) + 0.05
    y /= y.sum(axis=1, keepdims=True)
    nbest = [(v.parse("cat"), 0.6), (v.parse("cut"), 0.3), (v.parse("ct"), 0.1)]
    soft, _ = softctc.soft_ctc_loss(y, softctc.compile_nbest(nbest, v.blank))
    multi, _ = softctc.multi_ctc_loss(y, nbest, v)
    assert soft == pytest.approx(multi, rel=1e-12)


def test_build_cn_and_serialization():
    v = vocab("c", "a", "t", "u")
    cn = softctc.build_cn(
        [(v.parse("cat"), 0.6), (v.parse("cut"), 0.3), (v.parse("ct"), 0.1)]
    )
    assert len(cn) == 3
    assert cn.sets[1].alternatives == {2: pytest.approx(0.6), 4: pytest.approx(0.3)}
    assert cn.sets[1].null_prob == pytest.approx(0.1)
    assert softctc.best_path(cn) == v.parse("cat")
    assert softctc.count_variant_paths(cn) == 3
    back_vocab, back = softctc.parse_cn(softctc.format_cn(v, cn))
    assert back == cn
    assert back_vocab.symbols == v.symbols


def test_decode_to_cn_isolates_ambiguity():
    y = np.array(
        [
            [0.0025, 0.995, 0.0025],
            [0.995, 0.0025, 0.0025],
            [0.0, 0.5, 0.5],
            [0.995, 0.0025, 0.0025],
            [0.0025, 0.0025, 0.995],
        ]
    )
    segments = softctc.segment_line(y, 0, 0.99)
    assert segments[1] == (2, 3, "unconfident")
    cn = softctc.decode_to_cn(y, 0, beam=16, threshold=0.99, strategy="partial")
    assert [s.alternatives for s in cn.sets] == [
        {1: pytest.approx(1.0)},
        {1: pytest.approx(0.5), 2: pytest.approx(0.5)},
        {2: pytest.approx(1.0)},
    ]


def test_errors_map_to_python_exceptions():
    v = vocab("a")
    with pytest.raises(ValueError):
        softctc.ctc_loss(np.ones(3), "a", v)
    with pytest.raises(softctc.InfeasibleError):
        softctc.ctc_loss(np.array([[0.5, 0.5]]), "aa", v)
    with pytest.raises(ValueError):
        softctc.decode_to_cn(np.array([[0.5, 0.5]]), 0, strategy="other")
    with pytest.raises(ValueError):
        softctc.parse_cn("not json")
