import json
import math

import pytest

import hadamard as hd


def test_geometry():
    h = hd.Space.half_plane()
    assert hd.distance(h, (0, 1), (0, math.e)) == pytest.approx(1.0)
    m = hd.midpoint(h, (0, 1), (0, 4))
    assert m == pytest.approx((0.0, 2.0))
    t = hd.Space.star_tree(3)
    assert hd.distance(t, (0, 1.0), (2, 2.0)) == pytest.approx(3.0)
    assert hd.combine(t, (0, 1.0), (2, 2.0), 1 / 3) == (0, 0.0)
    with pytest.raises(hd.GeometryError):
        hd.distance(h, (0, 0), (0, 1))


def test_euclidean_mean_is_arithmetic():
    e = hd.Space.euclidean(2)
    seq = hd.Sequence(e, [[0, 0], [2, 0], [1, 3]])
    r = hd.karcher_mean(seq)
    assert r["sigma"] == pytest.approx([1.0, 1.0])
    assert r["converged"]
    assert hd.karcher_mean(seq, k=1, n=2)["sigma"] == pytest.approx([1.5, 1.5])
    with pytest.raises(hd.WindowError):
        hd.karcher_mean(seq, k=2, n=2)


def test_half_plane_mean_of_two_is_midpoint():
    h = hd.Space.half_plane()
    seq = hd.Sequence(h, [(-1, 1), (2, 3)])
    mid = hd.midpoint(h, (-1, 1), (2, 3))
    assert hd.distance(h, hd.karcher_mean(seq)["sigma"], mid) < 1e-8


def test_generate_and_round_trip():
    seq = hd.generate({"family": "alternating", "space": {"kind": "euclidean", "dim": 1},
                       "length": 64, "points": [[0], [1]]})
    assert len(seq) == 64
    assert seq[1] == [1.0]
    again = hd.Sequence.from_json(seq.to_json())
    assert again.points == seq.points
    with pytest.raises(hd.ParseError):
        hd.Sequence.from_json('{"space": {"kind": "half_plane"}, "points": [{"x": 0, "y": -1}]}')
    specs = [json.loads(s) for s in hd.reference_corpus()]
    assert {s["family"] for s in specs} >= {"constant", "block_01", "slow_step"}


def test_classify_alternating():
    seq = hd.generate({"family": "alternating", "space": {"kind": "euclidean", "dim": 1},
                       "length": 1024, "points": [[0], [1]]})
    r = hd.classify(seq)
    assert not r["converges"]["holds"]
    assert r["almost_convergent"]["holds"]
    assert r["mean_convergent"]["holds"]
    assert r["inconsistencies"] == []
    assert "implications: consistent" in r["report"]


def test_center_and_periodicity():
    t = hd.Space.star_tree(3)
    seq = hd.Sequence(t, [(0, 1.0), (1, 1.0), (2, 1.0)] * 20)
    center, radius = hd.asymptotic_center(seq)
    assert radius == pytest.approx(1.0)
    assert center[1] == pytest.approx(0.0, abs=1e-9)
    p = hd.almost_periodicity(seq, 0.1, L_max=8)
    assert p["holds"]
    assert hd.abel_identity_check([1.0, 0.5, 0.25, 2.0]) < 1e-12
