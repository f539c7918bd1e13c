import numpy as np
import pytest

from hdscene.decoder import (
    DecodedScene,
    decode_scene,
    estimate_object_count,
    explain_away,
    match_objects,
)
from hdscene.resonator import FactorEstimate
from hdscene.scene import ObjectSpec, SceneDescription, encode_object, encode_scene, random_scene

N = 1000


def estimate_for(obj, iterations=1, converged=True):
    return FactorEstimate(color=obj.color, digit=obj.digit, ypos=obj.ypos, xpos=obj.xpos,
                          iterations_used=iterations, converged=converged)


def decoded_from(objs):
    return DecodedScene(objects=tuple(estimate_for(o) for o in objs),
                        residual_energy_trace=tuple(0.0 for _ in objs),
                        runs_executed=len(objs), halted_by="max-runs")


def test_explain_away_exact_on_single_object(cbs, rng):
    scene = random_scene(1, rng)
    s = encode_scene(cbs, scene)
    residual = explain_away(s, estimate_for(scene.objects[0]), cbs)
    assert np.array_equal(residual, np.zeros(N, dtype=np.int64))


def test_explain_away_leaves_other_compound(cbs, rng):
    scene = random_scene(2, rng)
    s = encode_scene(cbs, scene)
    residual = explain_away(s, estimate_for(scene.objects[0]), cbs)
    assert np.array_equal(residual, encode_object(cbs, scene.objects[1]))


def test_explain_away_any_order_cancels(cbs, rng):
    scene = random_scene(3, rng)
    s = encode_scene(cbs, scene)
    for order in ((0, 1, 2), (2, 0, 1), (1, 2, 0)):
        residual = s
        for i in order:
            residual = explain_away(residual, estimate_for(scene.objects[i]), cbs)
        assert np.array_equal(residual, np.zeros(N, dtype=np.int64))


def test_wrong_estimate_leaves_residual_energy_near_two_n(cbs):
    # difference of two near-orthogonal bipolar vectors has squared norm ~ 2N
    rng = np.random.default_rng(55)
    for _ in range(100):
        scene = random_scene(1, rng)
        s = encode_scene(cbs, scene)
        obj = scene.objects[0]
        wrong = ObjectSpec((obj.color + 1) % 7, (obj.digit + 3) % 10, obj.ypos, obj.xpos)
        residual = explain_away(s, estimate_for(wrong), cbs)
        energy = float(residual @ residual)
        assert abs(energy - 2 * N) < 350


def test_decode_clean_single_object_halts_after_one_run(cbs, rng):
    scene = random_scene(1, rng)
    s = encode_scene(cbs, scene)
    decoded = decode_scene(s, cbs, max_runs=3, rng=rng)
    assert decoded.runs_executed == 1
    assert decoded.halted_by == "energy-threshold"
    assert decoded.residual_energy_trace[0] == 0.0
    assert decoded.objects[0].attribute_tuple() == scene.objects[0].as_tuple()


def test_decode_halting_matches_object_count_when_correct(cbs):
    for L in (1, 2, 3):
        hits = 0
        trials = 50
        for i in range(trials):
            rng = np.random.default_rng(100 * L + i)
            scene = random_scene(L, rng)
            s = encode_scene(cbs, scene)
            decoded = decode_scene(s, cbs, max_runs=9, rng=rng)
            result = match_objects(decoded, scene)
            if result.all_correct and all(result.per_object):
                hits += 1
                assert decoded.runs_executed == L
                assert decoded.halted_by == "energy-threshold"
        assert hits >= 0.9 * trials


def test_decode_clean_three_objects(cbs):
    hits = 0
    trials = 200
    for i in range(trials):
        rng = np.random.default_rng(9000 + i)
        scene = random_scene(3, rng)
        s = encode_scene(cbs, scene)
        decoded = decode_scene(s, cbs, max_runs=3, rng=rng)
        hits += match_objects(decoded, scene).all_correct
    assert hits / trials >= 0.95


def test_decode_residual_energy_non_increasing_when_correct(cbs):
    for i in range(50):
        rng = np.random.default_rng(500 + i)
        scene = random_scene(3, rng)
        s = encode_scene(cbs, scene)
        decoded = decode_scene(s, cbs, max_runs=3, rng=rng)
        if match_objects(decoded, scene).all_correct:
            trace = decoded.residual_energy_trace
            assert all(trace[i + 1] <= trace[i] for i in range(len(trace) - 1))


def test_decode_argument_validation(cbs, rng):
    s = encode_scene(cbs, random_scene(1, rng))
    with pytest.raises(ValueError):
        decode_scene(s, cbs, max_runs=0, rng=rng)
    with pytest.raises(ValueError):
        decode_scene(s, cbs, energy_threshold=-1.0, rng=rng)


def test_decode_scene_serialization(cbs, rng):
    scene = random_scene(2, rng)
    decoded = decode_scene(encode_scene(cbs, scene), cbs, max_runs=2, rng=rng)
    data = decoded.to_dict()
    assert set(data) == {"objects", "residual_energy_trace", "runs_executed", "halted_by"}
    assert set(data["objects"][0]) == {"color", "digit", "ypos", "xpos",
                                       "iterations_used", "converged"}


def test_match_objects_is_order_insensitive():
    truth = SceneDescription(objects=(ObjectSpec(1, 2, 0, 0), ObjectSpec(3, 4, 1, 1)))
    decoded = decoded_from(truth.objects[::-1])
    result = match_objects(decoded, truth)
    assert result.num_correct == 2
    assert result.all_correct
    assert result.per_object == (True, True)
    assert set(result.matched_truth) == {0, 1}


def test_match_objects_one_wrong_component():
    truth = SceneDescription(objects=(ObjectSpec(1, 2, 0, 0), ObjectSpec(3, 4, 1, 1)))
    off = ObjectSpec(1, 9, 0, 0)
    decoded = decoded_from((off, truth.objects[1]))
    result = match_objects(decoded, truth)
    assert result.per_object == (False, True)
    assert result.num_correct == 1
    assert not result.all_correct


def test_match_objects_duplicate_decode_counts_once():
    truth = SceneDescription(objects=(ObjectSpec(1, 2, 0, 0), ObjectSpec(3, 4, 1, 1)))
    decoded = decoded_from((truth.objects[0], truth.objects[0]))
    result = match_objects(decoded, truth)
    assert result.num_correct == 1
    assert result.per_object == (True, False)


def test_estimate_object_count_on_clean_scenes(cbs):
    for L in (1, 2, 3, 4):
        for i in range(50):
            rng = np.random.default_rng(40 * L + i)
            s = encode_scene(cbs, random_scene(L, rng))
            assert estimate_object_count(s) == L
