import json

import numpy as np
import pytest

from src.channel import GATES, choi, choi_distance, depolarizing, identity_channel, unitary_channel
from src.errors import DimensionMismatch, ParseError
from src.ingestion import (
    decode_bipartite,
    decode_cpmap,
    decode_ensemble,
    decode_matrix,
    decode_overlap,
    decode_povm,
    dumps,
    encode_bipartite,
    encode_cpmap,
    encode_ensemble,
    encode_matrix,
    encode_overlap,
    encode_povm,
    load_json,
    make_rng,
    parse_channel_spec,
    random_bipartite,
    random_channel,
    random_density,
    random_ensemble,
    random_isometry,
    random_overlap_instance,
    random_povm,
)


def through_json(obj):
    return json.loads(dumps(obj))


def test_encode_matrix_layout():
    obj = encode_matrix(np.array([[1.0, 2j], [0.0, -1.0]]))
    assert (obj["rows"], obj["cols"]) == (2, 2)
    assert obj["data"][1] == [0.0, 2.0]
    assert "dims" not in obj
    column = encode_matrix(np.array([1.0, 0.0, 0.0]), dims=(3,))
    assert (column["rows"], column["cols"], column["dims"]) == (3, 1, [3])


@pytest.mark.parametrize(
    "obj",
    [
        {"rows": 2, "cols": 2, "data": [[1, 0]]},
        {"cols": 1, "data": [[1, 0]]},
        {"rows": 1, "cols": 1, "data": [[1]]},
        {"rows": 1, "cols": 1, "data": [["x", 0]]},
        {"rows": 1, "cols": 1, "data": None},
    ],
)
def test_decode_matrix_rejects_malformed_objects(obj):
    with pytest.raises(ParseError):
        decode_matrix(obj)


def test_instances_survive_json(zero_one_plus, rng):
    e = decode_ensemble(through_json(encode_ensemble(zero_one_plus)))
    assert all(np.abs(a - b).max() < 1e-15 for a, b in zip(e.states, zero_one_plus.states))

    povm = random_povm(rng, 3, 2)
    decoded = decode_povm(through_json(encode_povm(povm)))
    assert all(np.abs(a - b).max() < 1e-15 for a, b in zip(decoded.elements, povm.elements))

    channel = random_channel(rng, 2, 3)
    assert choi_distance(decode_cpmap(through_json(encode_cpmap(channel))), channel) < 1e-14

    instance = random_overlap_instance(rng, 2, 3, 2)
    restored = decode_overlap(through_json(encode_overlap(instance)))
    assert np.abs(restored.mu - instance.mu).max() < 1e-15
    assert np.abs(restored.phi - instance.phi).max() < 1e-15

    rho, dims = random_bipartite(rng, 2, 3)
    rho_back, dims_back = decode_bipartite(through_json(encode_bipartite(rho, dims)))
    assert dims_back.dims == (2, 3)
    assert np.abs(rho_back - rho).max() < 1e-15


def test_decoders_reject_missing_fields():
    with pytest.raises(ParseError):
        decode_ensemble({"dim": 2})
    with pytest.raises(ParseError):
        decode_ensemble({"dim": 2, "states": "nope"})
    with pytest.raises(ParseError):
        decode_povm({"elements": [encode_matrix(np.eye(2))]})
    with pytest.raises(ParseError):
        decode_cpmap({"dim_in": 2, "kraus": [encode_matrix(np.eye(2))]})
    with pytest.raises(ParseError):
        decode_overlap({"dim_k": 2, "dim_h": 2})
    with pytest.raises(ParseError):
        decode_bipartite({"rho": encode_matrix(np.eye(4) / 4)})


def test_decoded_values_are_still_validated():
    with pytest.raises(DimensionMismatch):
        decode_bipartite({"dims": [2, 0], "rho": encode_matrix(np.eye(4) / 4)})


def test_load_json_errors(tmp_path):
    with pytest.raises(ParseError):
        load_json(str(tmp_path / "missing.json"))
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    with pytest.raises(ParseError):
        load_json(str(broken))
    listed = tmp_path / "list.json"
    listed.write_text("[1, 2]")
    with pytest.raises(ParseError):
        load_json(str(listed))
    garbled = tmp_path / "garbled.json"
    garbled.write_bytes(b"\xff\xfe\x00{")
    with pytest.raises(ParseError):
        load_json(str(garbled))
    with pytest.raises(ParseError):
        load_json(str(tmp_path))


def test_parse_named_channels():
    assert choi_distance(parse_channel_spec("depolarizing:p=0.5,d=2"), depolarizing(0.5, 2)) < 1e-15
    assert choi_distance(parse_channel_spec("depolarizing:p=0.3"), depolarizing(0.3, 2)) < 1e-15
    assert choi_distance(parse_channel_spec(" identity:d=3 "), identity_channel(3)) < 1e-15
    assert choi_distance(parse_channel_spec("unitary:h"), unitary_channel(GATES["H"])) < 1e-15
    for long_form in ("unitary:H(adamard)", "unitary:hadamard"):
        assert choi_distance(parse_channel_spec(long_form), unitary_channel(GATES["H"])) < 1e-15
    assert parse_channel_spec("amplitude_damping:gamma=0.2").is_channel


def test_parse_random_channel_is_seeded():
    m = parse_channel_spec("random:din=2,dout=3", rng=make_rng(7))
    assert (m.dim_in, m.dim_out, len(m.kraus)) == (2, 3, 6)
    again = parse_channel_spec("random:din=2,dout=3", rng=make_rng(7))
    assert np.abs(choi(m).matrix - choi(again).matrix).max() == 0.0
    assert len(parse_channel_spec("random:kraus=2", rng=make_rng(7)).kraus) == 2


def test_parse_channel_from_file(tmp_path, rng):
    channel = random_channel(rng, 2, 2)
    path = tmp_path / "channel.json"
    path.write_text(dumps(encode_cpmap(channel)))
    assert choi_distance(parse_channel_spec(str(path)), channel) < 1e-14


@pytest.mark.parametrize(
    "spec",
    [
        "bogus",
        "depolarizing",
        "depolarizing:p=abc",
        "depolarizing:p",
        "identity:q=2",
        "unitary:Q",
        "amplitude_damping:p=0.1",
        "missing.json",
    ],
)
def test_parse_channel_spec_errors(spec):
    with pytest.raises(ParseError):
        parse_channel_spec(spec)


def test_generators_are_deterministic():
    a = random_density(make_rng(5), 3)
    b = random_density(make_rng(5), 3)
    assert np.abs(a - b).max() == 0.0
    assert np.abs(a - random_density(make_rng(6), 3)).max() > 0.0


def test_generated_objects_are_valid(rng):
    u = random_isometry(rng, 5, 3)
    assert np.abs(u.conj().T @ u - np.eye(3)).max() < 1e-12
    with pytest.raises(DimensionMismatch):
        random_isometry(rng, 2, 3)
    assert random_povm(rng, 4, 3).is_complete
    assert np.linalg.matrix_rank(random_density(rng, 4, rank=2), tol=1e-10) == 2
    e = random_ensemble(rng, 3, 2, pure=True)
    assert sum(np.trace(rho).real for rho in e.states) == pytest.approx(1.0)
    assert all(np.linalg.matrix_rank(rho, tol=1e-10) == 1 for rho in e.states)
    assert random_channel(rng, 3, 2).is_channel
    with pytest.raises(DimensionMismatch):
        random_channel(rng, 4, 1, kraus=2)
