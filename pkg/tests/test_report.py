"""Record construction, classification rules, and schema conformance."""

import hashlib
import json

import pytest

from walkiso.graphs import parse_graph6
from walkiso.isotest import Decision, TestConfig, iso_test
from walkiso.oracle import exact_isomorphic
from walkiso.report import (
    classify_pair,
    disagreement_record,
    falsification_record,
    file_sha256,
    hunt_summary,
    json_line,
    load_schema,
    pair_record,
    run_manifest,
    validate_json,
)

ROOK_4X4 = parse_graph6("O~`HW}GPHDaNaGPCcPWaN")
SHRIKHANDE = parse_graph6("OlfJHsHBGK_\\oHWKeBK_\\")


def test_json_line_is_key_sorted_and_compact():
    assert json_line({"b": 1, "a": [1, 2]}) == '{"a":[1,2],"b":1}'


def test_json_line_ignores_insertion_order():
    one = json_line({"x": 1, "y": {"q": 2, "p": 3}})
    two = json_line({"y": {"p": 3, "q": 2}, "x": 1})
    assert one == two


def test_file_sha256_matches_direct_hash(tmp_path):
    path = tmp_path / "blob.bin"
    payload = b"walk counts\n" * 1000
    path.write_bytes(payload)
    assert file_sha256(str(path)) == hashlib.sha256(payload).hexdigest()


# ---------------------------------------------------------------------------
# classification


def _verdict(decision):
    class Stub:
        pass

    stub = Stub()
    stub.decision = decision
    return stub


def test_classify_agreement_both_isomorphic():
    assert classify_pair(_verdict(Decision.ISOMORPHIC), "completed", True) == "agreement"


def test_classify_agreement_both_negative():
    assert classify_pair(_verdict(Decision.NOT_ISOMORPHIC), "completed", False) == "agreement"


def test_classify_disagreement():
    assert classify_pair(_verdict(Decision.ISOMORPHIC), "completed", False) == "disagreement"
    assert classify_pair(_verdict(Decision.NOT_ISOMORPHIC), "completed", True) == "disagreement"


def test_incomplete_oracle_is_always_unresolved():
    # A skipped or out-of-budget oracle must never be counted as agreement,
    # even when a stale isomorphic flag is passed alongside it.
    for status in ("skipped", "budget_exhausted"):
        for flag in (None, True, False):
            assert classify_pair(_verdict(Decision.ISOMORPHIC), status, flag) == "unresolved"


# ---------------------------------------------------------------------------
# record shapes against shipped schemas


def test_manifest_shape_and_schema():
    doc = run_manifest(
        "hunt",
        ["hunt", "--corpus", "x.g6"],
        "0.1.0",
        corpus={"path": "x.g6", "sha256": "0" * 64, "pairs": 1},
        settings={"jobs": 1},
    )
    assert doc["kind"] == "manifest"
    assert doc["tool"] == "walkiso"
    assert doc["command"] == "hunt"
    validate_json(doc, "manifest")


def test_verdict_json_meets_schema_with_diagonals():
    config = TestConfig(record_diagonals=True)
    verdict = iso_test(ROOK_4X4, SHRIKHANDE, config)
    doc = verdict.to_json_dict()
    validate_json(doc, "verdict")
    history = doc["diagonal_history"]
    assert len(history["graph1"]) == len(doc["multiplicity_history"]) == 15
    assert all(len(row) == 16 for row in history["graph1"])


def test_srg_pair_and_disagreement_records_meet_schemas():
    verdict = iso_test(ROOK_4X4, SHRIKHANDE, TestConfig(record_diagonals=True))
    result = exact_isomorphic(ROOK_4X4, SHRIKHANDE)
    oracle_doc = {
        "status": "completed",
        "isomorphic": result.isomorphic,
        "nodes_explored": result.nodes_explored,
    }
    classification = classify_pair(verdict, "completed", result.isomorphic)
    assert classification == "disagreement"

    pair = pair_record(0, ROOK_4X4, SHRIKHANDE, verdict, oracle_doc, classification,
                       source={"kind": "corpus", "lines": [1, 2]})
    validate_json(pair, "hunt_pair")
    assert pair["n"] == 16
    assert parse_graph6(pair["graph1"]) == ROOK_4X4
    assert parse_graph6(pair["graph2"]) == SHRIKHANDE

    dis = disagreement_record(0, ROOK_4X4, SHRIKHANDE, verdict, oracle_doc)
    validate_json(dis, "disagreement")
    assert dis["claim"] == "equal_diagonals_nonisomorphic"
    # the record alone reproduces the finding: graphs plus both judgments
    assert dis["verdict"]["decision"] == "Isomorphic"
    assert dis["oracle"]["isomorphic"] is False


def test_falsification_record_schema():
    event = {
        "claim": "distinct_matrices_identical_diagonals",
        "description": "diagonal probe returned Identical on unequal matrices",
        "matrix1": [[0, 1], [1, 0]],
        "matrix2": [[0, 0], [0, 0]],
    }
    doc = falsification_record(3, event)
    assert doc["kind"] == "falsification"
    assert doc["index"] == 3
    validate_json(doc, "falsification")
    validate_json(falsification_record(None, event), "falsification")


def test_hunt_summary_schema():
    doc = hunt_summary(
        pairs=10,
        agreements=8,
        disagreements=1,
        unresolved=1,
        falsifications=0,
        elapsed_s=1.23456789,
        disagreement_indices=[4],
    )
    assert doc["elapsed_s"] == 1.234568
    validate_json(doc, "hunt_summary")


def test_oracle_result_schema():
    doc = {"isomorphic": True, "mapping": [1, 0], "nodes_explored": 2}
    validate_json(doc, "oracle_result")
    validate_json({"isomorphic": False, "mapping": None, "nodes_explored": 7}, "oracle_result")


def test_validate_json_rejects_bad_classification():
    jsonschema = pytest.importorskip("jsonschema")
    verdict = iso_test(ROOK_4X4, SHRIKHANDE)
    doc = pair_record(0, ROOK_4X4, SHRIKHANDE, verdict,
                      {"status": "completed", "isomorphic": False, "nodes_explored": 1},
                      "disagreement")
    doc["classification"] = "maybe"
    with pytest.raises(jsonschema.ValidationError):
        validate_json(doc, "hunt_pair")


def test_load_schema_round_trips_as_json():
    for name in ("verdict", "oracle_result", "hunt_pair", "hunt_summary",
                 "manifest", "bench", "falsification", "disagreement"):
        schema = load_schema(name)
        assert schema["$id"] == f"walkiso/{name}.json"
        json.dumps(schema)


def test_load_schema_unknown_name():
    with pytest.raises(FileNotFoundError):
        load_schema("no_such_schema")
