from __future__ import annotations

import json

import pytest

from isotree import ParseError, ValidationError, gen_path
from isotree.io import (
    division_to_json,
    export_dot,
    graph_to_json,
    load_graph_json,
    load_pgm_tri_grid,
    parse_division_json,
    parse_pgm,
    parse_tree_json,
    tree_to_json,
)
from isotree.oracle import brute_force_iso_tree
from isotree.tree import ValuedJDivision


class TestGraphJson:
    def test_path_document(self):
        doc = {
            "sites": [{"id": "a", "value": 0}, {"id": "b", "value": 1}, {"id": "c", "value": 2}],
            "adjacency": [["a", "b"], ["b", "c"]],
        }
        sg = load_graph_json(json.dumps(doc))
        assert sg == gen_path(3, [0, 1, 2])

    def test_roundtrip(self, peak, ramp3, plateau, disconnected_zone_grid):
        for sg in (peak, ramp3, plateau, disconnected_zone_grid):
            assert load_graph_json(graph_to_json(sg)) == sg

    def test_roundtrip_with_reference(self):
        sg = load_graph_json(
            '{"sites": [{"id": "a", "value": 1}, {"id": "b", "value": 2}],'
            ' "adjacency": [["a", "b"]], "reference": "b"}'
        )
        assert sg.reference == "b"
        assert load_graph_json(graph_to_json(sg)) == sg

    def test_duplicate_id(self):
        doc = {"sites": [{"id": "a", "value": 0}, {"id": "a", "value": 1}], "adjacency": []}
        with pytest.raises(ValidationError, match=r"sites\[1\]"):
            load_graph_json(json.dumps(doc))

    def test_empty_sites(self):
        with pytest.raises(ValidationError, match="non-empty"):
            load_graph_json('{"sites": [], "adjacency": []}')

    def test_self_loop(self):
        doc = {"sites": [{"id": "a", "value": 0}], "adjacency": [["a", "a"]]}
        with pytest.raises(ValidationError, match="self-loop"):
            load_graph_json(json.dumps(doc))

    def test_duplicate_pair(self):
        doc = {
            "sites": [{"id": "a", "value": 0}, {"id": "b", "value": 0}],
            "adjacency": [["a", "b"], ["b", "a"]],
        }
        with pytest.raises(ValidationError, match=r"adjacency\[1\]"):
            load_graph_json(json.dumps(doc))

    def test_unknown_adjacency_id(self):
        doc = {"sites": [{"id": "a", "value": 0}], "adjacency": [["a", "z"]]}
        with pytest.raises(ValidationError, match="unknown id"):
            load_graph_json(json.dumps(doc))

    def test_unknown_reference(self):
        doc = {"sites": [{"id": "a", "value": 0}], "adjacency": [], "reference": "z"}
        with pytest.raises(ValidationError, match="reference"):
            load_graph_json(json.dumps(doc))

    def test_boolean_value_rejected(self):
        doc = {"sites": [{"id": "a", "value": True}], "adjacency": []}
        with pytest.raises(ValidationError, match="number"):
            load_graph_json(json.dumps(doc))

    def test_malformed_json(self):
        with pytest.raises(ParseError):
            load_graph_json(b"{not json")


class TestTreeJson:
    def test_peak_document_shape(self, peak):
        doc = json.loads(tree_to_json(brute_force_iso_tree(peak)))
        assert len(doc["zones"]) == 3
        assert len(doc["edges"]) == 2
        assert doc["reference"] == "a"
        assert doc["referenceValue"] == 1

    def test_single_zone_document(self):
        doc = json.loads(tree_to_json(brute_force_iso_tree(gen_path(2, [4, 4]))))
        assert len(doc["zones"]) == 1
        assert doc["edges"] == []

    def test_parse_inverts_serialize(self, peak, plateau, disconnected_zone_grid):
        for sg in (peak, plateau, disconnected_zone_grid):
            tree = brute_force_iso_tree(sg)
            assert parse_tree_json(tree_to_json(tree)) == tree

    def test_serialize_is_byte_deterministic(self, disconnected_zone_grid):
        tree = brute_force_iso_tree(disconnected_zone_grid)
        text = tree_to_json(tree)
        assert tree_to_json(parse_tree_json(text)) == text

    def test_zone_id_must_be_least_site(self):
        doc = {
            "zones": [{"id": "b", "sites": ["a", "b"], "value": 0}],
            "edges": [],
            "reference": "a",
            "referenceValue": 0,
        }
        with pytest.raises(ValidationError, match="least site"):
            parse_tree_json(json.dumps(doc))

    def test_integral_floats_written_as_ints(self, peak):
        text = tree_to_json(brute_force_iso_tree(peak))
        assert '"value": 1' in text and '"value": 1.0' not in text


class TestDivisionJson:
    def test_roundtrip(self, peak):
        division = ValuedJDivision.of_tree(brute_force_iso_tree(peak))
        text = division_to_json(peak, division)
        sg, parsed = parse_division_json(text)
        assert sg == peak
        assert parsed == division

    def test_non_positive_gap(self, peak):
        division = ValuedJDivision.of_tree(brute_force_iso_tree(peak))
        doc = json.loads(division_to_json(peak, division))
        doc["cuts"][0]["gap"] = 0
        with pytest.raises(ValidationError, match="positive"):
            parse_division_json(json.dumps(doc))

    def test_cut_cannot_cover_every_site(self, peak):
        doc = json.loads(division_to_json(peak, ValuedJDivision([])))
        doc["cuts"] = [{"low": ["a", "b", "c"], "gap": 1}]
        with pytest.raises(ValidationError, match="whole site set"):
            parse_division_json(json.dumps(doc))

    def test_unknown_cut_site(self, peak):
        doc = json.loads(division_to_json(peak, ValuedJDivision([])))
        doc["cuts"] = [{"low": ["z"], "gap": 1}]
        with pytest.raises(ValidationError, match="unknown ids"):
            parse_division_json(json.dumps(doc))


class TestPgm:
    def test_ascii_2x2(self):
        sg = load_pgm_tri_grid(b"P2\n2 2\n255\n0 0 0 1\n")
        assert sg.values == {"r0c0": 0, "r0c1": 0, "r1c0": 0, "r1c1": 1}
        assert len(sg.graph.pairs) == 5

    def test_1x3_ramp_matches_generated_path_shape(self):
        sg = load_pgm_tri_grid(b"P2\n3 1\n255\n0 1 2\n")
        assert len(sg.graph) == 3
        assert len(sg.graph.pairs) == 2
        assert sorted(sg.values.values()) == [0, 1, 2]
        tree = brute_force_iso_tree(sg)
        assert [z.value for z in tree.zones] == [0, 1, 2]

    def test_binary_equals_ascii(self):
        ascii_bytes = b"P2\n2 3\n255\n0 10 20 30 40 50\n"
        binary_bytes = b"P5\n2 3\n255\n" + bytes([0, 10, 20, 30, 40, 50])
        assert load_pgm_tri_grid(ascii_bytes) == load_pgm_tri_grid(binary_bytes)

    def test_sixteen_bit_binary(self):
        payload = bytes([0x01, 0x00, 0x00, 0x02])  # 256, 2
        sg = load_pgm_tri_grid(b"P5\n2 1\n65535\n" + payload)
        assert sg.values == {"r0c0": 256, "r0c1": 2}

    def test_header_comments(self):
        sg = load_pgm_tri_grid(b"P2\n# a comment\n2 1\n# another\n10\n3 7\n")
        assert sg.values == {"r0c0": 3, "r0c1": 7}

    def test_bad_magic(self):
        with pytest.raises(ParseError, match="magic"):
            parse_pgm(b"P6\n1 1\n255\n\x00")

    def test_truncated_binary_payload_reports_offset(self):
        data = b"P5\n2 2\n255\n" + bytes([1, 2])
        with pytest.raises(ParseError, match="byte"):
            parse_pgm(data)

    def test_truncated_ascii(self):
        with pytest.raises(ParseError, match="pixel"):
            parse_pgm(b"P2\n2 2\n255\n0 1\n")

    def test_maxval_out_of_range(self):
        with pytest.raises(ParseError, match="maxval"):
            parse_pgm(b"P2\n1 1\n65536\n0\n")
        with pytest.raises(ParseError, match="maxval"):
            parse_pgm(b"P2\n1 1\n0\n0\n")

    def test_pixel_above_maxval(self):
        with pytest.raises(ParseError, match="exceeds maxval"):
            parse_pgm(b"P2\n1 1\n10\n11\n")

    def test_constant_image_yields_single_zone(self):
        sg = load_pgm_tri_grid(b"P2\n3 2\n9\n4 4 4 4 4 4\n")
        tree = brute_force_iso_tree(sg)
        assert len(tree.zones) == 1
        assert tree.zones[0].value == 4


class TestDot:
    def test_peak_rendering(self, peak):
        dot = export_dot(brute_force_iso_tree(peak))
        lines = dot.strip().splitlines()
        assert lines[0] == "digraph isotree {"
        assert lines[-1] == "}"
        assert '"a" [label="value=1 |sites|=1"];' in dot
        assert '"b" [label="value=3 |sites|=1"];' in dot
        assert '"a" -> "b" [label="2"];' in dot
        assert '"c" -> "b" [label="3"];' in dot

    def test_single_zone(self):
        dot = export_dot(brute_force_iso_tree(gen_path(2, [1, 1])))
        assert dot.count("->") == 0
        assert dot.count("[label=") == 1

    def test_deterministic(self, disconnected_zone_grid):
        tree = brute_force_iso_tree(disconnected_zone_grid)
        assert export_dot(tree) == export_dot(tree)

    def test_zone_size_in_label(self, plateau):
        dot = export_dot(brute_force_iso_tree(plateau))
        assert '"a" [label="value=0 |sites|=2"];' in dot
