import json

import numpy as np
import pytest

from neumannlab.boxspec import Box
from neumannlab.errors import ConfigError
from neumannlab.experiments import (CSV_COLUMNS, ExperimentConfig,
                                    expected_row_count, generate_domain,
                                    load_default_config, run_sweep)
from neumannlab.geometry import ConvexPolygon


def tiny_config(**overrides):
    doc = {
        "schema": 1,
        "seed": 99,
        "mc_samples": 10000,
        "fem_levels": 3,
        "k_values": [1, 2],
        "domains": [
            {"id": "square", "type": "polygon",
             "vertices": [[0, 0], [1, 0], [1, 1], [0, 1]]},
            {"id": "box", "type": "box", "sides": [1.0, 2.0]},
        ],
    }
    doc.update(overrides)
    return ExperimentConfig.from_json(doc)


class TestConfigValidation:
    def test_empty_domains_rejected(self):
        with pytest.raises(ConfigError):
            tiny_config(domains=[])

    def test_bad_k_rejected(self):
        with pytest.raises(ConfigError):
            tiny_config(k_values=[0, 1])

    def test_random_hull_needs_seed(self):
        with pytest.raises(ConfigError):
            tiny_config(domains=[{"id": "h", "type": "random_hull",
                                  "points": 10}])

    def test_duplicate_ids_rejected(self):
        with pytest.raises(ConfigError):
            tiny_config(domains=[{"id": "a", "type": "box", "sides": [1]},
                                 {"id": "a", "type": "box", "sides": [2]}])

    def test_too_few_samples_rejected(self):
        with pytest.raises(ConfigError):
            tiny_config(mc_samples=100)

    def test_unknown_schema_rejected(self):
        with pytest.raises(ConfigError):
            tiny_config(schema=99)

    def test_hash_stable_under_key_order(self):
        a = tiny_config()
        b = tiny_config()
        assert a.config_hash() == b.config_hash()


class TestGenerateDomain:
    def test_rectangle_aspect(self):
        p = generate_domain({"type": "rectangle", "aspect": 4})
        np.testing.assert_allclose(sorted(map(tuple, p.vertices)),
                                   [(0, 0), (0, 4), (1, 0), (1, 4)])

    def test_regular_hexagon(self):
        p = generate_domain({"type": "regular_polygon", "sides": 6,
                             "circumradius": 1.0})
        assert p.num_vertices == 6
        np.testing.assert_allclose(np.linalg.norm(p.vertices, axis=1), 1.0)

    def test_random_hull_deterministic(self):
        a = generate_domain({"type": "random_hull", "points": 20, "seed": 7})
        b = generate_domain({"type": "random_hull", "points": 20, "seed": 7})
        np.testing.assert_array_equal(a.vertices, b.vertices)
        assert a.num_vertices >= 3

    def test_box(self):
        b = generate_domain({"type": "box", "sides": [1, 2, 3]})
        assert isinstance(b, Box)
        assert b.n == 3

    def test_unknown_type_rejected(self):
        with pytest.raises(ConfigError):
            generate_domain({"type": "moebius"})


class TestRunSweep:
    def test_smoke_rows_and_proven_pass(self, tmp_path):
        cfg = tiny_config()
        report = run_sweep(cfg, out_dir=str(tmp_path))
        assert len(report.rows) == expected_row_count(cfg)
        assert report.errors == []
        assert report.proven_failures == []
        csv_path = tmp_path / "sweep.csv"
        lines = csv_path.read_text().splitlines()
        assert lines[0] == ",".join(CSV_COLUMNS)
        assert len(lines) == 1 + len(report.rows)
        doc = json.loads((tmp_path / "sweep.json").read_text())
        assert doc["provenance"]["config_hash"] == cfg.config_hash()

    def test_byte_identical_reruns(self, tmp_path):
        cfg = tiny_config()
        run_sweep(cfg, out_dir=str(tmp_path / "a"))
        run_sweep(cfg, out_dir=str(tmp_path / "b"))
        assert (tmp_path / "a/sweep.csv").read_bytes() == \
               (tmp_path / "b/sweep.csv").read_bytes()

    def test_parallel_jobs_identical_output(self, tmp_path):
        cfg = tiny_config()
        run_sweep(cfg, out_dir=str(tmp_path / "serial"), jobs=1)
        run_sweep(cfg, out_dir=str(tmp_path / "par"), jobs=2)
        assert (tmp_path / "serial/sweep.csv").read_bytes() == \
               (tmp_path / "par/sweep.csv").read_bytes()

    def test_component_errors_recorded_not_fatal(self):
        # fem_levels=0 leaves the square fan with 5 vertices: spectra up to
        # m=4 exist, but k=4 needs lam(5) and errors per-row
        cfg = tiny_config(fem_levels=0, k_values=[1, 4],
                          domains=[{"id": "square", "type": "polygon",
                                    "vertices": [[0, 0], [1, 0], [1, 1], [0, 1]]}])
        report = run_sweep(cfg)
        assert report.errors
        assert len(report.rows) == expected_row_count(cfg)
        assert any(r["pass"] == "error" for r in report.rows)

    def test_aggregates_match_row_extrema(self):
        cfg = tiny_config()
        report = run_sweep(cfg)
        for name, agg in report.aggregates.items():
            consts = [r["implied_constant"] for r in report.rows
                      if r["inequality"] == name
                      and r["implied_constant"] is not None]
            assert agg["min"] == min(consts)
            assert agg["max"] == max(consts)
            assert agg["count"] == len(consts)

    def test_seventeen_digit_round_trip(self, tmp_path):
        cfg = tiny_config()
        report = run_sweep(cfg, out_dir=str(tmp_path))
        lines = (tmp_path / "sweep.csv").read_text().splitlines()[1:]
        by_key = {}
        for line in lines:
            parts = line.split(",")
            by_key[(parts[0], parts[1], parts[3])] = parts[6]
        for row in report.rows:
            if row["implied_constant"] is None:
                continue
            text = by_key[(row["inequality"], row["domain_id"], str(row["k"]))]
            assert float(text) == row["implied_constant"]

    def test_max_gap_ratio_recorded(self):
        report = run_sweep(tiny_config())
        # the [1,2] box has lam2/lam1 = 4, the largest gap in this config
        assert report.provenance["max_gap_ratio"] == pytest.approx(4.0,
                                                                   rel=1e-12)


class TestDefaultConfig:
    def test_loads_and_validates(self):
        cfg = load_default_config()
        assert cfg.k_values == list(range(1, 51))
        kinds = {d["type"] for d in cfg.domains}
        assert "box" in kinds and "random_hull" in kinds
        # envelope criteria need boxes of every dimension 2..6 and
        # polygon k capped at 10
        dims = {len(d["sides"]) for d in cfg.domains if d["type"] == "box"}
        assert dims == {2, 3, 4, 5, 6}
        assert all(d.get("k_max") == 10 for d in cfg.domains
                   if d["type"] != "box")
