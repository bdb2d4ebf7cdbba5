import math

import numpy as np
import pytest

from sinrcap import build_graph, build_instance, capacity_single_source
from sinrcap.cli import main, parse_config_text
from sinrcap.errors import ConfigError
from sinrcap.io import instance_from_text, instance_to_text, load_instance, save_instance
from conftest import full_connectivity_graph, synthetic_instance

SMALL_CONFIG = """
# small deterministic setup
n = 40
m = 8
h = 1
l = 1
power = constant
p0 = 10.0
trials = 3
seed = 7
cbar_trials = 20
"""


@pytest.fixture
def config_file(tmp_path):
    path = tmp_path / "small.cfg"
    path.write_text(SMALL_CONFIG)
    return path


class TestConfigParsing:
    def test_round_trip_values(self):
        values = parse_config_text(SMALL_CONFIG)
        assert values["n"] == 40 and values["p0"] == 10.0 and values["power"] == "constant"

    def test_unknown_key(self):
        with pytest.raises(ConfigError):
            parse_config_text("wavelength = 3")

    def test_malformed_line(self):
        with pytest.raises(ConfigError):
            parse_config_text("n 40")


class TestGenerate:
    def test_writes_instance_and_summary(self, tmp_path, config_file, capsys):
        out = tmp_path / "run"
        assert main(["generate", "--config", str(config_file), "--out", str(out)]) == 0
        printed = capsys.readouterr().out
        assert "nodes 40" in printed
        assert (out / "instance.txt").exists()

    def test_same_seed_identical_files(self, tmp_path, config_file):
        out1, out2 = tmp_path / "a", tmp_path / "b"
        main(["generate", "--config", str(config_file), "--out", str(out1)])
        main(["generate", "--config", str(config_file), "--out", str(out2)])
        assert (out1 / "instance.txt").read_bytes() == (out2 / "instance.txt").read_bytes()

    def test_seed_flag_overrides(self, tmp_path, config_file):
        out1, out2 = tmp_path / "a", tmp_path / "b"
        main(["generate", "--config", str(config_file), "--out", str(out1)])
        main(["generate", "--config", str(config_file), "--out", str(out2), "--seed", "8"])
        assert (out1 / "instance.txt").read_bytes() != (out2 / "instance.txt").read_bytes()

    def test_bad_config_exits_2(self, tmp_path):
        bad = tmp_path / "bad.cfg"
        bad.write_text("n = -5")
        assert main(["generate", "--config", str(bad), "--out", str(tmp_path / "x")]) == 2
        assert main(["generate", "--config", str(tmp_path / "missing.cfg"), "--out", str(tmp_path / "y")]) == 2


class TestCapacity:
    def test_diamond_fixture(self, tmp_path, capsys):
        inst = synthetic_instance(h=1, m=2, l=1)
        cap = np.zeros((4, 4))
        cap[0, 1] = cap[0, 2] = cap[1, 3] = cap[2, 3] = 1.0
        from conftest import graph_from_matrix

        path = tmp_path / "diamond.txt"
        save_instance(path, inst, graph_from_matrix(inst, cap))
        assert main(["capacity", str(path)]) == 0
        out = capsys.readouterr().out
        assert "capacity 2" in out
        assert "destination 3" in out

    def test_round_trip_matches_library(self, tmp_path, config_file, capsys):
        out = tmp_path / "gen"
        main(["generate", "--config", str(config_file), "--out", str(out)])
        capsys.readouterr()
        inst, graph = load_instance(out / "instance.txt")
        expected = capacity_single_source(graph, inst).value
        assert main(["capacity", str(out / "instance.txt")]) == 0
        printed = capsys.readouterr().out
        assert f"capacity {expected:.17g}".rstrip("0").rstrip(".") in printed or f"capacity {expected:.17g}" in printed

    def test_malformed_instance_exits_2(self, tmp_path):
        bad = tmp_path / "broken.txt"
        bad.write_text("this is not an instance file\n")
        assert main(["capacity", str(bad)]) == 2

    def test_missing_roles_exit_2(self, tmp_path):
        inst = synthetic_instance(h=1, m=2, l=1)
        graph = full_connectivity_graph(inst)
        text = instance_to_text(inst, graph).replace(" source", " none")
        path = tmp_path / "no_source.txt"
        path.write_text(text)
        assert main(["capacity", str(path)]) == 2


class TestExperiment:
    def test_interference_run(self, tmp_path, config_file, capsys):
        out = tmp_path / "exp"
        code = main(["experiment", "--study", "interference", "--config", str(config_file), "--out", str(out)])
        assert code == 0
        assert (out / "interference.csv").exists()
        assert (out / "interference.json").exists()
        lines = (out / "interference.csv").read_text().splitlines()
        assert lines[0] == "trial,node_id,J,I"
        assert len(lines) == 1 + 3 * 40

    def test_unknown_study_exits_2(self, tmp_path, config_file):
        assert main(["experiment", "--study", "percolation", "--config", str(config_file), "--out", str(tmp_path)]) == 2

    def test_oversized_cut_exits_2(self, tmp_path, config_file):
        code = main(
            ["experiment", "--study", "random-cut", "--config", str(config_file), "--out", str(tmp_path), "--k", "9"]
        )
        assert code == 2

    def test_oracle_clean_exit_0(self, tmp_path, config_file):
        out = tmp_path / "oracle"
        assert main(["experiment", "--study", "oracle", "--config", str(config_file), "--out", str(out)]) == 0

    def test_determinism_byte_identical(self, tmp_path, config_file):
        out1, out2 = tmp_path / "r1", tmp_path / "r2"
        for out in (out1, out2):
            main(["experiment", "--study", "random-cut", "--config", str(config_file), "--out", str(out), "--k", "3"])
        assert (out1 / "random_cut.csv").read_bytes() == (out2 / "random_cut.csv").read_bytes()
        assert (out1 / "random_cut.json").read_bytes() == (out2 / "random_cut.json").read_bytes()


class TestBounds:
    def test_table_with_contrived_unit_epsilon(self, capsys):
        n = 2000
        e_l = 4.0 * math.log(n) / (n - 1)
        assert main(["bounds", "--n", str(n), "--mean-attenuation", str(e_l)]) == 0
        out = capsys.readouterr().out
        line = next(l for l in out.splitlines() if l.startswith("interference_eps_lower"))
        assert "vacuous" in line
        value = float(line.split()[1])
        assert value == pytest.approx(1.0, rel=1e-9)

    def test_ratio_column(self, capsys):
        main(["bounds", "--n", "100", "--mean-attenuation", "0.5", "--m", "200", "--cbar", "0.4"])
        out = capsys.readouterr().out.splitlines()
        get = lambda name: float(next(l for l in out if l.startswith(name + " ")).split()[1])
        assert get("mincut_eps_upper") / get("mincut_eps_lower") == pytest.approx(math.sqrt(1.5), rel=1e-12)

    def test_chernoff_azuma_and_gap(self, capsys):
        code = main(
            [
                "bounds", "--n", "100", "--mean-attenuation", "0.5",
                "--chernoff", "100", "0.3",
                "--azuma", "3", "1", "2", "2",
                "--p-min", "0.01", "--p-max", "0.01",
            ]
        )
        assert code == 0
        out = capsys.readouterr().out.splitlines()
        get = lambda name: float(next(l for l in out if l.startswith(name + " ")).split()[1])
        assert get("chernoff_lower") == pytest.approx(math.exp(-4.5), rel=1e-12)
        assert get("azuma_bound") == pytest.approx(math.exp(-0.5), rel=1e-12)
        assert get("annulus_gap_constant") == 0.0

    def test_invalid_numerics_exit_2(self):
        assert main(["bounds", "--n", "100", "--mean-attenuation", "-0.5"]) == 2


class TestInstanceFormat:
    def test_text_round_trip(self):
        inst = synthetic_instance(h=2, m=3, l=2, extra=1, p0=0.05)
        graph = full_connectivity_graph(inst)
        text = instance_to_text(inst, graph)
        loaded_inst, loaded_graph = instance_from_text(text)
        assert np.array_equal(loaded_inst.positions, inst.positions)
        assert np.array_equal(loaded_inst.powers, inst.powers)
        assert np.array_equal(loaded_inst.sources, inst.sources)
        assert np.array_equal(loaded_inst.relays, inst.relays)
        assert np.array_equal(loaded_inst.destinations, inst.destinations)
        assert np.array_equal(loaded_graph.cap, graph.cap)
        assert instance_to_text(loaded_inst, loaded_graph) == text
