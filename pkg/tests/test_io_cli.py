import json

import pytest

from citenoise import analyze, builtin_fixture
from citenoise.cli import run_cli
from citenoise.errors import (
    NonBinaryEntry,
    ParseError,
    SchemaVersionUnsupported,
    UnknownFixture,
)
from citenoise.fixtures import fixture_names
from citenoise import io as cio

from conftest import random_system


class TestFixtures:
    def test_names(self):
        assert fixture_names() == ["table1", "table2", "table3"]

    def test_table1(self):
        s = builtin_fixture("table1")
        r = analyze(s)
        assert (s.n_citing, s.n_cited) == (10, 5)
        assert [c.tc for c in r.cited_paper_stats] == [6, 7, 5, 4, 1]

    def test_table2(self):
        s = builtin_fixture("table2")
        assert (s.n_citing, s.n_cited) == (10, 4)
        assert analyze(s).bias == 0.0

    def test_table3(self):
        s = builtin_fixture("table3")
        r = analyze(s)
        assert (s.n_citing, s.n_cited) == (11, 5)
        assert all(c.tc == c.ec for c in r.cited_paper_stats)

    def test_unknown(self):
        with pytest.raises(UnknownFixture):
            builtin_fixture("table9")


class TestSystemDocuments:
    def test_json_round_trip(self, tmp_path, rng):
        for _ in range(5):
            s = random_system(rng)
            path = tmp_path / "sys.json"
            cio.save_system(s, path)
            assert cio.load_system(path) == s

    def test_csv_round_trip(self, tmp_path, rng):
        for _ in range(5):
            s = random_system(rng)
            rp, ap = tmp_path / "R.csv", tmp_path / "A.csv"
            cio.save_system_csv(s, rp, ap)
            assert cio.load_system_csv(rp, ap) == canonical_author_order(s)

    def test_formats_agree(self, tmp_path):
        s = builtin_fixture("table1")
        cio.save_system(s, tmp_path / "sys.json")
        cio.save_system_csv(s, tmp_path / "R.csv", tmp_path / "A.csv")
        from_json = cio.load_system(tmp_path / "sys.json")
        from_csv = cio.load_system_csv(tmp_path / "R.csv", tmp_path / "A.csv")
        assert from_json == from_csv == s

    def test_loaded_table1_analyzes_correctly(self, tmp_path):
        cio.save_system(builtin_fixture("table1"), tmp_path / "t1.json")
        r = analyze(cio.load_system(tmp_path / "t1.json"))
        assert r.sigma_sys == pytest.approx(0.18, abs=5e-3)

    def test_non_binary_value_positioned(self, tmp_path):
        doc = cio.system_to_document(builtin_fixture("table1"))
        doc["realized"][0][0] = 2
        p = tmp_path / "bad.json"
        p.write_text(cio.dump_json(doc))
        with pytest.raises(NonBinaryEntry, match=r"\[0\]\[0\]"):
            cio.load_system(p)

    def test_csv_non_binary_positioned(self, tmp_path):
        s = builtin_fixture("table1")
        cio.save_system_csv(s, tmp_path / "R.csv", tmp_path / "A.csv")
        lines = (tmp_path / "R.csv").read_text().splitlines()
        lines[1] = lines[1].replace("0", "2", 1)
        (tmp_path / "R.csv").write_text("\n".join(lines) + "\n")
        with pytest.raises(ParseError, match="R.csv:2"):
            cio.load_system_csv(tmp_path / "R.csv", tmp_path / "A.csv")

    def test_schema_version_check(self, tmp_path):
        doc = cio.system_to_document(builtin_fixture("table1"))
        doc["schema_version"] = "99"
        p = tmp_path / "v99.json"
        p.write_text(cio.dump_json(doc))
        with pytest.raises(SchemaVersionUnsupported):
            cio.load_system(p)

    def test_report_printed_fields_round_half_up(self):
        s = builtin_fixture("table1")
        doc = cio.report_to_document(analyze(s), s)
        assert doc["printed"]["sigma_ln"] == 0.06
        assert doc["printed"]["sigma_pn"] == 0.17
        assert doc["printed"]["sigma_sys"] == 0.18
        assert cio._round_printed(0.125) == 0.13  # half up, not banker's


def canonical_author_order(system):
    """Reindex authors by first appearance in citing-paper order.

    The CSV pair format carries no separate author list, so loading
    recovers authors in first-appearance order; normalizing the original
    the same way makes round-trips comparable structurally.
    """
    from citenoise import build_system

    order = []
    for _, ai in system.citing_papers:
        if ai not in order:
            order.append(ai)
    remap = {old: new for new, old in enumerate(order)}
    return build_system(
        [system.author_ids[i] for i in order],
        [(pid, remap[ai]) for pid, ai in system.citing_papers],
        system.cited_paper_ids,
        system.realized,
        system.accurate,
    )


def write_config(tmp_path, **kw):
    p = tmp_path / "config.json"
    p.write_text(json.dumps(kw))
    return str(p)


class TestCli:
    def test_analyze_table_output(self, tmp_path, capsys):
        fx = tmp_path / "t1.json"
        cio.save_system(builtin_fixture("table1"), fx)
        assert run_cli(["analyze", "--input", str(fx), "--format", "table"]) == 0
        out = capsys.readouterr().out
        assert "sigma_LN  0.06" in out
        assert "sigma_PN  0.17" in out
        assert "sigma_SYS 0.18" in out

    def test_analyze_json_matches_table_rounding(self, tmp_path, capsys):
        fx = tmp_path / "t1.json"
        cio.save_system(builtin_fixture("table1"), fx)
        run_cli(["analyze", "--input", str(fx)])
        doc = json.loads(capsys.readouterr().out)
        assert doc["printed"]["pa_mean"] == 0.54
        assert doc["sigma_sys"] == pytest.approx(0.18, abs=5e-3)

    def test_analyze_csv_pair(self, tmp_path, capsys):
        s = builtin_fixture("table1")
        cio.save_system_csv(s, tmp_path / "R.csv", tmp_path / "A.csv")
        code = run_cli(
            ["analyze", "--input", str(tmp_path / "R.csv"), str(tmp_path / "A.csv")]
        )
        assert code == 0
        assert json.loads(capsys.readouterr().out)["printed"]["sigma_ln"] == 0.06

    def test_simulate_writes_loadable_system(self, tmp_path):
        config = write_config(
            tmp_path, seed=5, n_authors=3, papers_per_author=2, n_cited=4,
            base_error=0.2,
        )
        out = tmp_path / "sys.json"
        latent = tmp_path / "latent.json"
        code = run_cli(
            ["simulate", "--config", config, "--out", str(out), "--latent", str(latent)]
        )
        assert code == 0
        assert cio.load_system(out).n_citing == 6
        sidecar = json.loads(latent.read_text())
        assert len(sidecar["flip_probs"]) == 6

    def test_simulate_requires_seed(self, tmp_path, capsys):
        config = write_config(tmp_path, n_authors=2, papers_per_author=2, n_cited=2)
        assert run_cli(["simulate", "--config", config]) == 2

    def test_seed_flag_overrides_config(self, tmp_path):
        config = write_config(
            tmp_path, seed=1, n_authors=2, papers_per_author=2, n_cited=3,
            base_error=0.3,
        )
        o1, o2, o3 = (tmp_path / f"s{i}.json" for i in range(3))
        run_cli(["simulate", "--config", config, "--out", str(o1)])
        run_cli(["simulate", "--config", config, "--seed", "2", "--out", str(o2)])
        run_cli(["simulate", "--config", config, "--seed", "1", "--out", str(o3)])
        assert o1.read_bytes() == o3.read_bytes()
        assert o1.read_bytes() != o2.read_bytes()

    def test_retest_document(self, tmp_path, capsys):
        config = write_config(
            tmp_path, seed=9, n_authors=4, papers_per_author=3, n_cited=5,
            base_error=0.3, replicates=10,
        )
        assert run_cli(["retest", "--config", config]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["stable_sigma"] >= 0.0
        assert doc["occasion_sigma"] > 0.0

    def test_aggregate_csv(self, tmp_path, capsys):
        config = write_config(tmp_path, seed=3, should_cite_prob=0.5)
        code = run_cli(
            ["aggregate", "--config", config, "--ns", "100", "--trials", "200"]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert out.splitlines()[0] == "n,empirical_se,theoretical_se"
        assert "0.0500" in out.splitlines()[1].split(",")[2]

    def test_audit_command(self, tmp_path, capsys):
        (tmp_path / "refs.txt").write_text("A\nB\n")
        (tmp_path / "intext.txt").write_text("A\nB\nC\n")
        (tmp_path / "jt.txt").write_text(
            "Cited work | Section | Knowledge flowed\nA | S | x\nB | S | y\n"
        )
        code = run_cli(
            ["audit", "--refs", str(tmp_path / "refs.txt"),
             "--intext", str(tmp_path / "intext.txt"), "--jt", str(tmp_path / "jt.txt")]
        )
        assert code == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["unjustified_citations"] == ["c"]
        assert doc["coverage_ratio"] == pytest.approx(2 / 3)

    def test_omissions_command(self, tmp_path, capsys):
        (tmp_path / "sim.json").write_text(json.dumps({
            "papers": [{"id": "old", "timestamp": 0}, {"id": "new", "timestamp": 1}],
            "scores": [[0, 0.9], [0.9, 0]],
        }))
        (tmp_path / "cites.json").write_text(json.dumps({
            "papers": ["old", "new"], "cites": [[0, 0], [0, 0]],
        }))
        code = run_cli(
            ["omissions", "--sim", str(tmp_path / "sim.json"),
             "--citations", str(tmp_path / "cites.json"), "--k", "1"]
        )
        assert code == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["flags"] == [{"citing": "new", "earlier": "old", "flag": 1}]

    def test_fixtures_dump(self, tmp_path):
        out = tmp_path / "t2.json"
        assert run_cli(["fixtures", "--name", "table2", "--out", str(out)]) == 0
        assert cio.load_system(out) == builtin_fixture("table2")

    def test_unknown_fixture_is_usage_error(self, capsys):
        assert run_cli(["fixtures", "--name", "table9"]) == 2

    def test_parse_error_exit_code(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert run_cli(["analyze", "--input", str(bad)]) == 1
        assert "error:" in capsys.readouterr().err

    def test_byte_determinism(self, tmp_path):
        sim_cfg = write_config(
            tmp_path, seed=77, n_authors=3, papers_per_author=3, n_cited=4,
            base_error=0.25, replicates=5,
        )
        pairs = [
            (["simulate", "--config", sim_cfg], "sim"),
            (["retest", "--config", sim_cfg], "retest"),
            (["aggregate", "--config", sim_cfg, "--ns", "10,100", "--trials", "300"],
             "agg"),
        ]
        for argv, stem in pairs:
            a, b = tmp_path / f"{stem}_a.out", tmp_path / f"{stem}_b.out"
            assert run_cli([*argv, "--out", str(a)]) == 0
            assert run_cli([*argv, "--out", str(b)]) == 0
            assert a.read_bytes() == b.read_bytes()
