"""Command-line interface: exit codes, outputs, determinism."""

import pytest

from oracle import oracle_map_vocabulary
from vocmap.cli import main
from vocmap.vocab import MappingRelation, load_gold

BAY = "http://example.org/vocab/term/k:natural/v:bay"


@pytest.fixture
def paths(fixtures_dir):
    return {
        "vocab": str(fixtures_dir / "vocab_mini.nt"),
        "wordnet": str(fixtures_dir / "wordnet_mini.json"),
        "gold": str(fixtures_dir / "gold_mini.nt"),
        "roots": str(fixtures_dir / "roots_mini.txt"),
    }


class TestCmdMap:
    def test_defaults_produce_outputs(self, paths, tmp_path):
        out = tmp_path / "run"
        code = main(["map", "--vocab", paths["vocab"],
                     "--wordnet", paths["wordnet"], "--out", str(out)])
        assert code == 0
        assert (out / "mapping.nt").exists()
        assert (out / "mapping.tsv").exists()
        assert (out / "run-report.txt").exists()
        assert len(load_gold((out / "mapping.nt").read_bytes())) > 0

    def test_missing_vocabulary_file_exits_1(self, paths, tmp_path):
        code = main(["map", "--vocab", str(tmp_path / "absent.nt"),
                     "--wordnet", paths["wordnet"],
                     "--out", str(tmp_path / "o")])
        assert code == 1

    def test_reruns_are_byte_identical(self, paths, tmp_path):
        out_a, out_b = tmp_path / "a", tmp_path / "b"
        for out in (out_a, out_b):
            assert main(["map", "--vocab", paths["vocab"],
                         "--wordnet", paths["wordnet"],
                         "--out", str(out)]) == 0
        for name in ("mapping.nt", "mapping.tsv", "run-report.txt"):
            assert (out_a / name).read_bytes() == (out_b / name).read_bytes()

    def test_optimal_configuration_matches_oracle(self, paths, tmp_path,
                                                  mini_store, mini_vocab,
                                                  mini_taxonomy):
        out = tmp_path / "opt"
        code = main(["map", "--vocab", paths["vocab"],
                     "--wordnet", paths["wordnet"],
                     "--min-overlap", "1", "--min-freq", "1",
                     "--taxonomy-roots", paths["roots"], "--out", str(out)])
        assert code == 0
        produced = load_gold((out / "mapping.nt").read_bytes()).triples
        oracle = oracle_map_vocabulary(mini_vocab, mini_store, ol_min=1,
                                       f_min=1, taxonomy=mini_taxonomy)
        expected = {(uri, MappingRelation(rel), synset)
                    for uri, rel, synset, _, _, _ in oracle}
        assert produced == expected

    def test_config_file_with_flag_override(self, paths, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("min-overlap = 5\nmin-freq = 1\n")
        out_cfg = tmp_path / "from-config"
        assert main(["map", "--vocab", paths["vocab"],
                     "--wordnet", paths["wordnet"], "--config", str(cfg),
                     "--out", str(out_cfg)]) == 0
        report = (out_cfg / "run-report.txt").read_text()
        assert "min_overlap: 5" in report
        out_flag = tmp_path / "flag-wins"
        assert main(["map", "--vocab", paths["vocab"],
                     "--wordnet", paths["wordnet"], "--config", str(cfg),
                     "--min-overlap", "2", "--out", str(out_flag)]) == 0
        assert "min_overlap: 2" in (out_flag / "run-report.txt").read_text()


class TestCmdSweep:
    def test_restricted_grid_row_count(self, paths, tmp_path):
        out = tmp_path / "sweep"
        code = main(["sweep", "--vocab", paths["vocab"],
                     "--wordnet", paths["wordnet"], "--gold", paths["gold"],
                     "--taxonomy-roots", paths["roots"],
                     "--ol-min", "1", "--f-min", "1", "--out", str(out)])
        assert code == 0
        lines = (out / "sweep.tsv").read_text().splitlines()
        assert len(lines) == 1 + 2  # header + taxonomy off/on

    def test_worker_counts_give_identical_bytes(self, paths, tmp_path):
        outputs = []
        for workers, name in ((1, "w1"), (10, "w10")):
            out = tmp_path / name
            assert main(["sweep", "--vocab", paths["vocab"],
                         "--wordnet", paths["wordnet"],
                         "--gold", paths["gold"],
                         "--taxonomy-roots", paths["roots"],
                         "--ol-min", "0,1,2", "--f-min", "0,1",
                         "--workers", str(workers), "--out", str(out)]) == 0
            outputs.append((out / "sweep.tsv").read_bytes())
        assert outputs[0] == outputs[1]

    def test_taxonomy_on_without_roots_is_usage_error(self, paths, tmp_path):
        code = main(["sweep", "--vocab", paths["vocab"],
                     "--wordnet", paths["wordnet"], "--gold", paths["gold"],
                     "--ol-min", "1", "--f-min", "1",
                     "--out", str(tmp_path / "x")])
        assert code == 2

    def test_taxonomy_off_only_needs_no_roots(self, paths, tmp_path):
        out = tmp_path / "no-roots"
        code = main(["sweep", "--vocab", paths["vocab"],
                     "--wordnet", paths["wordnet"], "--gold", paths["gold"],
                     "--taxonomy", "off", "--ol-min", "1", "--f-min", "1",
                     "--out", str(out)])
        assert code == 0
        assert len((out / "sweep.tsv").read_text().splitlines()) == 2

    def test_summary_written(self, paths, tmp_path):
        out = tmp_path / "sum"
        assert main(["sweep", "--vocab", paths["vocab"],
                     "--wordnet", paths["wordnet"], "--gold", paths["gold"],
                     "--taxonomy", "off", "--ol-min", "0,1",
                     "--f-min", "0", "--out", str(out)]) == 0
        summary = (out / "summary.tsv").read_text()
        assert summary.splitlines()[-1].startswith("upper_bound")


class TestCmdEval:
    def test_gold_against_itself(self, paths, capsys):
        assert main(["eval", "--mapping", paths["gold"],
                     "--gold", paths["gold"]]) == 0
        assert capsys.readouterr().out.strip() \
            == "P=1.0000 R=1.0000 F=1.0000"

    def test_disjoint_files(self, paths, tmp_path, capsys):
        other = tmp_path / "other.nt"
        other.write_text(
            f"<{BAY}> <http://www.w3.org/2004/02/skos/core#relatedMatch> "
            "<http://www.w3.org/2006/03/wn/wn20/instances/synset-group-noun-1>"
            " .\n")
        assert main(["eval", "--mapping", str(other),
                     "--gold", paths["gold"]]) == 0
        assert capsys.readouterr().out.strip() \
            == "P=0.0000 R=0.0000 F=0.0000"

    def test_three_of_four_correct(self, paths, tmp_path, capsys):
        gold_lines = (open(paths["gold"]).read()).splitlines(keepends=True)
        mapping = tmp_path / "m.nt"
        wrong = ("<http://example.org/vocab/term/k:landuse/v:field> "
                 "<http://www.w3.org/2004/02/skos/core#relatedMatch> "
                 "<http://www.w3.org/2006/03/wn/wn20/instances/"
                 "synset-group-noun-1> .\n")
        mapping.write_text("".join(gold_lines[:3]) + wrong)
        assert main(["eval", "--mapping", str(mapping),
                     "--gold", paths["gold"]]) == 0
        # P = 3/4, R = 3/7, F = 1.25*P*R / (0.25*P + R)
        assert capsys.readouterr().out.strip() \
            == "P=0.7500 R=0.4286 F=0.6522"


class TestCmdTaxonomy:
    def test_closure_file(self, paths, tmp_path):
        out = tmp_path / "closure.txt"
        assert main(["taxonomy", "--wordnet", paths["wordnet"],
                     "--roots", paths["roots"], "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[-1] == "# count: 18"
        names = lines[:-1]
        assert names == sorted(names)
        assert "riverbed-noun-1" in names
        assert "bay-noun-2" not in names

    def test_single_isolated_root(self, paths, tmp_path):
        roots = tmp_path / "roots.txt"
        roots.write_text("riverbed-noun-1\n")
        out = tmp_path / "closure.txt"
        assert main(["taxonomy", "--wordnet", paths["wordnet"],
                     "--roots", str(roots), "--out", str(out)]) == 0
        assert out.read_text() == "riverbed-noun-1\n# count: 1\n"

    def test_unknown_root_exits_1_naming_it(self, paths, tmp_path, capsys):
        roots = tmp_path / "roots.txt"
        roots.write_text("unicorn-noun-1\n")
        assert main(["taxonomy", "--wordnet", paths["wordnet"],
                     "--roots", str(roots)]) == 1
        assert "unicorn-noun-1" in capsys.readouterr().err


class TestCmdBaseline:
    def test_random_is_seed_deterministic(self, paths, tmp_path):
        payloads = []
        for name in ("a", "b"):
            out = tmp_path / name
            assert main(["baseline", "--kind", "random", "--seed", "42",
                         "--vocab", paths["vocab"],
                         "--wordnet", paths["wordnet"], "--out", str(out)]) == 0
            payloads.append((out / "mapping.nt").read_bytes())
        assert payloads[0] == payloads[1]

    def test_trigram_labels_threshold_one(self, paths, tmp_path):
        out = tmp_path / "tri"
        assert main(["baseline", "--kind", "trigram-labels",
                     "--threshold", "1.0", "--vocab", paths["vocab"],
                     "--wordnet", paths["wordnet"], "--out", str(out)]) == 0
        triples = load_gold((out / "mapping.nt").read_bytes()).triples
        assert len(triples) == 7
        assert all(r.value == "related" for _, r, _ in triples)

    def test_bad_kind_is_usage_error(self, paths):
        with pytest.raises(SystemExit) as err:
            main(["baseline", "--kind", "bogus", "--vocab", paths["vocab"],
                  "--wordnet", paths["wordnet"]])
        assert err.value.code == 2

    def test_trigram_definitions_scores_below_tuned_mapper(self, paths,
                                                           tmp_path, capsys):
        def _f_measure_of(arguments):
            assert main(arguments) == 0
            out = capsys.readouterr().out.strip()
            return float(out.rsplit("F=", 1)[1])

        tuned_out = tmp_path / "tuned"
        assert main(["map", "--vocab", paths["vocab"],
                     "--wordnet", paths["wordnet"],
                     "--min-overlap", "1", "--min-freq", "1",
                     "--taxonomy-roots", paths["roots"],
                     "--out", str(tuned_out)]) == 0
        baseline_out = tmp_path / "tri-def"
        assert main(["baseline", "--kind", "trigram-definitions",
                     "--threshold", "0.9", "--vocab", paths["vocab"],
                     "--wordnet", paths["wordnet"],
                     "--out", str(baseline_out)]) == 0
        tuned_f = _f_measure_of(["eval",
                                 "--mapping", str(tuned_out / "mapping.nt"),
                                 "--gold", paths["gold"]])
        baseline_f = _f_measure_of(["eval",
                                    "--mapping",
                                    str(baseline_out / "mapping.nt"),
                                    "--gold", paths["gold"]])
        assert baseline_f < tuned_f
