import io

import pytest

from cyclelab import Digraph
from cyclelab import cli
from cyclelab.formats import emit_edges, emit_mask, parse_line, read_checkpoint
from cyclelab.verifier import EnumerationCursor, full_range, sweep


def run(argv):
    out = io.StringIO()
    code = cli.main(argv, out=out)
    return code, out.getvalue().splitlines()


@pytest.fixture
def k22_file(tmp_path, k22):
    p = tmp_path / "k22.txt"
    p.write_text(emit_edges(k22))
    return p


class TestCheck:
    def test_k22_condition_c(self, k22_file):
        code, lines = run(["check", str(k22_file), "--condition", "c"])
        assert code == 0
        assert parse_line(lines[0])["verdict"] == "true"
        assert len(lines) == 3

    def test_failure_exit_2(self, tmp_path):
        p = tmp_path / "k23.txt"
        p.write_text(emit_mask(Digraph.complete_bipartite(2, 3)))
        code, lines = run(["check", str(p)])
        assert code == 2
        assert parse_line(lines[0])["failures"] == "3"


class TestSpectrumClassify:
    def test_spectrum_c5(self, tmp_path):
        p = tmp_path / "c5.txt"
        p.write_text(emit_edges(Digraph.cycle(5)))
        code, lines = run(["spectrum", str(p)])
        assert code == 0
        assert parse_line(lines[0])["lengths"] == "5"

    def test_classify(self, k22_file):
        code, lines = run(["classify", str(k22_file)])
        assert code == 0
        assert lines == ["kind=classification n=4 classification=complete-bipartite"]


class TestVerify:
    def test_n4_main(self):
        code, lines = run(["verify", "--n", "4", "--theorem", "main"])
        assert code == 0
        f = parse_line(lines[0])
        assert f["counterexamples"] == "0" and f["total"] == "4096"

    def test_range_and_theorem_c(self):
        code, lines = run(["verify", "--n", "5", "--theorem", "c", "--range", "0:50000"])
        assert code == 0
        f = parse_line(lines[0])
        assert (f["lo"], f["hi"], f["theorem"]) == ("0", "50000", "c")

    def test_sampled(self):
        code, lines = run(["verify", "--n", "6", "--seed", "11", "--samples", "5000"])
        assert code == 0
        f = parse_line(lines[0])
        assert f["mode"] == "sampled" and f["seed"] == "11" and f["total"] == "5000"

    def test_counterexamples_exit_3(self, monkeypatch):
        # a stand-in sweep that reports the mined K*_{2,2} records as counterexamples
        real = cli.sweep

        def fake(cursor, mode, jobs=1, engine="kernel"):
            return real(cursor, "mine", jobs, engine).__class__(
                **{**real(cursor, "mine", jobs, engine).__dict__, "theorem": mode}
            )

        monkeypatch.setattr(cli, "sweep", fake)
        code, lines = run(["verify", "--n", "4"])
        assert code == 3
        assert parse_line(lines[0])["verified"] == "false"
        masks = {parse_line(l)["mask"] for l in lines[1:]}
        assert len(masks) == len(lines) - 1 == 27

    def test_checkpoint_resume(self, tmp_path):
        cp = tmp_path / "cp.txt"
        code, lines = run(["verify", "--n", "5", "--range", "0:300000", "--checkpoint", str(cp), "--checkpoint-every", "65536"])
        assert code == 0
        state = read_checkpoint(cp)
        assert state.next == 300000
        full = lines[0]
        # simulate an interrupted run: rewind the checkpoint to a chunk boundary
        partial = sweep(EnumerationCursor(5, 0, 131072), "main")
        rewound = state.__class__(state.theorem, 5, None, 0, 300000, 131072, partial.counts(), ())
        cp.write_text(rewound.to_line() + "\n")
        code, lines = run(["verify", "--n", "5", "--range", "0:300000", "--checkpoint", str(cp)])
        assert code == 0 and lines[0] == full

    def test_checkpoint_mismatch(self, tmp_path):
        cp = tmp_path / "cp.txt"
        run(["verify", "--n", "4", "--checkpoint", str(cp)])
        code, _ = run(["verify", "--n", "4", "--theorem", "c", "--checkpoint", str(cp)])
        assert code == 64

    def test_jobs_env(self, monkeypatch):
        monkeypatch.setenv("CYCLELAB_JOBS", "2")
        code, lines = run(["verify", "--n", "4"])
        assert code == 0
        assert lines[0] == run(["verify", "--n", "4", "--jobs", "1"])[1][0]


class TestMine:
    def test_n4_stdout(self):
        code, lines = run(["mine", "--n", "4"])
        assert code == 0
        assert len(lines) == 27
        assert all(parse_line(l)["kind"] == "mined" for l in lines)

    def test_n4_out_file_appends(self, tmp_path):
        out = tmp_path / "mined.txt"
        run(["mine", "--n", "4", "--out", str(out)])
        code, lines = run(["mine", "--n", "4", "--out", str(out)])
        assert code == 0
        assert parse_line(lines[0])["records"] == "27"
        assert len(out.read_text().splitlines()) == 54


class TestErrors:
    def test_unknown_flag(self, capsys):
        with pytest.raises(SystemExit) as info:
            cli.main(["verify", "--n", "4", "--bogus"])
        assert info.value.code == 64

    def test_unknown_subcommand(self):
        with pytest.raises(SystemExit) as info:
            cli.main(["frobnicate"])
        assert info.value.code == 64

    def test_missing_file(self, tmp_path):
        code, _ = run(["spectrum", str(tmp_path / "nope.txt")])
        assert code == 74

    def test_malformed_file(self, tmp_path):
        p = tmp_path / "bad.txt"
        p.write_text("n 3\n0 0\n")
        code, _ = run(["check", str(p)])
        assert code == 65

    def test_bad_range(self):
        assert run(["verify", "--n", "4", "--range", "0:5000"])[0] == 64
        with pytest.raises(SystemExit) as info:
            cli.main(["verify", "--n", "4", "--range", "oops"])
        assert info.value.code == 64

    def test_samples_need_seed(self):
        assert run(["verify", "--n", "6", "--samples", "10"])[0] == 64
        assert run(["verify", "--n", "6", "--seed", "1"])[0] == 64

    def test_main_theorem_small_n(self):
        assert run(["verify", "--n", "3"])[0] == 64
        assert run(["verify", "--n", "3", "--theorem", "c"])[0] == 0
