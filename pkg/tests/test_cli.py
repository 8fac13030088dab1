"""End-to-end tests for the drindex command line."""

import tempfile

# Add src to path for imports
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.cli.index_file import read_index
from src.cli.main import build_parser, main


@pytest.fixture
def temp_dir():
    """Create temporary directory with a small input text."""
    with tempfile.TemporaryDirectory() as tmpdir:
        root = Path(tmpdir)
        (root / "text.txt").write_bytes(b"bbabba")
        yield root


@pytest.fixture(autouse=True)
def quiet_config(monkeypatch, temp_dir):
    """Keep the run independent of the bundled config and the environment."""
    config = temp_dir / "drindex.yaml"
    config.write_text("index:\n  fanout: 4\nlogging:\n  level: WARNING\n")
    monkeypatch.setenv("DRINDEX_CONFIG", str(config))
    monkeypatch.delenv("DRINDEX_DEBUG_TRACE", raising=False)
    monkeypatch.delenv("DRINDEX_LOG_LEVEL", raising=False)


def build(temp_dir: Path, *extra: str) -> Path:
    index = temp_dir / "text.drx"
    args = ["build", "--input", str(temp_dir / "text.txt"), "--index", str(index), *extra]
    assert main(args) == 0
    return index


def test_build(temp_dir, capsys):
    """build prints n, r and n/r."""
    index = build(temp_dir, "--block-size", "2")
    assert capsys.readouterr().out.strip() == "n=7 r=4 n/r=1.75"
    assert read_index(index).text() == b"bbabba\x00"


def test_build_with_oracle_bootstrap(temp_dir, capsys):
    """Small inputs can be built from sorted suffixes."""
    build(temp_dir, "--bootstrap-oracle")
    assert "r=4" in capsys.readouterr().out

    code = main(
        [
            "build",
            "--input",
            str(temp_dir / "text.txt"),
            "--index",
            str(temp_dir / "other.drx"),
            "--bootstrap-oracle",
            "--oracle-cap",
            "3",
        ]
    )
    assert code == 1
    assert "exceed the oracle cap" in capsys.readouterr().err


def test_build_rejects_sentinel_byte(temp_dir, capsys):
    """Input files may not contain 0x00."""
    (temp_dir / "text.txt").write_bytes(b"ab\x00c")
    code = main(["build", "--input", str(temp_dir / "text.txt"), "--index", str(temp_dir / "x")])
    assert code == 1
    assert "0x00" in capsys.readouterr().err


def test_count_and_locate(temp_dir, capsys):
    """One output line per pattern, in input order."""
    index = build(temp_dir)
    patterns = temp_dir / "patterns.txt"
    patterns.write_bytes(b"bb\nzz\n")
    capsys.readouterr()

    assert main(["count", "--index", str(index), "--pattern", "ab", "--pattern", "b"]) == 0
    assert capsys.readouterr().out.splitlines() == ["1 1", "2 4"]

    assert main(["locate", "--index", str(index), "--patterns", str(patterns)]) == 0
    assert capsys.readouterr().out.splitlines() == ["1 1 4", "2"]


def test_query_without_patterns(temp_dir, capsys):
    """At least one pattern is required."""
    index = build(temp_dir)
    assert main(["count", "--index", str(index)]) == 1
    assert "at least one" in capsys.readouterr().err


def test_edit_then_verify(temp_dir, capsys):
    """The worked example through the CLI, then an oracle check."""
    index = build(temp_dir)
    script = temp_dir / "edits.txt"
    script.write_text('I 6 "b"\n')
    capsys.readouterr()

    assert main(["edit", "--index", str(index), "--script", str(script)]) == 0
    assert capsys.readouterr().out.startswith("insert_char K=3 iters=5 ")

    args = ["verify", "--index", str(index), "--input", str(temp_dir / "text.txt")]
    assert main([*args, "--script", str(script)]) == 0
    assert capsys.readouterr().out.strip() == "OK n=8 r=4"

    assert main(args) == 1
    assert "BWT: first difference at 6" in capsys.readouterr().out


def test_edit_keeps_earlier_operations(temp_dir, capsys):
    """A rejected operation leaves the earlier ones on disk."""
    index = build(temp_dir)
    script = temp_dir / "edits.txt"
    script.write_text("I 1 61\nD 1 50\n")

    assert main(["edit", "--index", str(index), "--script", str(script)]) == 1
    assert "operation 2" in capsys.readouterr().err
    assert read_index(index).text() == b"abbabba\x00"


def test_edit_with_bad_script_changes_nothing(temp_dir, capsys):
    """Parse errors are reported before the first edit."""
    index = build(temp_dir)
    script = temp_dir / "edits.txt"
    script.write_text("I 1 61\nbogus\n")

    assert main(["edit", "--index", str(index), "--script", str(script)]) == 1
    assert "line 2" in capsys.readouterr().err
    assert read_index(index).text() == b"bbabba\x00"


def test_verify_refuses_large_texts(temp_dir, capsys):
    """The oracle cap applies to verify."""
    index = build(temp_dir)
    code = main(
        [
            "verify",
            "--index",
            str(index),
            "--input",
            str(temp_dir / "text.txt"),
            "--oracle-cap",
            "5",
        ]
    )
    assert code == 1
    assert "exceeds oracle cap" in capsys.readouterr().err


def test_stats(temp_dir, capsys):
    """Text statistics of bbabba$."""
    assert main(["stats", "--input", str(temp_dir / "text.txt")]) == 0
    assert capsys.readouterr().out.strip() == "sigma=2 n=7 r=4 L_avg=1.00 L_max=3 n/r=1.75"


def test_bench(temp_dir, capsys):
    """Three timing lines; an empty workload reports zero runs."""
    index = build(temp_dir)
    capsys.readouterr()
    args = ["bench", "--index", str(index), "--seed", "1"]

    assert main([*args, "--operations", "0", "--pattern-count", "0"]) == 0
    assert capsys.readouterr().out.splitlines() == [
        "insert_char: 0.00 ± 0.00 us (0 runs)",
        "backward_search: 0.00 ± 0.00 us (0 runs)",
        "locate: 0.00 ± 0.00 us (0 runs)",
    ]

    assert main([*args, "--operations", "5", "--pattern-count", "3", "--pattern-length", "2"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].endswith("(5 runs)")
    assert lines[2].endswith("(3 runs)")


def test_missing_index_file(temp_dir, capsys):
    """OS errors become exit status 1."""
    assert main(["count", "--index", str(temp_dir / "absent.drx"), "--pattern", "a"]) == 1
    assert "error:" in capsys.readouterr().err


def test_parser_requires_a_command():
    """argparse exits with status 2 on usage errors."""
    with pytest.raises(SystemExit) as info:
        build_parser().parse_args([])
    assert info.value.code == 2


if __name__ == "__main__":
    pytest.main([__file__, "-v", "-s"])
