from pathlib import Path

import pytest

from tde.cli import main
from tde.synthetic import make_corpus

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"


def run_cli(capsys, *argv):
    """Run the CLI in-process; return (exit code, stdout, stderr)."""
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def toy(tmp_path, capsys):
    """An ingested 8-document synthetic corpus with word vectors on disk."""
    corpus = make_corpus(docs_per_topic=2, boilerplate_sentences=2, seed=3)
    raw = tmp_path / "raw.jsonl"
    corpus.write_jsonl(raw)
    vecs = tmp_path / "vecs.txt"
    corpus.write_word_vectors(vecs)
    ingested = tmp_path / "corpus.jsonl"
    code, _, _ = run_cli(capsys, "ingest", raw, "-o", ingested)
    assert code == 0
    return {"dir": tmp_path, "corpus": ingested, "vectors": vecs, "synthetic": corpus}


_criteria = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark and (rep.when == "call" or rep.failed):
        name = mark.args[0]
        if hasattr(item, "callspec"):
            name += f" [{item.callspec.id}]"
        _criteria.append((name, rep.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _criteria:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
