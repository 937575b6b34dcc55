"""Rewrite tests/golden/*.out from the current CLI. Review the diff before committing."""
import contextlib
import io
import os
from pathlib import Path

from crscore.cli import main

from cli_cases import CASES

HERE = Path(__file__).parent


def run(argv):
    out = io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(io.StringIO()):
        code = main(argv)
    return code, out.getvalue()


if __name__ == "__main__":
    (HERE / "golden").mkdir(exist_ok=True)
    os.chdir(HERE / "data")
    for name, argv, expected in CASES:
        code, text = run(argv)
        assert code == expected, (name, code)
        (HERE / "golden" / f"{name}.out").write_text(text, encoding="utf-8", newline="\n")
        print(f"{name}: exit {code}")
