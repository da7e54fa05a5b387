"""Rewrite tests/golden/ from the current CLI. Review the diff before committing."""

import io
import pathlib

from contexture.cli import run
from cli_cases import CASES

HERE = pathlib.Path(__file__).parent

if __name__ == "__main__":
    for name, argv, _ in CASES:
        buf = io.StringIO()
        run([a.format(data=HERE / "data") for a in argv] + ["--threads", "1"], stdout=buf)
        (HERE / "golden" / f"{name}.txt").write_text(buf.getvalue())
