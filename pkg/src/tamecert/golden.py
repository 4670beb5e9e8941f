"""Golden-file fixtures for the command line.

``fixtures/<name>/input.args`` holds the argument list, one per line, where
``{dir}`` stands for the fixture directory.  Other ``input.*`` files are the
payloads it refers to.  ``expected.json`` stores the exit code, the parsed
stdout (JSON when possible) and stderr, as canonical JSON.
"""
from __future__ import annotations

import argparse
import difflib
import io
import json
import sys
from contextlib import redirect_stderr, redirect_stdout
from dataclasses import dataclass
from pathlib import Path

from .certify import canonical_json
from .cli import main as cli_main

FIXTURES = Path(__file__).resolve().parents[2] / "fixtures"


@dataclass
class GoldenResult:
    name: str
    ok: bool
    diff: str


def fixture_names(root: Path = FIXTURES) -> list[str]:
    return sorted(p.name for p in root.iterdir() if (p / "input.args").exists())


def run_fixture(name: str, root: Path = FIXTURES) -> str:
    d = root / name
    argv = [a.replace("{dir}", str(d)) for a in (d / "input.args").read_text().splitlines() if a.strip()]
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = cli_main(argv)
    text = out.getvalue()
    try:
        payload = json.loads(text)
    except json.JSONDecodeError:
        payload = text
    return canonical_json({"exit_code": code, "stdout": payload, "stderr": err.getvalue()})


def run_golden(name: str, root: Path = FIXTURES) -> GoldenResult:
    expected = (root / name / "expected.json").read_text()
    got = run_fixture(name, root)
    if got == expected:
        return GoldenResult(name, True, "")
    diff = "".join(difflib.unified_diff(expected.splitlines(True), got.splitlines(True),
                                        "expected.json", "actual"))
    return GoldenResult(name, False, diff)


def regen(name: str, root: Path = FIXTURES) -> None:
    (root / name / "expected.json").write_text(run_fixture(name, root))


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="python -m tamecert.golden")
    ap.add_argument("names", nargs="*")
    ap.add_argument("--regen", action="store_true")
    ap.add_argument("--root", type=Path, default=FIXTURES)
    args = ap.parse_args(argv)
    names = args.names or fixture_names(args.root)
    bad = 0
    for n in names:
        if args.regen:
            regen(n, args.root)
        res = run_golden(n, args.root)
        print(f"{'PASS' if res.ok else 'FAIL'} {n}")
        if not res.ok:
            bad += 1
            sys.stdout.write(res.diff)
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
