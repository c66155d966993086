#!/usr/bin/env python3
"""
Launcher for the variety-jump command line; see `variety-jump.py --help`.
"""
import importlib.util
import sys

REQUIRED = ("networkx", "numpy", "click")


def preflight_check() -> bool:
    """
    Check that the dependencies are importable before loading the CLI.
    Prints clear guidance and returns False if a required package is missing.
    """
    ok = True
    for name in REQUIRED:
        if importlib.util.find_spec(name) is None:
            print(
                f"ERROR: Python package '{name}' is not installed for {sys.executable}\n"
                "Fix: ./scripts/setup.sh (or: pip install -r requirements.txt)",
                file=sys.stderr,
            )
            ok = False

    # DOT export only
    if importlib.util.find_spec("pydot") is None:
        print("WARNING: pydot is missing; export-dot will fail.", file=sys.stderr)

    return ok


def main() -> int:
    if not preflight_check():
        print("Pre-flight check failed. Fix the errors above and retry.", file=sys.stderr)
        return 1

    from cli import main as cli_main

    return cli_main(sys.argv[1:])


if __name__ == "__main__":
    raise SystemExit(main())
