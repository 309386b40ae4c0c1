#!/usr/bin/env python3
"""Run the acceptance suite and show one line per criterion."""

import subprocess
import sys


def main():
    cmd = [sys.executable, "-m", "pytest", "tests/test_acceptance.py", "-q", "-s"]
    return subprocess.call(cmd)


if __name__ == "__main__":
    sys.exit(main())
