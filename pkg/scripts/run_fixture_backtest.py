#!/usr/bin/env python3
"""Run the full CLI pipeline on the committed synthetic fixture.

A smoke-level experiment: backtests all three variants on the 4-asset
panel in both compounding modes and leaves the artifacts under
out_fixture/<mode>/. Useful as a template for runs on real data.
"""

from __future__ import annotations

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
CONFIG = ROOT / "tests" / "fixtures" / "panel4" / "universe.yaml"

from fracparity.cli import main  # noqa: E402


def run() -> int:
    for mode in ("fixed_capital", "reinvest"):
        out = ROOT / "out_fixture" / mode
        # the fixture config pins fixed_capital; rewrite the mode per run
        text = CONFIG.read_text().replace("compounding: fixed_capital", f"compounding: {mode}")
        tmp_config = out.parent / f"universe_{mode}.yaml"
        tmp_config.parent.mkdir(parents=True, exist_ok=True)
        tmp_config.write_text(text.replace("csv: ", f"csv: {CONFIG.parent}/"))
        print(f"=== {mode} ===")
        code = main(["backtest", "--config", str(tmp_config), "--out", str(out)])
        if code != 0:
            return code
    return 0


if __name__ == "__main__":
    sys.exit(run())
