"""Run the reproduction checks and write a JSON summary.

    python3 scripts/reproduce_all.py --tier full --out results/reproduction.json
"""

from __future__ import annotations

import argparse
import json
import platform
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from acyclic import __version__
from acyclic.reproduce import run_checks


@dataclass
class ReproduceConfig:
    tier: str = "full"
    only: list[int] | None = None
    out: Path = Path("results/reproduction.json")
    extra: dict = field(default_factory=dict)


def parse_args(argv=None) -> ReproduceConfig:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--tier", choices=("fast", "full"), default="full")
    p.add_argument("--only", type=lambda s: [int(x) for x in s.split(",")], default=None)
    p.add_argument("--out", type=Path, default=ReproduceConfig.out)
    a = p.parse_args(argv)
    return ReproduceConfig(tier=a.tier, only=a.only, out=a.out)


def main(cfg: ReproduceConfig) -> int:
    start = time.monotonic()
    results = run_checks(cfg.tier, only=set(cfg.only) if cfg.only else None,
                         progress=lambda r: print(r.line(), flush=True))
    summary = {
        "config": {**asdict(cfg), "out": str(cfg.out)},
        "version": __version__,
        "python": platform.python_version(),
        "seconds": round(time.monotonic() - start, 2),
        "passed": sum(r.passed for r in results),
        "total": len(results),
        "results": [r.to_dict() for r in results],
    }
    cfg.out.parent.mkdir(parents=True, exist_ok=True)
    cfg.out.write_text(json.dumps(summary, indent=2) + "\n")
    print(f"{summary['passed']}/{summary['total']} passed -> {cfg.out}")
    return 0 if summary["passed"] == summary["total"] else 1


if __name__ == "__main__":
    sys.exit(main(parse_args()))
