"""Extended Paley two-vertex scan with per-q timing.

    python3 scripts/scan_paley.py --qmax 29
    python3 scripts/scan_paley.py --qmax 67 --full-range     # long run
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from acyclic.constructions import DEFAULT_SCAN_RANGE, FULL_SCAN_RANGE, paley_two_add_scan, scan_field


@dataclass
class ScanConfig:
    qmax: int = 29
    full_range: bool = False
    threads: int = 1
    max_seconds: float | None = None
    outdir: Path = Path("results/scan")


def parse_args(argv=None) -> ScanConfig:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--qmax", type=int, default=ScanConfig.qmax)
    p.add_argument("--full-range", action="store_true")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--max-seconds", type=float, default=None)
    p.add_argument("--outdir", type=Path, default=ScanConfig.outdir)
    a = p.parse_args(argv)
    return ScanConfig(a.qmax, a.full_range, a.threads, a.max_seconds, a.outdir)


def main(cfg: ScanConfig) -> int:
    pool = FULL_SCAN_RANGE if cfg.full_range else DEFAULT_SCAN_RANGE
    qs = [q for q in pool if q <= cfg.qmax]
    cfg.outdir.mkdir(parents=True, exist_ok=True)
    rows = []

    def progress(r):
        status = "complete" if r.complete else "incomplete"
        print(f"q={r.q:3d} sets={r.sets_examined:6d} pairs={r.pairs_examined:12d} "
              f"hits={len(r.hits):6d} {status} {r.elapsed:8.2f}s", flush=True)
        (cfg.outdir / f"scan_q{r.q}.json").write_text(json.dumps(r.to_dict(scan_field(r.q).labels)) + "\n")
        rows.append({"q": r.q, "hits": len(r.hits), "complete": r.complete, "seconds": round(r.elapsed, 3)})

    reports = paley_two_add_scan(qs, max_seconds=cfg.max_seconds, threads=cfg.threads, progress=progress)
    (cfg.outdir / "summary.json").write_text(json.dumps(rows, indent=1) + "\n")
    conjecture_range = [r for r in reports if r.q > 7]
    clean = all(r.complete and not r.hits for r in conjecture_range)
    print(f"q > 7: {'no two-vertex extension is a forest' if clean else 'see reports'}")
    return 0 if len(reports) == len(qs) and all(r.complete for r in reports) else 4


if __name__ == "__main__":
    sys.exit(main(parse_args()))
