"""Run every shipped law through the wreath construction and tabulate the outcome.

    python3 scripts/reproduce_examples.py [--skip-antipode] [--json out.json]
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass, field

from weakhopf import build_wreath, build_wreath_antipode, verify_law, wreath_consistency_suite
from weakhopf.errors import PreconditionFailed
from weakhopf.gallery import GALLERY, build_gallery
from weakhopf.wha import NoAntipode, solve_antipode


@dataclass
class Config:
    # gallery entry -> parameter lists to try; entries without laws are skipped.
    cases: dict = field(default_factory=lambda: {
        "twist-cyclic": [["2", "2"], ["3", "3"]],
        "blown-up-nothing": [["1"], ["2"], ["3"]],
        "intro-kS": [[]],
        "intro-kSxZ2": [[]],
        "quantum-torus": [["2", "2"], ["3", "3"]],
        "double-cyclic": [["2"]],
        "double-matrix": [["2"]],
        "strictification": [["trivial"], ["inversion"], ["z4-cocycle"]],
        "matched-pair-s3": [[]],
        "matched-pair-klein": [[]],
    })
    antipode: bool = True
    json_out: str | None = None


@dataclass
class Row:
    case: str
    law_ok: bool
    dim: int | None = None
    product_ok: bool | None = None
    consistency_ok: bool | None = None
    antipode: str = "-"
    seconds: float = 0.0


def run_law(case: str, law, cfg: Config) -> Row:
    t0 = time.perf_counter()
    row = Row(case, verify_law(law).passed)
    if row.law_ok:
        w = build_wreath(law)
        row.dim, row.product_ok = w.dim, w.report.passed
        row.consistency_ok = wreath_consistency_suite(w).passed
        if cfg.antipode:
            try:
                build_wreath_antipode(w)
                row.antipode = "built from factors"
            except PreconditionFailed:
                row.antipode = "solved" if not isinstance(solve_antipode(w.product), NoAntipode) else "none"
    row.seconds = round(time.perf_counter() - t0, 3)
    return row


def main(cfg: Config) -> list[Row]:
    rows = []
    for name, param_sets in cfg.cases.items():
        if name not in GALLERY:
            print(f"skipping unknown gallery entry {name!r}")
            continue
        for params in param_sets:
            item = build_gallery(name, params)
            for law in item.laws.values():
                rows.append(run_law(" ".join([name, *params]), law, cfg))
    print(f"{'case':28} {'law':5} {'dim':>4} {'prod':5} {'cons':5} {'antipode':20} {'s':>7}")
    for r in rows:
        print(f"{r.case:28} {str(r.law_ok):5} {str(r.dim):>4} {str(r.product_ok):5} "
              f"{str(r.consistency_ok):5} {r.antipode:20} {r.seconds:7.3f}")
    if cfg.json_out:
        with open(cfg.json_out, "w", encoding="utf-8") as fh:
            json.dump([asdict(r) for r in rows], fh, indent=2)
    return rows


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--skip-antipode", action="store_true")
    ap.add_argument("--json", dest="json_out")
    a = ap.parse_args()
    main(Config(antipode=not a.skip_antipode, json_out=a.json_out))
