#!/usr/bin/env python3
"""Run every verification campaign at headline scale and write one JSON
report per campaign.  Exits nonzero if any check fails."""

import argparse
import sys
import time
from pathlib import Path

from spdgig.maps import maps_campaign
from spdgig.stats import McConfig, direc_campaign, my_property_campaign, transport_campaign
from spdgig.yangbaxter import appendix_campaign, yb_campaign


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", type=Path, default=Path("verification_reports"))
    args = parser.parse_args()
    args.out_dir.mkdir(parents=True, exist_ok=True)

    campaigns = [
        ("maps", maps_campaign),
        ("yang_baxter", yb_campaign),
        ("appendix", appendix_campaign),
        ("transport", transport_campaign),
        ("mc_direc", lambda: direc_campaign(McConfig())),
        ("mc_direc_control", lambda: direc_campaign(McConfig(mutation=True))),
        ("mc_my", lambda: my_property_campaign(McConfig(lam=1.0, alpha=1.0, beta=0.0))),
        ("mc_my_control", lambda: my_property_campaign(McConfig(lam=1.0, alpha=1.0, beta=0.0, mutation=True))),
    ]

    all_ok = True
    for name, run in campaigns:
        start = time.monotonic()
        report = run()
        elapsed = time.monotonic() - start
        path = args.out_dir / f"{name}.json"
        report.write_json(path)
        status = "PASS" if report.passed else "FAIL"
        print(f"{status} {name:18s} ({elapsed:6.1f}s) -> {path}")
        if not report.passed:
            all_ok = False
            for check in report.results:
                if not check.passed:
                    print(f"     failed: {check.name} = {check.value:.6g} (threshold {check.threshold:g})")
    return 0 if all_ok else 1


if __name__ == "__main__":
    sys.exit(main())
