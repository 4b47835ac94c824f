#!/usr/bin/env python3
"""
Recompute the published anchor values and print a pass/fail table.

    python scripts/reproduce_anchors.py            # everything, including the diag(2,2,2) census
    python scripts/reproduce_anchors.py --quick    # skip the census and the H fiber
"""

import sys
from fractions import Fraction
from pathlib import Path
from typing import Callable, List, Tuple

from loguru import logger

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from lattice.counts import (  # noqa: E402
    build_s_set,
    count_half_shifted,
    count_pairs_imaginary_product,
    count_pairs_shifted_integral,
    count_pairs_shifted_shifted,
    orbits,
    table_diag222,
    triple_count,
)
from lattice.shells import shell_count  # noqa: E402
from qseries.arithmetic import sigma  # noqa: E402
from qseries.series import theta_E7  # noqa: E402
from restriction.named import parse_named_index  # noqa: E402
from restriction.service import restrict_eisenstein, restrict_ikeda  # noqa: E402

Anchor = Tuple[str, Callable[[], object], object]


def quick_anchors(jobs: int) -> List[Anchor]:
    e7 = theta_E7(7)
    anchors: List[Anchor] = [
        ("N_ioc(1..6) by enumeration", lambda: tuple(shell_count(n, imaginary=True) for n in range(1, 7)),
         (126, 756, 2072, 4158, 7560, 11592)),
        ("N_ioc(1..6) from theta_E7", lambda: tuple(e7[n] for n in range(1, 7)),
         (126, 756, 2072, 4158, 7560, 11592)),
        ("N_oc(n) = 240 sigma_3(n), n <= 20", lambda: all(shell_count(n) == 240 * sigma(3, n) for n in range(1, 21)), True),
        ("half units", count_half_shifted, 56),
        ("shifted-shifted pairs", count_pairs_shifted_shifted, 1512),
        ("shifted-integral pairs", count_pairs_shifted_integral, 4032),
        ("imaginary product pairs", count_pairs_imaginary_product, 7560),
        ("|S|", lambda: len(build_s_set()), 39),
        ("|S / S3|", lambda: len(orbits()), 16),
        ("|S_(1,1,1)(-1)|", lambda: triple_count(1, 1, 1, -1, jobs).count, 459648),
        ("|S_(1,1,1)(0)|", lambda: triple_count(1, 1, 1, 0, jobs).count, 1065960),
        ("|S_(1,1,1)(2)|", lambda: triple_count(1, 1, 1, 2, jobs).count, 7560),
    ]
    ikeda = [("D:1", 1), ("D:2", 228), ("G", 9744), ("S1", 0), ("W", 0)]
    for label, expected in ikeda:
        anchors.append((
            f"Ikeda weight 20 at {label}",
            lambda label=label: restrict_ikeda(parse_named_index(label), 20, route="both", jobs=jobs).value,
            expected,
        ))
    eisenstein = [
        ("u2", 16, Fraction(16320, 3617)),
        ("D:1", 12, Fraction(2 ** 7 * 3 ** 4 * 5 ** 3 * 7 * 13 ** 3, 691)),
        ("D:1", 14, Fraction(-979776)),
        ("D:1", 16, Fraction(2 ** 9 * 3 ** 7 * 5 ** 2 * 7 ** 2 * 17 * 43, 691 * 3617)),
    ]
    for label, weight, expected in eisenstein:
        anchors.append((
            f"Eisenstein weight {weight} at {label}",
            lambda label=label, weight=weight: restrict_eisenstein(parse_named_index(label), weight).value,
            expected,
        ))
    return anchors


def slow_anchors(jobs: int) -> List[Anchor]:
    return [
        ("|S_(2,1,1)(1)|", lambda: triple_count(2, 1, 1, 1, jobs).count, 3193344),
        ("|S_(2,1,1)(2)|", lambda: triple_count(2, 1, 1, 2, jobs).count, 671328),
        ("|S_(2,2,1)(3)|", lambda: triple_count(2, 2, 1, 3, jobs).count, 2032128),
        ("|S_(2,2,1)(4)|", lambda: triple_count(2, 2, 1, 4, jobs).count, 31752),
        ("|S_(2,2,2)(5)|", lambda: triple_count(2, 2, 2, 5, jobs).count, 1306368),
        ("diag(2,2,2) census", lambda: tuple(table_diag222(jobs).values()),
         (18192384, 3752952, 459648, 55188, 378, 2268, 1)),
        ("Ikeda weight 20 at H",
         lambda: restrict_ikeda(parse_named_index("H"), 20, route="both", jobs=jobs).value, 18124416),
    ]


def main():
    import argparse

    parser = argparse.ArgumentParser(description="Recompute the published anchor values")
    parser.add_argument("--quick", action="store_true", help="Skip the diag(2,2,2) census and the H fiber")
    parser.add_argument("--jobs", type=int, default=1, help="Worker processes")
    args = parser.parse_args()

    logger.info(f"🚀 Reproducing anchors with {args.jobs} job(s)")
    anchors = quick_anchors(args.jobs) + ([] if args.quick else slow_anchors(args.jobs))

    failures = 0
    for name, compute, expected in anchors:
        got = compute()
        if got == expected:
            logger.info(f"✅ {name}: {got}")
        else:
            failures += 1
            logger.error(f"❌ {name}: got {got}, expected {expected}")

    if failures:
        logger.error(f"{failures} of {len(anchors)} anchors failed")
        sys.exit(1)
    logger.info(f"🎉 All {len(anchors)} anchors reproduced")


if __name__ == "__main__":
    main()
