"""Exhaustive finite matrix-group verifications.

Everything the density heuristics lean on about GL_2 over small rings is
checked here by brute force: the order formula, the local count behind the
prime-charpoly density, unipotent generation of SL_2, and the commutator
subgroup of GL_2 over F_5 and over F_5[u]/(u^2).

Usage: python demos/group_checks.py
"""

import json
import time

from drinfeld import check_group_report


def main():
    t0 = time.monotonic()
    report = check_group_report(5)
    elapsed = time.monotonic() - t0

    for check in report["checks"]:
        name = check["name"]
        ok = "ok" if check["ok"] else "FAIL"
        detail = {k: v for k, v in check.items() if k not in ("name", "ok")}
        print(f"[{ok}] {name}: {json.dumps(detail)}")

    print()
    print(f"all checks pass: {report['ok']}   ({elapsed:.1f}s)")


if __name__ == "__main__":
    main()
