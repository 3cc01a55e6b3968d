"""Acceptance criteria, one test and one printed PASS/FAIL line each.

Every comparison is exact: rational-function equality by cross-multiplication
(ratfunc_eq), series equality coefficient by coefficient.  No floating point
enters, so the tolerance of every criterion is zero.
"""
import sys

import pytest

from flagvertex.suite import CRITERIA, run_criterion

TOLERANCE = {
    1: "exact (ratfunc_eq per coefficient, z-degree <= 8)",
    2: "exact (coefficientwise; n=2 degree <= 8, n=3 degree <= 3)",
    3: "exact (coefficientwise to degree 8, and cross-multiplied rational identities)",
    4: "exact (limit equals 1 as a rational function, truncation degree 4)",
    5: "exact (constant term equals 1)",
    6: "exact (multiset equality of weights)",
    7: "exact (zero disagreements allowed)",
    8: "exact (rank of rational matrices over Q)",
    9: "exact (identical series to degree 8)",
    10: "exact (single monomial shift verified at every degree <= 6)",
}


def format_line(result: dict) -> str:
    verdict = "PASS" if result["passed"] else "FAIL"
    return (f"[{verdict}] criterion {result['id']:>2} {result['title']}: {result['detail']} "
            f"| tolerance {TOLERANCE[result['id']]} | {result['seconds']:.2f}s")


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, capsys):
    result = run_criterion(number, "full")
    with capsys.disabled():
        print("\n" + format_line(result))
    assert result["passed"], result["detail"]


if __name__ == "__main__":
    results = [run_criterion(c[0], "full") for c in CRITERIA]
    for r in results:
        print(format_line(r))
    sys.exit(0 if all(r["passed"] for r in results) else 1)
