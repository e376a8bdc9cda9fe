"""The ten acceptance criteria, one test and one printed PASS/FAIL line each.

Every criterion is an exact check (tolerance 0: counts must match exactly,
verdicts must be identical).  Run directly with ``python3 tests/test_acceptance.py``
for the summary lines alone.
"""

import sys

import pytest

from semiflat import reproduce

TOLERANCE = 0  # every criterion is exact

CRITERIA = [
    (1, "matrix", "M2(chain4): A=[[0,1],[2,3]] not regular; chain4 regular"),
    (2, "chain3-summand", "chain3 regular, Sa={0,a} not a direct summand"),
    (3, "theta", "theta_M iso for catalog pairs |S|,|M|<=5, |S||M|<=20"),
    (4, "z4-witness", "Z/4 subtractive, not regular; Z/2 not S-m/i/e-flat"),
    (5, "inclusions", "e-flat => i-flat, m-flat => i-flat over six semirings"),
    (6, "routes", "definition / sequence / theta_I routes agree"),
    (7, "closure", "direct sums and retracts"),
    (8, "oracles", "theta, sum and bounded-route oracles; zero uncertified tensors"),
    (9, "bezout", "ABC, Bezout, normally generated => S-m-flat"),
    (10, "exactness", "exactness lemmas on catalog families"),
]


def _extra_checks(name, row):
    v = row.verdict
    if name == "matrix":
        return v["chain4_vn_regular"] is True and v["A_regular"] is False and v["candidates"] == 256
    if name == "chain3-summand":
        return v["I"] == "{0,a}" and v["is_direct_summand"] is False and v["candidates"] == 3
    if name == "theta":
        return v["failures"] == 0 and v["pairs"] > 0
    if name == "z4-witness":
        return (v["m_flat"], v["i_flat"], v["e_flat"]) == (False, False, False) and v["witness_size"] == 2
    if name == "inclusions":
        return len(v) == 6 and all(s["violations"] == 0 for s in v.values())
    if name == "routes":
        return all(s["route_disagreements"] == 0 == s["theta_disagreements"] and s["pairs"] > 0
                   for s in v.values())
    if name == "closure":
        return all(c["violations"] == 0 for s in v.values() for c in s.values())
    if name == "oracles":
        t = v["totals"]
        return t["theta_failures"] == t["sum_failures"] == t["uncertified"] == t["bounded_disagreements"] == 0
    if name == "bezout":
        return all(s["abc"] == [True, True, True] and s["left_bezout"] and s["right_bezout"]
                   and s["refutations"] == 0 and s["normally_generated_checked"] > 0 for s in v.values())
    if name == "exactness":
        return all(c["violations"] == 0 and c["checked"] > 0 for s in v.values() for c in s.values())
    return False


@pytest.fixture(scope="module")
def ctx():
    return reproduce.Context()


def evaluate(number, name, ctx):
    row = reproduce.run_row(name, ctx)
    ok = row.status == "ok" and _extra_checks(name, row)
    line = f"criterion {number:>2} [{name}] {'PASS' if ok else 'FAIL'} (tolerance {TOLERANCE}, {row.seconds:.1f}s)"
    return ok, line, row


@pytest.mark.parametrize("number, name, what", CRITERIA, ids=[c[1] for c in CRITERIA])
def test_criterion(number, name, what, ctx, capsys):
    ok, line, row = evaluate(number, name, ctx)
    with capsys.disabled():
        print(f"\n{line}  {what}")
    assert ok, row.notes


if __name__ == "__main__":
    context = reproduce.Context()
    results = [evaluate(n, name, context) for n, name, _ in CRITERIA]
    for _, line, _ in results:
        print(line)
    sys.exit(0 if all(ok for ok, _, _ in results) else 1)
