"""Smoke test for the pygbsiso extension.

Build and install first:
    pip install --no-build-isolation -e crates/python
"""

import json
import math
from fractions import Fraction
from pathlib import Path

import pygbsiso

ROOT = Path(__file__).resolve().parent.parent


def main():
    k4 = [[0 if i == j else 1 for j in range(4)] for i in range(4)]
    assert pygbsiso.hafnian(k4) == 3
    k10 = [[0 if i == j else 1 for j in range(10)] for i in range(10)]
    assert pygbsiso.hafnian(k10) == 945

    rows = pygbsiso.orbit_list(6, 9)
    assert len(rows) == 11
    assert rows[1] == ([0, 0, 0, 0, 1, 1, 1, 1, 2], 630, False)
    assert sum(size for _, size, _ in rows) == math.comb(6 + 8, 8)

    edge = pygbsiso.Graph(2, [(0, 1)])
    for m in range(5):
        haf, p = pygbsiso.event_probability(edge, [m, m], c=Fraction(1, 2))
        assert haf == math.factorial(m)
        assert math.isclose(p, 0.75 * 0.25**m, rel_tol=1e-14)

    g1 = pygbsiso.Graph.from_graph6("ECRw")
    g2 = pygbsiso.Graph.from_graph6("ECuo")
    assert g1.order == 6 and g1.to_graph6() == "ECRw"
    report = pygbsiso.compare(g1, g2)
    assert report["verdict"] == "DISTINGUISHED", report
    assert report["threshold_orbit"] == [0, 0, 1, 1, 1, 1], report
    assert report["separating_criterion"] == "multiset", report

    srg = [
        pygbsiso.Graph.from_graph6(line)
        for line in (ROOT / "crates/core/tests/data/srg16.g6").read_text().split()
    ]
    c = "10/69"
    expected = math.prod(math.sqrt(1 - (l / 6.9) ** 2) for l in [6] + [2] * 6 + [-2] * 9)
    for g in srg:
        assert math.isclose(pygbsiso.prefactor(g, c=c), expected, rel_tol=1e-12)
    certs = [json.loads(pygbsiso.certify(g, max_photons=4, c=c)) for g in srg]
    one4 = [0] * 12 + [1] * 4
    recs = [next(r for r in cert["records"] if r["orbit"] == one4) for cert in certs]
    assert recs[0]["sum"] == recs[1]["sum"] == "888"
    assert recs[0]["multiset"] != recs[1]["multiset"]
    assert pygbsiso.compare(srg[0], srg[1], c=c)["verdict"] == "DISTINGUISHED"

    try:
        pygbsiso.compare(edge, g1)
    except ValueError:
        pass
    else:
        raise AssertionError("mismatched orders accepted")

    print("pygbsiso smoke test passed")


if __name__ == "__main__":
    main()
