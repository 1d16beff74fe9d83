#!/usr/bin/env python3
"""End-to-end smoke test for the terqf_py extension module.

Build and install first:
    pip install -e crates/python --no-build-isolation
"""

from fractions import Fraction

import terqf_py as tq


def main() -> None:
    # Forms, counts, and automorphs.
    s = tq.TernaryForm(1, 1, 1, 0, 0, 0)
    assert s.discriminant() == 4 and s.is_positive_definite()
    assert s.representation_count(19) == 24
    assert len(s.representations(19)) == 24
    assert s.theta_counts(6) == [1, 6, 12, 8, 6, 24, 24]
    assert s.aut_order() == 48 and len(s.automorphs()) == 48

    worked = tq.TernaryForm.parse("1,3,4,3,1,0")
    assert worked.aut_order() == 8
    assert sorted(len(orbit) for orbit in worked.orbits(19)) == [4, 8]
    assert worked.essential_count(19) == 2 and not worked.is_essentially_unique(19)

    # Local densities are exact Fractions; Siegel matches enumeration.
    assert s.local_density(2, 1) == Fraction(3, 2)
    assert s.local_density(2, 7) == 0
    for n in (1, 19, 90, 443):
        assert s.siegel_count(n) == s.representation_count(n)
    explain = s.siegel_explain(19)
    assert explain["n"] == 19 and "l_value" in explain

    # Unique-representation pipeline.
    assert s.scan_unique(20) == [1, 2, 3, 4, 5, 6, 8, 10, 11, 12, 13, 14, 16, 19, 20]
    pentagonal = tq.TernaryForm(5, 13, 20, -12, 4, 2)
    solution = pentagonal.prelist()
    assert solution["prelist"] == [5, 13, 16, 21, 32, 37, 85, 93, 133, 253]
    assert solution["spurious"] == [45]
    refined = pentagonal.unique_list()
    assert refined["unique"] == [5, 13, 16, 21, 32, 37, 93, 133, 253]

    # Class groups and the catalog.
    assert tq.class_number(-23) == 3
    group = tq.class_group(-84)
    assert group["h"] == 4 and group["label"] == "Z2xZ2"
    assert len(tq.catalog(8)) == 527

    # Identities and a reproduction target.
    verdicts = tq.verify_identities(200)
    assert len(verdicts) >= 30 and all(v["pass"] for v in verdicts)
    report = tq.reproduce("theorem-4.2")
    assert report["pass"] and all(c["pass"] for c in report["checks"])
    assert "table1" in tq.reproduction_targets()

    print("smoke test passed")


if __name__ == "__main__":
    main()
