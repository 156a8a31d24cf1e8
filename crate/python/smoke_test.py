"""Smoke test for the zeta_towers extension module.

Build and install first, e.g. `pip install --no-build-isolation ./crates/python`.
"""

from fractions import Fraction
from pathlib import Path

import zeta_towers as zt

FIXTURES = Path(__file__).resolve().parent.parent / "crates" / "cli" / "fixtures"


def ex11():
    return zt.TowerDatum(
        2,
        ["v1", "v2"],
        [("v1", "v2", 1), ("v1", "v2", 2)],
        {"v1": "unramified", "v2": 1},
    )


def main():
    d = ex11()
    assert d.prime == 2 and d.n1 == 1
    assert zt.TowerDatum.from_file(str(FIXTURES / "ex11.json")).to_json() == d.to_json()

    z = d.zeta(2)
    assert z["kappa"] == 32 and z["chi"] == -2
    assert z["h"] == [1, 0, 2, 0, -9, 0, -20, 0, -1, 0, 18, 0, 9]

    rows = d.lfunctions(2)
    assert [r["c_exponent"] for r in rows] == [0, 1, 0, 1]
    assert rows[0]["h"] == [[1], [0], [-4], [0], [3]]

    eta = d.eta(2)
    assert eta[2] == [Fraction(1, 2), -2, Fraction(-1, 2), -2]
    assert eta[4] == [Fraction(3, 2), 0, Fraction(3, 2), 0]
    assert d.product_formula_holds(2)

    assert [r["ord"] for r in d.tower(6)] == [1, 2, 5, 10, 19, 36, 69]
    inv = d.invariants()
    assert (inv["mu"], inv["lambda"], inv["nu"], inv["n0"]) == (1, 1, -1, 1)
    assert inv["f"] == [0, 4, 2]

    assert zt.mu_lambda([3, 0, -3, 3], 3) == (1, 0)

    try:
        zt.TowerDatum.from_file(str(FIXTURES / "unramified_cycle.json")).invariants()
    except zt.HypothesisError as e:
        assert "undefined" in str(e)
    else:
        raise AssertionError("expected HypothesisError")

    try:
        zt.TowerDatum(6, ["a"], [], {"a": 0})
    except zt.ValidationError:
        pass
    else:
        raise AssertionError("expected ValidationError")

    print("python smoke test passed")


if __name__ == "__main__":
    main()
