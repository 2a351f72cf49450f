"""Quick check of the m22v_py extension.

Build with `maturin develop -m crates/py/pyproject.toml`, or copy
target/debug/libm22v_py.so to m22v_py.so somewhere on PYTHONPATH.
"""

import json
import os
import sys

import m22v_py as m

DATA = os.environ.get("M22V_DATA", os.path.join(os.path.dirname(__file__), "..", "data"))


def main():
    ids = [c[0] for c in m.list_claims()]
    assert "elkies-count" in ids and len(ids) == 17, ids

    assert m.hypothetical_genus(22, 4, ["12.6.4", "5^4.1^2", "2^7.1^8"]) == 712
    assert m.hasse_weil_bound(m.LAMBDA, 712) == 4253666

    # Res(x^2 - 2, x - 1) = -1, disc(x^2 + x + 1) = -3
    assert m.resultant([-2, 0, 1], [-1, 1]) == -1
    assert m.discriminant([1, 1, 1]) == -3

    # x^4 - 1 = (x-1)(x+1)(x^2+1) mod 7
    degrees = sorted(len(f) - 1 for f, _ in m.factor_mod_p([6, 0, 0, 0, 1], 7))
    assert degrees == [1, 1, 2], degrees

    assert m.newton_segments(["4", "0", "1"], 2) == [("-1", 2)]

    verdict, method = m.ramification_verdict([-2, 0, 1], 3)
    assert verdict == "UNRAMIFIED", (verdict, method)

    a = [1, 2, 3, 4, 0]
    g = m.PermGroup(5, [a, [1, 0, 2, 3, 4]])
    assert g.order() == 120 and g.is_transitive()
    assert g.stabilizer_orbit_lengths(0) == [1, 4]

    (r,) = m.verify("newton-fig1", data_dir=DATA, seed=1)
    assert r.passed(), r.json
    assert json.loads(r.json)["claim_id"] == "newton-fig1"

    strict, inclusive = m.count_points(101)
    assert inclusive >= strict

    try:
        m.verify("no-such-claim", data_dir=DATA)
    except KeyError:
        pass
    else:
        raise AssertionError("unknown claim accepted")

    print("smoke ok:", r, g)
    return 0


if __name__ == "__main__":
    sys.exit(main())
