"""Quick end-to-end check of the mdsdual extension module."""
import json
import sys

import mdsdual


def main():
    f = mdsdual.Field(169)
    assert (f.p, f.m, f.modulus) == (13, 2, [1, 3, 1])
    x = 5
    assert f.mul(x, f.inv(x)) == 1
    assert f.eta(f.mul(x, x)) == 1

    code = mdsdual.construct("th1", r=9, m=2, e=1, t=2)
    assert (code.length, code.k, code.q) == (36, 18, 81)
    assert code.is_self_dual()
    assert code.provenance["theorem"] == "th1"

    small = mdsdual.construct("th2", p=13, m=1, e=0, t=3)
    assert small.min_distance() == 3
    report = mdsdual.verify(small.to_json(), mds="exhaustive")
    assert report["self_dual"] and report["mds"]

    lifted = mdsdual.construct("cor3", r=5, s=1, ms=[1, 3], e=0, t=1)
    assert lifted.is_self_dual()

    try:
        mdsdual.construct("th2", p=5, m=1, e=0, t=3)
    except mdsdual.HypothesisError as err:
        assert "eta(3)" in str(err)
    else:
        raise AssertionError("expected HypothesisError")

    rows = mdsdual.catalog(7, max_n=8)
    status = {r["n"]: r["status"] for r in rows}
    assert status[6] == "nonexistent" and status[8] == "constructed"

    suites = mdsdual.run_selftest(13)
    assert all(fails == [] for _, fails in suites.values()), suites

    assert mdsdual.large_q_bound(2) == 1.0
    print("smoke test ok:", code, json.dumps(code.provenance["params"]))
    return 0


if __name__ == "__main__":
    sys.exit(main())
