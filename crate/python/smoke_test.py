"""Smoke test for the Python bindings.

Build and install first:
    pip install -e crates/python --no-build-isolation
then run:
    python python/smoke_test.py
"""

import json

import typeiso_py as ti


def main():
    assert ti.parse("forall X. X -> X") == "forall X. X -> X"
    assert ti.canon("A -> B * C") == "(A -> B) * (A -> C)"
    assert ti.key("A * B") == ti.key("B * A")

    assert ti.is_isomorphic("A -> B -> C", "B * A -> C")
    assert not ti.is_isomorphic("forall X. _|_", "forall X Y. _|_")

    fwd, bwd = ti.witness("A * B", "B * A")
    assert fwd.startswith("lam ") and bwd.startswith("lam ")
    assert ti.witness("X", "Y") is None
    status, _ = ti.verify_witness("A -> B * C", "(A -> C) * (A -> B)", calculus="f")
    assert status == "verified", status

    assert ti.check_term("Lam X. lam x : X. x") == "forall X. X -> X"
    assert ti.normalize_term("(lam x : X. x) (lam y : Y. y)") == "lam y : Y. y"

    forest = json.loads(ti.arena_json("forall X. X -> X"))
    assert len(forest["nodes"]) == 2

    idx = ti.build_index([("id", "forall X. X -> X"), ("k", "A -> B -> A")])
    assert ti.query_index(idx, "B * A -> A") == ["k"]
    assert ti.query_index(idx, "T") == []

    for bad in [lambda: ti.parse("X ->"), lambda: ti.parse("_|_", calculus="f")]:
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")

    print("python smoke test passed")


if __name__ == "__main__":
    main()
