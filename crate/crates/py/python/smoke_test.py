"""Smoke test for the primegraph extension module."""

import json

import primegraph as pg


def main():
    c5 = pg.Graph.parse("a b\nb c\nc d\nd e\ne a\n")
    verdict = pg.check(c5)
    assert verdict["realizable"] is True, verdict
    assert not pg.is_realizable(pg.Graph(["a", "b", "c"]))
    assert pg.classify_girth(c5) == "exceptional C5"

    o = pg.orient(c5)
    assert o.is_valid() and o.violations() == []
    sets = o.analyze()
    assert len(sets["O"]) == 2 and len(sets["D"]) == 1 and len(sets["I"]) == 2

    assert [g.canonical_form() for g in pg.enumerate_minimal(5)] == [c5.canonical_form()]
    assert pg.is_minimal(pg.duplicate(c5, "a"))["minimal"] is True

    pentagon = pg.Orientation(
        ["p1", "p2", "p3", "p4", "p5"],
        [("p1", "p3"), ("p1", "p5"), ("p2", "p4"), ("p2", "p5"), ("p3", "p4")],
    )
    plan = pg.synthesize(pentagon, strict=True)
    assert plan.order == 1_009_554
    assert dict(plan.primes) == {"p1": 2, "p2": 3, "p3": 7, "p4": 43, "p5": 13}
    assert plan.sigma() == 2
    assert plan.verify()["ok"] is True
    assert len(plan.prime_graph().edges) == 5
    again = pg.GroupPlan.from_json(plan.to_json())
    assert json.loads(again.to_json()) == json.loads(plan.to_json())

    try:
        pg.Graph.parse("a b c\n")
    except pg.PrimeGraphError:
        pass
    else:
        raise AssertionError("malformed edge list accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
