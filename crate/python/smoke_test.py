"""Smoke test for the treedep Python extension.

Build the module and make it importable, e.g.

    cargo build --release -p treedep-py --features extension-module
    cp target/release/libtreedep.so python/treedep.so
    python3 python/smoke_test.py
"""

import json
from fractions import Fraction

import treedep


def main() -> None:
    tri = treedep.Multigraph.parse("# triangle\n3\n0 1 1\n1 2 1\n0 2 1\n")
    assert tri.vertex_count == 3 and tri.edge_units == 3
    assert tri.tau() == 3
    report = treedep.density_report(tri)
    assert report.dep == Fraction(2, 3)
    assert report.argmax == [0, 1, 2]
    assert report.tau_edges == [2, 2, 2]
    assert json.loads(report.to_json())["dep"] == "2/3"

    # A bundle of two parallel edges next to a single edge.
    g = treedep.Multigraph(3)
    assert g.add_edge(0, 1, 2) == 0
    g.add_edge(1, 2)
    assert not g.is_simple() and g.is_connected()
    assert g.tau() == 2
    assert treedep.density(g, 0) == Fraction(1, 2)
    assert treedep.resistance(g, 0, 2) == Fraction(3, 2)
    assert treedep.Multigraph.parse(g.to_text()).edges == [(0, 1, 2), (1, 2, 1)]

    graph, recipe, confirmed = treedep.construct("planar", "2/3")
    assert confirmed and graph.is_simple()
    assert json.loads(recipe)["claim"]["value"] == "2/3"
    assert treedep.density_report(graph).dep == Fraction(2, 3)

    for family, target in [("bipartite", "2/5"), ("theta", "3/5"), ("theta-dual", "2/5")]:
        _, _, confirmed = treedep.construct(family, target, strategy="greedy")
        assert confirmed, (family, target)

    for bad in [("planar", "1/3"), ("planar", "2/5"), ("bipartite", "5/4"), ("cube", "1/2")]:
        try:
            treedep.construct(*bad)
        except ValueError:
            pass
        else:
            raise AssertionError(f"{bad} should be refused")

    passed, tsv = treedep.verify("oracle", seed=3, corpus=25)
    assert passed and tsv.startswith("property\tinstances\tfailures\n")

    print("smoke test passed")


if __name__ == "__main__":
    main()
