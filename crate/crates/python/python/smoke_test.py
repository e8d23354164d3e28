"""Smoke test for the ising_ces_py extension.

Build and install first:  pip install --no-build-isolation -e crates/python
"""

import math

import ising_ces_py as ic


def close(a, b, tol=1e-9):
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def main():
    necklace = ic.Circuit(
        ["YXIIII", "IXYIII", "IIYXII", "IIIYXI", "IIIXIY", "IYIIIX"], lam=0.5
    )
    amp = necklace.simulate()
    assert close(amp, necklace.expansion_amplitude())
    report = necklace.check_ces()
    assert report["verdict"] == "CES", report
    assert close(report["amplitude"], amp)
    assert close(report["even_subgraph_sum"], 1.0 + 0.5**4)
    assert necklace.solve_w() is not None
    assert len(necklace.h_matrix()) == 12

    k4 = ic.Graph.complete(4)
    c = k4.classify()
    assert c["planar"] and c["k4_minor"] and not c["theta_obstruction_free"]
    assert k4.solve_w_joint() is None
    assert ic.Graph.k33_minus_edge().minor(k4) is not None
    assert ic.Graph.complete(5).planar_embedding() is None

    tri = ic.Graph(3, [(0, 1), (1, 2), (2, 0)])
    w, gates = tri.solve_w_joint()
    made = ic.Circuit(gates, lam=0.3)
    assert close(made.simulate(), made.expansion_amplitude())

    edge, bonds = ic.Graph.parse("graph 2\nedge 0 1 F\n")
    p = ic.partition(edge, bonds, beta=1.0)
    assert p["evaluator"] == "planar"
    assert close(p["partition_function"], 4 * math.cosh(1.0))
    assert close(ic.spin_partition(edge, bonds, 1.0), 4 * math.cosh(1.0))
    assert close(ic.even_subgraph_sum(tri, [1, 0, 0], 0.5), 1 - 0.125)

    assert close(ic.pfaffian([[0, 2], [-2, 0]]), 2.0)
    a = [[1, 1, 0], [0, 1, 1], [1, 0, 1]]
    b = [[1, 0, 0], [0, 0, 0], [0, 0, 0]]
    assert close(ic.qwgt(a, b, 0.5, 1.0), 1 - 0.125)

    v1 = ic.verify(seed=7, count=9)
    v2 = ic.verify(seed=7, count=9)
    assert v1 == v2 and v1["mismatches"] == 0

    try:
        ic.Circuit.parse("circuit 1\nlambda 0.5\ngate Q\n")
    except ValueError as e:
        assert "line 3" in str(e)
    else:
        raise AssertionError("bad gate accepted")

    print("smoke test ok: necklace amplitude", amp)


if __name__ == "__main__":
    main()
