"""End-to-end smoke test of the python module: generation, file round trips,
the exact models, the decomposition algorithm, and verification helpers."""

import os
import tempfile

import mtvrp


def main():
    # Generation and validation.
    inst = mtvrp.gen_custom(n=6, p=2, capacity=90, tau=0.4, seed=9)
    assert inst.n == 6 and inst.max_trips == 2 and inst.capacity == 90
    assert mtvrp.validate_instance(inst) == []
    assert all(1 <= i < j <= 6 for i, j in inst.precedence_pairs())
    assert len(inst.demand) == 7 and inst.demand[0] == 0
    assert inst.cost(0, 1) == inst.cost(1, 0) and inst.cost(2, 2) == 0

    # Text and file round trips.
    text = mtvrp.instance_to_string(inst)
    assert mtvrp.instance_to_string(mtvrp.instance_from_string(text)) == text
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "t.mtvrp")
        mtvrp.write_instance(inst, path)
        assert mtvrp.instance_to_string(mtvrp.read_instance(path)) == text

    # The exact model, the exhaustive reference, and the decomposition agree.
    res = mtvrp.solve(inst, model="two", time_limit=300)
    assert res["status"] == "Optimal", res
    ora = mtvrp.brute_force(inst)
    assert ora["feasible"] and ora["objective"] == res["objective"]
    dec = mtvrp.lbbd(inst, variant=2, budget=300)
    assert dec["status"] == "Optimal" and dec["objective"] == res["objective"]
    assert dec["trace"], "expected at least one iteration row"
    assert dec["lower_bound"] <= dec["objective"]

    # Solution plumbing.
    sol = mtvrp.Solution(trips=dec["trips"], objective=dec["objective"])
    assert mtvrp.validate_solution(inst, sol) == []
    assert mtvrp.solution_cost(inst, sol) == dec["objective"]
    assert mtvrp.solution_from_string(mtvrp.solution_to_string(sol)) == sol

    # Benchmark row and the gap formula.
    row = mtvrp.benchmark(inst, method="lbbd3", budget=300)
    assert row["status"] in ("Heuristic", "Budget", "Optimal"), row
    assert row["objective"] is not None and row["objective"] >= res["objective"]
    assert row["csv"].startswith("custom_n6_p2_tau0.4_s9,6,2,0.4,lbbd3,")
    assert abs(mtvrp.optimality_gap(110, 100) - 100.0 * 10 / 110) < 1e-9

    # Single-trip sequencing and the packed fallback plan.
    cost, order = mtvrp.sequence_trip(inst, [1, 2, 3])
    assert sorted(order) == [1, 2, 3] and cost > 0
    packed = mtvrp.identity_solution(inst)
    assert packed is not None and mtvrp.validate_solution(inst, packed) == []

    # Suites have the published sizes.
    assert len(mtvrp.small_suite()) == 75
    assert len(mtvrp.large_suite()) == 81

    print("python smoke ok")


if __name__ == "__main__":
    main()
