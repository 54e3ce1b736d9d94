#!/usr/bin/env python3
"""Walk through the five-vertex graph: graded pieces, ideals and semi-fullness.

Shows where the two ideal semantics part ways on f2.f2*.
"""
from __future__ import annotations

from gradedcp.fixtures import five_vertex_graph
from gradedcp.grading import (
    BIMODULE,
    TWO_SIDED,
    component_product,
    generated_ideal,
    idempotent_chain,
    semi_full_check,
)
from gradedcp.lpa import GradedSlice, standard_system


def main() -> None:
    g = five_vertex_graph()
    sl = GradedSlice(g)
    A = sl.alg
    print("graded pieces")
    for d in range(-2, 3):
        print(f"  S_{d}: dim {sl.dim(d)}  {[str(x) for x in sl.spanning(d)]}")
    print("idempotent chain")
    for i, e in enumerate(idempotent_chain(sl, 2).eps):
        print(f"  eps_{i} = {e}")
    print(f"S_-1S_1 = {[str(x) for x in component_product(sl, -1, 1).basis]}")
    gens = [A.vertex(v) for v in ("v1", "v3", "v4")]
    f22 = A.parse("f2") * A.parse("f2*")
    system = standard_system(g, A)
    for sem in (BIMODULE, TWO_SIDED):
        ideal = generated_ideal(sl, gens, sem)
        print(f"{sem}: I_1 = {[str(x) for x in ideal.basis]}; f2.f2* inside: {f22 in ideal}")
        for v in semi_full_check(sl, system, 2, sem):
            print(f"  {v.property}: {v.status}  {v.summary()}")


if __name__ == "__main__":
    main()
