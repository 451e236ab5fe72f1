#!/usr/bin/env python3
"""The logic of extreme points as an atomic orthomodular lattice.

Meet is computed constructively from the spectrum of q1 + q2 (the atoms
clustering at eigenvalue 2 span the intersection), join follows by De Morgan
duality, and the lattice is orthomodular but not distributive.
"""

import numpy as np

from jordantp import (
    atomic_decomposition,
    get_model,
    information_capacity_empirical,
    join,
    meet,
    order_norm,
    orthocomplement,
)


def projection(model, columns):
    basis = np.asarray(columns, dtype=float)
    return model.from_matrix(basis @ basis.T)


def main():
    m = get_model("sym", 3)
    ex = np.eye(3)
    p = projection(m, ex[:, :2])   # the plane span{e1, e2}
    q = projection(m, np.column_stack([ex[:, 1], (ex[:, 0] + ex[:, 2]) / np.sqrt(2.0)]))

    both = meet(m, p, q)
    either = join(m, p, q)
    print("p = projection onto span{e1, e2}, q = projection onto span{e2, e1+e3}")
    print("the two planes meet in the line span{e2}:")
    print("p ^ q =\n", np.round(m.to_matrix(both.value), 6))
    print("p v q =\n", np.round(m.to_matrix(either.value), 6))

    comp = orthocomplement(m, p)
    print("\np' = unit - p =\n", np.round(m.to_matrix(comp.value), 6))

    # orthomodularity: for p <= q the identity q = p v (q ^ p') holds
    e1, e12 = projection(m, ex[:, :1]), p
    rebuilt = join(m, e1, meet(m, e12, orthocomplement(m, e1)))
    print(f"\northomodular law defect: {order_norm(m, rebuilt.value - e12):.2e}")

    # but the lattice is NOT distributive: p ^ (a v b) != (p ^ a) v (p ^ b)
    a = projection(m, ex[:, :1])
    b = projection(m, (ex[:, 0:1] + ex[:, 1:2]) / np.sqrt(2.0))
    line = projection(m, ex[:, 1:2])
    lhs = meet(m, line, join(m, a, b))
    rhs = join(m, meet(m, line, a), meet(m, line, b))
    print("distributivity defect:",
          f"{order_norm(m, lhs.value - rhs.value):.3f}  (nonzero: quantum logic)")

    atoms = atomic_decomposition(m, p)
    print(f"\np decomposes into {len(atoms)} orthogonal atoms")

    for spec in [("classical", 5, None), ("spin", 7, None), ("herm", 3, None),
                 ("lpq", 2, 3.0)]:
        model = get_model(*spec)
        cap = information_capacity_empirical(model, seed=0, trials=6)
        print(f"information capacity of {model!r}: {cap}")


if __name__ == "__main__":
    main()
