"""Bundled example algebras used by the test suite, the scripts and the
documentation: cyclic groups, the symmetric group on three points, a chain
meet-semilattice, a non-associative order-5 loop, the subtraction
quasigroup on three elements, and a pure ternary-operation algebra.
"""

from __future__ import annotations

import itertools

from .algebras import FiniteAlgebra, make_algebra, table_from_function


def cyclic_group(n: int) -> FiniteAlgebra:
    return make_algebra(
        f"Z{n}",
        n,
        {
            "mul": table_from_function(n, 2, lambda a, b: (a + b) % n),
            "inv": table_from_function(n, 1, lambda a: (-a) % n),
            "e": table_from_function(n, 0, lambda: 0),
        },
    )


def symmetric_group_3() -> FiniteAlgebra:
    """S3 with elements the permutations of {0,1,2} in lexicographic order;
    (p * q)(i) = p(q(i))."""
    perms = sorted(itertools.permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}

    def mul(i, j):
        p, q = perms[i], perms[j]
        return index[tuple(p[q[k]] for k in range(3))]

    def inv(i):
        p = perms[i]
        out = [0, 0, 0]
        for k in range(3):
            out[p[k]] = k
        return index[tuple(out)]

    return make_algebra(
        "S3",
        6,
        {
            "mul": table_from_function(6, 2, mul),
            "inv": table_from_function(6, 1, inv),
            "e": table_from_function(6, 0, lambda: 0),
        },
    )


def chain_semilattice(n: int = 3) -> FiniteAlgebra:
    """The chain 0 < 1 < ... < n-1 under the meet (min) operation."""
    return make_algebra(
        f"chain{n}",
        n,
        {"meet": table_from_function(n, 2, min)},
    )


# A non-associative loop of order 5: Latin square with identity 0;
# (1*1)*2 = 2 but 1*(1*2) = 4.
_LOOP5_ROWS = (
    (0, 1, 2, 3, 4),
    (1, 0, 3, 4, 2),
    (2, 3, 4, 0, 1),
    (3, 4, 1, 2, 0),
    (4, 2, 0, 1, 3),
)


def nonassociative_loop_5() -> FiniteAlgebra:
    star = table_from_function(5, 2, lambda a, b: _LOOP5_ROWS[a][b])

    def ldiv(a, b):
        return _LOOP5_ROWS[a].index(b)

    return make_algebra(
        "loop5",
        5,
        {
            "star": star,
            "ldiv": table_from_function(5, 2, ldiv),
            "e": table_from_function(5, 0, lambda: 0),
        },
    )


def subtraction_quasigroup_3() -> FiniteAlgebra:
    """x * y = x - y mod 3: a quasigroup with no two-sided identity.
    Divisions are intentionally omitted to exercise Latin-square solving."""
    return make_algebra(
        "qg3",
        3,
        {"star": table_from_function(3, 2, lambda a, b: (a - b) % 3)},
    )


def xor_mu_algebra() -> FiniteAlgebra:
    """Two elements with a single basic ternary operation a xor b xor c."""
    return make_algebra(
        "mu2",
        2,
        {"mu": table_from_function(2, 3, lambda a, b, c: a ^ b ^ c)},
    )


BUNDLED = {
    "z2": lambda: cyclic_group(2),
    "z3": lambda: cyclic_group(3),
    "z4": lambda: cyclic_group(4),
    "z5": lambda: cyclic_group(5),
    "z6": lambda: cyclic_group(6),
    "s3": symmetric_group_3,
    "chain3": chain_semilattice,
    "loop5": nonassociative_loop_5,
    "qg3": subtraction_quasigroup_3,
    "mu2": xor_mu_algebra,
}


def bundled_algebras() -> dict[str, FiniteAlgebra]:
    return {name: build() for name, build in BUNDLED.items()}
