"""Finite-dimensional algebras given by structure constants, and law checking.

An algebra is a structure tensor c[i][j] -> vector, meaning
e_i * e_j = sum_k c[i][j][k] e_k.  Laws are checked on basis tuples;
multilinear laws need nothing more, while laws in which one variable occurs
twice (flexible, left/right alternative, the y=z instance of the first
axiom) are checked through their diagonal residuals plus the symmetrized
cross residuals, which is equivalent to the universally quantified law over
every supported field, including GF(2).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .linalg import (
    DimensionMismatchError,
    Field,
    Matrix,
    Subspace,
    basis_vec,
    kernel,
    vec_add,
    vec_is_zero,
    vec_sub,
    zero_vec,
)


class UnknownLawError(ValueError):
    pass


@dataclass(frozen=True)
class Algebra:
    field: Field
    dim: int
    table: tuple  # table[i][j] is the product vector e_i * e_j
    basis_names: tuple = ()

    def __post_init__(self):
        if len(self.table) != self.dim or any(
            len(row) != self.dim or any(len(v) != self.dim for v in row) for row in self.table
        ):
            raise DimensionMismatchError("structure tensor is not dim x dim x dim")
        if not self.basis_names:
            object.__setattr__(self, "basis_names", tuple(f"e{i}" for i in range(self.dim)))
        elif len(self.basis_names) != self.dim:
            raise DimensionMismatchError("basis name count mismatch")

    def basis_vector(self, i: int) -> tuple:
        return basis_vec(self.field, self.dim, i)

    def basis_vectors(self):
        return [self.basis_vector(i) for i in range(self.dim)]

    def __repr__(self):
        return f"Algebra({self.field!r}, dim={self.dim})"


def make_algebra(field: Field, dim: int, entries, basis_names=()) -> Algebra:
    """Build an algebra from a sparse {(i, j, k): coefficient} mapping."""
    tab = [[[field.zero()] * dim for _ in range(dim)] for _ in range(dim)]
    for (i, j, k), c in entries.items():
        tab[i][j][k] = field.coerce(c)
    table = tuple(tuple(tuple(v) for v in row) for row in tab)
    return Algebra(field, dim, table, tuple(basis_names))


def zero_algebra(field: Field, dim: int) -> Algebra:
    return make_algebra(field, dim, {})


def multiply(A: Algebra, x, y) -> tuple:
    """Bilinear extension of the structure tensor to arbitrary vectors."""
    if len(x) != A.dim or len(y) != A.dim:
        raise DimensionMismatchError("vector length mismatch")
    p = A.field.p
    out = [A.field.zero()] * A.dim
    tab = A.table
    for i, xi in enumerate(x):
        if xi == 0:
            continue
        for j, yj in enumerate(y):
            if yj == 0:
                continue
            c = xi * yj
            row = tab[i][j]
            for k, t in enumerate(row):
                if t != 0:
                    out[k] += c * t
    if p is not None:
        return tuple(v % p for v in out)
    return tuple(out)


def left_mult_matrix(A: Algebra, v) -> Matrix:
    """Matrix of x -> v * x."""
    cols = [multiply(A, v, A.basis_vector(j)) for j in range(A.dim)]
    return Matrix.from_columns(A.field, cols, rows=A.dim)


def right_mult_matrix(A: Algebra, v) -> Matrix:
    """Matrix of x -> x * v."""
    cols = [multiply(A, A.basis_vector(j), v) for j in range(A.dim)]
    return Matrix.from_columns(A.field, cols, rows=A.dim)


# ---------------------------------------------------------------------------
# law definitions

@dataclass(frozen=True)
class _Law:
    arity: int
    terms: tuple  # of (sign, tree); trees are slot ints or (tree, tree) pairs
    fold: tuple | None = None  # two slot positions carrying the same variable


_AX21 = ((1, (0, (1, 2))), (-1, ((0, 1), 2)), (-1, ((1, 0), 2)), (1, (1, (0, 2))))
_AX22 = ((1, ((0, 1), 2)), (-1, (0, (1, 2))), (-1, (0, (2, 1))), (1, ((0, 2), 1)))

LAWS = {
    "axiom-2-1": _Law(3, _AX21),
    "axiom-2-2": _Law(3, _AX22),
    "flexible-E1": _Law(3, ((1, ((0, 1), 2)), (-1, (0, (1, 2)))), fold=(0, 2)),
    "left-alternative": _Law(3, ((1, ((0, 1), 2)), (-1, (0, (1, 2)))), fold=(0, 1)),
    "right-alternative": _Law(3, ((1, (0, (1, 2))), (-1, ((0, 1), 2))), fold=(1, 2)),
    "associative": _Law(3, ((1, ((0, 1), 2)), (-1, (0, (1, 2))))),
    "antiassociative": _Law(3, ((1, ((0, 1), 2)), (1, (0, (1, 2))))),
    "commutative": _Law(2, ((1, (0, 1)), (-1, (1, 0)))),
    "anticommutative": _Law(2, ((1, (0, 1)), (1, (1, 0)))),
    "second-level-associative": _Law(4, ((1, (((0, 1), 2), 3)), (-1, ((0, (1, 2)), 3)))),
    "eq25": _Law(3, _AX21, fold=(1, 2)),
    "eq31": _Law(3, ((1, ((0, 1), 2)), (-1, (0, (1, 2))), (1, ((1, 0), 2)), (-1, (1, (0, 2))))),
    "eq32": _Law(3, ((1, ((0, 1), 2)), (-1, (0, (1, 2))), (1, ((2, 1), 0)), (-1, (2, (1, 0))))),
    "eq33": _Law(3, ((1, ((0, 1), 2)), (-1, (0, (1, 2))), (1, ((0, 2), 1)), (-1, (0, (2, 1))))),
    "eq34": _Law(3, ((1, ((0, 1), 2)), (-1, (0, (1, 2))), (-1, ((1, 2), 0)), (1, (1, (2, 0))))),
    "eq35": _Law(3, ((1, ((0, 1), 2)), (-1, (0, (1, 2))), (-1, ((2, 0), 1)), (1, (2, (0, 1))))),
    "eq36": _Law(3, ((1, ((0, 1), 2)), (1, (2, (0, 1))), (-1, (0, (1, 2))), (-1, ((2, 0), 1)))),
    "eq37": _Law(3, ((1, ((0, 1), 2)), (1, ((1, 0), 2)), (-1, (0, (1, 2))), (-1, (1, (0, 2))))),
    "eq38": _Law(3, ((1, (2, (0, 1))), (1, (2, (1, 0))), (-1, ((2, 0), 1)), (-1, ((2, 1), 0)))),
}

LAW_NAMES = tuple(LAWS)

_LOWER = {name.lower(): name for name in LAWS}


def law_named(name: str) -> str:
    try:
        return _LOWER[name.lower()]
    except KeyError:
        raise UnknownLawError(f"unknown law: {name}") from None


@dataclass(frozen=True)
class LawReport:
    law: str
    holds: bool
    witness_count: int
    witnesses: tuple  # of (basis index tuple, residual vector), capped

    def first_witness(self):
        return self.witnesses[0] if self.witnesses else None


def _eval_tree(A: Algebra, tree, vals):
    if isinstance(tree, int):
        return vals[tree]
    return multiply(A, _eval_tree(A, tree[0], vals), _eval_tree(A, tree[1], vals))


def _base_residual(A: Algebra, law: _Law, vals):
    acc = zero_vec(A.field, A.dim)
    for sign, tree in law.terms:
        v = _eval_tree(A, tree, vals)
        acc = vec_add(A.field, acc, v) if sign > 0 else vec_sub(A.field, acc, v)
    return acc


def law_residual(A: Algebra, law_name: str, tup) -> tuple:
    """Residual of one law at one basis tuple (folded laws get the
    diagonal residual when the folded slots coincide, the symmetrized
    residual otherwise)."""
    law = LAWS[law_named(law_name)]
    basis = A.basis_vectors() if A.dim else []
    vals = [basis[i] for i in tup]
    if law.fold is None:
        return _base_residual(A, law, vals)
    a, b = law.fold
    if tup[a] == tup[b]:
        return _base_residual(A, law, vals)
    swapped = list(vals)
    swapped[a], swapped[b] = swapped[b], swapped[a]
    return vec_add(A.field, _base_residual(A, law, vals), _base_residual(A, law, swapped))


def check_law(A: Algebra, law_name: str, witness_cap: int = 16) -> LawReport:
    """Evaluate a law on all required basis tuples.

    The report is exact: `witness_count` counts every failing tuple even
    when the stored witness list is capped.
    """
    name = law_named(law_name)
    law = LAWS[name]
    cap = max(1, witness_cap)  # a failing report always carries a witness
    count = 0
    witnesses = []
    for tup in product(range(A.dim), repeat=law.arity):
        res = law_residual(A, name, tup)
        if not vec_is_zero(res):
            count += 1
            if len(witnesses) < cap:
                witnesses.append((tup, res))
    return LawReport(name, count == 0, count, tuple(witnesses))


def law_holds(A: Algebra, law_name: str) -> bool:
    """Early-exit variant of check_law for callers that only need the bool."""
    name = law_named(law_name)
    law = LAWS[name]
    for tup in product(range(A.dim), repeat=law.arity):
        if not vec_is_zero(law_residual(A, name, tup)):
            return False
    return True


def first_law_witness(A: Algebra, law_name: str):
    """First failing basis tuple in lexicographic order, or None."""
    name = law_named(law_name)
    law = LAWS[name]
    for tup in product(range(A.dim), repeat=law.arity):
        res = law_residual(A, name, tup)
        if not vec_is_zero(res):
            return tup, res
    return None


def classify(A: Algebra) -> frozenset:
    """Flags {galt, alt, associative, commutative, anticommutative, flexible}.

    The alt flag is galt and flexible, which coincides with the classical
    left+right alternative laws over any field.
    """
    flags = set()
    galt = law_holds(A, "axiom-2-1") and law_holds(A, "axiom-2-2")
    flexible = law_holds(A, "flexible-E1")
    if galt:
        flags.add("galt")
    if flexible:
        flags.add("flexible")
    if galt and flexible:
        flags.add("alt")
    if law_holds(A, "associative"):
        flags.add("associative")
    if law_holds(A, "commutative"):
        flags.add("commutative")
    if law_holds(A, "anticommutative"):
        flags.add("anticommutative")
    return frozenset(flags)


def annihilator(A: Algebra) -> Subspace:
    """{z : e_i z = z e_i = 0 for every basis element}, as the kernel of the
    stacked left and right multiplication operators."""
    if A.dim == 0:
        return Subspace.zero_space(A.field, 0)
    stacked = None
    for i in range(A.dim):
        e = A.basis_vector(i)
        block = left_mult_matrix(A, e).vstack(right_mult_matrix(A, e))
        stacked = block if stacked is None else stacked.vstack(block)
    return kernel(stacked)


def ideal_generated(A: Algebra, S: Subspace) -> Subspace:
    """Smallest subspace containing S that is closed under multiplication by
    basis elements on both sides (fixpoint closure)."""
    if S.ambient != A.dim:
        raise DimensionMismatchError("subspace not inside the algebra")
    current = Subspace.from_vectors(A.field, A.dim, S.basis.data)
    while True:
        new_vecs = list(current.basis.data)
        for v in current.basis.data:
            for i in range(A.dim):
                e = A.basis_vector(i)
                new_vecs.append(multiply(A, e, v))
                new_vecs.append(multiply(A, v, e))
        grown = Subspace.from_vectors(A.field, A.dim, new_vecs)
        if grown.dim == current.dim:
            return current
        current = grown
