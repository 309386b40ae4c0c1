"""Pairs of linear self-maps, the pair product, and actor-algebra closures.

A multiplier pair (L, R) plays the role of an acting element b with
b * a = L a and a * b = R a.  The pair product follows the two displayed
operator identities

    (f g) a = f(g a) + f(a g) - (f a) g
    a (f g) = (a f) g + (f a) g - f(a g)

so L'' = Lf Lg + Lf Rg - Rg Lf and R'' = Rg Rf + Rg Lf - Lf Rg.  Spans of
pair vectors are kept in echelon form, which realizes the "acts
identically" congruence: distinct span elements act distinctly.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .action import ActionData, make_action
from .algebra import Algebra, law_holds, multiply
from .linalg import (
    DimensionMismatchError,
    Matrix,
    Subspace,
    kernel,
    vec_add,
    vec_is_zero,
    vec_scale,
    vec_sub,
    zero_vec,
)


class ActionNotDerivedError(ValueError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class MultiplierPair:
    L: Matrix
    R: Matrix

    def __post_init__(self):
        if self.L.field != self.R.field:
            raise DimensionMismatchError("pair halves over different fields")
        n = self.L.rows
        if (self.L.cols, self.R.rows, self.R.cols) != (n, n, n):
            raise DimensionMismatchError("pair halves are not square of equal size")

    @property
    def dim(self) -> int:
        return self.L.rows

    @property
    def field(self):
        return self.L.field

    def apply_left(self, v):
        """The value f * a."""
        return self.L.mul_vec(v)

    def apply_right(self, v):
        """The value a * f."""
        return self.R.mul_vec(v)

    def is_anticommutative_action(self) -> bool:
        """f*a = -(a*f) for all a, i.e. L + R = 0."""
        return self.L.add(self.R).is_zero()


def zero_pair(field, n: int) -> MultiplierPair:
    z = Matrix.zero(field, n, n)
    return MultiplierPair(z, z)


def pair_mul(f: MultiplierPair, g: MultiplierPair) -> MultiplierPair:
    if f.dim != g.dim:
        raise DimensionMismatchError("pair size mismatch")
    L = f.L.mul(g.L).add(f.L.mul(g.R)).sub(g.R.mul(f.L))
    R = g.R.mul(f.R).add(g.R.mul(f.L)).sub(f.L.mul(g.R))
    return MultiplierPair(L, R)


def pair_to_vec(f: MultiplierPair) -> tuple:
    return tuple(x for row in f.L.data for x in row) + tuple(x for row in f.R.data for x in row)


def vec_to_pair(field, n: int, v) -> MultiplierPair:
    if len(v) != 2 * n * n:
        raise DimensionMismatchError("pair vector length mismatch")
    L = Matrix(field, [v[r * n:(r + 1) * n] for r in range(n)], n)
    R = Matrix(field, [v[n * n + r * n:n * n + (r + 1) * n] for r in range(n)], n)
    return MultiplierPair(L, R)


def pair_space_dim(n: int) -> int:
    return 2 * n * n


# ---------------------------------------------------------------------------
# the canonical pairs

def d_pairs(A: Algebra) -> list:
    """The pairs (a*, *a) of the algebra acting on itself by multiplication."""
    out = []
    for i in range(A.dim):
        L = Matrix.from_columns(A.field, [A.table[i][j] for j in range(A.dim)], rows=A.dim)
        R = Matrix.from_columns(A.field, [A.table[j][i] for j in range(A.dim)], rows=A.dim)
        out.append(MultiplierPair(L, R))
    return out


def d_of(A: Algebra, v) -> MultiplierPair:
    """The pair of an arbitrary element: left and right multiplication by v."""
    from .algebra import left_mult_matrix, right_mult_matrix
    return MultiplierPair(left_mult_matrix(A, v), right_mult_matrix(A, v))


def d_map(A: Algebra):
    """The matrix of a -> (a*, *a) into pair space, and its kernel.

    The kernel is exactly the two-sided annihilator.
    """
    cols = [pair_to_vec(f) for f in d_pairs(A)]
    m = Matrix.from_columns(A.field, cols, rows=pair_space_dim(A.dim))
    return m, kernel(m)


def pairs_of_action(act: ActionData) -> list:
    """The pairs realized by the basis elements of an acting algebra."""
    A = act.A
    out = []
    for b in range(act.B.dim):
        L = Matrix.from_columns(A.field, [act.left[b][a] for a in range(A.dim)], rows=A.dim)
        R = Matrix.from_columns(A.field, [act.right[a][b] for a in range(A.dim)], rows=A.dim)
        out.append(MultiplierPair(L, R))
    return out


# ---------------------------------------------------------------------------
# bimultiplication conditions

def _galt_condition_residuals(A: Algebra, f: MultiplierPair):
    """The four pair conditions, evaluated on every basis pair.

    Yields ((condition name, i, j), residual vector); the conditions are the
    two axioms written for the four placements of f among three factors.
    """
    F = A.field
    Lc = [f.L.column(j) for j in range(A.dim)]
    Rc = [f.R.column(j) for j in range(A.dim)]
    basis = A.basis_vectors()
    for i in range(A.dim):
        for j in range(A.dim):
            ei, ej = basis[i], basis[j]
            prod = A.table[i][j]
            prod_rev = A.table[j][i]
            r1 = vec_add(F, vec_sub(F, vec_sub(F, f.L.mul_vec(prod), multiply(A, Lc[i], ej)),
                                    multiply(A, Rc[i], ej)),
                         multiply(A, ei, Lc[j]))
            yield ("pair-1", i, j), r1
            r2 = vec_add(F, vec_sub(F, vec_sub(F, f.R.mul_vec(prod), multiply(A, ei, Rc[j])),
                                    multiply(A, ei, Lc[j])),
                         multiply(A, Rc[i], ej))
            yield ("pair-2", i, j), r2
            r3 = vec_add(F, vec_sub(F, vec_sub(F, multiply(A, Lc[i], ej), f.L.mul_vec(prod)),
                                    f.L.mul_vec(prod_rev)),
                         multiply(A, Lc[j], ei))
            yield ("pair-3", i, j), r3
            r4 = vec_add(F, vec_sub(F, vec_sub(F, multiply(A, ei, Rc[j]), f.R.mul_vec(prod)),
                                    f.R.mul_vec(prod_rev)),
                         multiply(A, ej, Rc[i]))
            yield ("pair-4", i, j), r4


def _alt_flex_a_residuals(A: Algebra, f: MultiplierPair):
    """a(fa) = (af)a, polarized over the doubled slot (linear in the pair)."""
    F = A.field
    Lc = [f.L.column(j) for j in range(A.dim)]
    Rc = [f.R.column(j) for j in range(A.dim)]
    basis = A.basis_vectors()

    def base(i, j):
        return vec_sub(F, multiply(A, basis[i], Lc[j]), multiply(A, Rc[i], basis[j]))

    for i in range(A.dim):
        for j in range(A.dim):
            if i == j:
                yield ("alt-flex-a", i, j), base(i, i)
            else:
                yield ("alt-flex-a", i, j), vec_add(F, base(i, j), base(j, i))


def _assoc_condition_residuals(A: Algebra, f: MultiplierPair):
    """Classical bimultiplication conditions of associative algebras."""
    F = A.field
    Lc = [f.L.column(j) for j in range(A.dim)]
    Rc = [f.R.column(j) for j in range(A.dim)]
    basis = A.basis_vectors()
    for i in range(A.dim):
        for j in range(A.dim):
            prod = A.table[i][j]
            yield ("assoc-1", i, j), vec_sub(F, f.L.mul_vec(prod), multiply(A, Lc[i], basis[j]))
            yield ("assoc-2", i, j), vec_sub(F, f.R.mul_vec(prod), multiply(A, basis[i], Rc[j]))
            yield ("assoc-3", i, j), vec_sub(F, multiply(A, Rc[i], basis[j]), multiply(A, basis[i], Lc[j]))


def _mult_condition_residuals(A: Algebra, f: MultiplierPair):
    """Multiplication-algebra conditions: a single map with f(aa') = f(a)a'."""
    F = A.field
    Lc = [f.L.column(j) for j in range(A.dim)]
    basis = A.basis_vectors()
    for i in range(A.dim):
        for j in range(A.dim):
            yield ("mult-1", i, j), vec_sub(F, f.L.mul_vec(A.table[i][j]), multiply(A, Lc[i], basis[j]))
    # the pair is a single map: L = R
    diff = f.L.sub(f.R)
    for r in range(A.dim):
        yield ("mult-eq", r, r), diff.row(r)


_VARIANTS = {
    "galt": (_galt_condition_residuals,),
    "alt": (_galt_condition_residuals, _alt_flex_a_residuals),
    "assoc": (_assoc_condition_residuals,),
    "mult": (_mult_condition_residuals,),
}


def pair_conditions_residual(A: Algebra, f: MultiplierPair, variant: str = "galt"):
    """Nonzero residuals of the variant's linear conditions for one pair."""
    if variant not in _VARIANTS:
        raise ValueError(f"unknown variant: {variant}")
    out = []
    for fn in _VARIANTS[variant]:
        for key, res in fn(A, f):
            if not vec_is_zero(res):
                out.append((key, res))
    return out


def pair_satisfies_conditions(A: Algebra, f: MultiplierPair, variant: str = "galt") -> bool:
    for fn in _VARIANTS[variant]:
        for _key, res in fn(A, f):
            if not vec_is_zero(res):
                return False
    return True


def _check_mult_precondition(A: Algebra):
    if not (law_holds(A, "commutative") and law_holds(A, "associative")):
        raise ValueError("multiplication-algebra variant needs a commutative associative algebra")


def solve_pair_space(A: Algebra, variant: str = "galt") -> Subspace:
    """Solution subspace of the variant's linear conditions inside pair space.

    Built by evaluating the condition residuals on elementary pairs, so the
    solver and the membership checker share one definition of the conditions.
    """
    if variant not in _VARIANTS:
        raise ValueError(f"unknown variant: {variant}")
    if variant == "mult":
        _check_mult_precondition(A)
    n = A.dim
    amb = pair_space_dim(n)
    if amb == 0:
        return Subspace.zero_space(A.field, 0)
    columns = []
    unit = A.field.one()
    zero_row = [A.field.zero()] * amb
    for u in range(amb):
        ev = list(zero_row)
        ev[u] = unit
        f = vec_to_pair(A.field, n, tuple(ev))
        col = []
        for fn in _VARIANTS[variant]:
            for _key, res in fn(A, f):
                col.extend(res)
        columns.append(tuple(col))
    constraint = Matrix.from_columns(A.field, columns, rows=len(columns[0]))
    return kernel(constraint)


# ---------------------------------------------------------------------------
# closure and actor algebras

@dataclass(frozen=True)
class ActorAlgebra:
    """A span of pairs closed under the pair product, packaged with its
    structure tensor and its canonical action on the underlying algebra."""

    A: Algebra
    pairs: tuple
    algebra: Algebra
    action: ActionData
    span: Subspace
    post_checks: dict = dc_field(default_factory=dict, compare=False)

    @property
    def dim(self) -> int:
        return len(self.pairs)


def closure(A: Algebra, generators) -> ActorAlgebra:
    """Smallest pair span containing the generators and closed under the
    pair product.  Fixpoint rounds multiply the current echelon basis
    pairwise in lexicographic order and re-echelonize; the dimension bound
    2 dim(A)^2 forces termination."""
    field = A.field
    n = A.dim
    amb = pair_space_dim(n)
    span = Subspace.from_vectors(field, amb, [pair_to_vec(g) for g in generators])
    while True:
        pairs = [vec_to_pair(field, n, row) for row in span.basis.data]
        vecs = list(span.basis.data)
        for f in pairs:
            for g in pairs:
                vecs.append(pair_to_vec(pair_mul(f, g)))
        grown = Subspace.from_vectors(field, amb, vecs)
        if grown.dim == span.dim:
            break
        span = grown
    pairs = tuple(vec_to_pair(field, n, row) for row in span.basis.data)
    table = _pair_table(A, span, pairs)
    algebra = Algebra(field, len(pairs), table, tuple(f"f{i}" for i in range(len(pairs))))
    action = _canonical_action(A, algebra, pairs)
    return ActorAlgebra(A, pairs, algebra, action, span)


def _pair_table(A: Algebra, span: Subspace, pairs):
    """Structure tensor of the pair product in the echelon basis."""
    field = A.field
    pivots = []
    for row in span.basis.data:
        for c, x in enumerate(row):
            if x != 0:
                pivots.append(c)
                break
    d = len(pairs)
    table = []
    for i in range(d):
        row = []
        for j in range(d):
            v = pair_to_vec(pair_mul(pairs[i], pairs[j]))
            coords = tuple(v[c] for c in pivots)
            # closure guarantees membership; verify the reconstruction exactly
            rec = zero_vec(field, span.ambient)
            for c, basis_row in zip(coords, span.basis.data):
                if c != 0:
                    rec = vec_add(field, rec, vec_scale(field, c, basis_row))
            if rec != v:
                raise AssertionError("pair product escaped a closed span")
            row.append(coords)
        table.append(tuple(row))
    return tuple(table)


def _canonical_action(A: Algebra, actor_alg: Algebra, pairs) -> ActionData:
    left = {}
    right = {}
    for b, f in enumerate(pairs):
        for a in range(A.dim):
            for k, c in enumerate(f.L.column(a)):
                if c != 0:
                    left[(b, a, k)] = c
            for k, c in enumerate(f.R.column(a)):
                if c != 0:
                    right[(a, b, k)] = c
    return make_action(actor_alg, A, left, right)


def bim(A: Algebra, variant: str = "galt") -> ActorAlgebra:
    """Closure of the variant's bimultiplication solution space.

    Products of bimultiplications need not satisfy the conditions again, so
    membership of the closure basis in the conditions is re-checked and
    reported, never imposed; for the alt variant the quadratic flexibility
    condition f(af) = (fa)f is a pure post-filter (it cannot define a
    subspace) realized as the commutator test L R = R L.
    """
    from .action import check_derived_action

    sol = solve_pair_space(A, variant)
    gens = [vec_to_pair(A.field, A.dim, row) for row in sol.basis.data]
    actor = closure(A, gens)
    satisfied = [pair_satisfies_conditions(A, f, variant) for f in actor.pairs]
    actor.post_checks["variant"] = variant
    actor.post_checks["solution-dim"] = sol.dim
    actor.post_checks["conditions-on-basis"] = all(satisfied)
    actor.post_checks["conditions-failing-pairs"] = tuple(i for i, ok in enumerate(satisfied) if not ok)
    if variant == "alt":
        flex_f = [f.L.mul(f.R) == f.R.mul(f.L) for f in actor.pairs]
        actor.post_checks["alt-flex-f-on-basis"] = all(flex_f)
        actor.post_checks["alt-flex-f-failing-pairs"] = tuple(i for i, ok in enumerate(flex_f) if not ok)
    report = check_derived_action(actor.action, "galt")
    actor.post_checks["action-derived"] = report.holds
    actor.post_checks["action-failing"] = tuple(report.failing)
    return actor


def relative_actor(A: Algebra, family) -> ActorAlgebra:
    """Closure of the pairs of a finite family of derived actions together
    with the pairs of A itself (A always acts on itself)."""
    from .action import check_derived_action

    gens = []
    for act in family:
        if act.A != A:
            raise ActionNotDerivedError("family member does not act on the given algebra")
        if not (law_holds(act.B, "axiom-2-1") and law_holds(act.B, "axiom-2-2")):
            raise ActionNotDerivedError("acting algebra is not g-alternative")
        report = check_derived_action(act, "galt")
        if not report.holds:
            raise ActionNotDerivedError(
                f"family action fails identities: {', '.join(report.failing)}", report)
        gens.extend(pairs_of_action(act))
    gens.extend(d_pairs(A))
    return closure(A, gens)


# ---------------------------------------------------------------------------
# the B identities and the A expressions

_B_IDENTITIES = {
    # (sign, bracketing of the three pairs, side) with side "L" for b...(a)
    # and "R" for (a)...b; bracketing "1(23)" means pair_mul(b1, pair_mul(b2, b3))
    "B1": ((-1, (0, (1, 2)), "L"), (1, ((0, 1), 2), "L"), (1, ((1, 0), 2), "L"), (-1, (1, (0, 2)), "L")),
    "B2": ((-1, (0, (1, 2)), "R"), (1, ((0, 1), 2), "R"), (1, ((1, 0), 2), "R"), (-1, (1, (0, 2)), "R")),
    "B3": ((-1, ((0, 1), 2), "L"), (1, (0, (1, 2)), "L"), (1, (0, (2, 1)), "L"), (-1, ((0, 2), 1), "L")),
    "B4": ((-1, ((0, 1), 2), "R"), (1, (0, (1, 2)), "R"), (1, (0, (2, 1)), "R"), (-1, ((0, 2), 1), "R")),
}


def _pair_tree(tree, pairs):
    if isinstance(tree, int):
        return pairs[tree]
    return pair_mul(_pair_tree(tree[0], pairs), _pair_tree(tree[1], pairs))


def identity_b(which: str, b1: MultiplierPair, b2: MultiplierPair, b3: MultiplierPair, a):
    """Residual of one of the four pair-axiom identities at (b1, b2, b3; a)."""
    key = which.upper()
    if key not in _B_IDENTITIES:
        raise ValueError(f"unknown B identity: {which}")
    field = b1.field
    pairs = (b1, b2, b3)
    acc = zero_vec(field, b1.dim)
    for sign, tree, side in _B_IDENTITIES[key]:
        f = _pair_tree(tree, pairs)
        v = f.apply_left(a) if side == "L" else f.apply_right(a)
        acc = vec_add(field, acc, v) if sign > 0 else vec_sub(field, acc, v)
    return acc


_EXPR_A = {
    # ordered compositions, outermost first; ("L", i) applies bi on the left
    1: ((("L", 0), ("L", 1), ("L", 2)), (("L", 0), ("L", 1), ("R", 2))),
    2: ((("L", 0), ("R", 2), ("R", 1)), (("L", 0), ("R", 2), ("L", 1))),
    3: ((("R", 2), ("R", 1), ("L", 0)), (("R", 2), ("L", 1), ("L", 0))),
    4: ((("L", 0), ("L", 1), ("R", 2)), (("L", 1), ("L", 0), ("R", 2))),
    5: ((("R", 2), ("R", 1), ("L", 0)), (("R", 2), ("R", 0), ("L", 1))),
    6: ((("L", 0), ("L", 1), ("L", 2)), (("L", 0), ("R", 1), ("L", 2))),
    7: ((("L", 0), ("L", 1), ("R", 2)), (("L", 0), ("R", 1), ("R", 2))),
    8: ((("R", 2), ("L", 0), ("L", 1)), (("R", 2), ("L", 0), ("R", 1))),
    9: ((("R", 2), ("R", 1), ("R", 0)), (("R", 2), ("L", 1), ("R", 0))),
    10: ((("R", 1), ("R", 0), ("R", 2)), (("R", 0), ("R", 1), ("R", 2))),
    11: ((("L", 2), ("L", 1), ("R", 0)), (("L", 2), ("L", 0), ("R", 1))),
}


def expression_a(i: int, b1: MultiplierPair, b2: MultiplierPair, b3: MultiplierPair, a):
    """Value of the i-th two-term expression (i = 1..11) at (b1, b2, b3; a)."""
    if i not in _EXPR_A:
        raise ValueError(f"unknown A expression index: {i}")
    field = b1.field
    pairs = (b1, b2, b3)
    acc = zero_vec(field, b1.dim)
    for ops in _EXPR_A[i]:
        v = tuple(a)
        for side, idx in reversed(ops):
            v = pairs[idx].apply_left(v) if side == "L" else pairs[idx].apply_right(v)
        acc = vec_add(field, acc, v)
    return acc
