"""Bilinear actions of one algebra on another and the derived-action checks.

An action is a pair of tensors: left[b][a] is the product of the b-th basis
element of the acting algebra with the a-th basis element of the target,
right[a][b] the product in the other order.  Actions are data so they can be
serialized, perturbed and fuzzed.  Only the multiplicative action is stored:
the additive conjugation action of a split extension is trivial because the
underlying additive group is abelian.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .algebra import (
    Algebra,
    LawReport,
    law_holds,
    make_algebra,
    multiply,
)
from .linalg import (
    DimensionMismatchError,
    FieldMismatchError,
    Matrix,
    Subspace,
    kernel,
    rref,
    solve,
    vec_add,
    vec_is_zero,
    vec_sub,
    zero_vec,
)


class MalformedExtensionError(ValueError):
    pass


@dataclass(frozen=True)
class ActionData:
    B: Algebra
    A: Algebra
    left: tuple   # left[b][a] -> vector in A
    right: tuple  # right[a][b] -> vector in A

    def __post_init__(self):
        if self.B.field != self.A.field:
            raise FieldMismatchError("acting and target algebras over different fields")
        nb, na = self.B.dim, self.A.dim
        if len(self.left) != nb or any(len(r) != na or any(len(v) != na for v in r) for r in self.left):
            raise DimensionMismatchError("left tensor shape")
        if len(self.right) != na or any(len(r) != nb or any(len(v) != na for v in r) for r in self.right):
            raise DimensionMismatchError("right tensor shape")

    @property
    def field(self):
        return self.A.field


def _tensorize(field, shape_outer, shape_inner, dim, entries):
    tab = [[[field.zero()] * dim for _ in range(shape_inner)] for _ in range(shape_outer)]
    for (i, j, k), c in entries.items():
        tab[i][j][k] = field.coerce(c)
    return tuple(tuple(tuple(v) for v in row) for row in tab)


def make_action(B: Algebra, A: Algebra, left_entries, right_entries) -> ActionData:
    """Build an action from sparse {(b, a, k): coeff} / {(a, b, k): coeff} maps."""
    left = _tensorize(A.field, B.dim, A.dim, A.dim, left_entries)
    right = _tensorize(A.field, A.dim, B.dim, A.dim, right_entries)
    return ActionData(B, A, left, right)


def zero_action(B: Algebra, A: Algebra) -> ActionData:
    return make_action(B, A, {}, {})


def regular_action(A: Algebra) -> ActionData:
    """A acting on itself by its own multiplication."""
    left = {(b, a, k): c for b in range(A.dim) for a in range(A.dim)
            for k, c in enumerate(A.table[b][a]) if c != 0}
    right = {(a, b, k): c for a in range(A.dim) for b in range(A.dim)
             for k, c in enumerate(A.table[a][b]) if c != 0}
    return make_action(A, A, left, right)


def unit_algebra(field) -> Algebra:
    """The one-dimensional unital algebra on the ground field."""
    return make_algebra(field, 1, {(0, 0, 0): field.one()}, ("1",))


def scalar_action(A: Algebra) -> ActionData:
    """The unit of the 1-dimensional field algebra acting identically."""
    B = unit_algebra(A.field)
    one = A.field.one()
    left = {(0, a, a): one for a in range(A.dim)}
    right = {(a, 0, a): one for a in range(A.dim)}
    return make_action(B, A, left, right)


def act_left(act: ActionData, bvec, avec) -> tuple:
    """Bilinear extension of the left tensor: (b, a) -> b * a."""
    field = act.field
    out = [field.zero()] * act.A.dim
    for b, xb in enumerate(bvec):
        if xb == 0:
            continue
        for a, ya in enumerate(avec):
            if ya == 0:
                continue
            c = xb * ya
            for k, t in enumerate(act.left[b][a]):
                if t != 0:
                    out[k] += c * t
    if field.p is not None:
        return tuple(v % field.p for v in out)
    return tuple(out)


def act_right(act: ActionData, avec, bvec) -> tuple:
    """Bilinear extension of the right tensor: (a, b) -> a * b."""
    field = act.field
    out = [field.zero()] * act.A.dim
    for a, xa in enumerate(avec):
        if xa == 0:
            continue
        for b, yb in enumerate(bvec):
            if yb == 0:
                continue
            c = xa * yb
            for k, t in enumerate(act.right[a][b]):
                if t != 0:
                    out[k] += c * t
    if field.p is not None:
        return tuple(v % field.p for v in out)
    return tuple(out)


# ---------------------------------------------------------------------------
# derived-action identity systems

@dataclass(frozen=True)
class _MixedLaw:
    slots: tuple  # "A" / "B" per slot
    terms: tuple
    fold: tuple | None = None


_DERIVED_IDENTITIES = {
    # one acting element, two target elements
    "I1": _MixedLaw(("B", "A", "A"), ((1, (0, (1, 2))), (-1, ((0, 1), 2)), (-1, ((1, 0), 2)), (1, (1, (0, 2))))),
    "I2": _MixedLaw(("B", "A", "A"), ((1, ((1, 2), 0)), (-1, (1, (2, 0))), (-1, (1, (0, 2))), (1, ((1, 0), 2)))),
    "I3": _MixedLaw(("B", "A", "A"), ((1, ((0, 1), 2)), (-1, (0, (1, 2))), (-1, (0, (2, 1))), (1, ((0, 2), 1)))),
    "I4": _MixedLaw(("B", "A", "A"), ((1, (1, (2, 0))), (-1, ((1, 2), 0)), (-1, ((2, 1), 0)), (1, (2, (1, 0))))),
    # two acting elements, one target element
    "II1": _MixedLaw(("B", "B", "A"), ((1, ((0, 1), 2)), (-1, (0, (1, 2))), (-1, (0, (2, 1))), (1, ((0, 2), 1)))),
    "II2": _MixedLaw(("B", "B", "A"), ((1, (2, (0, 1))), (-1, ((2, 0), 1)), (-1, ((0, 2), 1)), (1, (0, (2, 1))))),
    "II3": _MixedLaw(("B", "B", "A"), ((1, ((2, 0), 1)), (-1, (2, (0, 1))), (-1, (2, (1, 0))), (1, ((2, 1), 0)))),
    "II4": _MixedLaw(("B", "B", "A"), ((1, (0, (1, 2))), (-1, ((0, 1), 2)), (-1, ((1, 0), 2)), (1, (1, (0, 2))))),
    # flexibility across the action (alternative category only); quadratic slots
    "III1": _MixedLaw(("A", "B", "A"), ((1, (0, (1, 2))), (-1, ((0, 1), 2))), fold=(0, 2)),
    "III2": _MixedLaw(("B", "A", "B"), ((1, (0, (1, 2))), (-1, ((0, 1), 2))), fold=(0, 2)),
}

GALT_IDENTITIES = ("I1", "I2", "I3", "I4", "II1", "II2", "II3", "II4")
ALT_IDENTITIES = GALT_IDENTITIES + ("III1", "III2")


def _eval_mixed(act: ActionData, tree, vals):
    if isinstance(tree, int):
        return vals[tree]
    lt, lv = _eval_mixed(act, tree[0], vals)
    rt, rv = _eval_mixed(act, tree[1], vals)
    if lt == "A" and rt == "A":
        return "A", multiply(act.A, lv, rv)
    if lt == "B" and rt == "A":
        return "A", act_left(act, lv, rv)
    if lt == "A" and rt == "B":
        return "A", act_right(act, lv, rv)
    return "B", multiply(act.B, lv, rv)


def _mixed_base_residual(act: ActionData, law: _MixedLaw, vals):
    acc = zero_vec(act.field, act.A.dim)
    for sign, tree in law.terms:
        tag, v = _eval_mixed(act, tree, vals)
        if tag != "A":
            raise AssertionError("identity does not land in the target algebra")
        acc = vec_add(act.field, acc, v) if sign > 0 else vec_sub(act.field, acc, v)
    return acc


def identity_residual(act: ActionData, name: str, tup) -> tuple:
    law = _DERIVED_IDENTITIES[name]
    basis = {"A": act.A.basis_vectors(), "B": act.B.basis_vectors()}
    vals = [(law.slots[s], basis[law.slots[s]][i]) for s, i in enumerate(tup)]
    if law.fold is None:
        return _mixed_base_residual(act, law, vals)
    a, b = law.fold
    if tup[a] == tup[b]:
        return _mixed_base_residual(act, law, vals)
    swapped = list(vals)
    swapped[a], swapped[b] = swapped[b], swapped[a]
    return vec_add(act.field, _mixed_base_residual(act, law, vals),
                   _mixed_base_residual(act, law, swapped))


@dataclass(frozen=True)
class ActionReport:
    category: str
    holds: bool
    reports: tuple  # of LawReport, one per identity
    failing: tuple  # identity names with nonzero residuals

    def report_for(self, name: str) -> LawReport:
        for r in self.reports:
            if r.law == name:
                return r
        raise KeyError(name)


def check_derived_action(act: ActionData, category: str = "galt",
                         witness_cap: int = 16) -> ActionReport:
    """Evaluate the derived-action identity system on all basis tuples."""
    if category not in ("galt", "alt"):
        raise ValueError(f"unknown category: {category}")
    names = GALT_IDENTITIES if category == "galt" else ALT_IDENTITIES
    dims = {"A": act.A.dim, "B": act.B.dim}
    reports = []
    failing = []
    for name in names:
        law = _DERIVED_IDENTITIES[name]
        ranges = [range(dims[t]) for t in law.slots]
        count = 0
        witnesses = []
        for tup in product(*ranges):
            res = identity_residual(act, name, tup)
            if not vec_is_zero(res):
                count += 1
                if len(witnesses) < witness_cap:
                    witnesses.append((tup, res))
        reports.append(LawReport(name, count == 0, count, tuple(witnesses)))
        if count:
            failing.append(name)
    return ActionReport(category, not failing, tuple(reports), tuple(failing))


def action_is_anticommutative(act: ActionData) -> bool:
    """b*a = -a*b on all basis pairs."""
    for b in range(act.B.dim):
        for a in range(act.A.dim):
            if not vec_is_zero(vec_add(act.field, act.left[b][a], act.right[a][b])):
                return False
    return True


# ---------------------------------------------------------------------------
# semidirect products and split extensions

def semidirect(act: ActionData) -> Algebra:
    """The algebra on B x A with (b',a')(b,a) = (b'b, a'a + a'b + b'a)."""
    B, A = act.B, act.A
    n, m = B.dim, A.dim
    field = act.field
    z = field.zero()

    def pad_b(v):
        return tuple(v) + (z,) * m

    def pad_a(v):
        return (z,) * n + tuple(v)

    table = []
    for i in range(n + m):
        row = []
        for j in range(n + m):
            if i < n and j < n:
                row.append(pad_b(B.table[i][j]))
            elif i < n and j >= n:
                row.append(pad_a(act.left[i][j - n]))
            elif i >= n and j < n:
                row.append(pad_a(act.right[i - n][j]))
            else:
                row.append(pad_a(A.table[i - n][j - n]))
        table.append(tuple(row))
    names = tuple(f"b:{s}" for s in B.basis_names) + tuple(f"a:{s}" for s in A.basis_names)
    return Algebra(field, n + m, tuple(table), names)


@dataclass(frozen=True)
class SplitExtensionData:
    """A split extension presented by the total algebra and its three maps.

    i injects the kernel algebra, p projects onto the quotient, s is the
    section.  The kernel and quotient algebras are recovered from the maps.
    """

    E: Algebra
    i: Matrix  # E.dim x A.dim
    p: Matrix  # B.dim x E.dim
    s: Matrix  # E.dim x B.dim

    @property
    def dim_A(self) -> int:
        return self.i.cols

    @property
    def dim_B(self) -> int:
        return self.p.rows

    def validate(self):
        E, i, p, s = self.E, self.i, self.p, self.s
        field = E.field
        if i.field != field or p.field != field or s.field != field:
            raise FieldMismatchError("extension maps over a different field")
        if i.rows != E.dim or p.cols != E.dim or s.rows != E.dim or s.cols != p.rows:
            raise MalformedExtensionError("map shapes do not fit the extension")
        if not p.mul(i).is_zero():
            raise MalformedExtensionError("p(i(a)) is not zero")
        if p.mul(s) != Matrix.identity(field, self.dim_B):
            raise MalformedExtensionError("p(s(b)) is not the identity")
        _, rank_i, _ = rref(i)
        if rank_i != self.dim_A:
            raise MalformedExtensionError("injection is not injective")
        image_i = Subspace.from_vectors(field, E.dim, [i.column(j) for j in range(i.cols)])
        ker_p = kernel(p)
        if image_i != ker_p:
            raise MalformedExtensionError("image of the injection is not the kernel of the projection")
        # ideal-ness of the kernel inside E
        for e_idx in range(E.dim):
            e = E.basis_vector(e_idx)
            for v in image_i.basis.data:
                if not image_i.contains(multiply(E, e, v)) or not image_i.contains(multiply(E, v, e)):
                    raise MalformedExtensionError("kernel is not closed under multiplication by E")
        A = self.induced_A()
        B = self.induced_B()
        # the three maps must be multiplicative for the induced structures
        for x in range(A.dim):
            for y in range(A.dim):
                lhs = multiply(E, i.column(x), i.column(y))
                rhs = i.mul_vec(A.table[x][y])
                if lhs != rhs:
                    raise MalformedExtensionError("injection is not a homomorphism")
        for x in range(B.dim):
            for y in range(B.dim):
                # a splitting in the category is multiplicative, not a bare
                # set-section
                if s.mul_vec(B.table[x][y]) != multiply(E, s.column(x), s.column(y)):
                    raise MalformedExtensionError("section is not a homomorphism")
        for x in range(E.dim):
            for y in range(E.dim):
                ex, ey = E.basis_vector(x), E.basis_vector(y)
                if p.mul_vec(multiply(E, ex, ey)) != multiply(B, p.mul_vec(ex), p.mul_vec(ey)):
                    raise MalformedExtensionError("projection is not a homomorphism")
        return A, B

    def induced_A(self) -> Algebra:
        """The kernel algebra pulled back through the injection."""
        E, i = self.E, self.i
        tab = {}
        for x in range(self.dim_A):
            for y in range(self.dim_A):
                prod_e = multiply(E, i.column(x), i.column(y))
                coords = solve(i, prod_e)
                if coords is None:
                    raise MalformedExtensionError("kernel products do not stay in the kernel")
                for k, c in enumerate(coords):
                    if c != 0:
                        tab[(x, y, k)] = c
        return make_algebra(E.field, self.dim_A, tab)

    def induced_B(self) -> Algebra:
        """The quotient algebra computed through the section."""
        E, p, s = self.E, self.p, self.s
        tab = {}
        for x in range(self.dim_B):
            for y in range(self.dim_B):
                prod_e = multiply(E, s.column(x), s.column(y))
                for k, c in enumerate(p.mul_vec(prod_e)):
                    if c != 0:
                        tab[(x, y, k)] = c
        return make_algebra(E.field, self.dim_B, tab)


def split_extension_of(act: ActionData) -> SplitExtensionData:
    """Wrap an action into its semidirect-product split extension with the
    canonical injection, projection and section."""
    E = semidirect(act)
    field = act.field
    n, m = act.B.dim, act.A.dim
    z, o = field.zero(), field.one()
    i = Matrix(field, [[o if (r == n + c) else z for c in range(m)] for r in range(n + m)], m)
    p = Matrix(field, [[o if (c == r) else z for c in range(n + m)] for r in range(n)], n + m)
    s = Matrix(field, [[o if (r == c) else z for c in range(n)] for r in range(n + m)], n)
    return SplitExtensionData(E, i, p, s)


def action_from_section(ext: SplitExtensionData) -> ActionData:
    """Recover the action b * a = s(b) * i(a) (and its mirror) from a split
    extension; the round trip through `semidirect` reproduces the total
    algebra up to the canonical isomorphism (b, a) -> s(b) + i(a)."""
    A, B = ext.validate()
    E, i, s = ext.E, ext.i, ext.s
    left = {}
    right = {}
    for b in range(B.dim):
        sb = s.column(b)
        for a in range(A.dim):
            ia = i.column(a)
            lv = solve(i, multiply(E, sb, ia))
            rv = solve(i, multiply(E, ia, sb))
            if lv is None or rv is None:
                raise MalformedExtensionError("section products leave the kernel")
            for k, c in enumerate(lv):
                if c != 0:
                    left[(b, a, k)] = c
            for k, c in enumerate(rv):
                if c != 0:
                    right[(a, b, k)] = c
    return make_action(B, A, left, right)


def derived_semidirect_check(act: ActionData, category: str = "galt"):
    """Both sides of the derived-action / semidirect-product equivalence.

    Requires both algebras to satisfy the category's laws; returns the pair
    (action is derived, semidirect product satisfies the category laws).
    """
    laws = ["axiom-2-1", "axiom-2-2"] + (["flexible-E1"] if category == "alt" else [])
    for alg, tag in ((act.B, "acting"), (act.A, "target")):
        for law in laws:
            if not law_holds(alg, law):
                raise ValueError(f"{tag} algebra is not in the category ({law} fails)")
    derived = check_derived_action(act, category).holds
    sd = semidirect(act)
    in_category = all(law_holds(sd, law) for law in laws)
    return derived, in_category
