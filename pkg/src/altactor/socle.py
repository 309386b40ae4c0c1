"""S-sets, soci, the asoci chain, and the actor existence decision.

The S-sets substitute acting elements (family pairs for the plain sets,
actor basis pairs for the barred sets) into four fixed three-slot element
shapes.  Acting elements are evaluated through their multiplier pairs, and
a product of two acting elements is the pair product, so mixed placements
across different family members are meaningful.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .action import check_derived_action, regular_action
from .algebra import (
    Algebra,
    annihilator,
    first_law_witness,
    law_holds,
    multiply,
    right_mult_matrix,
)
from .linalg import Subspace, vec_add, vec_neg
from .multiplier import (
    ActionNotDerivedError,
    ActorAlgebra,
    bim,
    pair_mul,
    pairs_of_action,
    relative_actor,
)


class NotGAltError(ValueError):
    pass


@dataclass(frozen=True)
class SocleContext:
    A: Algebra
    actor: ActorAlgebra
    family: tuple  # the ActionData family used
    acting_pairs: tuple  # pairs substituted into the unbarred S-sets
    family_description: str = ""


def make_context(A: Algebra, family=None, actor: ActorAlgebra | None = None,
                 extra_acting_pairs=()) -> SocleContext:
    """Build a socle context.  The family defaults to the regular action; the
    actor defaults to the closure over the family."""
    if family is None:
        family = (regular_action(A),)
    family = tuple(family)
    if actor is None:
        actor = relative_actor(A, family)
    pairs = []
    for act in family:
        if act.A != A:
            raise ActionNotDerivedError("family member does not act on the given algebra")
        report = check_derived_action(act, "galt")
        if not report.holds:
            raise ActionNotDerivedError(
                f"family action fails identities: {', '.join(report.failing)}", report)
        pairs.extend(pairs_of_action(act))
    pairs.extend(extra_acting_pairs)
    desc = f"{len(family)} action(s), {len(pairs)} acting pair(s)"
    if extra_acting_pairs:
        desc += " (actor pairs included)"
    return SocleContext(A, actor, family, tuple(pairs), desc)


_S_SHAPES = {
    "sac": (((1, (0, (1, 2))), (1, (0, (2, 1)))),
            ((1, ((1, 2), 0)), (1, ((2, 1), 0)))),
    "as": (((1, (0, (1, 2))), (-1, ((0, 1), 2))),),
    "aas": (((1, (0, (1, 2))), (1, ((0, 1), 2))),),
    "ap": (((1, (0, (1, 2))), (1, (1, (0, 2)))),
           ((1, ((1, 2), 0)), (1, ((1, 0), 2)))),
}


def _eval_slot_tree(A: Algebra, tree, vals):
    """Evaluate a product tree whose leaves are target vectors or pairs."""
    if isinstance(tree, int):
        return vals[tree]
    lt, lv = _eval_slot_tree(A, tree[0], vals)
    rt, rv = _eval_slot_tree(A, tree[1], vals)
    if lt == "v" and rt == "v":
        return "v", multiply(A, lv, rv)
    if lt == "p" and rt == "v":
        return "v", lv.apply_left(rv)
    if lt == "v" and rt == "p":
        return "v", rv.apply_right(lv)
    return "p", pair_mul(lv, rv)


def s_set(ctx: SocleContext, stype: str, level: int, bar: bool) -> Subspace:
    """Span of all evaluations of the shape's expressions with `level` slots
    filled by acting elements (all placements) and the rest by basis
    elements of the target algebra."""
    if stype not in _S_SHAPES:
        raise ValueError(f"unknown S-set type: {stype}")
    if level not in (1, 2):
        raise ValueError("level must be 1 or 2")
    A = ctx.A
    acting = ctx.actor.pairs if bar else ctx.acting_pairs
    vectors = []
    basis = A.basis_vectors()
    for positions in combinations(range(3), level):
        free = [s for s in range(3) if s not in positions]
        for chosen in product(acting, repeat=level):
            for rest in product(range(A.dim), repeat=len(free)):
                vals = [None] * 3
                for pos, f in zip(positions, chosen):
                    vals[pos] = ("p", f)
                for pos, idx in zip(free, rest):
                    vals[pos] = ("v", basis[idx])
                for expr in _S_SHAPES[stype]:
                    acc = None
                    for sign, tree in expr:
                        tag, v = _eval_slot_tree(A, tree, vals)
                        if tag != "v":
                            raise AssertionError("S-set expression did not land in the algebra")
                        v = v if sign > 0 else vec_neg(A.field, v)
                        acc = v if acc is None else vec_add(A.field, acc, v)
                    vectors.append(acc)
    return Subspace.from_vectors(A.field, A.dim, vectors)


def soci(ctx: SocleContext) -> Subspace:
    """Actor-substructure generated by the level-1 sign-anticommutator set:
    fixpoint of span -> actor-pair images -> two-sided products."""
    A = ctx.A
    current = s_set(ctx, "sac", 1, bar=False)
    while True:
        vecs = list(current.basis.data)
        for v in current.basis.data:
            for f in ctx.actor.pairs:
                vecs.append(f.apply_left(v))
                vecs.append(f.apply_right(v))
            for i in range(A.dim):
                e = A.basis_vector(i)
                vecs.append(multiply(A, e, v))
                vecs.append(multiply(A, v, e))
        grown = Subspace.from_vectors(A.field, A.dim, vecs)
        if grown.dim == current.dim:
            return current
        current = grown


@dataclass(frozen=True)
class SocleResult:
    soci: Subspace
    chain: tuple  # strictly increasing subspaces, ending at the fixpoint
    asoci: Subspace


def asoci(ctx: SocleContext) -> SocleResult:
    """The chain V1 = {x : x e_a in soci for all a}, V(n+1) the preimage of
    Vn under every right multiplication, iterated to its fixpoint."""
    A = ctx.A
    soc = soci(ctx)
    rights = [right_mult_matrix(A, A.basis_vector(i)) for i in range(A.dim)]

    def step(target: Subspace) -> Subspace:
        out = Subspace.full_space(A.field, A.dim)
        for rm in rights:
            out = out.intersect(target.preimage_under(rm))
        return out

    chain = [step(soc)]
    while True:
        nxt = step(chain[-1])
        if nxt == chain[-1]:
            break
        chain.append(nxt)
    result = SocleResult(soc, tuple(chain), chain[-1])
    _assert_socle_invariants(ctx, result)
    return result


def _assert_socle_invariants(ctx: SocleContext, res: SocleResult):
    """The ideal property, actor stability, and chain monotonicity are
    consequences of the construction; they are asserted, not reported."""
    A = ctx.A
    if not res.chain[0].contains_space(res.soci):
        raise AssertionError("soci is not inside the first chain member")
    for lo, hi in zip(res.chain, res.chain[1:]):
        if not hi.contains_space(lo):
            raise AssertionError("asoci chain is not increasing")
    for v in res.asoci.basis.data:
        for i in range(A.dim):
            e = A.basis_vector(i)
            if not res.asoci.contains(multiply(A, e, v)) or not res.asoci.contains(multiply(A, v, e)):
                raise AssertionError("asoci is not a two-sided ideal")
        for f in ctx.actor.pairs:
            if not res.asoci.contains(f.apply_left(v)) or not res.asoci.contains(f.apply_right(v)):
                raise AssertionError("asoci is not actor stable")


# ---------------------------------------------------------------------------
# actor decision

@dataclass(frozen=True)
class ActorDecision:
    A: Algebra
    anticommutative: bool
    ann: Subspace
    ann_zero: bool
    socle: SocleResult
    asoci_zero: bool
    all_actions_anticommutative: bool
    actor: ActorAlgebra
    exists_certified: bool
    checks: dict
    failures: tuple  # (kind, name, witness) triples when not certified
    family_description: str
    caveat: str = ("soci/asoci are relative to the finite family used; the decision "
                   "criteria (anticommutativity of every acting pair and a zero "
                   "annihilator) do not depend on enlarging the family")


def actor_decision(A: Algebra, family=()) -> ActorDecision:
    """Decide actor existence for a g-alternative algebra.

    Uses the family {regular action} + the supplied actions, with the
    bimultiplication closure's basis pairs adjoined to the acting side.
    Certification means: the relative asoci vanishes, the closure satisfies
    the g-alternative axioms, and its canonical action is derived (plus the
    flexibility checks when the algebra is alternative).
    """
    if not (law_holds(A, "axiom-2-1") and law_holds(A, "axiom-2-2")):
        raise NotGAltError("algebra does not satisfy the g-alternative axioms")
    anticomm = law_holds(A, "anticommutative")
    ann = annihilator(A)
    actor = bim(A, "galt")
    fam = (regular_action(A),) + tuple(family)
    ctx = make_context(A, family=fam, actor=actor, extra_acting_pairs=actor.pairs)
    socle_res = asoci(ctx)
    asoci_zero = socle_res.asoci.is_zero()
    all_anticomm = all(f.is_anticommutative_action() for f in ctx.acting_pairs)

    checks = {}
    failures = []
    checks["actor-axiom-2-1"] = law_holds(actor.algebra, "axiom-2-1")
    checks["actor-axiom-2-2"] = law_holds(actor.algebra, "axiom-2-2")
    act_report = check_derived_action(actor.action, "galt")
    checks["actor-action-derived"] = act_report.holds
    for rep in act_report.reports:
        if not rep.holds:
            failures.append(("action-identity", rep.law, rep.first_witness()))
    for law in ("axiom-2-1", "axiom-2-2"):
        if not checks[f"actor-{law}"]:
            failures.append(("actor-law", law, first_law_witness(actor.algebra, law)))

    is_alt = law_holds(A, "flexible-E1")
    if is_alt:
        checks["actor-flexible-E1"] = law_holds(actor.algebra, "flexible-E1")
        alt_report = check_derived_action(actor.action, "alt")
        checks["actor-action-alt"] = alt_report.holds
        for rep in alt_report.reports:
            if rep.law in ("III1", "III2") and not rep.holds:
                failures.append(("action-identity", rep.law, rep.first_witness()))
        if not checks["actor-flexible-E1"]:
            failures.append(("actor-law", "flexible-E1",
                             first_law_witness(actor.algebra, "flexible-E1")))

    certified = asoci_zero and all(checks.values())
    return ActorDecision(
        A=A,
        anticommutative=anticomm,
        ann=ann,
        ann_zero=ann.is_zero(),
        socle=socle_res,
        asoci_zero=asoci_zero,
        all_actions_anticommutative=all_anticomm,
        actor=actor,
        exists_certified=certified,
        checks=checks,
        failures=tuple(failures),
        family_description=ctx.family_description,
    )


# ---------------------------------------------------------------------------
# congruence audit

_AUDIT_STATEMENTS = (
    ("s1-aas-in-soci", "aas", 1, False, "soci"),
    ("s1-as-in-asoci", "as", 1, False, "asoci"),
    ("s2-sac-in-asoci", "sac", 2, False, "asoci"),
    ("s1-sac-bar-in-asoci", "sac", 1, True, "asoci"),
    ("s2-sac-bar-in-asoci", "sac", 2, True, "asoci"),
    ("s2-as-in-asoci", "as", 2, False, "asoci"),
    ("s2-aas-in-asoci", "aas", 2, False, "asoci"),
    ("s1-as-bar-in-asoci", "as", 1, True, "asoci"),
    ("s1-aas-bar-in-asoci", "aas", 1, True, "asoci"),
    ("s2-as-bar-in-asoci", "as", 2, True, "asoci"),
    ("s2-aas-bar-in-asoci", "aas", 2, True, "asoci"),
    ("s1-ap-bar-in-asoci", "ap", 1, True, "asoci"),
    ("s2-ap-bar-in-asoci", "ap", 2, True, "asoci"),
)


@dataclass(frozen=True)
class AuditEntry:
    name: str
    stype: str
    level: int
    bar: bool
    target: str
    holds: bool
    witnesses: tuple  # offending generators (vectors outside the target)


def congruence_audit(ctx: SocleContext, witness_cap: int = 16):
    """Check every S-set containment statement against the computed soci
    or asoci of the context."""
    res = asoci(ctx)
    targets = {"soci": res.soci, "asoci": res.asoci}
    out = []
    for name, stype, level, bar, target in _AUDIT_STATEMENTS:
        sub = s_set(ctx, stype, level, bar)
        offending = tuple(v for v in sub.basis.data if not targets[target].contains(v))
        out.append(AuditEntry(name, stype, level, bar, target,
                              not offending, offending[:witness_cap]))
    return tuple(out), res
