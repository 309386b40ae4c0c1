from itertools import product

import pytest

from altactor import (
    GF2,
    GF3,
    GF5,
    NotGAltError,
    Subspace,
    actor_decision,
    annihilator,
    asoci,
    bim,
    canonical,
    check_derived_action,
    congruence_audit,
    law_holds,
    make_action,
    make_algebra,
    make_context,
    multiply,
    regular_action,
    s_set,
    scalar_action,
    soci,
    zero_algebra,
)
from altactor.multiplier import ActionNotDerivedError
from altactor.witness import random_galt_algebras

from oracles import all_vectors


def test_s_set_sac_vanishes_for_anticommutative():
    h5 = canonical("h5")
    ctx = make_context(h5)  # regular action family
    assert s_set(ctx, "sac", 1, bar=False).is_zero()


def test_s_set_sac_vanishes_for_char2_commutative():
    gf4 = canonical("gf4")
    ctx = make_context(gf4)
    assert s_set(ctx, "sac", 1, bar=False).is_zero()


def test_s_set_h5_scalar_family_inside_center_line():
    h5 = canonical("h5")
    ctx = make_context(h5, family=[regular_action(h5), scalar_action(h5)])
    sub = s_set(ctx, "sac", 1, bar=False)
    line = Subspace.from_vectors(GF5, 3, [(0, 0, 1)])
    assert line.contains_space(sub)


def test_s_set_level2_and_bar_shapes_evaluate():
    gf4 = canonical("gf4")
    ctx = make_context(gf4)
    for stype in ("sac", "as", "aas", "ap"):
        for level in (1, 2):
            for bar in (False, True):
                sub = s_set(ctx, stype, level, bar)
                assert sub.ambient == 2


def test_s_set_validation():
    ctx = make_context(canonical("gf4"))
    with pytest.raises(ValueError):
        s_set(ctx, "nope", 1, False)
    with pytest.raises(ValueError):
        s_set(ctx, "sac", 3, False)


def test_soci_examples():
    assert soci(make_context(canonical("h5"))).is_zero()
    assert soci(make_context(canonical("gf4"))).is_zero()
    # unital with 2e(ee) = 2e != 0: soci is the whole algebra
    A = canonical("unital-gf5-dim2")
    assert soci(make_context(A)) == Subspace.full_space(GF5, 2)


def test_asoci_gf4_is_zero():
    res = asoci(make_context(canonical("gf4")))
    assert res.soci.is_zero()
    assert [s.dim for s in res.chain] == [0]
    assert res.asoci.is_zero()


def test_asoci_h5_chain_with_bruteforce_oracle():
    h5 = canonical("h5")
    res = asoci(make_context(h5))
    assert res.soci.is_zero()
    assert [s.dim for s in res.chain] == [1, 3]
    # oracle: V1 = {x : x*a = 0 for all a} over all 125 vectors, V2 likewise
    vecs = all_vectors(GF5, 3)
    v1 = [x for x in vecs
          if all(not any(multiply(h5, x, a)) for a in vecs)]
    assert sorted(v1) == sorted(
        __import__("altactor").linalg.span_vectors_exhaustive(
            GF5, res.chain[0].basis.data, 3))
    v1_space = res.chain[0]
    v2 = [x for x in vecs
          if all(v1_space.contains(multiply(h5, x, a)) for a in vecs)]
    assert len(v2) == 125  # everything
    assert res.asoci == Subspace.full_space(GF5, 3)


def test_asoci_zero_multiplication_algebra():
    res = asoci(make_context(canonical("zero(3)")))
    assert [s.dim for s in res.chain] == [3]
    assert res.asoci == Subspace.full_space(GF2, 3)


def test_make_context_rejects_bad_family():
    gf4 = canonical("gf4")
    bad = make_action(gf4, gf4, {(0, 0, 1): 1}, {})
    if check_derived_action(bad, "galt").holds:
        pytest.skip("perturbation accidentally derived")
    with pytest.raises(ActionNotDerivedError):
        make_context(gf4, family=[regular_action(gf4), bad])


def test_actor_decision_gf4():
    dec = actor_decision(canonical("gf4"))
    assert dec.exists_certified
    assert dec.anticommutative and dec.ann_zero and dec.asoci_zero
    assert dec.all_actions_anticommutative
    assert dec.actor.dim == 2
    assert dec.checks["actor-action-derived"]
    assert dec.checks["actor-axiom-2-1"] and dec.checks["actor-axiom-2-2"]
    assert dec.checks["actor-flexible-E1"] and dec.checks["actor-action-alt"]
    assert dec.failures == ()


def test_actor_decision_h5_not_certified_with_witness():
    dec = actor_decision(canonical("h5"))
    assert not dec.exists_certified
    assert dec.ann.dim == 1
    assert not dec.asoci_zero
    assert dec.failures
    kinds = {name for _kind, name, _w in dec.failures}
    assert kinds & {"I1", "I2", "I3", "I4", "II1", "II2", "II3", "II4"}
    for _kind, _name, witness in dec.failures:
        assert witness is not None


def test_actor_decision_dim0():
    dec = actor_decision(zero_algebra(GF2, 0))
    assert dec.exists_certified
    assert dec.actor.dim == 0


def test_actor_decision_requires_galt():
    nongalt = make_algebra(GF2, 2, {(0, 0, 0): 1, (0, 1, 0): 1, (1, 1, 1): 1,
                                    (1, 0, 1): 1, (0, 0, 1): 1})
    if law_holds(nongalt, "axiom-2-1") and law_holds(nongalt, "axiom-2-2"):
        pytest.skip("sample is unexpectedly g-alternative")
    with pytest.raises(NotGAltError):
        actor_decision(nongalt)


def test_congruence_audit_gf4_everything_zero():
    ctx = make_context(canonical("gf4"))
    entries, res = congruence_audit(ctx)
    assert res.soci.is_zero() and res.asoci.is_zero()
    for e in entries:
        assert e.holds, e.name
        # both sides are zero in this context
        assert s_set(ctx, e.stype, e.level, e.bar).is_zero(), e.name


def test_congruence_audit_h5_trivial_containment():
    ctx = make_context(canonical("h5"))
    entries, res = congruence_audit(ctx)
    assert res.asoci.dim == 3
    for e in entries:
        if e.target == "asoci":
            assert e.holds, e.name


def test_congruence_audit_unital_gf5():
    A = canonical("unital-gf5-dim2")
    ctx = make_context(A)
    entries, res = congruence_audit(ctx)
    assert res.asoci == Subspace.full_space(GF5, 2)
    for e in entries:
        assert e.holds, e.name


def _sample_contexts():
    names = ("zero(3)", "gf4", "h5", "w4", "unital-gf5-dim2")
    algs = [canonical(n) for n in names]
    algs += random_galt_algebras(GF2, (1, 2, 3), 6, seed=71)
    algs += random_galt_algebras(GF3, (1, 2, 3), 6, seed=72)
    return [(A, make_context(A)) for A in algs]


def test_asoci_ideal_and_actor_stability_and_monotonicity():
    for A, ctx in _sample_contexts():
        res = asoci(ctx)
        # two-sided ideal
        for v in res.asoci.basis.data:
            for i in range(A.dim):
                e = A.basis_vector(i)
                assert res.asoci.contains(multiply(A, e, v))
                assert res.asoci.contains(multiply(A, v, e))
            # stable under every actor pair
            for f in ctx.actor.pairs:
                assert res.asoci.contains(f.apply_left(v))
                assert res.asoci.contains(f.apply_right(v))
        # soci inside the chain, chain increasing
        assert res.chain[0].contains_space(res.soci)
        for lo, hi in zip(res.chain, res.chain[1:]):
            assert hi.contains_space(lo)
            assert hi.dim > lo.dim


def test_asoci_zero_three_way_equivalence():
    # asoci = 0 <=> first chain step = 0 <=> (all acting pairs
    # anticommutative and ann(A) = 0), relative to the context family
    for A, ctx in _sample_contexts():
        res = asoci(ctx)
        a_zero = res.asoci.is_zero()
        first_zero = res.chain[0].is_zero() and res.soci.is_zero()
        cond_c = (all(f.is_anticommutative_action() for f in ctx.acting_pairs)
                  and annihilator(A).is_zero())
        assert a_zero == first_zero == cond_c, A


def test_asoci_zero_implies_actor_action_derived():
    # when the decision-relative asoci vanishes, the closure's canonical
    # action is a derived action
    algs = [canonical("gf4"), zero_algebra(GF2, 0)]
    algs += [A for A in random_galt_algebras(GF2, (1, 2), 10, seed=73)]
    for A in algs:
        dec = actor_decision(A)
        if dec.asoci_zero:
            assert dec.checks["actor-action-derived"], A
            assert dec.checks["actor-axiom-2-1"] and dec.checks["actor-axiom-2-2"]


def test_decision_family_description_and_caveat():
    dec = actor_decision(canonical("gf4"))
    assert "actor pairs included" in dec.family_description
    assert "relative" in dec.caveat
