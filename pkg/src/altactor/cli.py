"""Command-line surface: law checks, actor computations, witness search.

Exit codes: 0 when every requested check passed (or the computation simply
succeeded), 1 when a requested property failed (witnesses are in the
report), 2 for malformed input.  `--format machine` prints one JSON object
per line with a stable, append-only field order.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .action import semidirect, derived_semidirect_check
from .algebra import (
    UnknownLawError,
    annihilator,
    check_law,
    law_named,
)
from .fileformat import (
    ParseError,
    format_algebra,
    parse_action,
    parse_algebra,
)
from .linalg import Field
from .multiplier import ActionNotDerivedError, bim, expression_a, identity_b, relative_actor
from .socle import NotGAltError, actor_decision, asoci, make_context, soci
from .witness import SearchSpec, canonical, example51, search

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_BAD_INPUT = 2

DEFAULT_CHECK_LAWS = ("axiom-2-1", "axiom-2-2", "flexible-E1",
                      "left-alternative", "right-alternative")


class Reporter:
    def __init__(self, fmt: str, out=None):
        self.fmt = fmt
        self.out = out if out is not None else sys.stdout

    def emit(self, record: dict, text: str):
        if self.fmt == "machine":
            print(json.dumps(record), file=self.out)
        else:
            print(text, file=self.out)


def _fmt_vec(field, v):
    return [field.format(x) for x in v]


def _fmt_matrix(field, m):
    return [_fmt_vec(field, row) for row in m.data]


def _load_algebra(arg: str):
    if arg.startswith("canonical:"):
        try:
            return canonical(arg.split(":", 1)[1])
        except ValueError as e:
            raise ParseError(str(e)) from None
    with open(arg, encoding="utf-8") as fh:
        return parse_algebra(fh.read())


def _load_actions(paths):
    out = []
    for path in paths or ():
        with open(path, encoding="utf-8") as fh:
            out.append(parse_action(fh.read(), base_dir=os.path.dirname(os.path.abspath(path))))
    return out


def _witness_record(field, witness):
    if witness is None:
        return None
    tup, res = witness
    return {"at": list(tup), "residual": _fmt_vec(field, res)}


# ---------------------------------------------------------------------------
# subcommands

def _cmd_check(args, rep: Reporter) -> int:
    A = _load_algebra(args.algebra)
    laws = [law_named(s) for s in (args.laws.split(",") if args.laws else DEFAULT_CHECK_LAWS)]
    failed = False
    for law in laws:
        r = check_law(A, law)
        failed = failed or not r.holds
        rec = {
            "record": "law-report",
            "law": r.law,
            "holds": r.holds,
            "witness_count": r.witness_count,
            "witnesses": [{"at": list(t), "residual": _fmt_vec(A.field, v)}
                          for t, v in r.witnesses],
        }
        text = f"{r.law}: {'pass' if r.holds else 'FAIL'}"
        if not r.holds:
            t, v = r.witnesses[0]
            names = tuple(A.basis_names[i] for i in t)
            text += f" ({r.witness_count} witnesses; first at {names}, residual {_fmt_vec(A.field, v)})"
        rep.emit(rec, text)
    return EXIT_FAIL if failed else EXIT_OK


def _cmd_ann(args, rep: Reporter) -> int:
    A = _load_algebra(args.algebra)
    ann = annihilator(A)
    rec = {
        "record": "annihilator",
        "dim": ann.dim,
        "basis": _fmt_matrix(A.field, ann.basis),
    }
    rep.emit(rec, f"annihilator dim {ann.dim}; basis {_fmt_matrix(A.field, ann.basis)}")
    return EXIT_OK


def _cmd_bim(args, rep: Reporter) -> int:
    A = _load_algebra(args.algebra)
    try:
        actor = bim(A, args.variant)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BAD_INPUT
    rec = {
        "record": "actor-algebra",
        "variant": args.variant,
        "dim": actor.dim,
        "pairs": [{"L": _fmt_matrix(A.field, f.L), "R": _fmt_matrix(A.field, f.R)}
                  for f in actor.pairs],
        "table": [[_fmt_vec(A.field, actor.algebra.table[i][j])
                   for j in range(actor.dim)] for i in range(actor.dim)],
        "certification": {k: (list(v) if isinstance(v, tuple) else v)
                          for k, v in actor.post_checks.items()},
    }
    rep.emit(rec, f"bim[{args.variant}] dim {actor.dim}; certification {actor.post_checks}")
    return EXIT_OK


def _cmd_actor(args, rep: Reporter) -> int:
    A = _load_algebra(args.algebra)
    try:
        decision = actor_decision(A, _load_actions(args.action))
    except NotGAltError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BAD_INPUT
    rec = {
        "record": "actor-decision",
        "anticommutative": decision.anticommutative,
        "annihilator_dim": decision.ann.dim,
        "asoci_zero": decision.asoci_zero,
        "asoci_chain_dims": [s.dim for s in decision.socle.chain],
        "all_actions_anticommutative": decision.all_actions_anticommutative,
        "actor_dim": decision.actor.dim,
        "exists_certified": decision.exists_certified,
        "checks": decision.checks,
        "failures": [{"kind": kind, "name": name,
                      "witness": _witness_record(A.field, wit)}
                     for kind, name, wit in decision.failures],
        "family": decision.family_description,
        "caveat": decision.caveat,
    }
    status = "certified" if decision.exists_certified else "NOT certified"
    text = (f"actor {status}: dim {decision.actor.dim}, asoci_zero={decision.asoci_zero}, "
            f"ann_dim={decision.ann.dim}, failures={[f[1] for f in decision.failures]}")
    rep.emit(rec, text)
    return EXIT_OK if decision.exists_certified else EXIT_FAIL


def _cmd_socle(args, rep: Reporter, which: str) -> int:
    from .action import regular_action

    A = _load_algebra(args.algebra)
    family = [regular_action(A)] + _load_actions(args.action) if args.action else None
    ctx = make_context(A, family=family)
    if which == "soci":
        sub = soci(ctx)
        rec = {"record": "soci", "dim": sub.dim, "basis": _fmt_matrix(A.field, sub.basis),
               "family": ctx.family_description}
        rep.emit(rec, f"soci dim {sub.dim}; family: {ctx.family_description}")
    else:
        res = asoci(ctx)
        rec = {
            "record": "asoci",
            "soci_dim": res.soci.dim,
            "chain_dims": [s.dim for s in res.chain],
            "asoci_dim": res.asoci.dim,
            "asoci_basis": _fmt_matrix(A.field, res.asoci.basis),
            "family": ctx.family_description,
        }
        rep.emit(rec, f"asoci dim {res.asoci.dim}; chain dims {[s.dim for s in res.chain]}; "
                      f"soci dim {res.soci.dim}")
    return EXIT_OK


def _cmd_semidirect(args, rep: Reporter) -> int:
    with open(args.action_file, encoding="utf-8") as fh:
        act = parse_action(fh.read(), base_dir=os.path.dirname(os.path.abspath(args.action_file)))
    sd = semidirect(act)
    try:
        derived, in_cat = derived_semidirect_check(act, args.category)
    except ValueError as e:
        print(format_algebra(sd), end="")
        print(f"# category check skipped: {e}")
        return EXIT_FAIL
    if rep.fmt == "machine":
        rep.emit({"record": "algebra-file", "text": format_algebra(sd)}, "")
        rep.emit({"record": "category-equivalence", "category": args.category,
                  "action_derived": derived, "semidirect_in_category": in_cat}, "")
    else:
        print(format_algebra(sd), end="")
        print(f"# action derived ({args.category}): {'pass' if derived else 'FAIL'}")
        print(f"# semidirect in category: {'pass' if in_cat else 'FAIL'}")
    return EXIT_OK if (derived and in_cat) else EXIT_FAIL


def _cmd_identities(args, rep: Reporter) -> int:
    A = _load_algebra(args.algebra)
    if args.action:
        actor = relative_actor(A, _load_actions(args.action))
    else:
        actor = bim(A, "galt")
    which = args.which.lower()
    nonzero = 0
    shown = 0
    from itertools import product as iproduct
    for trip in iproduct(range(actor.dim), repeat=3):
        b1, b2, b3 = (actor.pairs[t] for t in trip)
        for a in range(A.dim):
            avec = A.basis_vector(a)
            if which.startswith("b"):
                res = identity_b(which.upper(), b1, b2, b3, avec)
            else:
                res = expression_a(int(which[1:]), b1, b2, b3, avec)
            if any(x != 0 for x in res):
                nonzero += 1
                if shown < 16:
                    shown += 1
                    rec = {"record": "identity-residual", "which": which,
                           "pairs": list(trip), "at": a,
                           "residual": _fmt_vec(A.field, res)}
                    rep.emit(rec, f"{which} at pairs {trip}, a={A.basis_names[a]}: "
                                  f"residual {_fmt_vec(A.field, res)}")
    rec = {"record": "identity-scan", "which": which, "actor_dim": actor.dim,
           "nonzero_count": nonzero}
    rep.emit(rec, f"{which}: {nonzero} nonzero residuals over {actor.dim}^3 pair triples")
    return EXIT_FAIL if nonzero else EXIT_OK


def _parse_field_arg(s: str) -> Field:
    t = s.strip().lower().replace("(", "").replace(")", "")
    if t in ("q", "qq", "rationals"):
        return Field(None)
    if t.startswith("gf"):
        t = t[2:]
    return Field(int(t))


def _cmd_witness(args, rep: Reporter) -> int:
    try:
        spec = SearchSpec(target=args.target, dim=args.dim,
                          field=_parse_field_arg(args.field),
                          budget=args.budget, seed=args.seed,
                          laws_pass=tuple(args.pass_law or ()),
                          laws_fail=tuple(args.fail_law or ()))
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BAD_INPUT
    hits = search(spec)
    for hit in hits:
        details = {}
        for k, v in hit.details.items():
            if isinstance(v, tuple) and v and isinstance(v[0], tuple):
                details[k] = [list(x) if isinstance(x, tuple) else x for x in v]
            elif isinstance(v, tuple):
                details[k] = list(v)
            else:
                details[k] = v
        rec = {"record": "witness-hit", "source": hit.source, "target": hit.target,
               "dim": hit.algebra.dim,
               "algebra": format_algebra(hit.algebra), "details": details}
        rep.emit(rec, f"hit from {hit.source}: {details}")
    rep.emit({"record": "witness-summary", "target": args.target, "hits": len(hits)},
             f"{len(hits)} hit(s) for target {args.target}")
    return EXIT_OK


def _cmd_example51(args, rep: Reporter) -> int:
    try:
        rec51 = example51(args.p)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BAD_INPUT
    rec = {
        "record": "example51",
        "p": rec51.p,
        "r_action_derived": rec51.r_derived,
        "lam_action_derived": rec51.lam_derived,
        "b1_residual": _fmt_vec(rec51.prod.field, rec51.b1_residual),
        "residual_coefficient": rec51.prod.field.format(rec51.residual_coefficient),
        "closure_dim": rec51.closure_dim,
        "closure_axiom21_holds": rec51.closure_axiom21_holds,
    }
    ok = (rec51.r_derived and rec51.lam_derived
          and any(x != 0 for x in rec51.b1_residual)
          and not rec51.closure_axiom21_holds)
    text = (f"p={rec51.p}: actions derived ({rec51.r_derived}, {rec51.lam_derived}); "
            f"B1 residual coefficient {rec51.residual_coefficient} on (0,z); "
            f"closure dim {rec51.closure_dim} fails axiom-2-1: {not rec51.closure_axiom21_holds}")
    rep.emit(rec, text)
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="altactor")
    parser.add_argument("--format", choices=("text", "machine"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="check laws of an algebra")
    p.add_argument("algebra")
    p.add_argument("--laws", default=None, help="comma-separated law names")

    p = sub.add_parser("ann", help="annihilator basis")
    p.add_argument("algebra")

    p = sub.add_parser("bim", help="bimultiplication closure")
    p.add_argument("algebra")
    p.add_argument("--variant", choices=("galt", "alt", "assoc", "mult"), default="galt")

    p = sub.add_parser("actor", help="actor existence decision")
    p.add_argument("algebra")
    p.add_argument("--action", action="append")

    for name in ("soci", "asoci"):
        p = sub.add_parser(name, help=f"compute {name}")
        p.add_argument("algebra")
        p.add_argument("--action", action="append")

    p = sub.add_parser("semidirect", help="semidirect product of an action file")
    p.add_argument("action_file")
    p.add_argument("--category", choices=("galt", "alt"), default="galt")

    p = sub.add_parser("identities", help="scan a pair identity over the actor")
    p.add_argument("algebra")
    p.add_argument("--which", required=True,
                   choices=["b1", "b2", "b3", "b4"] + [f"a{i}" for i in range(1, 12)])
    p.add_argument("--action", action="append")

    p = sub.add_parser("witness", help="seeded witness search")
    p.add_argument("--target", required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--field", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=10000)
    p.add_argument("--pass-law", action="append")
    p.add_argument("--fail-law", action="append")

    p = sub.add_parser("example51", help="product-algebra counterexample reconstruction")
    p.add_argument("--p", type=int, required=True)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    rep = Reporter(args.format)
    handlers = {
        "check": _cmd_check,
        "ann": _cmd_ann,
        "bim": _cmd_bim,
        "actor": _cmd_actor,
        "semidirect": _cmd_semidirect,
        "identities": _cmd_identities,
        "witness": _cmd_witness,
        "example51": _cmd_example51,
    }
    try:
        if args.command in ("soci", "asoci"):
            return _cmd_socle(args, rep, args.command)
        return handlers[args.command](args, rep)
    except (ParseError, UnknownLawError, ActionNotDerivedError, NotGAltError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
