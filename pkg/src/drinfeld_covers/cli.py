"""Command-line front end.

Every command prints one JSON object on stdout and a one-line summary on
stderr.  Exit codes: 0 success, 1 a verdict came out false or a hypothesis
failed, 2 usage, parse or cap errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from drinfeld_covers.algebra import (
    GF,
    CapExceeded,
    ParseError,
    ResidueRing,
    factor_monic,
    is_irreducible,
    level_over,
    parse_element,
    parse_poly,
    roots_over,
)
from drinfeld_covers.algebra.tower import FIELD_SIZE_CAP
from drinfeld_covers.covering import abhyankar_check, ramification_index, tower_report
from drinfeld_covers.drinfeld import (
    DrinfeldModule2,
    aut_group,
    are_isomorphic,
    expected_torsion_size,
    is_coprime_to_characteristic,
    j_invariant,
    phi_of,
    torsion_kernel,
)
from drinfeld_covers.groups import (
    GROUP_CAP,
    KINDS,
    abelianization,
    build_group,
    gl2_order,
    hom_count_to_cyclic,
    identify_sl2,
    reduction_map,
    surjectivity_by_lifting,
)
from drinfeld_covers.lemmas import LEMMA_IDS, verify_lemma
from drinfeld_covers.ore import parse_ore


class UsageError(ValueError):
    pass


class Result:
    def __init__(self, payload: dict, summary: str, ok: bool = True):
        self.payload = payload
        self.summary = summary
        self.ok = ok


# -- shared helpers -------------------------------------------------------------


def _base_field(q: int):
    try:
        return GF(q)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _infer_field(q: int, ext: int | None, texts, parse, cap: int = FIELD_SIZE_CAP):
    """Level of degree ``ext`` over F_q, or the smallest one where every text parses."""
    F = _base_field(q)
    if ext is not None:
        if ext < 1:
            raise UsageError("--ext must be positive")
        L = level_over(F, ext)
        for t in texts:
            parse(L, t)
        return L
    k = 1
    while True:
        L = level_over(F, k)
        if L.order > cap:
            raise ParseError(f"inputs {list(texts)} do not parse in any extension of F_{q} below size {cap}")
        try:
            for t in texts:
                parse(L, t)
            return L
        except ParseError:
            k += 1


def _apoly(F, text: str):
    f = parse_poly(F, text, "T")
    if not f:
        raise UsageError("the zero polynomial is not allowed here")
    return f


def _monic(F, text: str):
    f = _apoly(F, text)
    if not f.is_monic():
        raise UsageError(f"{f.format('T')} is not monic")
    return f


def _ring(args):
    F = _base_field(args.q)
    if args.modulus is not None:
        if args.prime is not None:
            raise UsageError("give either --modulus or --prime/--n")
        return ResidueRing(_monic(F, args.modulus)), None
    if args.prime is None:
        raise UsageError("give --prime (with --n) or --modulus")
    prime = _monic(F, args.prime)
    if not is_irreducible(prime):
        raise UsageError(f"{prime.format('T')} is not irreducible over F_{args.q}")
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    return ResidueRing(prime**args.n), prime


def _group_cap(args) -> int:
    return args.cap if args.cap is not None else GROUP_CAP


def _field_cap(args) -> int:
    return args.cap if args.cap is not None else FIELD_SIZE_CAP


# -- field and poly ---------------------------------------------------------------


def cmd_field(args) -> Result:
    F = _base_field(args.q)
    L = level_over(F, args.ext or 1)
    if L.order > _field_cap(args):
        raise CapExceeded(f"field of size {L.order} exceeds cap {_field_cap(args)}")
    d = L.describe()
    out = {
        "p": d["p"],
        "q": args.q,
        "order": L.order,
        "degree_over_q": args.ext or 1,
        "tower": d["tower"],
        "symbols": [lv.symbol for lv in L.levels()[1:]],
    }
    if args.elements:
        out["elements"] = [L.format(x) for x in L.elements()]
    return Result(out, f"F_{L.order} as a degree-{args.ext or 1} extension of F_{args.q}")


def cmd_poly(args) -> Result:
    F = _base_field(args.q)
    if args.action == "irreducible":
        f = _apoly(F, args.f)
        irr = is_irreducible(f)
        return Result({"f": f.format("T"), "irreducible": irr}, f"{f.format('T')}: irreducible = {irr}")
    if args.action == "factor":
        f = _monic(F, args.f)
        facs = factor_monic(f)
        out = {"f": f.format("T"), "factors": [{"factor": g.format("T"), "exponent": e} for g, e in facs]}
        return Result(out, f"{len(facs)} distinct irreducible factors")
    if args.action == "roots":
        L = _infer_field(args.q, args.ext, [args.g], lambda L, t: parse_poly(L, t, "X"))
        g = parse_poly(L, args.g, "X")
        E, roots = roots_over(g, args.k, _field_cap(args))
        out = {"g": g.format("X"), "field_order": E.order, "roots": [E.format(r) for r in roots]}
        return Result(out, f"{len(roots)} roots in F_{E.order}")
    L = _infer_field(args.q, args.ext, [args.x], parse_element)
    x = parse_element(L, args.x)
    v = L.frobenius(x, args.i, args.q)
    out = {"x": L.format(x), "i": args.i, "field_order": L.order, "value": L.format(v)}
    return Result(out, f"x^(q^{args.i}) = {L.format(v)}")


# -- ore --------------------------------------------------------------------------


def cmd_ore(args) -> Result:
    texts = [args.f] + ([args.g] if args.g is not None else [])
    L = _infer_field(args.q, args.ext, texts, lambda L, t: parse_ore(L, args.q, t))
    f = parse_ore(L, args.q, args.f)
    out = {"field_order": L.order, "f": f.format()}
    if args.action == "additive":
        out["additive"] = f.to_additive().format("X")
        return Result(out, "additive polynomial of f")
    if args.g is None:
        raise UsageError(f"ore {args.action} needs --g")
    g = parse_ore(L, args.q, args.g)
    out["g"] = g.format()
    if args.action == "add":
        out["result"] = (f + g).format()
    elif args.action == "mul":
        out["result"] = (f * g).format()
    else:
        Q, R = f.right_divmod(g)
        out["quotient"], out["remainder"] = Q.format(), R.format()
    return Result(out, f"ore {args.action} over F_{L.order}")


# -- drinfeld ---------------------------------------------------------------------


def _module(args) -> DrinfeldModule2:
    if args.record is not None:
        try:
            rec = json.loads(args.record)
        except json.JSONDecodeError as e:
            raise ParseError(f"--record is not valid JSON: {e}") from None
        return DrinfeldModule2.from_record(rec)
    if args.q is None or args.theta is None or args.delta is None:
        raise UsageError("give --record, or --q, --theta, --delta (and optionally --g)")
    texts = [args.theta, args.g, args.delta]
    if args.action == "isom":
        texts += [args.g2 or "0", args.delta2 or "1"]
    L = _infer_field(args.q, args.ext, texts, parse_element)
    vals = [parse_element(L, t) for t in (args.theta, args.g, args.delta)]
    return DrinfeldModule2.over(L, args.q, *vals)


def cmd_drinfeld(args) -> Result:
    phi = _module(args)
    L, q = phi.L, phi.q
    cap = _field_cap(args)
    if args.action == "j":
        j = L.format(j_invariant(phi))
        return Result({"j": j}, f"j = {j} over F_{L.order}")
    if args.action == "action":
        if args.f is None:
            raise UsageError("drinfeld action needs --f")
        f = _apoly(phi.Fq, args.f)
        P = phi_of(phi, f)
        out = {
            "f": f.format("T"),
            "phi_f": P.format(),
            "constant_term": L.format(P.constant_term),
            "gamma_f": L.format(phi.base.gamma(f)),
        }
        return Result(out, f"phi_f has tau-degree {P.degree}")
    if args.action == "aut":
        E, auts = aut_group(phi, args.k or 2, cap)
        out = {
            "field_order": E.order,
            "j": L.format(j_invariant(phi)),
            "count": len(auts),
            "automorphisms": [E.format(u) for u in auts],
            "ramification_index": ramification_index(q),
        }
        return Result(out, f"|Aut| = {len(auts)} in F_{E.order}")
    if args.action == "torsion":
        if args.f is None:
            raise UsageError("drinfeld torsion needs --f")
        f = _monic(phi.Fq, args.f)
        tm = torsion_kernel(phi, f, args.k, cap)
        out = tm.to_json()
        out["expected_count"] = expected_torsion_size(phi, f)
        out["coprime_to_characteristic"] = is_coprime_to_characteristic(phi, f)
        out["characteristic"] = phi.base.characteristic.format("T")
        return Result(out, f"{len(tm.points)} torsion points in F_{tm.field.order}")
    if args.delta2 is None:
        raise UsageError("drinfeld isom needs --delta2 (and optionally --g2)")
    other = DrinfeldModule2(phi.base, parse_element(L, args.g2 or "0"), parse_element(L, args.delta2))
    E, u = are_isomorphic(phi, other, args.k or 1, cap)
    out = {
        "field_order": E.order,
        "isomorphic": u is not None,
        "u": None if u is None else E.format(u),
        "j": [L.format(j_invariant(phi)), L.format(j_invariant(other))],
    }
    return Result(out, f"isomorphic over F_{E.order}: {u is not None}")


# -- groups -----------------------------------------------------------------------


def cmd_group(args) -> Result:
    ring, prime = _ring(args)
    cap = _group_cap(args)
    kind = args.kind
    if args.action == "order":
        gt = build_group(ring, kind, cap=cap, certify=False)
        return Result({"group": gt.name, "order": len(gt), "gl2_order": gl2_order(ring)}, f"|{gt.name}| = {len(gt)}")
    if args.action == "reduce":
        if prime is None or args.n < 2:
            raise UsageError("group reduce needs --prime and --n >= 2")
        dst = build_group(ResidueRing(prime ** (args.n - 1)), kind, cap=cap)
        if gl2_order(ring) <= cap:
            rep = reduction_map(build_group(ring, kind, cap=cap), dst)
        else:
            rep = surjectivity_by_lifting(ring, dst)
        return Result(rep.to_json(), f"{rep.src} -> {rep.dst} surjective = {rep.surjective}", rep.surjective)
    gt = build_group(ring, kind, cap=cap)
    if args.action == "build":
        out = {
            "group": gt.name,
            "kind": kind,
            "ring": repr(ring),
            "order": len(gt),
            "certified": True,
            "generators": [gt.format(g) for g in gt.generators],
        }
        if args.elements:
            out["elements"] = [gt.format(g) for g in gt.elements]
        return Result(out, f"built {gt.name} of order {len(gt)}")
    if args.action == "abelianize":
        inv = abelianization(gt)
        out = {"group": gt.name, "order": len(gt), "commutator_order": len(gt.commutator_subgroup), "invariants": inv}
        return Result(out, f"{gt.name}^ab invariants {inv}")
    if args.action == "homcount":
        n = args.target if args.target is not None else args.q + 1
        if kind == "G" and args.obstruction:
            res = abhyankar_check(gt, n)
            out = {"group": gt.name, **hom_count_to_cyclic(gt, n).to_json(), "pullback": res.to_json()}
        else:
            out = {"group": gt.name, **hom_count_to_cyclic(gt, n).to_json()}
        return Result(out, f"{out['count']} homs {gt.name} -> Z/{n}")
    ident = identify_sl2(gt, cap=cap)
    ok = ident["verdict"] and ident["hypothesis_ok"]
    return Result(ident, f"{gt.name} identified as {ident['identified_as']}: {ident['verdict']}", ok)


def cmd_lemma(args) -> Result:
    F = _base_field(args.q)
    prime = _monic(F, args.prime)
    res = verify_lemma(args.id, args.q, prime, args.n, _group_cap(args))
    ok = res["verdict"] and res["hypothesis_ok"]
    return Result(res, f"lemma {args.id}: verdict {res['verdict']}, hypothesis_ok {res['hypothesis_ok']}", ok)


def cmd_tower(args) -> Result:
    F = _base_field(args.q)
    cap = _group_cap(args)
    if args.ideal is not None:
        if args.prime is not None:
            raise UsageError("give either --ideal or --prime/--levels")
        rep = tower_report(args.q, ideal=_monic(F, args.ideal), cap=cap)
    else:
        if args.prime is None:
            raise UsageError("tower report needs --prime/--levels or --ideal")
        prime = _monic(F, args.prime)
        if not is_irreducible(prime):
            raise UsageError(f"{prime.format('T')} is not irreducible over F_{args.q}")
        rep = tower_report(args.q, prime=prime, levels=args.levels, cap=cap)
    out = rep.to_json()
    ok = (
        rep.hypothesis_ok
        and all(lv.surjective_to_previous is not False for lv in rep.levels)
        and all(lv.final_group_name != "unidentified" for lv in rep.levels)
        and rep.inverse_system_consistent is not False
    )
    last = rep.levels[-1]
    return Result(out, f"top level: {last.final_group_name} of order {last.final_group_order}", ok)


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="drinfeld-covers", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    cap = argparse.ArgumentParser(add_help=False)
    cap.add_argument("--cap", type=int, default=None, help="enumeration / field-size cap")

    s = sub.add_parser("field", parents=[cap], help="describe F_q or an extension")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--ext", type=int, default=None)
    s.add_argument("--elements", action="store_true")
    s.set_defaults(func=cmd_field)

    s = sub.add_parser("poly", parents=[cap], help="polynomials over F_q and its extensions")
    s.add_argument("action", choices=["factor", "irreducible", "roots", "frobenius"])
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--ext", type=int, default=None)
    s.add_argument("--f", help="element of A = F_q[T]")
    s.add_argument("--g", help="polynomial in X over the level (roots)")
    s.add_argument("--k", type=int, default=1, help="search in the degree-k extension (roots)")
    s.add_argument("--x", help="field element (frobenius)")
    s.add_argument("--i", type=int, default=1)
    s.set_defaults(func=cmd_poly)

    s = sub.add_parser("ore", parents=[cap], help="twisted polynomials in t")
    s.add_argument("action", choices=["add", "mul", "divmod", "additive"])
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--ext", type=int, default=None)
    s.add_argument("--f", required=True)
    s.add_argument("--g")
    s.set_defaults(func=cmd_ore)

    s = sub.add_parser("drinfeld", parents=[cap], help="rank-2 Drinfeld modules")
    s.add_argument("action", choices=["action", "j", "aut", "torsion", "isom"])
    s.add_argument("--q", type=int)
    s.add_argument("--ext", type=int, default=None)
    s.add_argument("--theta")
    s.add_argument("--g", default="0")
    s.add_argument("--delta")
    s.add_argument("--record", help="JSON record {q, tower, theta, g, delta}")
    s.add_argument("--f", help="element of A (action, torsion)")
    s.add_argument("--k", type=int, default=None, help="extension degree for the search")
    s.add_argument("--g2")
    s.add_argument("--delta2")
    s.set_defaults(func=cmd_drinfeld)

    s = sub.add_parser("group", parents=[cap], help="matrix groups over A/I")
    s.add_argument("action", choices=["build", "order", "reduce", "abelianize", "homcount", "identify"])
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--prime")
    s.add_argument("--n", type=int, default=1)
    s.add_argument("--modulus")
    s.add_argument("--kind", choices=KINDS, default="G")
    s.add_argument("--target", type=int, default=None, help="cyclic target Z/n (homcount)")
    s.add_argument("--obstruction", action="store_true", help="also report the pullback obstruction")
    s.add_argument("--elements", action="store_true")
    s.set_defaults(func=cmd_group)

    s = sub.add_parser("lemma", parents=[cap], help="verify one lemma")
    s.add_argument("action", choices=["verify"])
    s.add_argument("--id", required=True, choices=LEMMA_IDS)
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--prime", required=True)
    s.add_argument("--n", type=int, default=1)
    s.set_defaults(func=cmd_lemma)

    s = sub.add_parser("tower", parents=[cap], help="inverse system of Galois groups")
    s.add_argument("action", choices=["report"])
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--prime")
    s.add_argument("--levels", type=int, default=1)
    s.add_argument("--ideal")
    s.set_defaults(func=cmd_tower)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        res = args.func(args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return 2
    except CapExceeded as e:
        print(f"cap exceeded: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"invalid input: {e}", file=sys.stderr)
        return 2
    print(json.dumps(res.payload, sort_keys=True, ensure_ascii=False))
    print(res.summary, file=sys.stderr)
    return 0 if res.ok else 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
