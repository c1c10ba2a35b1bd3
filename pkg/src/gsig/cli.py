"""Command line interface: ``gsig <command> ...``.

Exit codes: 0 success, 1 failed verification or unexpected error, 2 parse
error, 3 size cap or guard exceeded, 4 invalid orbit data, 5 missing
character table.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import groups
from .characters import CharacterError, MissingTable, char_table
from .class_number import ClassNumberError, h_minus
from .groups import CapExceeded, FiniteGroup, GroupError, GroupSpecError, build_group
from .orbit_data import (InvalidData, OrbitDataError, bg_structure, data_to_json,
                         format_data, format_element, genus, parse_data, pushforward, realize,
                         reduce, restrict)
from .signature import (GuardExceeded, RelationVariant, SignatureError, cp_report, cpcp_report,
                        index_report, setup)

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_CAP, EXIT_INVALID, EXIT_TABLE = 0, 1, 2, 3, 4, 5


def _cap() -> int:
    raw = os.environ.get("GSIG_CAP_ORDER")
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise GroupSpecError(f"GSIG_CAP_ORDER must be an integer, got {raw!r}") from None
    return groups.DEFAULT_CAP


def _group(spec: str) -> FiniteGroup:
    return build_group(spec, cap=_cap())


def _subgroup(G: FiniteGroup, text: str):
    """``--to`` / subgroup argument: element labels generating it, or an id list."""
    body = text.strip()
    bracketed = body.startswith("[") and body.endswith("]")
    if bracketed:
        body = body[1:-1]
    toks = [t.strip() for t in body.split(",") if t.strip()]
    if not toks:
        raise GroupSpecError("empty subgroup description")
    if bracketed or (len(toks) > 1 and all(t.isdigit() for t in toks)):
        try:
            ids = sorted({int(t) for t in toks})
        except ValueError:
            raise GroupSpecError(f"bad id list {text!r}") from None
        if any(not 0 <= i < G.order for i in ids) or not G.is_subgroup(ids):
            raise GroupSpecError(f"{text!r} is not a subgroup")
        return G.subgroup_group(ids)
    gens = [G.element(t) for t in toks]
    if len(gens) == 1:
        return G.subgroup_group(gens=gens)
    return G.subgroup_group(G.closure(gens))


def _embedding(H: FiniteGroup, G: FiniteGroup, images: str | None):
    """Injective homomorphism H -> G: given generator images, else the first one found."""
    if images:
        toks = [t.strip() for t in images.split(",")]
        return groups.make_homomorphism(H, G, [G.element(t) for t in toks])
    k = len(H.generators)
    cands = [[y for y in range(G.order) if G.elt_order[y] == H.elt_order[g]] for g in H.generators]

    def search(i, chosen):
        if i == k:
            try:
                f = groups.make_homomorphism(H, G, chosen)
            except groups.HomomorphismError:
                return None
            return f if f.is_injective() else None
        for y in cands[i]:
            f = search(i + 1, chosen + [y])
            if f is not None:
                return f
        return None

    f = search(0, [])
    if f is None:
        raise GroupError("no injective homomorphism found")
    return f


def _variant(args, G: FiniteGroup) -> RelationVariant:
    gens = None
    if getattr(args, "dprime", None):
        gens = [[G.element(t) for t in grp.split(",")] for grp in args.dprime.split(";")]
    return RelationVariant.parse(args.variant, G, gens)


def _table(args, G):
    path = getattr(args, "table", None)
    return char_table(G, path) if path else None


def _emit(args, obj: dict, text: str):
    if args.format == "json":
        print(json.dumps(obj, indent=2))
    else:
        print(text)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_bg(args) -> int:
    G = _group(args.group)
    st = bg_structure(G)
    basis = [format_data(b) for b in st.basis]
    obj = {"group": G.name, "order": G.order, "free_rank": st.free_rank,
           "two_torsion": st.two_torsion, "describe": st.describe(), "basis": basis}
    text = f"{st.describe()}; basis: " + (", ".join(basis) if basis else "(none)")
    text = f"group {G.name} (order {G.order})\nr = {st.free_rank}, s = {st.two_torsion}\n{text}"
    _emit(args, obj, text)
    return EXIT_OK


def cmd_theta(args) -> int:
    G = _group(args.group)
    d = parse_data(G, args.data)
    v = _variant(args, G)
    s = setup(G, v, _table(args, G))
    vec = s.theta(d)
    Q, _ = s.a
    a_coords = Q.coords(vec) if s.in_a(vec) else None
    terms = [n if c == 1 else f"-{n}" if c == -1 else f"{c}*{n}"
             for c, n in zip(vec, s.table.names) if c]
    obj = {"group": G.name, "data": format_data(reduce(d)), "variant": v.kind,
           "characters": list(s.table.names), "theta": vec, "zero": not any(vec),
           "a_group": Q.describe(), "a_coordinates": a_coords}
    text = (f"theta({format_data(reduce(d))}) = " + (" + ".join(terms) if terms else "0")
            + f"  mod {v.kind}\nvector {vec}\nA_G = {Q.describe()}, coordinates {a_coords}")
    _emit(args, obj, text)
    return EXIT_OK


def cmd_index(args) -> int:
    G = _group(args.group)
    rep = index_report(G, _table(args, G), _variant(args, G))
    _emit(args, rep.to_json(), rep.to_text())
    return EXIT_OK


def cmd_report(args) -> int:
    rep = cp_report(args.p) if args.kind == "cp" else cpcp_report(args.p)
    _emit(args, rep.to_json(), rep.to_text())
    return EXIT_OK


def cmd_restrict(args) -> int:
    G = _group(args.group)
    d = parse_data(G, args.data)
    K, inc = _subgroup(G, args.to)
    r = restrict(d, inc)
    obj = {"group": G.name, "data": format_data(reduce(d)), "subgroup": list(inc.image),
           "restricted": format_data(r), "entries": data_to_json(r)["entries"]}
    sub = "{" + ", ".join(format_element(G, x) for x in inc.image) + "}"
    _emit(args, obj, f"res to {sub}: {format_data(r)}")
    return EXIT_OK


def cmd_induce(args) -> int:
    H = _group(args.group)
    d = parse_data(H, args.data)
    G = _group(args.into)
    f = _embedding(H, G, args.images)
    r = pushforward(f, d)
    obj = {"group": H.name, "into": G.name, "data": format_data(reduce(d)),
           "generator_images": [G.labels[f(g)] for g in H.generators],
           "image": format_data(r), "entries": data_to_json(r)["entries"]}
    imgs = ", ".join(f"{H.labels[g]} -> {G.labels[f(g)]}" for g in H.generators)
    _emit(args, obj, f"map {imgs}\nimage: {format_data(r)}")
    return EXIT_OK


def cmd_realize(args) -> int:
    G = _group(args.group)
    d = parse_data(G, args.data)
    w = realize(d, trim=args.trim)
    if not w.verify():
        raise AssertionError("witness failed verification")
    lab = G.labels
    obj = {"group": G.name, "data": format_data(d), "h": w.h, "g": genus(d, w.h),
           "a": [lab[x] for x in w.a_images], "b": [lab[x] for x in w.b_images],
           "xi": [lab[x] for x in w.xi_images], "verified": True}
    lines = [f"h = {w.h}, g = {obj['g']}"]
    for i, (a, b) in enumerate(zip(w.a_images, w.b_images), 1):
        lines.append(f"  a{i} -> {lab[a]}, b{i} -> {lab[b]}")
    for i, x in enumerate(w.xi_images, 1):
        lines.append(f"  xi{i} -> {lab[x]}")
    lines.append("relation, surjectivity and classes verified")
    _emit(args, obj, "\n".join(lines))
    return EXIT_OK


def cmd_class_number(args) -> int:
    res = h_minus(args.p)
    _emit(args, res.to_json(), f"h^-_{res.p} = {res.h_minus}  ({', '.join(res.methods)})")
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import run

    results = []
    for r in run(args.level):
        results.append(r)
        if args.format != "json":
            status = "PASS" if r.ok else "FAIL"
            print(f"{status}  {r.name:<16} {r.about}: {r.detail} ({r.seconds:.1f}s)", flush=True)
    ok = all(r.ok for r in results)
    if args.format == "json":
        print(json.dumps({"level": args.level, "passed": ok, "checks": [
            {"name": r.name, "about": r.about, "ok": r.ok, "detail": r.detail}
            for r in results]}, indent=2))
    else:
        print(f"{sum(r.ok for r in results)}/{len(results)} checks passed")
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")

    p = argparse.ArgumentParser(prog="gsig", description="Singular orbit data and G-signatures "
                                "of finite group actions on surfaces.")
    sub = p.add_subparsers(dest="command", required=True)

    def variant_opts(sp):
        sp.add_argument("--variant", default="e", help="relation lattice: e, d or dprime")
        sp.add_argument("--dprime", help="subgroups for dprime as generator lists, e.g. 'a;b'")
        sp.add_argument("--table", help="character table JSON file for nonabelian groups")

    sp = sub.add_parser("bg", parents=[common], help="structure of B_G")
    sp.add_argument("group")
    sp.set_defaults(func=cmd_bg)

    sp = sub.add_parser("theta", parents=[common], help="G-signature of orbit data")
    sp.add_argument("group")
    sp.add_argument("data")
    variant_opts(sp)
    sp.set_defaults(func=cmd_theta)

    sp = sub.add_parser("index", parents=[common], help="index of theta(B_G) in A_G")
    sp.add_argument("group")
    variant_opts(sp)
    sp.set_defaults(func=cmd_index)

    sp = sub.add_parser("report", parents=[common], help="C_p or C_p x C_p index report")
    sp.add_argument("kind", choices=("cp", "cpcp"))
    sp.add_argument("p", type=int)
    sp.set_defaults(func=cmd_report)

    sp = sub.add_parser("restrict", parents=[common], help="restrict orbit data to a subgroup")
    sp.add_argument("group")
    sp.add_argument("data")
    sp.add_argument("--to", required=True, help="generator labels or an id list like [0,2,4]")
    sp.set_defaults(func=cmd_restrict)

    sp = sub.add_parser("induce", parents=[common], help="push orbit data along an embedding")
    sp.add_argument("group")
    sp.add_argument("data")
    sp.add_argument("--into", required=True, help="spec of the target group")
    sp.add_argument("--images", help="comma separated images of the generators")
    sp.set_defaults(func=cmd_induce)

    sp = sub.add_parser("realize", parents=[common], help="surface-kernel witness for data")
    sp.add_argument("group")
    sp.add_argument("data")
    sp.add_argument("--trim", action="store_true", help="drop unneeded trivial handles")
    sp.set_defaults(func=cmd_realize)

    sp = sub.add_parser("class-number", parents=[common], help="relative class number h^-_p")
    sp.add_argument("p", type=int)
    sp.set_defaults(func=cmd_class_number)

    sp = sub.add_parser("verify", parents=[common], help="re-derive the golden values")
    sp.add_argument("--level", choices=("quick", "full"), default="quick")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CapExceeded, GuardExceeded) as exc:
        print(f"gsig: {exc}", file=sys.stderr)
        return EXIT_CAP
    except InvalidData as exc:
        print(f"gsig: invalid orbit data: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except MissingTable as exc:
        print(f"gsig: {exc}", file=sys.stderr)
        return EXIT_TABLE
    except (GroupSpecError, GroupError, OrbitDataError, CharacterError, SignatureError,
            ClassNumberError) as exc:
        print(f"gsig: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"gsig: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
