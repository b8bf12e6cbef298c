"""Command-line front end. JSON on stdout by default, aligned tables with --text."""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass
from typing import Sequence

from . import __version__
from .errors import ConsistencyError, FibrumError, FormatError, PreconditionError
from .fib import covering_filter, decompose_standard, mackey_product, standard_basis
from .fib.ring import Ring
from .grp import GroupTable, build_group, center, derived_subgroup, from_cayley
from .serialize import dump_element, dump_group, dump_pair, dumps, load_element, load_pair, loads

SUBCOMMANDS = (
    "group", "basis", "product", "idem", "linkage", "gamma", "reduced",
    "squeeze", "decompose", "simple-eval", "linearize", "verify",
)


@dataclass(frozen=True)
class RunConfig:
    N: int | None
    ring: str
    p: int | None
    max_order: int | None
    catalog: str | None
    seed: int

    def check(self) -> "RunConfig":
        if self.N is not None and self.N < 1:
            raise PreconditionError("N must be at least 1")
        if self.max_order is not None and self.max_order < 1:
            raise PreconditionError("--max-order must be positive")
        Ring.from_name(self.ring)
        return self


# -- input helpers -------------------------------------------------------------------


def _read_json(path: str):
    try:
        with open(path) as fh:
            return loads(fh.read())
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from exc


def resolve_group(spec: str) -> GroupTable:
    """A group name, a Cayley-table JSON file, or a name from FIBRUM_CATALOG."""
    if spec.endswith(".json") and os.path.exists(spec):
        doc = _read_json(spec)
        return from_cayley({k: v for k, v in doc.items() if k != "schema"})
    try:
        return build_group(spec)
    except FormatError:
        path = os.environ.get("FIBRUM_CATALOG")
        if path:
            for doc in _read_json(path):
                if doc.get("name") == spec:
                    return from_cayley(doc)
        raise


def _ints(text: str | None) -> list[int] | None:
    if text is None:
        return None
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise FormatError(f"expected comma-separated integers, got {text!r}") from None


def _need_n(cfg: RunConfig) -> int:
    if cfg.N is None:
        raise PreconditionError("this command needs --n")
    return cfg.N


def _central(G: GroupTable, N: int, k: str | None, kappa: str | None):
    """The pair given by --k/--kappa; defaults: K = Z(G), kappa the first faithful character."""
    from .idem import central_pair, mgg_pairs

    ks = tuple(sorted(_ints(k))) if k is not None else center(G).elems
    vals = _ints(kappa)
    if vals is not None:
        order = _ints(k) if k is not None else list(ks)
        return central_pair(G, order, vals, N)
    for cp in mgg_pairs(G, N):
        if cp.k == tuple(ks) and cp.is_faithful:
            return cp
    raise PreconditionError(f"no G-stable faithful character of K = {list(ks)} into Z/{N}")


# -- output -------------------------------------------------------------------------


def _table(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    cells = [[str(h) for h in header]] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _emit(args, doc: dict, header: Sequence[str] | None = None, rows: Sequence[Sequence] | None = None) -> None:
    doc = {**doc, "config": asdict(args.cfg)}
    if args.text:
        if header is not None and rows is not None:
            print(_table(header, rows))
        else:
            for k, v in doc.items():
                if k != "config":
                    print(f"{k}: {json.dumps(v, default=str) if isinstance(v, (list, dict)) else v}")
    else:
        sys.stdout.write(dumps(doc))


# -- subcommands --------------------------------------------------------------------


def cmd_group(args) -> int:
    G = resolve_group(args.name)
    doc = {
        "schema": "fibrum/group-info/v1",
        "name": G.name,
        "order": G.order,
        "abelian": G.is_abelian,
        "exponent": G.exponent,
        "classes": [list(c) for c in G.conjugacy_classes],
        "center": list(center(G).elems),
        "derived": list(derived_subgroup(G).elems),
        "element_orders": list(G.element_orders),
        "table": dump_group(G),
    }
    rows = [(i, G.labels[i], G.element_orders[i], G.class_index[i]) for i in range(G.order)]
    _emit(args, doc, ("index", "label", "order", "class"), rows)
    return 0


def cmd_basis(args) -> int:
    G, H, N = resolve_group(args.g), resolve_group(args.h), _need_n(args.cfg)
    basis = standard_basis(G, H, N, covering_filter(G, H) if args.covering else None)
    doc = {"schema": "fibrum/basis/v1", "g": G.name, "h": H.name, "N": N, "size": len(basis), "pairs": [dump_pair(p) for p in basis]}
    for d in doc["pairs"]:
        del d["g"], d["h"]
    rows = [(i, len(p.u), len(p.p1), len(p.k1), len(p.p2), len(p.k2), p.is_covering) for i, p in enumerate(basis)]
    _emit(args, doc, ("i", "|U|", "|p1|", "|k1|", "|p2|", "|k2|", "covering"), rows)
    return 0


def cmd_product(args) -> int:
    G, H, K, N = resolve_group(args.g), resolve_group(args.h), resolve_group(args.k), _need_n(args.cfg)
    x = load_element(_read_json(args.x), G, H)
    y = load_element(_read_json(args.y), H, K)
    ring = Ring.from_name(args.cfg.ring)
    for e, name in ((x, "x"), (y, "y")):
        if e.N != N:
            raise PreconditionError(f"{name} has modulus {e.N}, expected {N}")
    z = mackey_product(x.to_ring(ring), y.to_ring(ring))
    doc = dump_element(z)
    rows = [(i, len(p.u), list(p.phi), c) for i, (p, c) in enumerate(sorted(z, key=lambda t: t[0].key))]
    _emit(args, doc, ("term", "|U|", "phi", "coeff"), rows)
    return 0


def cmd_idem(args) -> int:
    from .idem import ef_relation_failures, linkage_classes, mgg_pairs

    G, N = resolve_group(args.group), _need_n(args.cfg)
    pairs = mgg_pairs(G, N)
    link = linkage_classes(G, N)
    fails = ef_relation_failures(G, N) if args.check else None
    doc = {
        "schema": "fibrum/idem/v1",
        "group": G.name,
        "N": N,
        "pairs": [{**cp.to_json(), "faithful": cp.is_faithful, "linkage_class": link.index(cp)} for cp in pairs],
        "relation_failures": fails,
    }
    rows = [(cp.label(), cp.is_faithful, link.index(cp)) for cp in pairs]
    _emit(args, doc, ("(K, kappa)", "faithful", "class"), rows)
    return 0 if not fails else 2


def cmd_linkage(args) -> int:
    from .cohom import linkage_via_cohomology, linkage_via_extension
    from .idem import linked_bruteforce
    from .verify import linkage_witness

    N = _need_n(args.cfg)
    G, H = resolve_group(args.g), resolve_group(args.h)
    a = _central(G, N, args.k, args.kappa)
    b = _central(H, N, args.l, args.lam)
    coh = linkage_via_cohomology(a, b)
    brute = linked_bruteforce(a, b)
    ext = linkage_via_extension(a, b)
    if len({coh.linked, brute, ext}) != 1:
        raise ConsistencyError(f"linkage routes disagree: cohomology={coh.linked} brute={brute} extension={ext}")
    w = linkage_witness(a, b) if brute else None
    doc = {
        **coh.to_json(),
        "left": a.to_json(),
        "right": b.to_json(),
        "bruteforce": brute,
        "extension": ext,
        "witness": None if w is None else {"u": [list(x) for x in w.pairs], "phi": list(w.phi)},
    }
    _emit(args, doc, ("route", "linked"), [("cohomology", coh.linked), ("bruteforce", brute), ("extension", ext)])
    return 0


def cmd_gamma(args) -> int:
    from .idem import gamma_group, ses_report

    G, N = resolve_group(args.group), _need_n(args.cfg)
    cp = _central(G, N, args.k, args.kappa)
    gam = gamma_group(cp)
    r = ses_report(cp)
    doc = {
        "schema": "fibrum/gamma/v1",
        "group": G.name,
        "pair": cp.to_json(),
        "order": gam.order,
        "abelian": gam.table.is_abelian,
        "ses": {k: v for k, v in r.to_json().items() if k != "base"},
    }
    rows = [
        ("|Gamma|", r.gamma_order), ("|(G/K)*|", r.dual_order), ("|im pi|", r.image_order),
        ("|twist|", len(r.twist)), ("ker pi = im iota", r.exact), ("iota injective", r.iota_injective),
        ("|Gamma| = |(G/K)*| |im pi|", r.order_identity), ("corrected identity", r.corrected_identity), ("split", r.split),
    ]
    _emit(args, doc, ("quantity", "value"), rows)
    return 0


def cmd_reduced(args) -> int:
    from .cohom import reduced_criterion_hypothesis
    from .grp import small_catalog
    from .simp import reduced_pairs_bruteforce

    G, N = resolve_group(args.group), _need_n(args.cfg)
    rep = reduced_pairs_bruteforce(G, N, small_catalog(max(G.order - 1, 1)))
    hyp = N % G.order == 0
    doc = rep.to_json()
    for f, d in zip(rep.flags, doc["pairs"]):
        d["hypothesis"] = reduced_criterion_hypothesis(f.cp) if hyp else None
        if hyp and d["hypothesis"] != f.reduced:
            raise ConsistencyError(f"brute force and hypothesis criterion disagree on {f.cp.label()}")
    rows = [(f.cp.label(), f.reduced, d["hypothesis"], f.witness.h.name if f.witness else "") for f, d in zip(rep.flags, doc["pairs"])]
    _emit(args, doc, ("(K, kappa)", "reduced", "hypothesis", "witness group"), rows)
    return 0


def cmd_squeeze(args) -> int:
    from .cohom import squeeze

    G, N = resolve_group(args.group), _need_n(args.cfg)
    r = squeeze(_central(G, N, args.k, args.kappa))
    doc = r.to_json()
    rows = [("|G~|", r.gt.order), ("K~", list(r.k_tilde)), ("|M|", len(r.m.elems))]
    _emit(args, doc, ("quantity", "value"), rows)
    return 0


def cmd_decompose(args) -> int:
    from .cohom import full_decomposition

    g = resolve_group(args.g) if args.g else None
    h = resolve_group(args.h) if args.h else None
    p = load_pair(_read_json(args.pair), g, h)
    if args.five:
        d = decompose_standard(p)
        names, factors = ("ind", "inf", "middle", "def", "res"), d.factors()
    else:
        d = full_decomposition(p)
        names, factors = d.NAMES, d.factors
    doc = {"schema": "fibrum/decomposition/v1", "factors": [{"name": n, **dump_pair(f)} for n, f in zip(names, factors)]}
    rows = [(n, f.g.name or f.g.order, f.h.name or f.h.order, len(f.u)) for n, f in zip(names, factors)]
    _emit(args, doc, ("factor", "G", "H", "|U|"), rows)
    return 0


def cmd_simple_eval(args) -> int:
    from .grp import small_catalog
    from .simp import gamma_irreducibles, quadruple, simple_evaluation

    G, N = resolve_group(args.group), _need_n(args.cfg)
    cp = _central(G, N, args.k, args.kappa)
    q0 = quadruple(cp, p=args.cfg.p)
    p = q0.module.p
    mods, complete = gamma_irreducibles(q0.module.gamma, p)
    if not 0 <= args.module < len(mods):
        raise PreconditionError(f"--module must be in [0, {len(mods)})")
    q = quadruple(cp, mods[args.module], p)
    targets = [resolve_group(t) for t in args.at.split(",")] if args.at else list(small_catalog(args.cfg.max_order or G.order))
    dims = [(H.name, simple_evaluation(q, H, method=args.method)) for H in targets]
    doc = {
        "schema": "fibrum/simple-eval/v1",
        "quadruple": q.to_json(),
        "modules": [m.label for m in mods],
        "modules_complete": complete,
        "method": args.method,
        "dims": {n: d for n, d in dims},
    }
    _emit(args, doc, ("H", "dim"), dims)
    return 0


def cmd_linearize(args) -> int:
    from .lin import character_prime, lin_rank, linearize, simplicity_probe

    if args.probe:
        gs = [resolve_group(n) for n in args.probe.split(",")]
        rep = simplicity_probe(gs, _need_n(args.cfg), args.cfg.p, args.functor)
        rows = [(g.group, g.dim, g.generated_rank, g.evaluation_rank) for g in rep.groups]
        _emit(args, rep.to_json(), ("group", "dim", "generated", "evaluation"), rows)
        return 0
    if args.element:
        x = load_element(_read_json(args.element), resolve_group(args.group) if args.group else None, build_group("C1"))
        f = linearize(x, args.cfg.p)
        _emit(args, f.to_json(), ("class", "value"), [(c[0], v) for c, v in zip(f.g.conjugacy_classes, f.values)])
        return 0
    if not args.group:
        raise PreconditionError("linearize needs an element file, --group, or --probe")
    G, N = resolve_group(args.group), _need_n(args.cfg)
    p = args.cfg.p or character_prime([G], N)
    r = lin_rank(G, N, p)
    doc = {"schema": "fibrum/lin-rank/v1", "group": G.name, "N": N, "p": p, "rank": r, "classes": len(G.conjugacy_classes), "surjective": r == len(G.conjugacy_classes)}
    _emit(args, doc)
    return 0


SUITE_KWARGS = {
    "mackey": lambda a: {**({"names": _catalog_names(a.cfg.max_order)} if a.cfg.max_order else {}), **({"moduli": (a.cfg.N,)} if a.cfg.N else {})},
    "idempotents": lambda a: {**({"moduli": (a.cfg.N,)} if a.cfg.N else {}), "seed": a.cfg.seed},
    "covering": lambda a: {"moduli": (a.cfg.N,)} if a.cfg.N else {},
    "ses": lambda a: {"moduli": (a.cfg.N,)} if a.cfg.N else {},
    "squeeze": lambda a: {"max_order": a.cfg.max_order} if a.cfg.max_order else {},
    "decomposition": lambda a: {"seed": a.cfg.seed, **({"max_order": a.cfg.max_order} if a.cfg.max_order else {})},
    "alpha": lambda a: {"seed": a.cfg.seed},
    "quadruples": lambda a: {"max_order": a.cfg.max_order} if a.cfg.max_order else {},
}


def _catalog_names(max_order: int) -> tuple[str, ...]:
    from .grp import small_catalog

    return tuple(g.name for g in small_catalog(max_order))


def cmd_verify(args) -> int:
    from .verify import CRITERIA, run_criterion

    by_name = {name: n for n, (name, _) in CRITERIA.items()}
    wanted = args.suites or ["all"]
    numbers = []
    for w in wanted:
        if w == "all":
            numbers.extend(CRITERIA)
        elif w in by_name:
            numbers.append(by_name[w])
        elif w.isdigit() and int(w) in CRITERIA:
            numbers.append(int(w))
        else:
            raise PreconditionError(f"unknown suite {w!r}; choose from {', '.join(by_name)} or all")
    results = []
    for n in dict.fromkeys(numbers):
        name = CRITERIA[n][0]
        kwargs = SUITE_KWARGS.get(name, lambda a: {})(args)
        r = run_criterion(n, **kwargs)
        results.append(r)
        if args.text:
            print(f"{r.line()}  ({r.seconds:.1f}s)", flush=True)
    ok = all(r.passed for r in results)
    if not args.text:
        _emit(args, {"schema": "fibrum/verify/v1", "passed": ok, "criteria": [r.to_json() for r in results]})
    return 0 if ok else 3


# -- parser -----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, dest="N", help="modulus N of the fiber group Z/N")
    common.add_argument("--ring", default="Z", help="coefficient ring: Z, Q or Fp (e.g. F7)")
    common.add_argument("--p", type=int, help="prime for computations over F_p")
    common.add_argument("--max-order", type=int, help="largest group order for catalog sweeps")
    common.add_argument("--catalog", help="JSON list of extra Cayley tables (overrides FIBRUM_CATALOG)")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    common.add_argument("--text", action="store_true", help="aligned text instead of JSON")

    ap = argparse.ArgumentParser(prog="fibrum", description="Exact computations with fibered bisets, fiber group Z/N.")
    ap.add_argument("--version", action="version", version=f"fibrum {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name: str, fn, help_: str):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.set_defaults(fn=fn)
        return s

    def pair_opts(s, k="--k", kappa="--kappa"):
        s.add_argument(k, help="elements of K as comma-separated indices (default: the center)")
        s.add_argument(kappa, help="values of kappa on K, aligned with K (default: first faithful)")

    s = add("group", cmd_group, "group data and Cayley table")
    s.add_argument("name", help="group name (C4, D8, Q8, S3, C2xC2, ...) or Cayley-table JSON file")

    s = add("basis", cmd_basis, "standard basis of B^A(G, H)")
    s.add_argument("--g", required=True)
    s.add_argument("--h", required=True)
    s.add_argument("--covering", action="store_true", help="only covering pairs")

    s = add("product", cmd_product, "Mackey product of two elements")
    s.add_argument("--g", required=True)
    s.add_argument("--h", required=True)
    s.add_argument("--k", required=True)
    s.add_argument("x", help="element of B^A(G, H) as JSON")
    s.add_argument("y", help="element of B^A(H, K) as JSON")

    s = add("idem", cmd_idem, "central pairs (K, kappa) of M_G^G and their linkage classes")
    s.add_argument("--group", required=True)
    s.add_argument("--check", action="store_true", help="also verify the e/f product relations")

    s = add("linkage", cmd_linkage, "decide (G, K, kappa) ~ (H, L, lambda) by three routes")
    s.add_argument("--g", required=True)
    s.add_argument("--h", required=True)
    pair_opts(s)
    pair_opts(s, "--l", "--lam")

    s = add("gamma", cmd_gamma, "the group Gamma of a central pair and its exact sequence")
    s.add_argument("--group", required=True)
    pair_opts(s)

    s = add("reduced", cmd_reduced, "reduced central pairs of G")
    s.add_argument("--group", required=True)

    s = add("squeeze", cmd_squeeze, "squeeze a faithful central pair onto K & G'")
    s.add_argument("--group", required=True)
    pair_opts(s)

    s = add("decompose", cmd_decompose, "seven-factor (or --five) decomposition of a pair")
    s.add_argument("pair", help="pair JSON document")
    s.add_argument("--g")
    s.add_argument("--h")
    s.add_argument("--five", action="store_true", help="five-factor decomposition only")

    s = add("simple-eval", cmd_simple_eval, "dimensions of a simple functor at test groups")
    s.add_argument("--group", required=True)
    pair_opts(s)
    s.add_argument("--module", type=int, default=0, help="index into the listed Gamma-modules")
    s.add_argument("--at", help="comma-separated test groups (default: catalog up to --max-order)")
    s.add_argument("--method", choices=("compressed", "full"), default="compressed")

    s = add("linearize", cmd_linearize, "linearization to class functions over F_p")
    s.add_argument("element", nargs="?", help="element of B^A(G) = B^A(G, 1) as JSON")
    s.add_argument("--group", help="rank of linearization for this group")
    s.add_argument("--probe", help="comma-separated groups for the simplicity probe")
    s.add_argument("--functor", choices=("character", "burnside"), default="character")

    s = add("verify", cmd_verify, "run acceptance suites")
    s.add_argument("suites", nargs="*", help="suite names or criterion numbers (default: all)")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        args.cfg = RunConfig(args.N, args.ring, args.p, args.max_order, args.catalog, args.seed).check()
        if args.catalog:
            os.environ["FIBRUM_CATALOG"] = args.catalog
        return args.fn(args)
    except ConsistencyError as exc:
        sys.stdout.write(dumps(exc.to_json()))
        return 2
    except FibrumError as exc:
        sys.stdout.write(dumps(exc.to_json()))
        return 1


if __name__ == "__main__":
    sys.exit(main())
