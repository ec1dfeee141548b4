"""Command-line front end.

Exit codes: 0 success, 1 semantic failure (invalid input function, bad
stratification, ...), 2 unreadable or malformed input, 3 size bound hit.
Complex arguments accept a path, ``-`` for stdin, or ``fixture:NAME``.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from concurrent.futures import ThreadPoolExecutor

from . import io
from .core import Complex
from .dsmt import (construct_stratification, is_maximal, separating_function, simplify,
                   union_gradient)
from .errors import ComplexTooLarge, DSMTError, ParseError
from .homology import betti
from .morse import check_dmf, classify, gradient_of, is_acyclic, morse_chain_complex
from .pointdata import (extend_dmf, extend_global, extend_stratified, maxf_extension,
                        mean_extension)
from .randomgen import random_complex, random_dmf, random_field
from .strat import (Stratification, check_dsmf, minimal_stratum_is_subcomplex,
                    validate_stratification, violator_boundary_property)

DIM_NAMES = [("vertex", "vertices"), ("edge", "edges"), ("triangle", "triangles"),
             ("tetrahedron", "tetrahedra")]


def _fmt(x: float) -> str:
    return f"{x:g}"


def _label(K: Complex, f, i: int) -> str:
    verts = "-".join(str(v) for v in K.simplices[i])
    return f"{i}[{verts}]" + (f"={_fmt(f[i])}" if f is not None else "")


def _counts_text(counts) -> str:
    parts = []
    for p, n in enumerate(counts):
        if n:
            one, many = DIM_NAMES[p] if p < len(DIM_NAMES) else (f"{p}-cell", f"{p}-cells")
            parts.append(f"{n} {one if n == 1 else many}")
    return ", ".join(parts) or "none"


class Context:
    def __init__(self, args):
        self.args = args
        self.cf = io.load_complex(args.complex)
        self.K = self.cf.K
        self.f = self.cf.values

    def values(self):
        if self.f is None:
            raise ParseError("this command needs a value on every simplex")
        return self.f

    def given_strata(self) -> Stratification | None:
        path = getattr(self.args, "strata", None)
        if path:
            return io.load_stratification(path)
        return self.cf.strata

    def strata(self) -> Stratification:
        S = self.given_strata()
        if S is None:
            S, _ = construct_stratification(self.K, self.values(), order=_order(self.args))
        return S


def _order(args):
    raw = getattr(args, "order", None)
    if not raw:
        return None
    try:
        return [int(x) for x in raw.split(",") if x.strip()]
    except ValueError as exc:
        raise ParseError("--order takes comma-separated simplex ids") from exc


def _emit(args, doc: dict, text: str) -> None:
    out = io.dumps(doc)
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(out)
    if getattr(args, "json", False):
        sys.stdout.write(out)
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


# -- commands -----------------------------------------------------------------

def cmd_validate(args) -> int:
    ctx = Context(args)
    K, f = ctx.K, ctx.values()
    S = ctx.given_strata()
    if S is None:
        bad = check_dmf(K, f)
        mode = "discrete Morse function"
        doc = {"mode": "dmf", "offenders": bad, "valid": not bad}
    else:
        problems = validate_stratification(K, S)
        if problems:
            doc = {"mode": "dsmf", "valid": False, "offenders": [],
                   "stratification_errors": [str(p) for p in problems]}
            _emit(args, doc, "invalid stratification:\n" +
                  "\n".join(f"  {p}" for p in problems))
            return 1
        bad = check_dsmf(K, f, S, by_piece=args.by_piece)
        mode = "discrete stratified Morse function"
        doc = {"mode": "dsmf", "offenders": bad, "valid": not bad}
    if bad:
        text = f"not a {mode}; offenders:\n" + "\n".join(f"  {_label(K, f, i)}" for i in bad)
    else:
        text = f"valid {mode}"
    _emit(args, doc, text)
    return 0 if not bad else 1


def cmd_violators(args) -> int:
    ctx = Context(args)
    K, f = ctx.K, ctx.values()
    cls = classify(K, f)
    rows = []
    lines = [f"{'simplex':<24} {'U':<16} {'L':<16} type"]
    for i in K:
        st = cls[i]
        rows.append({"id": i, "vertices": list(K.simplices[i]), "value": f[i],
                     "upper": list(st.upper), "lower": list(st.lower), "type": st.code})
        U = ",".join(_fmt(f[j]) for j in st.upper) or "-"
        L = ",".join(_fmt(f[j]) for j in st.lower) or "-"
        lines.append(f"{_label(K, f, i):<24} {U:<16} {L:<16} {st.code}")
    viol = [r["id"] for r in rows if r["type"] not in ("C", "R")]
    lines.append(f"{len(viol)} violators")
    _emit(args, {"simplices": rows, "violators": viol}, "\n".join(lines))
    return 0


def cmd_stratify(args) -> int:
    ctx = Context(args)
    K, f = ctx.K, ctx.values()
    S, trace = construct_stratification(K, f, order=_order(args), refine=not args.no_refine,
                                        greedy=args.greedy)
    doc = {"stratification": S.to_json(), "trace": trace.to_json(),
           "pieces": len(S.pieces(K))}
    lines = [f"removed violators: {', '.join(_label(K, f, i) for i in trace.removals) or 'none'}",
             f"{len(S)} strata, {doc['pieces']} pieces:"]
    for name, ids in S.strata.items():
        lines.append(f"  {name}: {' '.join(_fmt(f[i]) for i in sorted(ids, key=f.__getitem__))}")
    if args.check_maximal:
        doc["maximal"] = is_maximal(K, f, S, bound=args.bound)
        lines.append(f"maximal: {doc['maximal']}")
    problems = validate_stratification(K, S)
    if problems:
        doc["stratification_errors"] = [str(p) for p in problems]
        lines.append("warning: output is not a valid stratification")
    _emit(args, doc, "\n".join(lines))
    return 0


def cmd_gradient(args) -> int:
    ctx = Context(args)
    K, f = ctx.K, ctx.values()
    S = ctx.strata()
    V = union_gradient(K, f, S)
    lines = [f"{len(V)} pairs"] + [f"  {_label(K, f, a)} -> {_label(K, f, b)}" for a, b in V]
    _emit(args, {"pairs": V.to_json(), "stratification": S.to_json()}, "\n".join(lines))
    return 0


def cmd_simplify(args) -> int:
    ctx = Context(args)
    K, f = ctx.K, ctx.values()
    S = ctx.strata()
    rep = simplify(K, f, S)
    lines = [f"critical cells: {_counts_text(rep.critical_counts)}",
             f"collapses: {len(rep.collapses)}",
             f"Betti (Morse complex): {list(rep.morse_betti)}",
             f"Betti (complex):       {list(rep.betti)}",
             f"Euler characteristic: {rep.euler}"]
    doc = rep.to_json()
    doc["stratification"] = S.to_json()
    _emit(args, doc, "\n".join(lines))
    return 0


def cmd_extend(args) -> int:
    ctx = Context(args)
    K = ctx.K
    if args.vertices:
        f0 = io.load_vertex_field(args.vertices)
    elif ctx.f is not None:
        f0 = {K.simplices[i][0]: ctx.f[i] for i in K if K.dims[i] == 0}
    else:
        raise ParseError("no vertex values: pass --vertices or give vertex values")
    missing = [v for v in K.vertices() if v not in f0]
    if missing:
        raise ParseError(f"vertex field misses vertices {missing}")
    S = ctx.given_strata()
    if S is None and args.pre:
        pre = maxf_extension(K, f0) if args.pre == "maxf" else mean_extension(K, f0)
        S, _ = construct_stratification(K, pre)
    if S is None:
        V, vals, eps = extend_dmf(K, f0, args.eps)
        doc = {"pairs": V.to_json(), "values": vals, "eps": eps}
    else:
        ext = extend_stratified(K, S, f0, args.eps)
        doc = {"pairs": ext.field.to_json(), "values": ext.values, "eps": ext.eps,
               "stratification": S.to_json()}
        if args.global_:
            doc["global_values"] = extend_global(K, S, f0)
    V = io.parse_field(doc["pairs"])
    crit = [i for i in K if i not in V.paired()]
    lines = [f"{len(V)} pairs, {len(crit)} critical"]
    lines += [f"  {_label(K, None, a)} -> {_label(K, None, b)}" for a, b in V]
    if "stratification" in doc:
        lines.append(f"{len(S)} strata")
    _emit(args, doc, "\n".join(lines))
    return 0


def cmd_report(args) -> int:
    ctx = Context(args)
    K = ctx.K
    dims = [len(K.of_dim(p)) for p in range(K.dimension + 1)]
    doc = {"simplices": len(K), "counts": dims, "betti": list(betti(K)),
           "euler": K.euler_characteristic()}
    lines = [f"{len(K)} simplices ({_counts_text(dims)})",
             f"Betti: {doc['betti']}", f"Euler characteristic: {doc['euler']}"]
    if ctx.f is not None:
        f = ctx.f
        bad = check_dmf(K, f)
        S = ctx.strata()
        rep = simplify(K, f, S)
        doc.update(violators=bad, strata=len(S), pieces=len(S.pieces(K)),
                   critical_counts=list(rep.critical_counts), pairs=len(rep.pairs))
        lines += [f"violators: {len(bad)}",
                  f"stratification: {len(S)} strata, {doc['pieces']} pieces",
                  f"critical cells: {_counts_text(rep.critical_counts)}",
                  f"gradient pairs: {len(rep.pairs)}"]
    _emit(args, doc, "\n".join(lines))
    return 0


def to_dot(K: Complex, f=None, V=None, S: Stratification | None = None) -> str:
    """Hasse diagram; boundary edges point down, gradient pairs point up in
    green."""
    out = ["digraph hasse {", "  rankdir=BT;", "  node [shape=box, fontsize=10];"]
    groups = {None: list(K)} if S is None else {n: sorted(ids) for n, ids in S.strata.items()}
    for k, (name, ids) in enumerate(groups.items()):
        pad = "  "
        if name is not None:
            out.append(f"  subgraph cluster_{k} {{")
            out.append(f'    label="{name}";')
            pad = "    "
        for i in ids:
            verts = ",".join(str(v) for v in K.simplices[i])
            lab = f"{verts}" + (f"\\n{_fmt(f[i])}" if f is not None else "")
            out.append(f'{pad}n{i} [label="{lab}"];')
        if name is not None:
            out.append("  }")
    paired = set() if V is None else set(V.pairs)
    for t in K:
        for s in K.faces[t]:
            if (s, t) in paired:
                out.append(f'  n{s} -> n{t} [color=green, penwidth=2];')
            else:
                out.append(f"  n{t} -> n{s} [color=gray50, dir=back];")
    out.append("}")
    return "\n".join(out) + "\n"


def cmd_export_dot(args) -> int:
    ctx = Context(args)
    K, f = ctx.K, ctx.f
    V = S = None
    if f is not None:
        S = ctx.strata()
        V = union_gradient(K, f, S)
    text = to_dot(K, f, V, S)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


# -- selftest -----------------------------------------------------------------

def run_case(seed: int) -> list[str]:
    """Property checks on one seeded random case; returns failure messages."""
    rng = random.Random(seed)
    K = random_complex(rng)
    f = random_field(rng, K)
    fails = []
    S, _ = construct_stratification(K, f)
    if validate_stratification(K, S):
        fails.append("invalid stratification")
        return fails
    if check_dsmf(K, f, S):
        fails.append("not a DSMF")
        return fails
    if not violator_boundary_property(K, f, S):
        fails.append("violator boundary property")
    if not minimal_stratum_is_subcomplex(K, S):
        fails.append("minimal stratum not a subcomplex")
    V = union_gradient(K, f, S)
    if not is_acyclic(K, V)[0]:
        fails.append("cyclic union gradient")
    if any(S.s(a) != S.s(b) for a, b in V):
        fails.append("gradient crosses strata")
    mc = morse_chain_complex(K, V)
    counts = mc.counts()
    if sum((-1) ** p * c for p, c in enumerate(counts)) != K.euler_characteristic():
        fails.append("Euler identity")
    if mc.betti() != betti(K):
        fails.append("Betti mismatch")
    sep = separating_function(K, S, V)
    if gradient_of(K, sep.values) != V:
        fails.append("separating function gradient")
    g = random_dmf(rng, K)
    S2, _ = construct_stratification(K, g)
    if S2 != Stratification.trivial(K):
        fails.append("DMF input not trivially stratified")
    return fails


def cmd_selftest(args) -> int:
    seed = args.seed if args.seed is not None else int(os.environ.get("DSMT_SEED", "0"))
    seeds = [seed * 100003 + k for k in range(args.cases)]
    with ThreadPoolExecutor(max_workers=args.workers) as pool:
        results = list(pool.map(run_case, seeds))
    failed = {s: r for s, r in zip(seeds, results) if r}
    doc = {"seed": seed, "cases": args.cases, "failures": {str(k): v for k, v in failed.items()}}
    lines = [f"{args.cases} cases, seed {seed}: {len(failed)} failed"]
    lines += [f"  case {s}: {'; '.join(r)}" for s, r in failed.items()]
    _emit(args, doc, "\n".join(lines))
    return 0 if not failed else 1


# -- argument parsing ---------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="stratmorse",
        description="Discrete stratified Morse theory on simplicial complexes.",
        epilog="bundled complexes: " + ", ".join(io.FIXTURE_PREFIX + n for n in io.fixture_names()))
    sub = p.add_subparsers(dest="command", required=True)

    def command(name, func, help_, complex_=True, strata=True):
        sp = sub.add_parser(name, help=help_)
        if complex_:
            sp.add_argument("complex", help="complex JSON file, '-' or fixture:NAME")
        if strata:
            sp.add_argument("--strata", help="stratification JSON file")
        sp.add_argument("-o", "--output", help="also write the JSON result here")
        sp.add_argument("--json", action="store_true", help="print JSON instead of text")
        sp.set_defaults(func=func)
        return sp

    sp = command("validate", cmd_validate, "check the discrete (stratified) Morse conditions")
    sp.add_argument("--by-piece", action="store_true",
                    help="confine pairing to strata pieces instead of strata")
    command("violators", cmd_violators, "U/L sets and type of every simplex", strata=False)

    order_help = "comma-separated simplex ids removed first, in this order"
    sp = command("stratify", cmd_stratify, "construct a stratification", strata=False)
    sp.add_argument("--order", help=order_help)
    sp.add_argument("--no-refine", action="store_true",
                    help="skip splitting the frontier stratum")
    sp.add_argument("--greedy", action="store_true", help="greedily coarsen the result")
    sp.add_argument("--check-maximal", action="store_true",
                    help="run the brute-force maximality check")
    sp.add_argument("--bound", type=int, default=16, help="size bound for --check-maximal")

    for name, func, help_ in [("gradient", cmd_gradient, "union gradient vector field"),
                              ("simplify", cmd_simplify, "collapse gradient pairs"),
                              ("report", cmd_report, "homology and Morse summary"),
                              ("export-dot", cmd_export_dot, "Graphviz Hasse diagram")]:
        sp = command(name, func, help_)
        sp.add_argument("--order", help=order_help + " (when no strata are given)")

    sp = command("extend", cmd_extend, "extend vertex values to a discrete Morse function")
    sp.add_argument("--vertices", help="vertex field JSON file")
    sp.add_argument("--eps", type=float, default=None, help="closeness to maxf")
    sp.add_argument("--pre", choices=["maxf", "mean"],
                    help="pre-extension used to build a stratification first")
    sp.add_argument("--global", dest="global_", action="store_true",
                    help="also output one discrete Morse function on all of K")

    sp = command("selftest", cmd_selftest, "seeded random property suite",
                 complex_=False, strata=False)
    sp.add_argument("--cases", type=int, default=200)
    sp.add_argument("--workers", type=int, default=4)
    sp.add_argument("--seed", type=int, default=None, help="default: $DSMT_SEED or 0")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ComplexTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except DSMTError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
