"""Command line reports over subgroup input files.

Every command is deterministic for a fixed configuration: seeded random
corpora, sorted outputs, exact rationals rendered as p/q.  Exit code 0
means all checks passed, 1 is an input or usage problem, and 2 flags a
failed mathematical cross-check together with a diagnostic dump.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction

from .automorphisms import act_on_subgroup, parse_automorphism_file
from .currents import (
    FiniteSubtree,
    counting_current,
    current_to_json_dict,
    eval_cylinder,
    functional_rk,
    intersection_functional_N,
    neighborhood_profile,
    pushforward_I,
)
from .errors import (
    EmptyCoreError,
    MismatchBugError,
    NotAutomorphismError,
    NotConnectedError,
    NotSubgroupError,
    RetryLimitError,
    SizeLimitError,
    TrivialSubgroupError,
    WordFormatError,
)
from .fiber import component_subgroup, fiber_product, intersection_number_cosets, intersection_number_euler
from .stallings import (
    BasedCoreGraph,
    CoreGraph,
    core,
    from_generators,
    graph_to_dot,
    graph_to_json_dict,
    parse_subgroup_file,
    random_subgroup,
    rank,
    reduced_rank,
    subgroup_generators,
)
from .words import Alphabet, format_word

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_MATH = 2


class UsageError(Exception):
    pass


class MathCheckError(RuntimeError):
    """A cross-check that must hold by theorem failed; carries the dump."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunConfig:
    rank: int = 2
    seed: int = 0
    samples: int = 50
    max_gens: int = 3
    max_gen_len: int = 6
    grade: int = 2
    n_max: int = 10
    fmt: str = "json"
    out: str | None = None
    h_path: str | None = None
    k_path: str | None = None
    automorphism_path: str | None = None
    dot_path: str | None = None


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_subgroup(path: str, alphabet: Alphabet) -> BasedCoreGraph:
    gens = parse_subgroup_file(_read(path), alphabet)
    return from_generators(gens, alphabet)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _tsv(rows: list[list[str]]) -> str:
    return "".join("\t".join(row) + "\n" for row in rows)


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _gens_text(h: BasedCoreGraph, alphabet: Alphabet) -> str:
    return ";".join(format_word(w, alphabet) for w in subgroup_generators(h))


def cmd_core(cfg: RunConfig) -> tuple[int, str]:
    alphabet = Alphabet(cfg.rank)
    h = _load_subgroup(cfg.h_path, alphabet)
    if cfg.dot_path:
        _emit(graph_to_dot(h) + "\n", cfg.dot_path)
    summary = {
        "vertices": h.graph.num_vertices,
        "edges": len(h.graph.edges),
        "rank": rank(h),
        "reduced_rank": reduced_rank(h),
    }
    if cfg.fmt == "tsv":
        rows = [
            ["vertices", "edges", "rank", "reduced_rank"],
            [str(summary[k]) for k in ("vertices", "edges", "rank", "reduced_rank")],
        ]
        return EXIT_OK, _tsv(rows)
    summary["graph"] = graph_to_json_dict(h)
    return EXIT_OK, _json_text(summary)


def cmd_product(cfg: RunConfig) -> tuple[int, str]:
    alphabet = Alphabet(cfg.rank)
    h = _load_subgroup(cfg.h_path, alphabet)
    k = _load_subgroup(cfg.k_path, alphabet)
    if cfg.automorphism_path:
        phi = parse_automorphism_file(_read(cfg.automorphism_path), alphabet)
        h = act_on_subgroup(phi, h, require_automorphism=True)
        k = act_on_subgroup(phi, k, require_automorphism=True)
    n_euler = intersection_number_euler(CoreGraph(core(h.graph)), CoreGraph(core(k.graph)))
    n_cosets = intersection_number_cosets(h, k)
    n_cylinder = intersection_functional_N(counting_current(h), counting_current(k))
    if not (n_euler == n_cosets == n_cylinder):
        raise MathCheckError(
            "intersection-number routes disagree: "
            f"euler={n_euler} cosets={n_cosets} cylinder={n_cylinder} "
            f"H={graph_to_json_dict(h)} K={graph_to_json_dict(k)}"
        )
    rk_product = reduced_rank(h) * reduced_rank(k)
    if n_euler > rk_product:
        raise MathCheckError(
            f"strengthened bound violated: {n_euler} > {rk_product} "
            f"H={graph_to_json_dict(h)} K={graph_to_json_dict(k)}"
        )
    fp = fiber_product(h, k)
    components = []
    for comp in fp.components():
        g, gens = component_subgroup(fp, comp, h, k)
        components.append(
            {
                "vertices": comp.num_vertices,
                "edges": comp.num_edges,
                "euler": comp.euler,
                "contractible": comp.contractible,
                "representative": format_word(g, alphabet),
                "generators": [format_word(w, alphabet) for w in gens],
                "reduced_rank": (
                    reduced_rank(from_generators(gens, alphabet)) if gens else 0
                ),
            }
        )
    if cfg.dot_path:
        colors = {}
        palette = ["red", "blue", "green", "orange", "purple", "brown", "cyan"]
        for i, comp in enumerate(fp.components()):
            for v in comp.vertices:
                colors[v] = palette[i % len(palette)]
        _emit(graph_to_dot(fp.graph, component_colors=colors) + "\n", cfg.dot_path)
    report = {
        "intersection_number": n_euler,
        "routes": {
            "euler": n_euler,
            "cosets": n_cosets,
            "cylinder": str(n_cylinder),
        },
        "reduced_rank_product": rk_product,
        "margin": rk_product - n_euler,
        "components": components,
    }
    if cfg.fmt == "tsv":
        rows = [["key", "value"]]
        rows.append(["intersection_number", str(n_euler)])
        rows.append(["route_euler", str(n_euler)])
        rows.append(["route_cosets", str(n_cosets)])
        rows.append(["route_cylinder", str(n_cylinder)])
        rows.append(["reduced_rank_product", str(rk_product)])
        rows.append(["margin", str(rk_product - n_euler)])
        for entry in components:
            rows.append(
                [
                    "component",
                    str(entry["vertices"]),
                    str(entry["edges"]),
                    str(entry["euler"]),
                    "yes" if entry["contractible"] else "no",
                    entry["representative"],
                    ";".join(entry["generators"]),
                    str(entry["reduced_rank"]),
                ]
            )
        return EXIT_OK, _tsv(rows)
    return EXIT_OK, _json_text(report)


def cmd_shnc_scan(cfg: RunConfig) -> tuple[int, str]:
    alphabet = Alphabet(cfg.rank)
    rng = random.Random(cfg.seed)
    rows = [["h", "k", "intersection", "rk_product", "ratio"]]
    records = []
    violations = 0
    for _ in range(cfg.samples):
        h = random_subgroup(rng, alphabet, cfg.max_gens, cfg.max_gen_len)
        k = random_subgroup(rng, alphabet, cfg.max_gens, cfg.max_gen_len)
        n = intersection_number_euler(CoreGraph(core(h.graph)), CoreGraph(core(k.graph)))
        rk_product = reduced_rank(h) * reduced_rank(k)
        if n > rk_product:
            violations += 1
        ratio = "-" if rk_product == 0 else str(Fraction(n, rk_product))
        record = {
            "h": _gens_text(h, alphabet),
            "k": _gens_text(k, alphabet),
            "intersection": n,
            "rk_product": rk_product,
            "ratio": ratio,
        }
        records.append(record)
        rows.append(
            [record["h"], record["k"], str(n), str(rk_product), ratio]
        )
    text = _json_text(records) if cfg.fmt == "json" else _tsv(rows)
    if violations:
        sys.stderr.write(f"math check failed: {violations} bound violations\n")
        return EXIT_MATH, text
    return EXIT_OK, text


def _converge_columns(cfg: RunConfig, alphabet: Alphabet, graphs) -> list[FiniteSubtree]:
    """Edge trees plus every neighborhood tree observed in the given cores."""
    columns: list[FiniteSubtree] = [
        FiniteSubtree.edge(i) for i in alphabet.letters()
    ]
    seen = set(columns)
    observed = []
    for r in range(1, cfg.grade + 1):
        for g in graphs:
            for t in neighborhood_profile(g, r):
                if t not in seen:
                    seen.add(t)
                    observed.append(t)
    observed.sort(key=lambda t: (t.depth, t.serialize(alphabet)))
    return columns + observed


def cmd_converge(cfg: RunConfig) -> tuple[int, str]:
    if cfg.n_max < 1:
        raise ValueError("--n-max must be at least 1")
    if cfg.grade < 1:
        raise ValueError("--grade must be at least 1")
    alphabet = Alphabet(cfg.rank)
    loop = from_generators([(1,)], alphabet)
    limit = counting_current(loop)
    cores = [CoreGraph(core(loop.graph))]
    family = []
    for n in range(1, cfg.n_max + 1):
        h_n = from_generators([(1,) * n + (2,)], alphabet)
        cores.append(CoreGraph(core(h_n.graph)))
        family.append((n, counting_current(h_n).scale(Fraction(1, n))))
    trees = _converge_columns(cfg, alphabet, cores)
    header = ["n"] + [t.serialize(alphabet) for t in trees] + ["N", "pushforward_terms"]
    rows = [header]
    records = []
    for n, mu in family:
        pushed = pushforward_I(mu, limit)
        record = {
            "n": str(n),
            "cylinders": {
                t.serialize(alphabet): str(eval_cylinder(mu, t)) for t in trees
            },
            "N": str(intersection_functional_N(mu, limit)),
            "pushforward_terms": len(pushed.terms()),
        }
        records.append(record)
        rows.append(
            [record["n"]]
            + [record["cylinders"][t.serialize(alphabet)] for t in trees]
            + [record["N"], str(record["pushforward_terms"])]
        )
    pushed_limit = pushforward_I(limit, limit)
    limit_record = {
        "n": "limit",
        "cylinders": {
            t.serialize(alphabet): str(eval_cylinder(limit, t)) for t in trees
        },
        "N": str(intersection_functional_N(limit, limit)),
        "pushforward_terms": len(pushed_limit.terms()),
    }
    records.append(limit_record)
    rows.append(
        ["limit"]
        + [limit_record["cylinders"][t.serialize(alphabet)] for t in trees]
        + [limit_record["N"], str(limit_record["pushforward_terms"])]
    )
    text = _json_text(records) if cfg.fmt == "json" else _tsv(rows)
    return EXIT_OK, text


def cmd_intersect(cfg: RunConfig) -> tuple[int, str]:
    alphabet = Alphabet(cfg.rank)
    h = _load_subgroup(cfg.h_path, alphabet)
    k = _load_subgroup(cfg.k_path, alphabet)
    mu, nu = counting_current(h), counting_current(k)
    pushed = pushforward_I(mu, nu)
    rk_pushed = functional_rk(pushed)
    n_value = intersection_functional_N(mu, nu)
    if rk_pushed != n_value:
        raise MathCheckError(
            f"rk of the pushforward ({rk_pushed}) != intersection number ({n_value}) "
            f"H={graph_to_json_dict(h)} K={graph_to_json_dict(k)}"
        )
    report = {
        "pushforward": current_to_json_dict(pushed),
        "rk": str(rk_pushed),
        "intersection_number": str(n_value),
    }
    if cfg.fmt == "tsv":
        rows = [["key", "value"]]
        rows.append(["rk", str(rk_pushed)])
        rows.append(["intersection_number", str(n_value)])
        for term in current_to_json_dict(pushed):
            rows.append(
                ["term", term["coefficient"], json.dumps(term["graph"], sort_keys=True)]
            )
        return EXIT_OK, _tsv(rows)
    return EXIT_OK, _json_text(report)


def _add_common(parser: argparse.ArgumentParser, fmt_default: str) -> None:
    parser.add_argument("--rank", type=int, default=2, help="ambient free-group rank")
    parser.add_argument("--format", choices=("tsv", "json"), default=fmt_default)
    parser.add_argument("--out", default=None, help="write the report to this path")


def build_parser() -> _Parser:
    parser = _Parser(prog="subcur", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("core", help="fold a subgroup file into its core graph")
    p.add_argument("subgroup", help="path to a generator file")
    p.add_argument("--dot", default=None, help="also write a DOT rendering here")
    _add_common(p, "json")
    p.set_defaults(func=cmd_core)

    p = sub.add_parser("product", help="intersection number of two subgroups, three routes")
    p.add_argument("h", help="path to the first generator file")
    p.add_argument("k", help="path to the second generator file")
    p.add_argument("--dot", default=None, help="DOT of the fiber product, component colored")
    p.add_argument("--automorphism", default=None, help="apply this automorphism file first")
    _add_common(p, "json")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("shnc-scan", help="random subgroup pairs against the rank bound")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--max-gens", type=int, default=3)
    p.add_argument("--max-gen-len", type=int, default=6)
    _add_common(p, "tsv")
    p.set_defaults(func=cmd_shnc_scan)

    p = sub.add_parser("converge", help="cylinder table for the loop-with-tail family")
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--grade", type=int, default=2)
    _add_common(p, "tsv")
    p.set_defaults(func=cmd_converge)

    p = sub.add_parser("intersect", help="pushforward current of two subgroups")
    p.add_argument("h", help="path to the first generator file")
    p.add_argument("k", help="path to the second generator file")
    _add_common(p, "json")
    p.set_defaults(func=cmd_intersect)

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    cfg.rank = args.rank
    cfg.fmt = args.format
    cfg.out = args.out
    for src, dst in (
        ("subgroup", "h_path"),
        ("h", "h_path"),
        ("k", "k_path"),
        ("dot", "dot_path"),
        ("automorphism", "automorphism_path"),
        ("seed", "seed"),
        ("samples", "samples"),
        ("max_gens", "max_gens"),
        ("max_gen_len", "max_gen_len"),
        ("grade", "grade"),
        ("n_max", "n_max"),
    ):
        if hasattr(args, src):
            setattr(cfg, dst, getattr(args, src))
    return cfg


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    cfg = _config_from_args(args)
    try:
        code, text = args.func(cfg)
    except (
        WordFormatError,
        TrivialSubgroupError,
        EmptyCoreError,
        NotConnectedError,
        NotSubgroupError,
        NotAutomorphismError,
        SizeLimitError,
        RetryLimitError,
        OSError,
        ValueError,
    ) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (MathCheckError, MismatchBugError) as exc:
        sys.stderr.write(f"math check failed: {exc}\n")
        return EXIT_MATH
    _emit(text, cfg.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
