"""Command-line front end: every subcommand emits a versioned JSON (or CSV) report."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass, field as dc_field
from importlib.metadata import PackageNotFoundError, version

from . import charsums, cliques, subspaces
from .cyclotomy import IndexSet
from .errors import (CyclopaleyError, InducedGraphTooLarge, SizeCapExceeded, TimedOut)
from .field import DEFAULT_SIZE_CAP, make_field
from .graph import build_graph, self_complement_witness

SCHEMA = "cyclopaley/1"

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_TIMEOUT, EXIT_CAP = 0, 1, 2, 3, 4

TABLE1_TIER1 = [
    (5, 4, 6, (0, 1, 3)),
    (7, 4, 8, (0, 1, 2, 4)),
    (7, 4, 8, (0, 1, 3, 6)),
]
TABLE1_TIER2 = [
    (3, 8, 10, (0, 1, 2, 3, 5)),
    (3, 8, 10, (0, 1, 3, 6, 7)),
    (11, 4, 12, (0, 1, 2, 3, 6, 7)),
    (11, 4, 12, (0, 1, 2, 4, 5, 8)),
    (11, 4, 12, (0, 1, 2, 3, 5, 10)),
    (13, 4, 14, (0, 1, 2, 3, 5, 6, 9)),
    (13, 4, 14, (0, 1, 2, 4, 7, 8, 10)),
    (13, 4, 14, (0, 1, 2, 5, 7, 9, 10)),
]


@dataclass
class Report:
    command: str
    config: dict
    checks: list[dict] = dc_field(default_factory=list)
    result: dict = dc_field(default_factory=dict)
    fields: dict = dc_field(default_factory=dict)
    wall_time_s: float = 0.0

    def check(self, name: str, status, expected=None, actual=None):
        if isinstance(status, bool):
            status = "pass" if status else "fail"
        self.checks.append({"name": name, "status": status,
                            "expected": expected, "actual": actual})

    def add_field(self, field):
        self.fields[f"GF({field.p}^{field.n})"] = {"descriptor": field.descriptor(),
                                                   "hash": field.descriptor_hash()}

    def exit_code(self) -> int:
        statuses = {c["status"] for c in self.checks}
        if "fail" in statuses:
            return EXIT_FAIL
        if "timeout" in statuses:
            return EXIT_TIMEOUT
        return EXIT_PASS

    def to_json(self) -> dict:
        try:
            pkg_version = version("artifact")
        except PackageNotFoundError:
            pkg_version = "unknown"
        return {"schema": SCHEMA, "command": self.command, "config": self.config,
                "versions": {"package": pkg_version, "fields": self.fields},
                "checks": self.checks, "result": self.result,
                "wall_time_s": round(self.wall_time_s, 3)}

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["name", "status", "expected", "actual"])
        for c in self.checks:
            writer.writerow([c["name"], c["status"], json.dumps(c["expected"]),
                             json.dumps(c["actual"])])
        return buf.getvalue()


def _field_kwargs(args) -> dict:
    return {"cache_dir": args.cache_dir, "size_cap": args.size_cap}


def _graph(args, p, n, two_d, members):
    field = make_field(p, n, **_field_kwargs(args))
    return build_graph(field, two_d, IndexSet(two_d, tuple(sorted(members))))


def _clique_checks(report: Report, graph, clique, prefix: str = "") -> dict:
    out = {"omega_through_seed": clique.size, "witness": clique.logs(graph),
           "profile": None, "certificate": "n/a"}
    report.check(prefix + "clique_verified", cliques.verify_clique(graph, clique.vertices),
                 True, cliques.verify_clique(graph, clique.vertices))
    if 0 in clique:
        try:
            prof = cliques.profile(graph, clique)
            out["profile"] = list(prof.counts)
            if clique.size == graph.sqrt_q and cliques.delsarte_bound(graph):
                share = (graph.sqrt_q - 1) // graph.d
                report.check(prefix + "equal_contribution", True,
                             [share if j in graph.index_set else 0 for j in range(graph.two_d)],
                             list(prof.counts))
        except AssertionError as exc:
            report.check(prefix + "equal_contribution", False, "(sqrt(q)-1)/d on I", str(exc))
    if cliques.delsarte_bound(graph):
        cert = charsums.clique_certificate(graph, clique.vertices)
        out["certificate"] = cert.certificate
        if cert.certificate != "n/a":
            report.check(prefix + "certificate", cert.certificate == "pass", "pass",
                         cert.certificate)
    return out


def cmd_clique(args) -> Report:
    members = _parse_index_set(args.index_set)
    report = Report("clique", {"p": args.p, "exp": args.exp, "two_d": args.two_d,
                               "index_set": list(members), "seed": args.seed})
    graph = _graph(args, args.p, args.exp, args.two_d, members)
    report.add_field(graph.field)
    try:
        if args.seed == "reduction":
            res = cliques.clique_number_via_reduction(graph, deadline_s=args.deadline_s)
        else:
            res = cliques.max_clique_through(graph, cliques.seed_set(graph, args.seed),
                                             deadline_s=args.deadline_s)
    except TimedOut as exc:
        best = exc.best
        report.check("search", "timeout", None, best.size if best else None)
        report.result = {"omega_through_seed": best.size if best else None,
                         "witness": best.logs(graph) if best else None, "profile": None,
                         "certificate": "n/a", "k_used": None, "timed_out": True,
                         "lower_bound_only": True}
        return report
    report.result = _clique_checks(report, graph, res.clique)
    report.result.update({"k_used": res.k_used if res.k_used is not None else len(res.seed),
                          "candidates": res.candidates, "upper_bound": res.upper_bound,
                          "timed_out": False})
    return report


def cmd_gauss(args) -> Report:
    report = Report("gauss", {"p": args.p, "exp": args.exp, "two_d": args.two_d})
    field = make_field(args.p, args.exp, **_field_kwargs(args))
    report.add_field(field)
    per = charsums.gauss_periods(field, args.two_d)
    report.check("lambda", per.lam == per.expected_lam, per.expected_lam, per.lam)
    report.check("mu", per.mu == per.expected_mu, per.expected_mu, per.mu)
    sums = []
    for k in range(1, args.two_d):
        g = charsums.gauss_sum(field, args.two_d, k, periods=per.periods)
        report.check(f"G(chi^{k})", g.passed, g.expected, list(g.value))
        sums.append(g.to_json())
    report.result = {"periods": per.periods, "lambda": per.lam, "mu": per.mu,
                     "gauss_sums": sums}
    return report


def cmd_periods(args) -> Report:
    report = Report("periods", {"p": args.p, "exp": args.exp, "two_d": args.two_d})
    field = make_field(args.p, args.exp, **_field_kwargs(args))
    report.add_field(field)
    per = charsums.gauss_periods(field, args.two_d)
    report.check("periods_closed_form", per.passed,
                 {"lambda": per.expected_lam, "mu": per.expected_mu},
                 {"lambda": per.lam, "mu": per.mu})
    report.result = per.to_json()
    return report


def _table1_row(report: Report, args, row, use_reduction: bool):
    p, n, two_d, members = row
    name = f"PP({p}^{n},{two_d},{{{','.join(map(str, members))}}})"
    graph = _graph(args, p, n, two_d, members)
    report.add_field(graph.field)
    t0 = time.monotonic()
    entry = {"q": f"{p}^{n}", "d": two_d // 2, "I": list(members), "sqrt_q": graph.sqrt_q}
    try:
        if use_reduction:
            res = cliques.clique_number_via_reduction(graph, deadline_s=args.deadline_s)
        else:
            res = cliques.max_clique_through(graph, (0, 1), deadline_s=args.deadline_s)
    except TimedOut:
        report.check(f"{name}: omega", "timeout", graph.sqrt_q, None)
        entry["status"] = "timeout"
        return entry
    report.check(f"{name}: omega", res.size == graph.sqrt_q, graph.sqrt_q, res.size)
    entry.update(_clique_checks(report, graph, res.clique, prefix=f"{name}: "))
    entry["k_used"] = res.k_used if res.k_used is not None else len(res.seed)
    canon = subspaces.enumerate_canonical_cliques(graph)
    report.check(f"{name}: canonical_cliques", canon.count == 2, 2, canon.count)
    entry["canonical_cliques"] = canon.count
    entry["seconds"] = round(time.monotonic() - t0, 3)
    return entry


def cmd_table1(args) -> Report:
    report = Report("table1", {"tier": args.tier})
    rows = [(r, False) for r in TABLE1_TIER1]
    if args.tier >= 2:
        rows += [(r, True) for r in TABLE1_TIER2]
    report.result = {"rows": [_table1_row(report, args, r, red) for r, red in rows]}
    if args.deterministic:
        for entry in report.result["rows"]:
            entry.pop("seconds", None)
    return report


def cmd_count_index_sets(args) -> Report:
    report = Report("count-index-sets", {"p": args.p})
    res = subspaces.count_valid_index_sets(args.p, **_field_kwargs(args))
    report.check("count", res.count == res.expected, res.expected, res.count)
    twice = all(m == 2 for I, m in res.multiplicity.items()
                if I != tuple(range(0, args.p + 1, 2)))
    report.check("each_I_twice_except_even", twice, True, twice)
    report.result = res.to_json()
    report.result["per_k"] = [[k, list(I)] for k, I in res.per_k]
    return report


def cmd_verify_conjectures(args) -> Report:
    report = Report("verify-conjectures", {"p": args.p})
    sub = subspaces.subspace_conjecture_report(args.p, **_field_kwargs(args))
    report.check("subspace_conjecture", sub.holds, sub.predicted, sub.qualifying)
    cnt = subspaces.count_valid_index_sets(args.p, **_field_kwargs(args))
    report.check("index_set_count", cnt.count == cnt.expected, cnt.expected, cnt.count)
    report.result = {"subspaces": sub.to_json(), "index_sets": cnt.to_json()}
    return report


def cmd_selfcomp(args) -> Report:
    report = Report("selfcomp", {"p": args.p, "exp": args.exp, "two_d": args.two_d})
    graph = _graph(args, args.p, args.exp, args.two_d, range(args.two_d // 2))
    report.add_field(graph.field)
    ok = self_complement_witness(graph)
    report.check("self_complementary", ok, True, ok)
    report.result = {"self_complementary": ok}
    return report


def cmd_naive(args) -> Report:
    members = _parse_index_set(args.index_set)
    report = Report("naive", {"p": args.p, "exp": args.exp, "two_d": args.two_d,
                              "index_set": list(members)})
    graph = _graph(args, args.p, args.exp, args.two_d, members)
    report.add_field(graph.field)
    A = cliques.naive_set(graph)
    ok = cliques.is_clique(graph, A)
    I = graph.index_set
    expected = I.is_even_classes() or I.is_odd_classes()
    report.check("naive_lemma", ok == expected, expected, ok)
    report.result = {"is_clique": ok, "size": len(A),
                     "set": [None if v == 0 else int(graph.field.log[v]) for v in A]}
    return report


def _parse_index_set(text: str) -> tuple[int, ...]:
    try:
        return tuple(sorted(int(x) for x in text.replace("{", "").replace("}", "").split(",")
                            if x.strip()))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad index set {text!r}") from None


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _positive_float(text: str) -> float:
    v = float(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


COMMANDS = {
    "clique": (cmd_clique, ("p", "exp", "two-d", "index-set", "seed")),
    "gauss": (cmd_gauss, ("p", "exp", "two-d")),
    "periods": (cmd_periods, ("p", "exp", "two-d")),
    "table1": (cmd_table1, ("tier",)),
    "count-index-sets": (cmd_count_index_sets, ("p",)),
    "verify-conjectures": (cmd_verify_conjectures, ("p",)),
    "selfcomp": (cmd_selfcomp, ("p", "exp", "two-d")),
    "naive": (cmd_naive, ("p", "exp", "two-d", "index-set")),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cyclopaley",
                                     description="Pseudo-Paley graph verification tools")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=_positive, default=1,
                        help="worker cap (searches are single-threaded; accepted for compatibility)")
    common.add_argument("--deadline-s", type=_positive_float, default=None)
    common.add_argument("--cache-dir", default=None)
    common.add_argument("--size-cap", type=_positive, default=DEFAULT_SIZE_CAP)
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--deterministic", action="store_true",
                        help="omit per-row timings so reports are byte-identical across runs")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, opts) in COMMANDS.items():
        sp = sub.add_parser(name, parents=[common])
        if "p" in opts:
            sp.add_argument("--p", type=_positive, required=True)
        if "exp" in opts:
            sp.add_argument("--exp", type=_positive, required=True)
        if "two-d" in opts:
            sp.add_argument("--two-d", type=_positive, required=True)
        if "index-set" in opts:
            sp.add_argument("--index-set", required=True, help="comma list, e.g. 0,1,3")
        if "seed" in opts:
            sp.add_argument("--seed", choices=("pair", "subfield", "reduction"), default="pair")
        if "tier" in opts:
            sp.add_argument("--tier", type=int, choices=(1, 2), default=1)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    func = COMMANDS[args.command][0]
    t0 = time.monotonic()
    try:
        report = func(args)
        code = report.exit_code()
    except (SizeCapExceeded, InducedGraphTooLarge) as exc:
        report = Report(args.command, {}, result={"error": type(exc).__name__, "message": str(exc)})
        code = EXIT_CAP
    except (CyclopaleyError, ValueError, argparse.ArgumentTypeError) as exc:
        report = Report(args.command, {}, result={"error": type(exc).__name__, "message": str(exc)})
        code = EXIT_USAGE
    report.wall_time_s = 0.0 if args.deterministic else time.monotonic() - t0
    text = report.render(args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
