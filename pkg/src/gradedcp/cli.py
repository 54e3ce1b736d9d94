"""Command-line front end.

Exit status: 0 when the analysis ran (whatever the verdicts), 2 on input or
parse errors, 3 when a resource cap is exceeded.
"""
from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass

from .cslp import classify_cslp, oracle_agreement, parse_cslp, relations_check
from .exactalg import InputError, ResourceError, dense_to_sparse, span
from .grading import BIMODULE, TWO_SIDED, annihilator_of_degree_one, classify, semi_full_check
from .graph import parse_graph
from .lpa import GradedSlice, standard_system
from .report import AnalysisReport
from .rsystem import (
    DEFAULT_CAP,
    condition_fs_prime,
    delta_gamma,
    ideal_checks,
    is_unital,
    parse_rsystem,
    psi_image,
    render_basis,
    strong_sufficiency,
    surjectivity_witnesses,
    tensor_power,
    validate_system,
)
from .verdict import CERTIFIED_NO, CERTIFIED_YES, INCONCLUSIVE, GradedVerdict

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_RESOURCE = 3


@dataclass
class AnalysisConfig:
    degree_bound: int | None = None
    length_bound: int = 8
    word_bound: int = 6
    semantics: str = "both"
    tensor_cap: int = DEFAULT_CAP


def _semantics(choice: str) -> list:
    return {"bimodule": [BIMODULE], "ideal": [TWO_SIDED], "both": [BIMODULE, TWO_SIDED]}[choice]


def analyze_graph(text: str, source: str, cfg: AnalysisConfig) -> AnalysisReport:
    g = parse_graph(text)
    D = cfg.degree_bound or 4
    sl = GradedSlice(g, D=D, L=cfg.length_bound)
    rep = AnalysisReport.for_text("graph", source, text, {"D": sl.D, "L": sl.L})
    verdicts = classify(sl)
    for v in verdicts.values():
        rep.add(v)
    rep.add(annihilator_of_degree_one(sl, verdicts).pre_cp)
    system = standard_system(g, sl.alg)
    by_sem = {}
    for sem in _semantics(cfg.semantics):
        by_sem[sem] = semi_full_check(sl, system, D, sem)
        for v in by_sem[sem]:
            rep.add(v)
    if not sl.exact:
        rep.notes.append("graph has cycles: span comparisons are truncated at the length bound")
    if len(by_sem) == 2:
        for a, b in zip(by_sem[BIMODULE], by_sem[TWO_SIDED]):
            if a.status != b.status:
                rep.notes.append(
                    f"semantics differ at {a.property.split(',')[0]}]: bimodule {a.status}, ideal {b.status}"
                )
    return rep


def _parse_system_text(text: str):
    """Split off optional ``ideal : <coords>`` lines, which name J."""
    keep, ideal = [], []
    for raw in text.splitlines():
        body = raw.split("#", 1)[0].strip()
        if body.startswith("ideal"):
            ideal.append(body.partition(":")[2].split())
            keep.append("")
        else:
            keep.append(raw)
    return parse_rsystem("\n".join(keep)), ideal


def analyze_system(text: str, source: str, cfg: AnalysisConfig) -> AnalysisReport:
    from .exactalg import parse_rational

    sys_, ideal_rows = _parse_system_text(text)
    n = sys_.ring.dimension
    for row in ideal_rows:
        if len(row) != n:
            raise InputError(f"ideal line needs {n} coordinates")
    if ideal_rows:
        J = [tuple(parse_rational(t) for t in row) for row in ideal_rows]
        jname = "J supplied"
    else:
        J = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        jname = "J = R"
    nmax = cfg.degree_bound or 3
    rep = AnalysisReport.for_text("rsystem", source, text, {"n": nmax})
    bad = validate_system(sys_)
    if bad is not None:
        rep.add(GradedVerdict("valid_system", CERTIFIED_NO, f"{bad.kind} at {bad.indices}: {bad.detail}"))
        return rep
    rep.add(GradedVerdict("valid_system", CERTIFIED_YES, "all basis triples checked"))
    unital = is_unital(sys_)
    rep.add(GradedVerdict("unital", CERTIFIED_YES if unital else CERTIFIED_NO, "unit acts as identity" if unital else "no two-sided unit on R, P, Q"))
    fs = condition_fs_prime(sys_)
    rep.add(
        GradedVerdict(
            "fs_prime",
            CERTIFIED_YES if fs.holds else CERTIFIED_NO,
            "identity operators lie in the finite-rank spans" if fs.holds else "identity not finite-rank",
            note="identity and generator routes agree",
        )
    )
    ker = delta_gamma(sys_).ker_delta
    kspan = span(dense_to_sparse(x) for x in ker)
    rep.add(GradedVerdict("ker_delta", CERTIFIED_YES, f"dim {len(ker)}: {render_basis(sys_, kspan)}"))
    try:
        ic = ideal_checks(sys_, J)
        rep.add(GradedVerdict("psi_compatible", CERTIFIED_YES if ic.psi_compatible else CERTIFIED_NO, jname))
        rep.add(GradedVerdict("faithful_ideal", CERTIFIED_YES if ic.faithful else CERTIFIED_NO, jname))
    except InputError as exc:
        rep.add(GradedVerdict("psi_compatible", INCONCLUSIVE, note=str(exc)))
    img = psi_image(sys_)
    surj = img.dim == n
    rep.add(GradedVerdict("psi_surjective", CERTIFIED_YES if surj else CERTIFIED_NO, f"image {render_basis(sys_, img)}"))
    if unital and fs.holds:
        rep.add(strong_sufficiency(sys_, J))
        for k in range(2, nmax + 1):
            ok = condition_fs_prime(tensor_power(sys_, k, cfg.tensor_cap)).holds
            rep.add(GradedVerdict(f"fs_prime[n={k}]", CERTIFIED_YES if ok else CERTIFIED_NO, f"tensor power {k}"))
        if surj:
            for k in range(1, nmax + 1):
                w = surjectivity_witnesses(sys_, k, cfg.tensor_cap)
                rep.add(GradedVerdict(f"psi_surjective[n={k}]", CERTIFIED_YES, f"{len(w)} verified witness pairs"))
    else:
        rep.add(GradedVerdict("strongly", INCONCLUSIVE, note="hypotheses_not_met: system not unital or (FS') fails"))
    rep.notes.append("maximality of the supplied ideal among faithful psi-compatible ideals is not checked")
    return rep


def analyze_cslp(text: str, source: str, cfg: AnalysisConfig) -> AnalysisReport:
    h = parse_cslp(text, os.path.dirname(os.path.abspath(source)) if source != "-" else ".")
    D = cfg.degree_bound or 3
    rep = AnalysisReport.for_text("cslp", source, text, {"D": D, "word_bound": cfg.word_bound})
    rc = relations_check(h)
    rep.add(GradedVerdict("relations", CERTIFIED_YES if rc.ok else CERTIFIED_NO, rc.failures[0] if rc.failures else "all relations hold on samples"))
    bad = oracle_agreement(h, n_words=200)
    rep.add(GradedVerdict("oracle_agreement", CERTIFIED_YES if bad is None else CERTIFIED_NO, "200 random words" if bad is None else f"word {bad}"))
    vs = classify_cslp(h, D, cfg.word_bound)
    for v in vs.values():
        rep.add(v)
    cands = vs["epsilon_strongly"].data["candidates"]
    odd = [f"t_+^{k}t_-^{k} = {t}" for k, t in cands if t != h.const(h.e)]
    if odd:
        rep.notes.append("unit candidate t_+^k t_-^k differs from e: " + "; ".join(odd))
    if h.kind == "matrix":
        rep.notes.append("matrix mode has e = 1 (automorphism case only)")
    return rep


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gradedcp", description="Certified deciders for Z-graded rings")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("file")
        sp.add_argument("--degree-bound", type=int, default=None)
        sp.add_argument("--length-bound", type=int, default=8)
        sp.add_argument("--word-bound", type=int, default=6)
        sp.add_argument("--tensor-cap", type=int, default=DEFAULT_CAP, help="largest plain tensor dimension built")
        sp.add_argument("--semantics", choices=("bimodule", "ideal", "both"), default="both")
        sp.add_argument("--format", choices=("text", "tsv"), default="text")

    for name in ("analyze-graph", "analyze-system", "analyze-cslp"):
        common(sub.add_parser(name))
    ve = sub.add_parser("verify-examples")
    ve.add_argument("--list", action="store_true")
    ve.add_argument("--strict-two-sided", action="store_true")
    return p


ANALYZERS = {"analyze-graph": analyze_graph, "analyze-system": analyze_system, "analyze-cslp": analyze_cslp}


def _verify(args, out) -> int:
    from .fixtures import FIXTURES, run_fixtures

    if args.list:
        for fx in FIXTURES:
            print(fx.name, file=out)
        return EXIT_OK
    rows = run_fixtures(args.strict_two_sided)
    for name, status, detail in rows:
        print(f"{status}\t{name}\t{detail}", file=out)
    fails = sum(1 for r in rows if r[1] == "FAIL")
    print(f"# {len(FIXTURES) - fails}/{len(FIXTURES)} fixtures pass", file=out)
    return EXIT_OK


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = _build_parser().parse_args(argv)
    if args.command == "verify-examples":
        return _verify(args, out)
    cfg = AnalysisConfig(args.degree_bound, args.length_bound, args.word_bound, args.semantics, args.tensor_cap)
    for name in ("degree_bound", "length_bound", "word_bound", "tensor_cap"):
        val = getattr(cfg, name)
        if val is not None and val < 1:
            print(f"error: --{name.replace('_', '-')} must be positive", file=err)
            return EXIT_INPUT
    try:
        if args.file == "-":
            text = sys.stdin.read()
        else:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
        rep = ANALYZERS[args.command](text, args.file, cfg)
    except OSError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    except InputError as exc:
        print(f"error: {args.file}: {exc}", file=err)
        return EXIT_INPUT
    except ResourceError as exc:
        print(f"resource error: {exc}", file=err)
        return EXIT_RESOURCE
    out.write(rep.to_tsv() if args.format == "tsv" else rep.to_text())
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
