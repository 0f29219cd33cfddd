# src/main.py
from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
import time
from dataclasses import asdict
from typing import Any, Callable, Dict, List, Optional, Tuple

from dotenv import load_dotenv
from pydantic import BaseModel, ValidationError, field_validator, model_validator

import brauer
import config
import corpus
import spsw
import strat
from fdalg import LeftModule, dominant_dimension_at_least_2, double_centralizer_map, is_faithful
from report import build_payload, save_report, summary_table
from scalar import FieldSpec, LabError, PreconditionError

load_dotenv()

log = logging.getLogger("centralizer_lab")

EXIT_OK, EXIT_FAIL, EXIT_PRECONDITION = 0, 1, 2


# ---------------- RunConfig ----------------

class RunConfig(BaseModel):
    group: str
    command: str
    field: str = "Q"
    m: Optional[int] = None
    n: Optional[int] = None
    f: Optional[int] = None
    p: Optional[int] = None
    algebra: Optional[str] = None
    module: Optional[str] = None
    builtin: Optional[str] = None
    d1: Optional[str] = None
    d2: Optional[str] = None
    mults: Optional[str] = None
    out: Optional[str] = None
    seed: int = 0
    dim_cap: Optional[int] = None
    timings: bool = False
    domdim: bool = False

    @field_validator("field")
    @classmethod
    def _field_parses(cls, v: str) -> str:
        try:
            return str(FieldSpec.parse(v))
        except PreconditionError as exc:
            raise ValueError(str(exc)) from exc

    @field_validator("m", "n")
    @classmethod
    def _positive(cls, v: Optional[int]) -> Optional[int]:
        if v is not None and v < 1:
            raise ValueError("must be a positive integer")
        return v

    @model_validator(mode="after")
    def _fits_command(self) -> "RunConfig":
        needs = {
            ("brauer", "mul"): ("n", "d1", "d2"),
            ("brauer", "ideal-dim"): ("n", "f"),
            ("brauer", "relations"): ("n",),
            ("spsw", "schur"): ("m", "n"),
            ("spsw", "phi"): ("m", "n"),
            ("spsw", "harmonic"): ("m", "n", "f"),
            ("spsw", "quotient-dcp"): ("m", "n", "f"),
            ("spsw", "weights"): ("m", "n", "f"),
        }
        for key in needs.get((self.group, self.command), ()):
            if getattr(self, key) is None:
                raise ValueError(f"{self.group} {self.command} needs --{key}")
        if self.f is not None and self.n is not None:
            top = self.n // 2 + (1 if self.command == "ideal-dim" else 0)
            if not 0 <= self.f <= top:
                raise ValueError(f"f must lie in 0..{top}")
        if self.group in ("dcp", "strat") and not (self.algebra or self.builtin):
            raise ValueError("give --algebra FILE or --builtin NAME")
        return self

    @property
    def fieldspec(self) -> FieldSpec:
        return FieldSpec.parse(self.field)

    def params(self) -> Dict[str, Any]:
        skip = {"out", "timings", "group", "command"}
        return {k: v for k, v in self.model_dump().items() if v is not None and k not in skip}


# ---------------- comandos ----------------

Result = Tuple[Dict[str, Any], bool, str]


def _entry(cfg: RunConfig) -> corpus.CorpusEntry:
    if cfg.builtin:
        return corpus.builtin(cfg.builtin, cfg.fieldspec)
    return corpus.load(cfg.algebra, cfg.fieldspec if cfg.field != "Q" else None)


def _test_module(cfg: RunConfig, entry: corpus.CorpusEntry) -> LeftModule:
    if cfg.module:
        with open(cfg.module, "r", encoding="utf-8") as f:
            return corpus.module_from_json(entry.algebra, json.load(f))
    return entry.algebra.regular_module()


def cmd_brauer_mul(cfg: RunConfig) -> Result:
    fs = cfg.fieldspec
    d1 = brauer.Diagram.parse(cfg.d1, cfg.n)
    d2 = brauer.Diagram.parse(cfg.d2, cfg.n)
    d, loops, elt = brauer.multiply(d1, d2, cfg.m or 1, fs)
    return {"product": str(d), "loops": loops, "element": str(elt)}, True, str(elt)


def cmd_brauer_ideal_dim(cfg: RunConfig) -> Result:
    ideal = brauer.ideal_Bf(cfg.n, cfg.f, cfg.m or 1, cfg.fieldspec)
    by_arcs = brauer.ideal_by_arcs(cfg.n, cfg.f, cfg.fieldspec)
    ok = ideal.span == by_arcs
    return {"dim": ideal.dim, "dim_by_arcs": by_arcs.dim, "agree": ok}, ok, str(ideal.dim)


def cmd_brauer_relations(cfg: RunConfig) -> Result:
    m = cfg.m or 1
    diag = brauer.check_relations(cfg.n, m, cfg.fieldspec)
    failed = [rel.family for rel, ok in diag if not ok]
    out: Dict[str, Any] = {"checked": len(diag), "failed": failed, "dimension": brauer.dimension(cfg.n)}
    ok = not failed
    if cfg.m is not None:
        out["matrix_relations"] = spsw.representation_is_homomorphism_check(cfg.n, m, cfg.fieldspec)
        ok = ok and out["matrix_relations"]
    return out, ok, "ok" if ok else f"failed: {', '.join(failed)}"


def cmd_spsw_schur(cfg: RunConfig) -> Result:
    rep = spsw.schur_algebra(cfg.m, cfg.n, cfg.fieldspec, cfg.dim_cap)
    out: Dict[str, Any] = {"dim_tensor": rep.tensorspace.dim, "dim_ssy": rep.dim}
    ok = True
    if cfg.fieldspec.characteristic == 0:
        out["weyl_sum_of_squares"] = spsw.weyl_sum_of_squares(cfg.m, cfg.n)
        ok = out["weyl_sum_of_squares"] == rep.dim
    if cfg.domdim:
        res = spsw.schur_dominant_dimension(rep)
        out["domdim_at_least_2"] = res.holds and res.exact
        ok = ok and out["domdim_at_least_2"]
    return out, ok, str(rep.dim)


def cmd_spsw_phi(cfg: RunConfig) -> Result:
    res = spsw.phi_injectivity_check(cfg.m, cfg.n, cfg.fieldspec, cfg.dim_cap)
    out = {"rank": res.rank, "expected": res.expected, "injective": res.injective}
    ok = res.injective or cfg.m < cfg.n
    return out, ok, "injective" if res.injective else f"rank {res.rank} < {res.expected}"


def cmd_spsw_harmonic(cfg: RunConfig) -> Result:
    T = spsw.tensor_space(cfg.m, cfg.n, cfg.fieldspec, cfg.dim_cap)
    sp = spsw.subquotient_spaces(cfg.m, cfg.n, cfg.f, cfg.fieldspec, T)
    out: Dict[str, Any] = dict(sp.dims)
    ok = True
    try:
        dec = spsw.check_harmonic_decomposition(cfg.m, cfg.n, cfg.f, cfg.fieldspec)
        out["W_meet_H"] = dec.dim_meet
        out["decomposition"] = dec.holds
        ok = dec.holds
    except PreconditionError as exc:
        out["decomposition"] = f"skipped: {exc}"
    return out, ok, " ".join(f"{k}={v}" for k, v in sp.dims.items())


def cmd_spsw_quotient_dcp(cfg: RunConfig) -> Result:
    rep = spsw.check_quotient_centralizer(cfg.m, cfg.n, cfg.f, cfg.fieldspec)
    return rep.as_dict(), rep.passed, "pass" if rep.passed else "FAIL"


def cmd_spsw_weights(cfg: RunConfig) -> Result:
    m, n, f = cfg.m, cfg.n, cfg.f
    out: Dict[str, Any] = {
        "dominant": [str(w) for w in spsw.dominant_weights(m, n)],
        "lambda_f_plus": [str(w) for w in spsw.lambda_f_plus(m, n, f)],
        "lambda_f_complement": [str(w) for w in spsw.lambda_f_complement(m, n, f)],
        "layer_order": spsw.layer_order_check(m, n),
    }
    ok = out["layer_order"]
    if cfg.p is not None:
        out["separated"] = spsw.cross_block_separation_check(m, n, f, cfg.p)
        chain = spsw.linkage_chain_search(m, n, f, cfg.p)
        out["chain"] = [str(w) for w in chain] if chain else None
    return out, ok, f"|Lambda_f^+|={len(out['lambda_f_plus'])}"


def cmd_dcp(cfg: RunConfig) -> Result:
    entry = _entry(cfg)
    A = entry.algebra
    T = _test_module(cfg, entry)
    res = double_centralizer_map(A, T)
    dd = dominant_dimension_at_least_2(A, T)
    out = {
        "algebra": A.name, "module": T.name, "dim_a": res.dim_a, "dim_a1": res.dim_a1, "dim_a2": res.dim_a2,
        "rank": res.rank, "injective": res.injective, "surjective": res.surjective,
        "bijective": res.bijective, "domdim_at_least_2": dd.holds and dd.exact,
    }
    ok = res.bijective == (dd.holds and dd.exact)
    return out, ok and res.bijective, "bijective" if res.bijective else "not bijective"


def _mults(cfg: RunConfig, S: strat.StratifiedAlgebra) -> Dict[Any, int]:
    if not cfg.mults:
        return {lam: 1 for lam in S.labels}
    out = {}
    for part in cfg.mults.split(","):
        lab, _, k = part.partition(":")
        if lab not in S.idempotents:
            raise PreconditionError(f"unknown label {lab!r}")
        out[lab] = int(k or 1)
    return out


def cmd_strat_flags(cfg: RunConfig) -> Result:
    S = _entry(cfg).stratified()
    fl = S.flags()
    out = {"labels": S.labels, **asdict(fl),
           "dims": {str(l): {"P": S.pim(l).dim, "Delta": S.standard(l).dim, "pDelta": S.proper_standard(l).dim,
                             "Nabla": S.costandard(l).dim, "pNabla": S.proper_costandard(l).dim}
                    for l in S.labels}}
    return out, fl.standardly_stratified, f"standardly_stratified={fl.standardly_stratified} qh={fl.quasi_hereditary}"


def cmd_strat_tilting(cfg: RunConfig) -> Result:
    S = _entry(cfg).stratified()
    out = {"tilting_dims": {str(l): S.tilting(l).dim for l in S.labels}}
    R = strat.ringel_dual(S)
    out["ringel_dual_dim"] = R.algebra.dim
    return out, True, " ".join(f"T({l})={d}" for l, d in out["tilting_dims"].items())


def cmd_strat_minimal(cfg: RunConfig) -> Result:
    S = _entry(cfg).stratified()
    res = strat.minimal_dcp_tilting(S)
    out = {"labels": [str(l) for l in res.labels], "dim": res.module.dim, "dcp": res.dcp.bijective,
           "oracle": [str(l) for l in res.oracle] if res.oracle is not None else None,
           "agrees_with_oracle": res.agrees_with_oracle}
    ok = res.dcp.bijective and res.agrees_with_oracle
    return out, ok, "+".join(f"T({l})" for l in res.labels)


def _checker(fn: Callable[..., strat.CheckReport]) -> Callable[[RunConfig], Result]:
    def run(cfg: RunConfig) -> Result:
        S = _entry(cfg).stratified()
        T = S.tilting_from_multiplicities(_mults(cfg, S))
        rep = fn(S, T)
        return rep.as_dict(), rep.passed, "pass" if rep.passed else "FAIL"

    return run


def cmd_strat_property(cfg: RunConfig) -> Result:
    """Random faithful tilting modules all have DCP."""
    S = _entry(cfg).stratified()
    rng = random.Random(cfg.seed)
    samples = int(config.setting("property_samples"))
    tried = faithful = 0
    failures: List[str] = []
    for _ in range(samples):
        mults = strat.random_multiplicities(S, rng)
        T = S.tilting_from_multiplicities(mults)
        tried += 1
        if T.dim == 0 or not is_faithful(T):
            continue
        faithful += 1
        if not double_centralizer_map(S.algebra, T).bijective:
            failures.append(T.name)
    out = {"samples": tried, "faithful": faithful, "failures": failures}
    return out, not failures, f"{faithful} faithful samples, {len(failures)} failures"


def cmd_corpus_dump(cfg: RunConfig) -> Result:
    target = cfg.out or os.path.join(config.setting("report_dir"), "corpus")
    written = []
    for entry in corpus.all_entries(cfg.fieldspec):
        path = os.path.join(target, f"{entry.name}.json")
        corpus.dump(entry, path)
        written.append(path)
    return {"written": written}, True, f"{len(written)} files in {target}"


ALIASES: Dict[Tuple[str, str], Tuple[str, str]] = {
    ("spsw", "check-thm19"): ("spsw", "quotient-dcp"),
    ("check-thm19", "run"): ("spsw", "quotient-dcp"),
}

COMMANDS: Dict[Tuple[str, str], Callable[[RunConfig], Result]] = {
    ("brauer", "mul"): cmd_brauer_mul,
    ("brauer", "ideal-dim"): cmd_brauer_ideal_dim,
    ("brauer", "relations"): cmd_brauer_relations,
    ("spsw", "schur"): cmd_spsw_schur,
    ("spsw", "phi"): cmd_spsw_phi,
    ("spsw", "harmonic"): cmd_spsw_harmonic,
    ("spsw", "quotient-dcp"): cmd_spsw_quotient_dcp,
    ("spsw", "weights"): cmd_spsw_weights,
    ("dcp", "run"): cmd_dcp,
    ("strat", "flags"): cmd_strat_flags,
    ("strat", "tilting"): cmd_strat_tilting,
    ("strat", "minimal"): cmd_strat_minimal,
    ("strat", "embedding-criterion"): _checker(strat.check_embedding_criterion),
    ("strat", "faithful-dcp"): _checker(strat.check_faithful_tilting_dcp),
    ("strat", "property"): cmd_strat_property,
    ("corpus", "dump"): cmd_corpus_dump,
}


# ---------------- argparse ----------------

def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--field", default="Q", help="Q, F7, GF(11), ...")
    p.add_argument("--out", help="report path (default: <report_dir>/<group>-<command>.json)")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--dim-cap", type=int, default=None, dest="dim_cap")
    p.add_argument("--timings", action="store_true", help="write wall-clock timings into the report")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="centralizer-lab", description="Exact double-centralizer checks.")
    parser.add_argument("--log-level", default=None)
    groups = parser.add_subparsers(dest="group", required=True)

    g = groups.add_parser("brauer").add_subparsers(dest="command", required=True)
    p = g.add_parser("mul", help="product of two diagrams")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--d1", required=True)
    p.add_argument("--d2", required=True)
    _common(p)
    p = g.add_parser("ideal-dim", help="dimension of B_n^(f)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--f", type=int, required=True)
    p.add_argument("--m", type=int, default=None)
    _common(p)
    p = g.add_parser("relations", help="defining relations as diagram (and, with --m, matrix) identities")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=None)
    _common(p)

    g = groups.add_parser("spsw").add_subparsers(dest="command", required=True)
    for name in ("schur", "phi", "harmonic", "quotient-dcp", "weights"):
        p = g.add_parser(name, aliases=[a for (grp, a), canon in ALIASES.items() if grp == "spsw" and canon[1] == name])
        p.add_argument("--m", type=int, required=True)
        p.add_argument("--n", type=int, required=True)
        if name in ("harmonic", "quotient-dcp", "weights"):
            p.add_argument("--f", type=int, required=True)
        if name == "weights":
            p.add_argument("--p", type=int, default=None)
        if name == "schur":
            p.add_argument("--domdim", action="store_true")
        _common(p)

    # forma corta sin grupo
    p = groups.add_parser("check-thm19", help="alias of spsw quotient-dcp")
    for flag in ("--m", "--n", "--f"):
        p.add_argument(flag, type=int, required=True)
    _common(p)

    p = groups.add_parser("dcp", help="double centralizer map of an algebra on a module")
    p.add_argument("--algebra")
    p.add_argument("--builtin")
    p.add_argument("--module", help="module JSON; default is the regular module")
    _common(p)

    g = groups.add_parser("strat").add_subparsers(dest="command", required=True)
    for name in ("flags", "tilting", "minimal", "embedding-criterion", "faithful-dcp", "property"):
        p = g.add_parser(name)
        p.add_argument("--algebra")
        p.add_argument("--builtin")
        if name in ("embedding-criterion", "faithful-dcp"):
            p.add_argument("--mults", help="label:multiplicity,... (default: characteristic tilting)")
        _common(p)

    g = groups.add_parser("corpus").add_subparsers(dest="command", required=True)
    p = g.add_parser("dump", help="write the built-in algebras as JSON")
    _common(p)
    return parser


def _configure_logging(level: Optional[str]) -> None:
    level = (level or config.setting("log_level") or "INFO").upper()
    logging.basicConfig(level=getattr(logging, level, logging.INFO),
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    _configure_logging(args.log_level)
    raw = {k: v for k, v in vars(args).items() if v is not None and k != "log_level"}
    raw.setdefault("command", "run")
    raw["group"], raw["command"] = ALIASES.get((raw["group"], raw["command"]), (raw["group"], raw["command"]))
    if "seed" not in raw:
        raw["seed"] = int(config.setting("seed"))
    try:
        cfg = RunConfig(**raw)
    except ValidationError as exc:
        print(f"[config] invalid arguments: {exc.errors()[0]['msg']}", file=sys.stderr)
        return EXIT_PRECONDITION

    return run(cfg)


def run(cfg: RunConfig) -> int:
    """Execute one validated command, write its report and return the exit code."""
    if cfg.dim_cap is not None:
        os.environ["CENTRALIZER_LAB_DIM_CAP"] = str(cfg.dim_cap)
    tag = f"[{cfg.group}]"
    t0 = time.perf_counter()
    try:
        results, passed, line = COMMANDS[(cfg.group, cfg.command)](cfg)
    except PreconditionError as exc:
        print(f"{tag} precondition: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except LabError as exc:
        print(f"{tag} {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    elapsed = time.perf_counter() - t0

    payload = build_payload(f"{cfg.group} {cfg.command}", cfg.params(), results, passed,
                            {"total_s": elapsed} if cfg.timings else None)
    out = cfg.out or os.path.join(config.setting("report_dir"), f"{cfg.group}-{cfg.command}.json")
    save_report(out, payload)
    print(line)
    print(summary_table(payload).to_string(index=False))
    log.info("%s report written to %s", tag, out)
    return EXIT_OK if passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
