"""Command line front end: ``iquantum invariants`` and ``iquantum verify <suite>``.

Exit codes: 0 all checks pass, 1 a check failed, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import gcd
from pathlib import Path
from typing import Any, Callable, Sequence

from . import catalog
from .satake import DiagramError, SatakeDiagram, adapted_word, invariants

SUITES = ("unity", "kernel", "frobenius", "braid", "smalldim", "rewrite")
DEFAULT_ELLS = {"unity": (3, 5, 7), "kernel": (3, 5, 7), "frobenius": (3,), "braid": (3,), "smalldim": (3,), "rewrite": ()}
REWRITE_TYPES = ("A1", "A2", "B2", "A3")


class ConfigError(ValueError):
    """Invalid command line configuration (exit code 2)."""


@dataclass(frozen=True)
class RunConfig:
    command: str
    suite: str | None
    diagram: str | None
    ells: tuple[int, ...]
    word: tuple[int, ...] | None
    out: str | None
    jobs: int
    timing: bool


# ---------------------------------------------------------------------------
# parsing and validation


def _int_list(text: str, what: str) -> tuple[int, ...]:
    try:
        vals = tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError:
        raise ConfigError(f"{what} must be a comma-separated list of integers, got {text!r}") from None
    if not vals:
        raise ConfigError(f"{what} is empty")
    return vals


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="iquantum", description="Invariants and exact verification suites for iquantum groups at roots of unity.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--diagram", help="Satake diagram JSON file (default: the shipped catalog)")
        sp.add_argument("--ell", help="comma-separated odd integers coprime to the root lengths")
        sp.add_argument("--word", help="comma-separated reduced word (1-based) overriding the adapted word")
        sp.add_argument("--out", help="write the report here instead of standard output")
        sp.add_argument("--jobs", type=int, default=1, help="worker processes for independent checks")
        sp.add_argument("--timing", action="store_true", help="include wall-clock seconds in each record")

    inv = sub.add_parser("invariants", help="invariants, the graded matrix S and degrees")
    common(inv)
    ver = sub.add_parser("verify", help="run a verification suite")
    ver.add_argument("suite", help=f"one of {', '.join(SUITES)}")
    common(ver)
    return p


def make_config(ns: argparse.Namespace) -> RunConfig:
    suite = getattr(ns, "suite", None)
    if ns.command == "verify" and suite not in SUITES:
        raise ConfigError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    if ns.ell is not None:
        ells = _int_list(ns.ell, "--ell")
    elif ns.command == "invariants":
        ells = (3,)
    else:
        ells = DEFAULT_ELLS[suite]
    word = _int_list(ns.word, "--word") if ns.word else None
    if ns.jobs < 1:
        raise ConfigError("--jobs must be at least 1")
    return RunConfig(ns.command, suite, ns.diagram, ells, word, ns.out, ns.jobs, ns.timing)


def _load_diagram(path: str) -> SatakeDiagram:
    try:
        return SatakeDiagram.from_json(path)
    except FileNotFoundError:
        raise ConfigError(f"diagram file {path} not found") from None
    except (DiagramError, ValueError, KeyError, TypeError) as exc:
        raise ConfigError(f"invalid diagram {path}: {exc}") from None


def _check_ells(ells: Sequence[int], diagrams: Sequence[SatakeDiagram]) -> None:
    for ell in ells:
        if ell < 3 or ell % 2 == 0:
            raise ConfigError(f"ell = {ell} must be odd and at least 3")
        for d in diagrams:
            for e in d.datum.eps:
                if gcd(e, ell) != 1:
                    raise ConfigError(f"ell = {ell} is not coprime to the root length {e} of {d.label()}")


def _word(cfg: RunConfig, d: SatakeDiagram):
    if cfg.word is None:
        return None
    try:
        return adapted_word(d, [w - 1 for w in cfg.word])
    except (ValueError, AssertionError) as exc:
        raise ConfigError(f"--word is not usable for {d.label()}: {exc}") from None


# ---------------------------------------------------------------------------
# checks (module-level so they can run in worker processes)


def _diagram_from(spec: Any) -> SatakeDiagram:
    if isinstance(spec, dict):
        return SatakeDiagram.from_dict(spec["data"], name=spec["name"])
    return catalog.load(spec)


def _task_unity(ell: int) -> dict:
    from .qcoeff import verify_unity_identities

    rep = verify_unity_identities(ell)
    return {"check": "unity", "ell": ell, "identities": rep, "pass": all(v["pass"] for v in rep.values())}


def _task_kernel(spec: Any, ell: int, word: tuple[int, ...] | None) -> dict:
    from .gradedqsp import build_S, verify_kernel_lemma

    d = _diagram_from(spec)
    aw = adapted_word(d, word) if word else None
    cert = verify_kernel_lemma(build_S(d, aw), ell)
    return {"check": "kernel", "case": d.label(), "ell": ell, "image_size": cert.image_size,
            "expected_image_size": cert.expected_image_size, "failures": cert.failures, "pass": cert.passed}


def _task_frobenius(spec: Any, ell: int, node: int, k: int) -> dict:
    from .iqg import frobenius_generator_check

    d = _diagram_from(spec)
    out = frobenius_generator_check(d, node, ell, k).to_dict()
    out["case"] = d.label()
    out.pop("seconds", None)
    return out


def _task_braid(case: str, ell: int) -> dict:
    from .iqg import braid_frobenius_check

    out = braid_frobenius_check(case, ell).to_dict()
    out.pop("seconds", None)
    return out


def _task_smalldim(spec: Any, ell: int) -> dict:
    from .iqg import small_iqg_dim_check

    out = small_iqg_dim_check(_diagram_from(spec), ell).to_dict()
    out.pop("seconds", None)
    return out


def _task_rewrite(name: str, cartan: Any) -> dict:
    from .rootdata import CartanDatum, cartan_type
    from .uq import RewriteSystem, UqAlgebra, braid_defects, relation_defects

    datum = cartan_type(name) if cartan is None else CartanDatum.from_matrix(cartan[0], cartan[1], name=name)
    rs = RewriteSystem(datum, 12)
    bad = rs.check_confluence()
    alg = UqAlgebra(datum)
    rel = {f"T{i + 1}": relation_defects(alg, i) for i in datum.nodes}
    braid = braid_defects(alg)
    ok = not bad and not any(rel.values()) and not braid
    return {"check": "rewrite", "case": name, "rules": len(rs.rules), "bound": 12, "confluence_failures": bad,
            "relation_failures": {k: v for k, v in rel.items() if v}, "braid_failures": braid, "pass": ok}


def _timed(fn: Callable, args: tuple) -> dict:
    t0 = time.perf_counter()
    try:
        out = fn(*args)
    except Exception as exc:  # a crashing check is a failing check
        out = {"check": fn.__name__.removeprefix("_task_"), "args": [str(a) for a in args], "error": f"{type(exc).__name__}: {exc}", "pass": False}
    out["seconds"] = round(time.perf_counter() - t0, 3)
    return out


def _plan(cfg: RunConfig) -> list[tuple[Callable, tuple]]:
    user = _load_diagram(cfg.diagram) if cfg.diagram else None
    user_spec = {"name": user.label(), "data": user.to_dict()} if user else None
    suite = cfg.suite
    if suite == "unity":
        _check_ells(cfg.ells, [])
        return [(_task_unity, (ell,)) for ell in cfg.ells]
    if suite == "kernel":
        specs = [user_spec] if user else list(catalog.CATALOG)
        diagrams = [user] if user else [catalog.load(n) for n in catalog.CATALOG]
        _check_ells(cfg.ells, diagrams)
        word = None
        if cfg.word is not None:
            if not user:
                raise ConfigError("--word needs --diagram")
            _word(cfg, user)
            word = tuple(w - 1 for w in cfg.word)
        return [(_task_kernel, (s, ell, word)) for s in specs for ell in cfg.ells]
    if suite == "frobenius":
        names = ["split_A1", "quasisplit_A2", "diagonal_A1xA1", "split_A2", "split_B2"]
        pairs = [(user_spec, user)] if user else [(n, catalog.load(n)) for n in names]
        _check_ells(cfg.ells, [d for _, d in pairs])
        tasks = []
        for spec, d in pairs:
            for ell in cfg.ells:
                for i in d.white:
                    tasks.append((_task_frobenius, (spec, ell, i, 1)))
                if not user and d.label() == "split_A1" and ell == 3:
                    tasks.append((_task_frobenius, (spec, ell, 0, 2)))
        return tasks
    if suite == "braid":
        from .iqg import BRAID_CASES

        if user:
            raise ConfigError("the braid suite runs fixed cases; --diagram is not accepted")
        _check_ells(cfg.ells, [catalog.load(v[0]) for v in BRAID_CASES.values()])
        return [(_task_braid, (case, ell)) for case in BRAID_CASES for ell in cfg.ells]
    if suite == "smalldim":
        pairs = [(user_spec, user)] if user else [(n, catalog.load(n)) for n in ("split_A1", "diagonal_A1xA1")]
        _check_ells(cfg.ells, [d for _, d in pairs])
        return [(_task_smalldim, (s, ell)) for s, _ in pairs for ell in cfg.ells]
    if suite == "rewrite":
        if user:
            return [(_task_rewrite, (user.label(), ([list(r) for r in user.datum.cartan], list(user.datum.eps))))]
        return [(_task_rewrite, (name, None)) for name in REWRITE_TYPES]
    raise ConfigError(f"unknown suite {suite!r}")  # pragma: no cover


def run_verify(cfg: RunConfig, emit: Callable[[str], None]) -> int:
    tasks = _plan(cfg)
    if cfg.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_timed, [t[0] for t in tasks], [t[1] for t in tasks]))
    else:
        results = [_timed(fn, args) for fn, args in tasks]
    for r in results:
        if not cfg.timing:
            r.pop("seconds", None)
        emit(json.dumps(r, sort_keys=True, default=str))
    failed = sum(1 for r in results if not r["pass"])
    summary = {"summary": cfg.suite, "checks": len(results), "passed": len(results) - failed, "failed": failed, "pass": failed == 0}
    emit(json.dumps(summary, sort_keys=True))
    return 0 if failed == 0 else 1


def run_invariants(cfg: RunConfig, emit: Callable[[str], None]) -> int:
    from .gradedqsp import build_S, graded_degree
    from .twistedpoly import image_size

    if not cfg.diagram:
        raise ConfigError("invariants needs --diagram")
    d = _load_diagram(cfg.diagram)
    _check_ells(cfg.ells, [d])
    pres = build_S(d, _word(cfg, d))
    inv = invariants(d)
    table = {}
    for ell in cfg.ells:
        table[str(ell)] = {
            "graded_degree": graded_degree(pres, ell),
            "image_size": image_size(pres.form, ell),
            "branching": [ell ** e for e in inv.branching_exponents],
        }
    report = {
        "diagram": d.to_dict(),
        "invariants": inv.to_dict(),
        "word": [w + 1 for w in pres.word.word],
        "generators": pres.generator_names(),
        "S": [list(r) for r in pres.S],
        "degrees": table,
    }
    emit(json.dumps(report, sort_keys=True, indent=2))
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    lines: list[str] = []
    try:
        cfg = make_config(ns)
        runner = run_invariants if cfg.command == "invariants" else run_verify
        code = runner(cfg, lines.append)
    except ConfigError as exc:
        print(f"iquantum: error: {exc}", file=sys.stderr)
        return 2
    text = "\n".join(lines) + "\n"
    if cfg.out:
        Path(cfg.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
