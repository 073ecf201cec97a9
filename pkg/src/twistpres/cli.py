"""Command-line entry point: ``twistpres <command> [options]``.

Exit status: 0 success, 1 a check failed, 2 usage or input error.
Shared options fall back to TWISTPRES_<NAME> environment variables, then to
built-in defaults.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from . import catalog, rs
from .abelian import abelian_invariants
from .catalog import CatalogError, CatalogKey
from .derivation import DerivationError, check_derivation, loads_script
from .f2rep import verify_presentation
from .presentation import Presentation, PresentationError, parse, serialize
from .words import WordError, format_word

log = logging.getLogger("twistpres")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
ENV_PREFIX = "TWISTPRES_"
DEFAULTS = {"g": "4", "s": "1", "kind": "mcg", "variant": None, "format": "text",
            "out": None, "fixtures": "fixtures", "no_timestamp": False}
EXT = {"json": "json", "gap": "g", "magma": "m", "text": "txt"}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    genera: list[int]
    s: int
    kind: str
    variant: str | None
    fmt: str
    out: Path | None
    fixtures: Path
    timestamp: bool
    inputs: list[Path] = field(default_factory=list)
    presentation: Path | None = None
    rename: bool = False


def parse_genus_range(text: str) -> list[int]:
    text = str(text).strip()
    try:
        if ".." in text:
            lo, hi = (int(x) for x in text.split("..", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"--g expects an integer or a range a..b, got {text!r}") from None
    if lo > hi:
        raise UsageError(f"empty genus range {text!r}; write the smaller bound first")
    if lo < 3 or hi > catalog.MAX_GENUS:
        raise UsageError(f"genus range {text!r} must lie within 3..{catalog.MAX_GENUS}")
    return list(range(lo, hi + 1))


def _env_bool(v: str) -> bool:
    return v.strip().lower() in ("1", "true", "yes", "on")


def resolve(args: argparse.Namespace, environ=os.environ) -> RunConfig:
    """Merge flags, environment and defaults (in that order of precedence)."""
    vals = {}
    for name, default in DEFAULTS.items():
        flag = getattr(args, name, None)
        env = environ.get(ENV_PREFIX + name.upper())
        if name == "no_timestamp":
            vals[name] = bool(flag) or (env is not None and _env_bool(env)) or default
        elif flag is not None:
            vals[name] = flag
        elif env not in (None, ""):
            vals[name] = env
        else:
            vals[name] = default
    try:
        s = int(vals["s"])
    except ValueError:
        raise UsageError(f"--s must be 0 or 1, got {vals['s']!r}") from None
    if s not in (0, 1):
        raise UsageError(f"--s must be 0 or 1, got {s}")
    if vals["kind"] not in ("mcg", "twist"):
        raise UsageError(f"--kind must be mcg or twist, got {vals['kind']!r}")
    if vals["format"] not in EXT:
        raise UsageError(f"--format must be one of {sorted(EXT)}, got {vals['format']!r}")
    return RunConfig(
        command=args.command, genera=parse_genus_range(vals["g"]), s=s, kind=vals["kind"],
        variant=vals["variant"], fmt=vals["format"],
        out=Path(vals["out"]) if vals["out"] else None, fixtures=Path(vals["fixtures"]),
        timestamp=not vals["no_timestamp"],
        inputs=[Path(p) for p in getattr(args, "inputs", None) or []],
        presentation=Path(args.presentation) if getattr(args, "presentation", None) else None,
        rename=bool(getattr(args, "rename", False)))


# -- helpers ------------------------------------------------------------------------------

def _key(cfg: RunConfig, g: int, kind: str | None = None, variant: str | None = None) -> CatalogKey:
    kind = kind or cfg.kind
    try:
        return CatalogKey(g, cfg.s, kind, variant if variant is not None else cfg.variant)
    except CatalogError as exc:
        raise UsageError(f"invalid catalog key: {exc}") from None


def _read_text(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_presentation(path: Path) -> Presentation:
    try:
        return parse(_read_text(path))
    except (PresentationError, WordError) as exc:
        raise UsageError(f"{path}: {exc}") from None


def _presentations(cfg: RunConfig) -> list[tuple[str, Presentation]]:
    if cfg.inputs:
        return [(str(p), _load_presentation(p)) for p in cfg.inputs]
    out = []
    for g in cfg.genera:
        key = _key(cfg, g)
        out.append((str(key), catalog.build(key)))
    return out


def _stamp(cfg: RunConfig) -> str | None:
    if not cfg.timestamp:
        return None
    return datetime.now(timezone.utc).replace(microsecond=0).isoformat()


def _emit(cfg: RunConfig, text: str):
    if cfg.out is None:
        sys.stdout.write(text)
        return
    cfg.out.parent.mkdir(parents=True, exist_ok=True)
    cfg.out.write_text(text, encoding="utf-8")
    log.info("wrote %s", cfg.out)


def _emit_report(cfg: RunConfig, report: dict, lines: list[str]):
    stamp = _stamp(cfg)
    if cfg.fmt == "json":
        if stamp:
            report = {"generated": stamp, **report}
        _emit(cfg, json.dumps(report, indent=2, ensure_ascii=False) + "\n")
    else:
        head = [f"# generated {stamp}"] if stamp else []
        _emit(cfg, "\n".join(head + lines) + "\n")


def _render(P: Presentation, fmt: str) -> str:
    if fmt == "text":
        m = P.meta
        lines = [f"# {m.kind} g={m.g} s={m.s} variant={m.variant}",
                 "generators: " + " ".join(P.generators)]
        lines += [f"{r.label}: {format_word(r.word.letters)}" for r in P.relators]
        return "\n".join(lines) + "\n"
    return serialize(P, fmt)


def _write_many(cfg: RunConfig, items: list[tuple[str, Presentation]]):
    """One output per presentation: a directory target gets one file each."""
    if cfg.out is not None and (len(items) > 1 or cfg.out.is_dir() or str(cfg.out).endswith("/")):
        cfg.out.mkdir(parents=True, exist_ok=True)
        for name, P in items:
            path = cfg.out / f"{name}.{EXT[cfg.fmt]}"
            path.write_text(_render(P, cfg.fmt), encoding="utf-8")
            log.info("wrote %s", path)
        return
    _emit(cfg, "".join(_render(P, cfg.fmt) for _, P in items))


# -- commands --------------------------------------------------------------------------

def cmd_gen(cfg: RunConfig) -> int:
    _write_many(cfg, _presentations(cfg))
    return EXIT_OK


def _rs_of(cfg: RunConfig, g: int, stats: dict | None = None) -> Presentation:
    P = catalog.build(_key(cfg, g, "mcg", cfg.variant if cfg.kind == "mcg" else None))
    C = rs.build_coset_structure(catalog.mcg_parity(g, cfg.s), "y")
    raw = rs.reidemeister_schreier(P, C, stats=stats)
    return rs.rename_to_twist(raw) if cfg.rename else raw


def cmd_rs(cfg: RunConfig) -> int:
    items = [(f"rs-g{g}-s{cfg.s}", _rs_of(cfg, g)) for g in cfg.genera]
    _write_many(cfg, items)
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    reports, lines, failed = [], [], 0
    for name, P in _presentations(cfg):
        rep = verify_presentation(P)
        bad = set(rep.failures)
        failed += len(bad)
        reports.append({"presentation": name, "checked": rep.checked, "failures": sorted(bad),
                        "y_matrix": rep.y_matrix.to_lists(),
                        "relators": [{"label": r.label, "ok": r.label not in bad} for r in P.relators]})
        lines.append(f"{name}: {rep.checked} relators, {len(bad)} failures")
        lines += [f"  {'FAIL' if r.label in bad else 'pass'}  {r.label}" for r in P.relators]
    _emit_report(cfg, {"command": "verify", "ok": failed == 0, "reports": reports}, lines)
    return EXIT_OK if failed == 0 else EXIT_FAIL


def cmd_abelianize(cfg: RunConfig) -> int:
    rows, lines = [], []
    for name, P in _presentations(cfg):
        inv = abelian_invariants(P)
        rows.append({"presentation": name, **inv.to_json()})
        lines.append(f"{name}: {inv}")
    _emit_report(cfg, {"command": "abelianize", "results": rows}, lines)
    return EXIT_OK


def _script_paths(cfg: RunConfig) -> list[Path]:
    if cfg.inputs:
        return cfg.inputs
    d = cfg.fixtures / "derivations"
    if not d.is_dir():
        raise UsageError(f"no derivation scripts given and {d} is not a directory (set --fixtures)")
    return sorted(d.glob("*.json"))


def cmd_check_derivation(cfg: RunConfig) -> int:
    given = _load_presentation(cfg.presentation) if cfg.presentation else None
    rows, lines, bad = [], [], 0
    for path in _script_paths(cfg):
        try:
            d = loads_script(_read_text(path))
        except (ValueError, KeyError, DerivationError, WordError) as exc:
            raise UsageError(f"{path}: not a derivation script ({exc})") from None
        try:
            P = given or catalog.presentation_for(d.context)
        except CatalogError as exc:
            raise UsageError(f"{path}: {exc}; pass --presentation") from None
        rep = check_derivation(P, d)
        bad += not rep.ok
        rows.append({"script": str(path), "name": d.name, "ok": rep.ok, "steps": len(d.steps),
                     "failed_step": rep.failed_step, "message": rep.message or None})
        lines.append(f"{'ok  ' if rep.ok else 'FAIL'} {path.name} ({len(d.steps)} steps)"
                     + ("" if rep.ok else f"\n     {rep}"))
    _emit_report(cfg, {"command": "check-derivation", "ok": bad == 0, "results": rows}, lines)
    return EXIT_OK if bad == 0 else EXIT_FAIL


def reproduce_row(cfg: RunConfig, g: int) -> dict:
    mcg = catalog.build(_key(cfg, g, "mcg", None))
    ver = verify_presentation(mcg)
    stats: dict = {}
    raw = _rs_of(cfg, g, stats)
    twist = catalog.build(_key(cfg, g, "twist", "reduced"))
    inv_raw, inv_twist = abelian_invariants(raw), abelian_invariants(twist)
    n, m = len(mcg.generators), len(mcg.relators)
    counts_ok = len(raw.generators) == 2 * n - 1 and stats["before_drop"] == 2 * m
    return {"g": g, "s": cfg.s, "mcg_generators": n, "mcg_relators": m,
            "verify_failures": len(ver.failures),
            "rs_generators": len(raw.generators), "rs_relators": stats["before_drop"],
            "rs_relators_nonempty": len(raw.relators),
            "twist_generators": len(twist.generators), "twist_relators": len(twist.relators),
            "invariants_rs": str(inv_raw), "invariants_twist": str(inv_twist),
            "counts_ok": counts_ok,
            "verdict": "EQUAL" if inv_raw == inv_twist else "DIFFER"}


def cmd_reproduce(cfg: RunConfig) -> int:
    rows = [reproduce_row(cfg, g) for g in sorted(cfg.genera)]
    ok = all(r["verdict"] == "EQUAL" and r["counts_ok"] and not r["verify_failures"] for r in rows)
    cols = ["g", "mcg_generators", "mcg_relators", "verify_failures", "rs_generators", "rs_relators",
            "twist_generators", "twist_relators", "invariants_rs", "verdict"]
    head = ["g", "gens", "rels", "f2fail", "rs_gens", "rs_rels", "tw_gens", "tw_rels", "H1", "verdict"]
    table = [head] + [[str(r[c]) for c in cols] for r in rows]
    widths = [max(len(row[i]) for row in table) for i in range(len(head))]
    lines = ["  ".join(cell.ljust(wd) for cell, wd in zip(row, widths)).rstrip() for row in table]
    lines.append("all checks passed" if ok else "SOME CHECKS FAILED")
    _emit_report(cfg, {"command": "reproduce", "s": cfg.s, "ok": ok, "rows": rows}, lines)
    return EXIT_OK if ok else EXIT_FAIL


COMMANDS = {"gen": cmd_gen, "rs": cmd_rs, "verify": cmd_verify, "abelianize": cmd_abelianize,
            "check-derivation": cmd_check_derivation, "reproduce": cmd_reproduce}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--g", help="genus or range a..b (default 4)")
    common.add_argument("--s", help="boundary components, 0 or 1 (default 1)")
    common.add_argument("--kind", help="mcg or twist (default mcg)")
    common.add_argument("--variant", help="catalog variant (default: standard / reduced)")
    common.add_argument("--format", help="json, gap, magma or text (default text)")
    common.add_argument("--out", help="output file, or directory for several outputs")
    common.add_argument("--fixtures", help="fixture root (default ./fixtures)")
    common.add_argument("--no-timestamp", action="store_true", default=None,
                        help="omit the generation time from reports")
    common.add_argument("-v", "--verbose", action="store_true")

    ap = argparse.ArgumentParser(prog="twistpres", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("gen", parents=[common], help="emit catalog presentations")
    p = sub.add_parser("rs", parents=[common], help="Reidemeister-Schreier on an mcg presentation")
    p.add_argument("--rename", action="store_true", help="use the twist names e, c, B_i, R")
    for name, text in (("verify", "GF(2) homology check"), ("abelianize", "abelian invariants")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("inputs", nargs="*", help="presentation JSON files (default: catalog key)")
    p = sub.add_parser("check-derivation", parents=[common], help="validate derivation scripts")
    p.add_argument("inputs", nargs="*", help="script files (default: <fixtures>/derivations)")
    p.add_argument("--presentation", help="presentation JSON to check against (default: script context)")
    sub.add_parser("reproduce", parents=[common], help="full RS pipeline with comparison table")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = resolve(args)
        return COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"twistpres {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
