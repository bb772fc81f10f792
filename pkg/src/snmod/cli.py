"""snmod command line: partitions, modules, classification, surveys and self-checks."""
from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from collections import Counter
from pathlib import Path
from typing import Optional

from . import __version__
from .branching import perm_module_signature
from .classifier import (FAMILIES, DomainError, classify, named_group, parse_group_spec, survey)
from .config import FORMATS, get_config, load_config_file, set_config
from .meataxe import composition_factors, dominating_regular
from .partitions import (Partition, PartitionError, e_tilde, epsilon, f_tilde, is_JS, is_p_regular,
                         mullineux, parse_partition, phi, signature, special_partition)
from .perm_groups import GroupError
from .reps import CapError, Rep, RepError, dual, fixed_points, hom_space, restrict
from .specht import irreducible, perm_module, specht, subset_module
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_DOMAIN, EXIT_CAP = 0, 1, 2, 3


class CliError(ValueError):
    pass


# ---------------------------------------------------------------- output

def _meta() -> dict:
    cfg = get_config()
    return {"version": __version__, "seed": cfg.seed, "caps": {"dim": cfg.dim_cap, "words": cfg.word_cap}}


def _text_lines(obj, indent: str = "") -> list:
    out = []
    for k in sorted(obj):
        v = obj[k]
        if isinstance(v, dict):
            out.append(f"{indent}{k}:")
            out += _text_lines(v, indent + "  ")
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            out.append(f"{indent}{k}: {len(v)} rows")
        else:
            out.append(f"{indent}{k}: {v if not isinstance(v, bool) else str(v).lower()}")
    return out


def emit(payload: dict, rows: Optional[list] = None, stream=None, fmt: Optional[str] = None):
    """Write ``payload`` as json, csv (``rows`` if given, else key/value pairs) or text."""
    stream = stream or sys.stdout
    fmt = fmt or get_config().output
    if fmt == "json":
        stream.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
        return
    if fmt == "csv":
        buf = io.StringIO()
        if rows:
            cols = sorted({k for r in rows for k in r})
            w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
            w.writeheader()
            for r in rows:
                w.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in r.items()})
        else:
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["key", "value"])
            for k in sorted(payload):
                if k != "meta":
                    v = payload[k]
                    w.writerow([k, json.dumps(v) if isinstance(v, (list, dict)) else v])
        stream.write(buf.getvalue())
        return
    if "result" in payload and not isinstance(payload["result"], (dict, list)):
        r = payload["result"]
        stream.write((str(r).lower() if isinstance(r, bool) else str(r)) + "\n")
        return
    stream.write("\n".join(_text_lines({k: v for k, v in payload.items() if k != "meta"})) + "\n")
    for r in rows or []:
        stream.write("  " + "  ".join(f"{k}={r[k]}" for k in sorted(r)) + "\n")


# ---------------------------------------------------------------- argument helpers

def _partition(text: str) -> Partition:
    return parse_partition(text)


def _infer_n(group_spec: Optional[str]) -> Optional[int]:
    if not group_spec:
        return None
    head, _, rest = group_spec.partition(":")
    head = head.lower()
    try:
        if head == "wreath":
            a, b = (int(x) for x in rest.split(":"))
            return a * b
        if head == "intransitive":
            return int(rest.split(":")[0])
        if head == "young":
            return sum(int(x) for x in rest.strip("()").split(",") if x.strip())
        if head == "named":
            return named_group(rest).n
    except ValueError:
        raise GroupError(f"bad group spec {group_spec!r}") from None
    m = re.fullmatch(r"[SA](\d+)", group_spec.strip())
    return int(m.group(1)) if m else None


def _resolve_n(args, *candidates) -> int:
    for c in (getattr(args, "n", None),) + candidates:
        if c is not None:
            return int(c)
    raise CliError("cannot determine n: pass --n")


_MODULE_RE = re.compile(r"^(Sdual|S|D|M)(\d*)(dual)?\s*(\(.*\))?$")


def build_module(token: str, extra: Optional[str], n: Optional[int], p: int) -> Rep:
    """Module from a name: D/S/Sdual/M followed by a partition, or Mk, Sk, Skdual, Dk for the
    two-row labels (n-k, k)."""
    m = _MODULE_RE.match(token.strip())
    if not m:
        raise CliError(f"unknown module {token!r}")
    kind, k, dual_suffix, inline = m.groups()
    if kind == "Sdual":
        kind, dual_suffix = "S", "dual"
    text = inline or extra
    if k:
        if n is None:
            raise CliError(f"{token} needs --n")
        k = int(k)
        if kind == "M":
            return subset_module(n, k, p)
        lam = Partition.of(n - k, k)
    else:
        if text is None:
            raise CliError(f"{token} needs a partition")
        lam = _partition(text)
        if n is not None and lam.n != n:
            raise CliError(f"{lam} is not a partition of n = {n}")
        if kind == "M":
            return perm_module(lam.n, p, lam.parts)
    V = irreducible(lam, p) if kind == "D" else specht(lam, p)
    return dual(V) if dual_suffix else V


def _factor_rows(c: Counter) -> list:
    return [[str(mu), c[mu]] for mu in sorted(c, key=lambda m: m.parts, reverse=True)]


# ---------------------------------------------------------------- partition

def cmd_partition(args) -> int:
    sub = args.partition_cmd
    if sub == "special":
        lam = special_partition(args.kind, args.n)
        emit({"kind": args.kind, "n": args.n, "result": str(lam), "meta": _meta()})
        return EXIT_OK
    lam, p = _partition(args.lam), args.p
    out = {"lambda": str(lam), "p": p, "meta": _meta()}
    if sub == "regular":
        out["result"] = is_p_regular(lam, p)
    elif sub == "mullineux":
        out["result"] = str(mullineux(lam, p))
    elif sub == "js":
        out["result"] = is_JS(lam, p)
    elif sub == "signature":
        res = range(p) if args.i is None else [args.i % p]
        sigs = {}
        for i in res:
            s = signature(lam, i, p)
            sigs[str(i)] = {"word": s.text(), "reduced": "".join(x for _, x in s.reduced),
                            "normal": [list(nd) for nd in s.normal],
                            "conormal": [list(nd) for nd in s.conormal],
                            "epsilon": s.epsilon, "phi": s.phi,
                            "good": list(s.good) if s.good else None,
                            "cogood": list(s.cogood) if s.cogood else None}
        out["signatures"] = sigs
        emit(out, rows=[{"i": int(i), **v} for i, v in sigs.items()])
        return EXIT_OK
    elif sub == "crystal":
        res = range(p) if args.i is None else [args.i % p]
        ops = {}
        for i in res:
            e, f = e_tilde(lam, i, p), f_tilde(lam, i, p)
            ops[str(i)] = {"epsilon": epsilon(lam, i, p), "phi": phi(lam, i, p),
                           "e_tilde": str(e) if e is not None else None,
                           "f_tilde": str(f) if f is not None else None}
        out["crystal"] = ops
        emit(out, rows=[{"i": int(i), **v} for i, v in ops.items()])
        return EXIT_OK
    emit(out)
    return EXIT_OK


# ---------------------------------------------------------------- module

def cmd_module(args) -> int:
    sub, p = args.module_cmd, args.p
    if sub == "perm-signature":
        sig = perm_module_signature(args.n, p, args.k, seed=get_config().seed)
        sig = dict(sig, hom_in={str(j): v for j, v in sig["hom_in"].items()},
                   hom_out={str(j): v for j, v in sig["hom_out"].items()}, meta=_meta())
        emit(sig, rows=[{"label": lab, "mult": m} for lab, m in sig["factors"]])
        return EXIT_OK
    group_n = _infer_n(getattr(args, "group", None))
    n = getattr(args, "n", None) or group_n
    if sub == "hom":
        V = build_module(args.source, None, n, p)
        W = build_module(args.target, None, n, p)
        out = {"source": args.source, "target": args.target, "p": p, "n": V.n,
               "result": hom_space(V, W, seed=get_config().seed).dim, "meta": _meta()}
        emit(out)
        return EXIT_OK
    V = build_module(args.module, args.lam, n, p)
    out = {"module": args.module + (args.lam or ""), "p": p, "n": V.n, "meta": _meta()}
    if sub == "dim":
        out["result"] = V.dim
        emit(out)
    elif sub == "factors":
        cands = None
        m = re.fullmatch(r"M(\d+)", args.module)
        if m:
            k = int(m.group(1))
            cands = dominating_regular(Partition.of(V.n - k, k), p)
        fac = composition_factors(V, seed=get_config().seed, candidates=cands)
        out["factors"] = _factor_rows(fac)
        out["dim"] = V.dim
        emit(out, rows=[{"label": lab, "mult": c} for lab, c in out["factors"]])
    elif sub == "fixed":
        if args.group:
            G = parse_group_spec(args.group, V.n)
            out["group"] = G.name
            V = restrict(V, G.group)
        out["result"] = fixed_points(V).dim
        emit(out)
    return EXIT_OK


# ---------------------------------------------------------------- classify / survey / verify

def cmd_classify(args) -> int:
    lam = _partition(args.lam)
    n = _resolve_n(args, lam.n)
    if lam.n != n:
        raise DomainError(f"{lam} is not a partition of n = {n}")
    G = parse_group_spec(args.group, n)
    res = classify(lam, args.p, G, with_ground_truth=args.ground_truth, seed=get_config().seed)
    out = res.as_dict()
    out["n"] = n
    out["meta"] = _meta()
    emit(out)
    return EXIT_OK


def cmd_survey(args) -> int:
    families = [f.strip() for f in args.families.split(",") if f.strip()]
    lam_filter = None
    if args.lam:
        wanted = {_partition(t) for t in args.lam}
        lam_filter = wanted.__contains__
    progress = None
    if args.progress:
        def progress(cell):
            print(f"{cell['lambda']} {cell['group']} {cell.get('ground_truth')} "
                  f"{cell.get('consistent')}", file=sys.stderr, flush=True)
    rep = survey(args.n, args.p, families, lam_filter=lam_filter, seed=get_config().seed,
                 timing=not args.no_timing, progress=progress)
    bad = [c for c in rep["cells"] if c.get("consistent") is False]
    if args.out:
        with open(args.out, "w") as fh:
            emit(rep, rows=rep["cells"], stream=fh)
        summary = {"cells": len(rep["cells"]), "inconsistent": len(bad), "out": args.out, "meta": rep["meta"]}
        emit(summary)
    else:
        emit(rep, rows=rep["cells"])
    return EXIT_FAIL if bad else EXIT_OK


def _suite_kwargs(name: str, args) -> dict:
    n, p = args.n, args.p
    primes = (p,) if p else None
    kw = {}
    if name == "crystal":
        if n:
            kw["n_max"] = n
        if primes:
            kw["primes"] = primes
    elif name == "mullineux":
        if n:
            kw["n_max"] = n
        if primes:
            kw["primes"] = primes
    elif name in ("wilson", "signatures"):
        if n:
            kw["n_range"] = (6, n)
        if primes:
            kw["primes"] = primes
    elif name in ("branching",):
        if n:
            kw["n_max"] = n
        if primes:
            kw["primes"] = primes
    elif name in ("dims", "invariants"):
        if primes:
            kw["primes"] = primes
    elif name == "soundness":
        if n and p:
            kw["cases"] = ((p, n),)
        elif n or p:
            raise CliError("soundness takes both --n and --p, or neither")
    elif name == "tnat":
        if n:
            kw["n"] = n
    return kw


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    results = []
    for name in names:
        r = run_suite(name, **_suite_kwargs(name, args))
        results.append(r)
        if get_config().output == "text":
            status = "PASS" if r.passed else "FAIL"
            print(f"{status} {name}: {r.checked} checks, {len(r.failures)} failures, {r.elapsed_s:.1f}s")
            for f in r.failures[:20]:
                print(f"  {f}")
            for k in sorted(r.info):
                print(f"  {k}: {r.info[k]}")
    if get_config().output != "text":
        payload = {"suites": [r.as_dict() for r in results], "passed": all(r.passed for r in results),
                   "meta": _meta()}
        emit(payload, rows=[{"suite": r.name, "passed": r.passed, "checked": r.checked,
                             "failures": len(r.failures)} for r in results])
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


# ---------------------------------------------------------------- parser

def _common() -> argparse.ArgumentParser:
    c = argparse.ArgumentParser(add_help=False)
    S = argparse.SUPPRESS
    c.add_argument("--config", default=S, help="key = value file (dim_cap, word_cap, seed, cache_dir, output)")
    c.add_argument("--dim-cap", type=int, default=S)
    c.add_argument("--word-cap", type=int, default=S)
    c.add_argument("--seed", type=int, default=S)
    c.add_argument("--cache-dir", default=S)
    c.add_argument("--output", choices=FORMATS, default=S)
    return c


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    ap = argparse.ArgumentParser(prog="snmod", parents=[common],
                                 description="Modular representations of symmetric groups over GF(p).")
    ap.add_argument("--version", action="version", version=f"snmod {__version__}")
    sp = ap.add_subparsers(dest="command", required=True)

    part = sp.add_parser("partition", parents=[common], help="partition combinatorics")
    psp = part.add_subparsers(dest="partition_cmd", required=True)
    for name in ("regular", "mullineux", "js", "signature", "crystal"):
        q = psp.add_parser(name, parents=[common])
        q.add_argument("--p", type=int, required=True)
        if name in ("signature", "crystal"):
            q.add_argument("--i", type=int, default=None, help="residue (all residues if omitted)")
        q.add_argument("lam", metavar="LAMBDA")
    q = psp.add_parser("special", parents=[common])
    q.add_argument("kind", choices=("alpha", "beta"))
    q.add_argument("n", type=int)

    mod = sp.add_parser("module", parents=[common], help="modules: dimensions, factors, Hom, invariants")
    msp = mod.add_subparsers(dest="module_cmd", required=True)
    for name in ("dim", "factors", "fixed"):
        q = msp.add_parser(name, parents=[common])
        q.add_argument("--p", type=int, required=True)
        q.add_argument("--n", type=int, default=None)
        q.add_argument("module", help="D, S, Sdual or M (with LAMBDA), or Mk, Sk, Skdual, Dk (with --n)")
        q.add_argument("lam", metavar="LAMBDA", nargs="?")
        q.add_argument("--group", default=None, help="restrict to this subgroup first" if name == "fixed"
                       else argparse.SUPPRESS)
    q = msp.add_parser("hom", parents=[common])
    q.add_argument("--p", type=int, required=True)
    q.add_argument("--n", type=int, default=None)
    q.add_argument("source")
    q.add_argument("target")
    q = msp.add_parser("perm-signature", parents=[common])
    q.add_argument("--p", type=int, required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--k", type=int, required=True)

    c = sp.add_parser("classify", parents=[common], help="irreducibility of a restriction")
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--n", type=int, default=None)
    c.add_argument("--lambda", dest="lam", required=True)
    c.add_argument("--group", required=True)
    c.add_argument("--ground-truth", action="store_true")

    s = sp.add_parser("survey", parents=[common], help="sweep partitions against subgroup families")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--families", default=",".join(FAMILIES))
    s.add_argument("--lambda", dest="lam", action="append", help="restrict to these partitions (repeatable)")
    s.add_argument("--out", default=None)
    s.add_argument("--no-timing", action="store_true", help="write elapsed_ms = 0 for byte-stable output")
    s.add_argument("--progress", action="store_true")

    v = sp.add_parser("verify", parents=[common], help="run a self-check suite")
    v.add_argument("suite", choices=sorted(SUITES) + ["all"])
    v.add_argument("--n", type=int, default=None)
    v.add_argument("--p", type=int, default=None)
    return ap


def _configure(args):
    cfg = get_config()
    if getattr(args, "config", None):
        cfg = load_config_file(args.config, cfg)
    cfg = cfg.with_(dim_cap=getattr(args, "dim_cap", None), word_cap=getattr(args, "word_cap", None),
                    seed=getattr(args, "seed", None), cache_dir=getattr(args, "cache_dir", None),
                    output=getattr(args, "output", None))
    set_config(cfg)


_COMMANDS = {"partition": cmd_partition, "module": cmd_module, "classify": cmd_classify,
             "survey": cmd_survey, "verify": cmd_verify}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    old = get_config()
    try:
        _configure(args)
        return _COMMANDS[args.command](args)
    except CapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (PartitionError, GroupError, DomainError, RepError, CliError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    finally:
        set_config(old)


if __name__ == "__main__":
    sys.exit(main())
