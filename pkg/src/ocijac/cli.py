"""Command-line front end.

Exit codes: 0 success, 1 a claimed property failed numerically, 2 usage or
input error, 3 smoothness diagnostic failed.
"""

from __future__ import annotations

import argparse
import ast
import json
import logging
import sys
from pathlib import Path

from . import duality, family, hodge, koszul
from .graded import Configuration, ConfigurationError, dim_A
from .linalg import FieldSpec
from .poly import PolynomialSyntaxError, format_polynomial, parse_polynomial
from .quotient import basis_B

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_SINGULAR = 0, 1, 2, 3

_KEYS = ("n", "field", "F", "G")


class ConfigFileError(ValueError):
    pass


def _strip_comment(line: str) -> str:
    quote = None
    for i, ch in enumerate(line):
        if quote:
            if ch == quote:
                quote = None
        elif ch in "\"'":
            quote = ch
        elif ch == "#":
            return line[:i]
    return line


def read_config_text(text: str, source: str = "<config>") -> dict:
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigFileError(f"{source}:{lineno}: expected 'key = value'")
        key, value = (t.strip() for t in line.split("=", 1))
        if key not in _KEYS:
            raise ConfigFileError(f"{source}:{lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigFileError(f"{source}:{lineno}: duplicate key {key!r}")
        try:
            values[key] = ast.literal_eval(value)
        except (ValueError, SyntaxError):
            raise ConfigFileError(f"{source}:{lineno}: cannot parse value for {key!r}") from None
    return values


def config_from_values(values: dict, source: str = "<config>") -> Configuration:
    for key in ("n", "field"):
        if key not in values:
            raise ConfigFileError(f"{source}: missing key {key!r}")
    n = values["n"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise ConfigFileError(f"{source}: n must be an integer")
    if not isinstance(values["field"], str):
        raise ConfigFileError(f"{source}: field must be a string")
    field = FieldSpec.parse(values["field"])
    polys = {}
    for key in ("F", "G"):
        texts = values.get(key, [])
        if not isinstance(texts, (list, tuple)) or not all(isinstance(t, str) for t in texts):
            raise ConfigFileError(f"{source}: {key} must be a list of strings")
        out = []
        for i, t in enumerate(texts):
            try:
                out.append(parse_polynomial(t, n + 1, field))
            except PolynomialSyntaxError as exc:
                raise ConfigFileError(f"{source}: {key}[{i}]: {exc}") from None
        polys[key] = tuple(out)
    if not polys["F"] and not polys["G"]:
        raise ConfigFileError(f"{source}: need r + s >= 1 polynomials")
    return Configuration(n, polys["F"], polys["G"], field)


def parse_config(path) -> Configuration:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    return config_from_values(read_config_text(text, str(path)), str(path))


def format_config(cfg: Configuration) -> str:
    """Config-file text that parses back to ``cfg``."""
    lines = [f"n = {cfg.n}", f'field = "{cfg.field}"']
    for key, polys in (("F", cfg.F), ("G", cfg.G)):
        lines.append(f"{key} = " + json.dumps([format_polynomial(p) for p in polys]))
    return "\n".join(lines) + "\n"


def _int_list(text: str) -> list[int]:
    t = text.strip().strip("[]()")
    if not t:
        return []
    try:
        return [int(x) for x in t.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ocijac", description="Jacobian rings of open complete intersections")
    ap.add_argument("-v", "--verbose", action="store_true", help="log boundary hits and progress")
    sub = ap.add_subparsers(dest="command", required=True)

    def cmd(name, help_, config=True):
        p = sub.add_parser(name, help=help_)
        if config:
            p.add_argument("--config", required=True, metavar="PATH")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        return p

    p = cmd("dim", "dimension of B_q(l)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)

    p = cmd("hodge", "log-Hodge numbers h^{p,q}")
    p.add_argument("--ell", type=int, default=0)
    p.add_argument("--full", action="store_true", help="full instead of primitive groups")

    cmd("trace", "socle piece and trace functional")

    p = cmd("pairing", "multiplication pairing h_p(l)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--check", action="store_true", help="evaluate the duality claims")

    cmd("eta", "kernel of the dual top pairing")

    p = cmd("koszul", "middle homology of the Koszul complex of V in B_1(0)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--codim", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--subspace", metavar="PATH")

    p = cmd("nabla", "kernel of multiplication by W on H^{p,q}")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--subspace", metavar="PATH")
    p.add_argument("--cS", type=int, default=0, dest="cS")

    p = cmd("nlbound", "codimension bound for Noether-Lefschetz components", config=False)
    for name in ("--n", "--r", "--s"):
        p.add_argument(name, type=int, required=True)
    p.add_argument("--d", type=_int_list, required=True, metavar="LIST")
    p.add_argument("--e", type=_int_list, required=True, metavar="LIST")
    p.add_argument("--cS", type=int, default=0, dest="cS")

    p = cmd("sigma", "codimension count of the tangency component (plane curves)", config=False)
    p.add_argument("--d", type=int, required=True)

    cmd("smoothcheck", "necessary conditions for smoothness")
    return ap


def _emit(args, cfg: Configuration | None, result: dict, text: str, out) -> None:
    if args.json:
        payload = {
            "command": args.command,
            "config_digest": cfg.digest if cfg is not None else None,
            "field": str(cfg.field) if cfg is not None else None,
        }
        payload.update(result)
        out.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        out.write(text.rstrip("\n") + "\n")


def _require_smooth(cfg: Configuration) -> None:
    tp = duality.trace_piece(cfg)
    if not tp.ok:
        raise duality.SmoothnessError(f"trace piece B{tuple(tp.idx)} has dimension {tp.dim}, expected 1")


def _do_dim(args, cfg):
    piece = basis_B(cfg, (args.q, args.ell))
    res = {"q": args.q, "ell": args.ell, "dim": piece.dim, "dim_A": dim_A(cfg, (args.q, args.ell)),
           "ideal_rank": piece.ideal_rank}
    return EXIT_OK, res, f"dim B_{args.q}({args.ell}) = {piece.dim}  (dim A = {res['dim_A']}, ideal rank {piece.ideal_rank})"


def _do_hodge(args, cfg):
    table = hodge.hodge_table(cfg, args.ell)
    mode = "full" if args.full else "prim"
    entries = [
        {"p": e.p, "q": e.q, "prim": e.prim_dim, "full": e.full_dim,
         "h": e.full_dim if args.full else e.prim_dim}
        for e in table.entries
    ]
    lines = [f"m = {table.m}, twist l = {args.ell}, mode = {mode}", "   p   q    prim    full"]
    lines += [f"{e['p']:4d}{e['q']:4d}{e['prim']:8d}{e['full']:8d}" for e in entries]
    return EXIT_OK, {"m": table.m, "ell": args.ell, "mode": mode, "entries": entries}, "\n".join(lines)


def _do_trace(args, cfg):
    tp = duality.trace_piece(cfg)
    res = {"piece": list(tp.idx), "dim": tp.dim, "functional": list(tp.functional), "degenerate": tp.degenerate}
    if tp.degenerate:
        return EXIT_OK, res, f"r > n: pairings are zero by convention (piece B{tuple(tp.idx)})"
    code = EXIT_OK if tp.dim == 1 else EXIT_SINGULAR
    status = "ok" if tp.dim == 1 else "FAILED smoothness diagnostic"
    return code, res, f"trace piece B_{tp.idx.q}({tp.idx.ell}): dim {tp.dim}  [{status}]"


def _do_pairing(args, cfg):
    _require_smooth(cfg)
    rep = duality.check_duality(cfg, args.p, args.ell) if args.check else duality.pairing_matrix(cfg, args.p, args.ell)
    res = rep.summary()
    if not args.check:
        for key in ("applicable_case", "verdict", "boundary", "claims"):
            res.pop(key)
    text = (f"h_{args.p}({args.ell}): B{tuple(rep.left_idx)} x B{tuple(rep.right_idx)} "
            f"-> k, matrix {rep.left_dim}x{rep.right_dim}, rank {rep.rank}")
    if args.check:
        text += f"\ncase {rep.applicable_case} (claims: {', '.join(rep.claims) or 'none'}): {rep.verdict}"
    code = EXIT_FAILED if args.check and rep.verdict == "FAILED" else EXIT_OK
    return code, res, text


def _do_eta(args, cfg):
    _require_smooth(cfg)
    rep = duality.eta_kernel(cfg)
    code = EXIT_OK if rep.ok else EXIT_FAILED
    text = (f"kernel dim {rep.kernel_dim} (expected {rep.expected}), rank {rep.rank}, "
            f"surjective: {rep.surjective}")
    return code, rep.summary(), text


def _subspace(args, cfg):
    if args.subspace:
        return koszul.read_subspace(args.subspace, cfg)
    return None


def _do_koszul(args, cfg):
    if args.subspace and (args.codim is not None or args.seed is not None):
        raise ValueError("use either --subspace or --codim/--seed")
    if args.subspace:
        V = koszul.read_subspace(args.subspace, cfg)
    elif args.codim is not None and args.seed is not None:
        V = koszul.random_subspace(cfg, args.codim, args.seed)
    else:
        raise ValueError("koszul needs --codim and --seed, or --subspace")
    rep = koszul.check_exactness(cfg, V, args.p, args.ell, args.q)
    code = EXIT_FAILED if rep.verdict == "FAILED" or not rep.dd_zero else EXIT_OK
    text = (f"dims {rep.dims}, ranks in/out {rep.rank_in}/{rep.rank_out}, middle homology {rep.middle_homology}"
            f"\ncondition {rep.condition_case}: {rep.verdict}")
    return code, rep.summary(), text


def _do_nabla(args, cfg):
    _require_smooth(cfg)
    W = _subspace(args, cfg)
    rep = family.nabla_kernel(family.FamilyInput(cfg, W, c_S=args.cS), args.p, args.q)
    code = EXIT_FAILED if rep.verdict == "FAILED" else EXIT_OK
    text = (f"kernel dim {rep.kernel_dim} of {rep.source_dim} (trivial part {rep.trivial_expected})"
            f"\ncase {rep.case}, degree condition {'holds' if rep.condition_holds else 'fails'}: {rep.verdict}")
    if rep.ring_level_only:
        text += "\n(curve case: W is interpreted at ring level only)"
    return code, rep.summary(), text


def _do_nlbound(args, cfg):
    b = family.nl_bound(args.n, args.r, args.s, args.d, args.e, args.cS)
    text = f"codim bound {b.value}" + ("  (vacuous)" if b.vacuous else "")
    return EXIT_OK, b.summary(), text


def _do_sigma(args, cfg):
    rep = family.sigma_component_codim(args.d)
    text = f"d = {rep.d}: codim {rep.codim_in_S} (= d + 1); component codim {rep.sigma_codim} (= d - 2)"
    return EXIT_OK, rep.summary(), text


def _do_smoothcheck(args, cfg):
    rep = duality.smoothness_diagnostic(cfg)
    code = EXIT_OK if rep.ok else EXIT_SINGULAR
    text = (f"trace dim {rep.trace_dim}, above socle {rep.above_socle_dim}, "
            f"Hodge symmetry {rep.hodge_symmetric}: {'ok' if rep.ok else 'FAILED'}")
    return code, rep.summary(), text


_HANDLERS = {
    "dim": _do_dim,
    "hodge": _do_hodge,
    "trace": _do_trace,
    "pairing": _do_pairing,
    "eta": _do_eta,
    "koszul": _do_koszul,
    "nabla": _do_nabla,
    "nlbound": _do_nlbound,
    "sigma": _do_sigma,
    "smoothcheck": _do_smoothcheck,
}


def run(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    cfg = None
    try:
        if hasattr(args, "config"):
            cfg = parse_config(args.config)
        code, result, text = _HANDLERS[args.command](args, cfg)
    except duality.SmoothnessError as exc:
        err.write(f"ocijac: smoothness diagnostic failed: {exc}\n")
        return EXIT_SINGULAR
    except (ConfigFileError, ConfigurationError, OSError, ValueError) as exc:
        err.write(f"ocijac: error: {exc}\n")
        return EXIT_USAGE
    _emit(args, cfg, result, text, out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
