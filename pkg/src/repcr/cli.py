"""Command-line client: runs in-process, or against a running service with --server."""

from __future__ import annotations

import argparse
import json
import sys

from . import service, suites
from .jantzen import UndeterminedError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="repcr", description="Complete reducibility of tensor products in characteristic p.")
    ap.add_argument("--server", help="base URL of a running repcr service (default: in-process)")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def typed(sp):
        sp.add_argument("type_pos", nargs="?", metavar="TYPE", help="root system, e.g. G2")
        sp.add_argument("--type", dest="type_opt", metavar="TYPE")
        sp.add_argument("--json", action="store_true", help="print JSON")

    c = sub.add_parser("char", help="Weyl or simple character of a weight")
    typed(c)
    c.add_argument("--p", type=int)
    c.add_argument("--weight", required=True)
    mode = c.add_mutually_exclusive_group()
    mode.add_argument("--weyl", dest="mode", action="store_const", const="weyl")
    mode.add_argument("--simple", dest="mode", action="store_const", const="simple")
    c.set_defaults(mode="weyl")

    r = sub.add_parser("cr", help="decide complete reducibility of L(lambda) (x) L(mu)")
    typed(r)
    r.add_argument("--p", type=int, required=True)
    r.add_argument("--lambda", dest="lam", required=True)
    r.add_argument("--mu", required=True)
    r.add_argument("--oracle", action="store_true", help="also run the explicit-module check")
    r.add_argument("--dim-cap", type=int, default=400)
    r.add_argument("--jobs", type=int, default=1)

    j = sub.add_parser("jantzen", help="composition factors of a Weyl module")
    typed(j)
    j.add_argument("--p", type=int, required=True)
    j.add_argument("--weight", required=True)

    rp = sub.add_parser("reproduce", help="run a reproduction suite")
    rp.add_argument("suite", choices=suites.suite_names())
    rp.add_argument("--jobs", type=int, default=1)
    rp.add_argument("--dry-run", action="store_true")
    rp.add_argument("--json", action="store_true")
    return ap


def _type(args) -> str:
    t = args.type_opt or args.type_pos
    if not t:
        raise service.UsageError("a root system type is required (positional or --type)")
    return t


def _remote(server: str, path: str, body: dict) -> dict:
    import httpx

    resp = httpx.post(server.rstrip("/") + path, json=body, timeout=None)
    if resp.status_code == 422:
        raise service.UsageError(resp.json().get("detail", resp.text))
    if resp.status_code == 409:
        raise UndeterminedError(None, resp.json().get("detail", resp.text))
    resp.raise_for_status()
    return resp.json()


def _call(args, path: str, req, local) -> dict:
    if args.server:
        return _remote(args.server, path, req.model_dump(by_alias=True))
    return local(req)


def _print_char(out: dict) -> None:
    print(f"{out['type']} {out['mode']} character of {out['weight']}" + (f" at p={out['p']}" if out["p"] else ""))
    print(f"dim {out['dim']}")
    for w, m in out["dominant"]:
        print(f"  {w:>16}  {m}")


def _print_cr(out: dict) -> None:
    cert = out["certificate"]
    print(f"{out['type']} p={out['p']}: L({out.get('lambda')}) (x) L({out.get('mu')}) -> {out['verdict']}")
    print(f"certificate: {cert['rule']}" + (f" {json.dumps(cert['witness'], ensure_ascii=False)}" if cert["witness"] is not None else ""))
    if out.get("summands"):
        print("summands: " + " + ".join(f"{m}L({w})" if m > 1 else f"L({w})" for w, m in out["summands"]))
    if "oracle" in out:
        print(f"oracle: {out['oracle']} (agree: {out['agree']})")


def _print_report(out: dict) -> None:
    if "pass" not in out:
        for c in out["checks"]:
            print(f"{c['id']}  [{c['provenance']}]  expect {json.dumps(c['expected'], ensure_ascii=False)}")
        print(f"{len(out['checks'])} checks")
        return
    for c in out["checks"]:
        flag = "PASS" if c["pass"] else "FAIL"
        line = f"{flag}  {c['id']}  [{c['provenance']}]"
        if not c["pass"]:
            line += f"  expected {json.dumps(c['expected'], ensure_ascii=False)} got {json.dumps(c['actual'], ensure_ascii=False)}"
            if c["error"]:
                line += f"  ({c['error']})"
        print(line)
    n_ok = sum(c["pass"] for c in out["checks"])
    print(f"suite {out['suite']}: {n_ok}/{len(out['checks'])} passed in {out['wall_time']:.2f}s")
    print("rules fired: " + ", ".join(f"{k}={v}" for k, v in out["rule_counts"].items()))


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "char":
            req = service.CharRequest(type=_type(args), weight=args.weight, mode=args.mode, p=args.p)
            out = _call(args, "/char", req, service.char_payload)
            printer, status = _print_char, EXIT_OK
        elif args.command == "cr":
            req = service.CRRequest(type=_type(args), p=args.p, lam=args.lam, mu=args.mu,
                                    oracle=args.oracle, dim_cap=args.dim_cap, jobs=args.jobs)
            out = _call(args, "/cr", req, service.cr_payload)
            printer, status = _print_cr, EXIT_OK
        elif args.command == "jantzen":
            req = service.JantzenRequest(type=_type(args), weight=args.weight, p=args.p)
            out = _call(args, "/jantzen", req, service.jantzen_payload)
            printer = lambda o: print("\n".join(f"[{w}] {m}" for w, m in o["factors"]))  # noqa: E731
            status = EXIT_OK
        else:
            req = service.ReproduceRequest(jobs=args.jobs, dry_run=args.dry_run)
            if args.server:
                out = _remote(args.server, f"/reproduce/{args.suite}", req.model_dump())
            else:
                out = service.reproduce_payload(args.suite, req)
            printer = _print_report
            status = EXIT_OK if out.get("pass", True) else EXIT_FAIL
    except service.UsageError as exc:
        print(f"repcr: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UndeterminedError as exc:
        print(f"repcr: undetermined: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        print(f"repcr: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if getattr(args, "json", False):
        print(json.dumps(out, indent=2, ensure_ascii=False))
    else:
        printer(out)
    return status


if __name__ == "__main__":
    sys.exit(main())
