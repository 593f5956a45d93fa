"""Command-line interface.

    tetralattice verify --suite all --seed 1 --json report.json
    tetralattice compute vev --word "X(n=3,i=2,z=z1) X(n=3,i=1,z=z2)"
    tetralattice compute schur --shape 2,1 --vars 3
    tetralattice tasep --species 3 --sites 5 --sector 2,1,1,1 --config 3,0,0,2,1

Exit codes: 0 success, 1 identity failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .. import schubert as sch
from .. import tasep
from ..errors import TetraError
from ..fock import GENERIC, MODELS, Q0
from ..pfunc import TraceWeights, auto_cutoff, parse_word, plain_trace, vacuum_expectation, weighted_trace
from ..symfun import kostka, schur_bialternant
from .registry import REGISTRY, run_suite, select

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _ints(text: str):
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _emit(obj, path=None):
    text = json.dumps(obj, indent=2, sort_keys=True)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# ---- commands ---------------------------------------------------------------
def cmd_verify(args):
    try:
        select(args.suite)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    report = run_suite(args.suite, args.seed, args.timing)
    if args.json:
        _emit(report, args.json)
    for e in report["entries"]:
        print(f"{e['status']:<14} {e['name']:<16} {e['n_cases']:>5} cases  {e['n_failed']} failed")
    c = report["counts"]
    print(f"{c['pass']} pass, {c['evidence-only']} evidence-only, {c['fail']} fail")
    return EXIT_OK if report["ok"] else EXIT_FAIL


def cmd_list(args):
    for name in sorted(REGISTRY):
        chk = REGISTRY[name]
        print(f"{name:<16} [{', '.join(sorted(chk.tags))}] {chk.summary}")
    return EXIT_OK


def _word(args):
    if args.model not in MODELS:
        raise UsageError(f"model must be one of {MODELS}")
    return parse_word(args.word, args.model)


def cmd_vev(args):
    word = _word(args)
    value = vacuum_expectation(word)
    _emit({"word": str(word), "model": word.model, "value": str(value), "cutoff": auto_cutoff(word),
           "stabilized_at": None}, args.json)
    return EXIT_OK


def cmd_trace(args):
    word = _word(args)
    res = plain_trace(word, args.m_start, args.m_max, with_meta=True)
    _emit({"word": str(word), "model": word.model, "value": str(res.value), "cutoff": res.history[-1][0],
           "stabilized_at": res.stabilized_at}, args.json)
    return EXIT_OK


def cmd_wtrace(args):
    args.model = GENERIC
    word = _word(args)
    weights = TraceWeights(tuple(f"t{k}" for k in range(1, word.n_lines + 1)),
                           tuple(f"Q{k}" for k in range(1, word.n_lines + 1)), args.kind)
    if args.rank is not None:
        weights = TraceWeights.for_rank(args.rank, args.kind)
    value = weighted_trace(word, weights, args.cap)
    _emit({"word": str(word), "model": word.model, "kind": args.kind, "value": str(value), "cutoff": args.cap,
           "stabilized_at": None}, args.json)
    return EXIT_OK


def cmd_schur(args):
    shape = _ints(args.shape)
    names = [f"{args.base}{k}" for k in range(1, args.vars + 1)]
    _emit({"shape": list(shape), "vars": names, "value": str(schur_bialternant(shape, names))}, args.json)
    return EXIT_OK


def cmd_schubert(args):
    w = _ints(args.perm)
    value = sch.schubert_poly(w, modified=args.modified)
    _emit({"perm": list(w), "modified": args.modified, "value": str(value)}, args.json)
    return EXIT_OK


def cmd_kostka(args):
    _emit({"shape": list(_ints(args.shape)), "content": list(_ints(args.content)),
           "value": kostka(_ints(args.shape), _ints(args.content))}, args.json)
    return EXIT_OK


def _closed_indices(n, sizes, config):
    for j in range(n + 1):
        for k in range(j, n + 1):
            if tasep.closed_form_config(n, j, k, sizes) == config:
                return j, k
    raise UsageError(f"{tasep.format_config(config)} is not covered by the closed form")


def cmd_tasep(args):
    sector = tasep.TasepSector(_ints(args.sector))
    if sector.species != args.species or sector.sites != args.sites:
        raise UsageError("--sector must list species 0..n with multiplicities adding up to --sites")
    configs = [tasep.parse_config(args.config)] if args.config else None
    if configs and not sector.contains(configs[0]):
        raise UsageError("--config is not in the sector")
    if args.method == "kernel":
        vec = tasep.steady_state(sector)
        if args.csv:
            with open(args.csv, "w", encoding="utf-8") as fh:
                fh.write(tasep.export_csv(vec))
        rows = [(c, vec[c]) for c in (configs or sorted(vec))]
    elif args.method == "trace":
        if configs is None:
            configs = sector.configs()
        rows = [(c, tasep.steady_state_trace(c, args.species)) for c in configs]
    else:
        if configs is None:
            raise UsageError("--method closed needs --config")
        j, k = _closed_indices(args.species, sector.m, configs[0])
        rows = [(configs[0], tasep.steady_closed_form(args.species, j, k, sector.m))]
    out = [{"config": tasep.format_config(c), "value": str(v), "method": args.method} for c, v in rows]
    _emit(out[0] if args.config else out, args.json)
    return EXIT_OK


# ---- parser ---------------------------------------------------------------------
class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser():
    p = _Parser(prog="tetralattice", description="Exact tetrahedral lattice partition functions.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="run registry checks")
    v.add_argument("--suite", default="all", help="all, q0-only, schubert-suite, a tag, or a check name")
    v.add_argument("--seed", type=int, default=1)
    v.add_argument("--json", help="write the full report here")
    v.add_argument("--timing", action="store_true", help="add runtimes (reports are then not byte-stable)")
    v.set_defaults(fn=cmd_verify)

    sub.add_parser("list", help="list registry checks").set_defaults(fn=cmd_list)

    c = sub.add_parser("compute", help="evaluate one quantity")
    csub = c.add_subparsers(dest="what", required=True, parser_class=_Parser)

    def word_cmd(name, fn, helptext):
        s = csub.add_parser(name, help=helptext)
        s.add_argument("--word", required=True, help='e.g. "X(n=3,i=2,z=z1) X(n=3,i=1,z=z2)"')
        s.add_argument("--model", default=Q0, choices=MODELS)
        s.add_argument("--json")
        s.set_defaults(fn=fn)
        return s

    word_cmd("vev", cmd_vev, "vacuum expectation value")
    t = word_cmd("trace", cmd_trace, "plain trace (q0 model)")
    t.add_argument("--m-start", type=int, default=1)
    t.add_argument("--m-max", type=int, default=12)
    w = word_cmd("wtrace", cmd_wtrace, "weighted trace (generic model)")
    w.add_argument("--kind", choices=("A", "B"), default="A")
    w.add_argument("--cap", type=int, default=4)
    w.add_argument("--rank", type=int, help="name weights t{k}{l}, Q{k}{l} after the sites of D_rank")

    s = csub.add_parser("schur", help="Schur polynomial")
    s.add_argument("--shape", required=True)
    s.add_argument("--vars", type=int, required=True)
    s.add_argument("--base", default="z")
    s.add_argument("--json")
    s.set_defaults(fn=cmd_schur)

    s = csub.add_parser("schubert", help="Schubert polynomial")
    s.add_argument("--perm", required=True)
    s.add_argument("--modified", action="store_true")
    s.add_argument("--json")
    s.set_defaults(fn=cmd_schubert)

    s = csub.add_parser("kostka", help="Kostka number")
    s.add_argument("--shape", required=True)
    s.add_argument("--content", required=True)
    s.add_argument("--json")
    s.set_defaults(fn=cmd_kostka)

    ts = sub.add_parser("tasep", help="TASEP steady state")
    ts.add_argument("--species", type=int, required=True)
    ts.add_argument("--sites", type=int, required=True)
    ts.add_argument("--sector", required=True, help="multiplicities m_0,...,m_n")
    ts.add_argument("--method", choices=("kernel", "trace", "closed"), default="kernel")
    ts.add_argument("--config")
    ts.add_argument("--csv", help="write the kernel vector as CSV")
    ts.add_argument("--json")
    ts.set_defaults(fn=cmd_tasep)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"tetralattice: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TetraError as exc:
        print(f"tetralattice: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
