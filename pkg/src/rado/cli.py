"""Command-line entry point ``rado``.

Exit status: 0 success, 1 domain failure (no witness, failed check with
``--strict``), 2 usage or invalid input, 3 size bound exceeded.
Randomised subcommands print ``seed = S`` on stderr; passing that seed back
reproduces the output byte for byte.  ``--jsonl`` switches reports to one
JSON record per line.
"""

from __future__ import annotations

import argparse
import json
import secrets
import sys
from fractions import Fraction
from pathlib import Path

from rado import ample, core, rado_arith, rado_grow, randomness, serialize
from rado.core import label_text
from rado.errors import RadoError, SizeLimitError, ValidationError

EXIT_DOMAIN, EXIT_USAGE, EXIT_SIZE = 1, 2, 3


class _Failure(Exception):
    """Domain failure that has already been reported."""


def _labels(text: str) -> list:
    """Parse ``1,2,5-8`` into a sorted list of labels."""
    out = set()
    for part in filter(None, (p.strip() for p in text.split(","))):
        if "-" in part:
            a, b = part.split("-", 1)
            lo, hi = int(a), int(b)
            if lo < 1 or hi < lo:
                raise ValidationError(f"bad label range {part!r}")
            out.update(range(lo, hi + 1))
        else:
            v = int(part)
            if v < 1:
                raise ValidationError(f"bad label {part!r}")
            out.add(v)
    return sorted(out)


def _simplex_list(text: str) -> list:
    """Parse ``1-2-3,4`` (dash-joined vertices, comma-separated simplexes)."""
    return [core.make_simplex(int(a) for a in part.split("-")) for part in text.split(",") if part.strip()]


def _read_text(src: str) -> str:
    if src == "-":
        return sys.stdin.read()
    return Path(src).read_text()


def _complex_arg(src: str) -> core.Complex:
    """A complex given as a file path, ``-`` for stdin, or inline JSON.

    Hand-written input may omit the ``format`` and ``vertices`` keys.
    """
    text = src if src.lstrip().startswith("{") else _read_text(src)
    return serialize.loads(text, strict=False)


def _emit_complex(X, out: str | None) -> None:
    text = serialize.dumps(X)
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _seed(args) -> int:
    seed = args.seed if args.seed is not None else secrets.randbits(63)
    print(f"seed = {seed}", file=sys.stderr)
    return seed


def _system(args) -> randomness.ProbabilitySystem:
    exact = getattr(args, "exact", False)
    if getattr(args, "probs", None):
        return randomness.ProbabilitySystem.from_spec(json.loads(_read_text(args.probs)), exact=exact)
    p = args.p if args.p is not None else "0.5"
    value = Fraction(p) if exact else float(p)
    return randomness.ProbabilitySystem.constant(value)


def _record(args, text: str, **fields) -> None:
    if args.jsonl:
        print(json.dumps(fields, separators=(",", ":"), default=str))
    else:
        print(text)


def _num(x) -> str:
    return str(x) if isinstance(x, Fraction) else repr(x)


# subcommands ----------------------------------------------------------------


def cmd_build_explicit(args):
    _emit_complex(rado_arith.window(_labels(args.vertices), max_vertices=args.max_vertices), args.output)


def cmd_build_inductive(args):
    rec = rado_grow.grow(args.levels, args.base_bound)
    _emit_complex(rec.top, args.output)
    if args.emit_witness_table:
        rows = [
            {"level": n, "base": [[label_text(a) for a in f] for f in fs], "apex": label_text(v)}
            for n, fs, v in rec.witness_table()
        ]
        Path(args.emit_witness_table).write_text(
            "".join(json.dumps(r, separators=(",", ":")) + "\n" for r in rows)
        )


def cmd_sample(args):
    seed = _seed(args)
    X = randomness.sample_complex(args.n, _system(args), seed, max_size=args.max_size)
    _emit_complex(X, args.output)


def cmd_induce(args):
    seed = _seed(args)
    X = _complex_arg(args.input)
    _emit_complex(randomness.sample_induced(X, float(args.vertex_p), seed), args.output)


def cmd_witness(args):
    U = _labels(args.U)
    A = _complex_arg(args.A)
    if args.explicit:
        v = rado_arith.witness(U, A)
    else:
        if not args.input:
            raise ValidationError("scan mode needs -i FILE")
        X = _complex_arg(args.input)
        cands = _labels(args.candidates) if args.candidates else None
        v = ample.find_witness(X, ample.WitnessQuery(U, A), cands)
        if v is None:
            _record(args, "no witness", witness=None)
            raise _Failure
    _record(args, label_text(v), witness=label_text(v))


def _check(args, d):
    X = _complex_arg(args.input)
    umax = _labels(args.umax) if args.umax else sorted(X.vertices)
    rep = ample.is_ample_window(X, umax, args.cap, d=d)
    for U, A in rep.failures:
        u_txt = [label_text(u) for u in sorted(U)]
        a_txt = [[label_text(a) for a in f] for f in sorted(core.facets(A))]
        _record(args, f"FAIL U={u_txt} A={a_txt}".replace("'", ""), status="fail", U=u_txt, A=a_txt)
    verdict = "pass" if rep.passed else "fail"
    _record(
        args,
        f"{verdict}: {rep.queries} queries, {len(rep.failures)} failures, candidate pool {rep.candidate_pool}",
        status=verdict,
        queries=rep.queries,
        failures=len(rep.failures),
        candidate_pool=rep.candidate_pool,
        cap=args.cap,
        d=d,
    )
    if args.strict and not rep.passed:
        raise _Failure


def cmd_check_ample(args):
    _check(args, args.d)


def cmd_check_d_ample(args):
    _check(args, args.d)


def _pairs(text: str | None) -> ample.PartialIsomorphism:
    if not text:
        return ample.PartialIsomorphism()
    pairs = []
    for part in text.split(","):
        a, b = part.split(":")
        pairs.append((int(a), int(b)))
    return ample.PartialIsomorphism(tuple(pairs))


def cmd_extend_iso(args):
    X, Y = _complex_arg(args.a), _complex_arg(args.b)
    seed_iso = _pairs(args.seed_pairs)
    if not seed_iso.is_valid(X, Y):
        raise ValidationError("seed pairs do not form a partial isomorphism")
    res = ample.back_and_forth(X, Y, seed_iso, args.steps)
    pairs = [[label_text(a), label_text(b)] for a, b in res.iso.pairs]
    text = " ".join(f"{a}:{b}" for a, b in pairs)
    if res.failed_step is not None:
        text += f"\nfailed at step {res.failed_step}"
    _record(args, text, pairs=pairs, steps_done=res.steps_done, failed_step=res.failed_step, exhausted=res.exhausted)
    if res.failed_step is not None and args.strict:
        raise _Failure


def cmd_embed(args):
    X, L = _complex_arg(args.input), _complex_arg(args.L)
    phi = ample.embed_complex(X, L)
    if phi is None:
        _record(args, "no embedding", embedding=None)
        raise _Failure
    pairs = [[label_text(a), label_text(b)] for a, b in phi.pairs]
    _record(args, " ".join(f"{a}:{b}" for a, b in pairs), embedding=pairs)


def cmd_measure(args):
    P = _system(args)
    if args.cylinder:
        if args.n is None:
            raise ValidationError("--cylinder needs -n")
        value = randomness.cylinder_measure(randomness.CylinderSet(_complex_arg(args.cylinder), args.n), P)
        kind = "cylinder"
    elif args.induced:
        if not args.U:
            raise ValidationError("--induced needs -U")
        value = randomness.induced_measure(_labels(args.U), _complex_arg(args.induced), P)
        kind = "induced"
    elif args.subcomplex:
        if not args.ambient:
            raise ValidationError("--subcomplex needs --ambient")
        value = randomness.p_of_subcomplex(_complex_arg(args.subcomplex), _complex_arg(args.ambient), P)
        kind = "p-of-subcomplex"
    else:
        if not args.ambient or args.apex is None:
            raise ValidationError("--extension needs --ambient and --apex")
        value = randomness.extension_probability(_complex_arg(args.ambient), _complex_arg(args.extension), args.apex, P)
        kind = "extension"
    _record(args, _num(value), measure=kind, value=_num(value), exact=isinstance(value, Fraction))


def cmd_verify_lemma21(args):
    L = _complex_arg(args.input)
    P = _system(args)
    if args.bruteforce:
        total, marg = randomness.lemma21_bruteforce(L, P)
        worst = max(abs(w - randomness.p_of_subcomplex(A, L, P)) for A, w in marg.items())
    else:
        total, worst = randomness.lemma21_sum(L, P), None
    mode = "exact" if isinstance(total, Fraction) else "float"
    text = f"sum = {total} ({mode})"
    if worst is not None:
        text += f"; max marginal deviation {_num(worst)}"
    _record(args, text, sum=_num(total), mode=mode, max_marginal_deviation=None if worst is None else _num(worst))
    ok = total == 1 if mode == "exact" else abs(total - 1) <= 1e-9
    if not ok:
        raise _Failure


def cmd_delete(args):
    X = _complex_arg(args.input)
    _emit_complex(core.delete_star(X, _simplex_list(args.simplexes)), args.output)


def cmd_link(args):
    X = _complex_arg(args.input)
    _emit_complex(core.link(X, core.make_simplex(_labels(args.simplex))), args.output)


def cmd_stats(args):
    X = _complex_arg(args.input)
    fv = X.f_vector()
    _record(
        args,
        f"{len(X.vertices)} vertices, {len(X)} simplexes\nby size: {' '.join(map(str, fv))}",
        vertices=len(X.vertices),
        simplexes=len(X),
        f_vector=fv,
        dim=X.dim,
    )


# parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--jsonl", action="store_true", help="emit line-delimited JSON records")

    parser = argparse.ArgumentParser(prog="rado", description="Rado simplicial complex toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_, description=help_)
        p.set_defaults(func=func)
        return p

    def probs(p, exact_flag=True):
        p.add_argument("--p", help="constant probability for every simplex (default 0.5)")
        p.add_argument("--probs", metavar="FILE", help="probability-spec JSON file")
        if exact_flag:
            p.add_argument("--exact", action="store_true", help="exact rational arithmetic")

    p = add("build-explicit", cmd_build_explicit, "arithmetic complex induced on the given labels")
    p.add_argument("--vertices", required=True, help="labels, e.g. 1,2,5-9")
    p.add_argument("--max-vertices", type=int, default=20)
    p.add_argument("-o", "--output")

    p = add("build-inductive", cmd_build_inductive, "inductive cone-attachment construction")
    p.add_argument("--levels", type=int, required=True)
    p.add_argument("--base-bound", type=int)
    p.add_argument("-o", "--output")
    p.add_argument("--emit-witness-table", metavar="FILE")

    p = add("sample", cmd_sample, "sample a random complex on 1..n")
    p.add_argument("-n", type=int, required=True)
    probs(p, exact_flag=False)
    p.add_argument("--seed", type=int)
    p.add_argument("--max-size", type=int, help="keep simplexes with at most this many vertices")
    p.add_argument("-o", "--output")

    p = add("induce", cmd_induce, "restrict to a Bernoulli-selected vertex set")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--vertex-p", default="0.5")
    p.add_argument("--seed", type=int)
    p.add_argument("-o", "--output")

    p = add("witness", cmd_witness, "witness vertex for (U, A): closed form or scan")
    p.add_argument("--explicit", action="store_true", help="use the arithmetic closed form")
    p.add_argument("-i", "--input", help="complex to scan (scan mode)")
    p.add_argument("-U", required=True)
    p.add_argument("-A", required=True, help="base complex: file, '-' or inline JSON")
    p.add_argument("--candidates")

    for name, func, need_d in (
        ("check-ample", cmd_check_ample, False),
        ("check-d-ample", cmd_check_d_ample, True),
    ):
        p = add(name, func, "window ampleness report" + (" (d-ample variant)" if need_d else ""))
        p.add_argument("-i", "--input", required=True)
        p.add_argument("--umax", help="labels U may be drawn from (default: all vertices)")
        p.add_argument("--cap", type=int, default=3)
        p.add_argument("--d", type=int, required=need_d)
        p.add_argument("--strict", action="store_true", help="exit 1 when a query fails")

    p = add("extend-iso", cmd_extend_iso, "back-and-forth extension of a partial isomorphism")
    p.add_argument("-a", required=True)
    p.add_argument("-b", required=True)
    p.add_argument("--steps", type=int, default=10)
    p.add_argument("--seed-pairs", help="e.g. 1:4,2:7")
    p.add_argument("--strict", action="store_true")

    p = add("embed", cmd_embed, "embed L into X as an induced subcomplex")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-L", required=True)

    p = add("measure", cmd_measure, "measure formulas")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--cylinder", metavar="Y")
    g.add_argument("--induced", metavar="L")
    g.add_argument("--subcomplex", metavar="A")
    g.add_argument("--extension", metavar="A")
    p.add_argument("-n", type=int)
    p.add_argument("-U")
    p.add_argument("--ambient", metavar="L")
    p.add_argument("--apex", type=int)
    probs(p)

    p = add("verify-lemma21", cmd_verify_lemma21, "check that subcomplex weights sum to one")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--bruteforce", action="store_true")
    probs(p)

    p = add("delete", cmd_delete, "delete the stars of the given simplexes")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--simplexes", required=True, help="e.g. 1-2,5")
    p.add_argument("-o", "--output")

    p = add("link", cmd_link, "link of a simplex")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--simplex", required=True, help="e.g. 1,2")
    p.add_argument("-o", "--output")

    p = add("stats", cmd_stats, "vertex and simplex counts")
    p.add_argument("-i", "--input", default="-")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except _Failure:
        return EXIT_DOMAIN
    except SizeLimitError as exc:
        print(f"rado: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except (ValidationError, OSError) as exc:
        print(f"rado: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RadoError as exc:
        print(f"rado: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        print(f"rado: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return 0


if __name__ == "__main__":
    sys.exit(main())
