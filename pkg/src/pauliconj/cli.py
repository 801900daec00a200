"""Command-line front end.

Subcommands: ``stats`` (gate accounting), ``conjugate`` (full Pauli expansion
of C P^x C-dagger), ``encode``/``decode`` (circuit <-> presentation),
``decide enic|commute|support``, ``reduce support-to-enic|binary-weight|
code-embed``, ``code wt|distribution``, and ``verify`` (engine-vs-dense
cross-checks).

Exit codes: 0 success, 1 decision-false (``decide`` with ``--exit-status``,
or any failed ``verify`` check), 2 malformed input or invocation, 3 budget
exceeded.  Pauli term listings are sorted lexicographically on the z|x
bitstring, so output is byte-stable.  Anything written through ``-o``
re-parses to an equal object; trailing certificates ride in ``#`` comments
for the same reason.
"""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

from .circuit import Circuit, CircuitError, dagger, parse_circuit, serialize_circuit, t_count, t_depth
from .codes import (
    CodeBoundError,
    parse_code,
    split_one_remainder,
    weight_distribution,
    wt_eval,
)
from .decide import DecisionError, decide_commute, decide_enic, decide_support
from .exact import ExactScalar, RealRoot2
from .f2 import SymplecticVec
from .oracle import dense, pauli_expansion, pauli_unitary
from .pauli import PhasedPauli, format_pauli, parse_pauli, pauli_sort_key
from .present import (
    DEFAULT_BUDGET,
    BudgetError,
    PresentationError,
    encode,
    decode,
    expansion,
    parse_presentation,
    serialize_presentation,
)
from .reduce import (
    ReductionCertificate,
    ReductionError,
    binary_weight_to_circuit,
    code_readout_value,
    code_to_presentation,
    serialize_certificate,
    support_to_enic,
)

__all__ = ["main"]

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

_SHORTHAND = re.compile(r"^([IXYZ])([0-9]+)$")


class _UsageError(ValueError):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc}") from exc


def _pauli_arg(text: str, n: int) -> SymplecticVec:
    """Accept 'Z3' shorthand, letter strings, or z|x bitstrings; width n."""
    m = _SHORTHAND.match(text.strip().upper())
    if m:
        letter, wire = m.group(1), int(m.group(2))
        if not 1 <= wire <= n:
            raise _UsageError(f"wire {wire} outside 1..{n}")
        v, sign = parse_pauli("I" * (wire - 1) + letter + "I" * (n - wire))
    else:
        v, sign = parse_pauli(text)
    if sign:
        raise _UsageError("signed Pauli arguments are not accepted")
    if v.n != n:
        raise _UsageError(f"Pauli width {v.n} != circuit width {n}")
    return v


def _scalar_str(s: ExactScalar) -> str:
    if s.is_zero():
        return "0"
    if s.c1 == 0 and s.c2 == 0 and s.c3 == 0:
        if s.k == 0:
            return str(s.c0)
        if s.k == 1:
            return f"{s.c0}/sqrt2"
        return f"{s.c0}/sqrt2^{s.k}"
    return repr(s)


def _letters(v: SymplecticVec) -> str:
    return format_pauli(v, 0)[1:]


def _emit(text: str, out: str | None, reparse) -> None:
    """Write an artifact, first insisting it survives its own parser."""
    if reparse is not None:
        reparse(text)
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _print_certificate(cert: ReductionCertificate, inline: bool) -> None:
    body = serialize_certificate(cert)
    prefix = "# " if inline else ""
    for line in body.splitlines():
        print(prefix + line)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_stats(args: argparse.Namespace) -> int:
    c = parse_circuit(_read(args.circuit))
    print(f"wires {c.n}")
    print(f"gates {len(c.gates)}")
    print(f"t-count {t_count(c)}")
    print(f"t-depth {t_depth(c)}")
    return EXIT_OK


def _cmd_conjugate(args: argparse.Namespace) -> int:
    c = parse_circuit(_read(args.circuit))
    x = _pauli_arg(args.pauli, c.n)
    amps = expansion(encode(c, x), args.max_chains)
    for y in sorted(amps, key=pauli_sort_key):
        print(f"{_letters(y)} {_scalar_str(amps[y])}")
    return EXIT_OK


def _cmd_encode(args: argparse.Namespace) -> int:
    c = parse_circuit(_read(args.circuit))
    x = _pauli_arg(args.pauli, c.n)
    lam = encode(c, x)
    text = serialize_presentation(lam)
    _emit(text, args.output, parse_presentation)
    return EXIT_OK


def _cmd_decode(args: argparse.Namespace) -> int:
    lam = parse_presentation(_read(args.presentation))
    y0, _ = lam.outer
    if args.pauli is not None:
        z = _pauli_arg(args.pauli, lam.n)
    elif y0.z | y0.x:
        z = SymplecticVec.e_z(1, lam.n)
    else:
        z = SymplecticVec(0, 0, lam.n)
    c = decode(lam, z)
    _emit(serialize_circuit(c), args.output, parse_circuit)
    return EXIT_OK


def _cmd_decide(args: argparse.Namespace) -> int:
    c = parse_circuit(_read(args.circuit))
    if args.question == "enic":
        if args.pauli is not None:
            raise _UsageError("enic takes no Pauli argument")
        res = decide_enic(c, budget=args.max_chains)
    else:
        if args.pauli is None:
            raise _UsageError(f"{args.question} needs --pauli")
        x = _pauli_arg(args.pauli, c.n)
        fn = decide_commute if args.question == "commute" else decide_support
        res = fn(c, x, budget=args.max_chains)
    print("instance" if res.answer else "no-instance")
    print(f"method {res.method}")
    if res.answer or not args.exit_status:
        return EXIT_OK
    return EXIT_FALSE


def _cmd_reduce(args: argparse.Namespace) -> int:
    if args.kind == "support-to-enic":
        c = parse_circuit(_read(args.source))
        z = _pauli_arg(args.pauli, c.n) if args.pauli else SymplecticVec.e_z(1, c.n)
        f = support_to_enic(c, z)
        cert = ReductionCertificate(
            source=f"support instance on {c.n} wires, target {_letters(z)}",
            target=f,
            relation="support-to-enic",
            claims=(
                f"input t-depth {t_depth(c)}",
                f"output t-depth {t_depth(f)} on {f.n} wires",
            ),
            notes="<P^z, C P^z C^dag> is nonzero iff F conjugates some Pauli nontrivially",
        )
        _emit(serialize_circuit(f), args.output, parse_circuit)
        _print_certificate(cert, inline=args.output is None)
        return EXIT_OK
    g = split_one_remainder(parse_code(_read(args.source)).generator)
    if args.kind == "binary-weight":
        if args.t is None:
            raise _UsageError("binary-weight needs --t")
        f, cert = binary_weight_to_circuit(g, args.t)
        _emit(serialize_circuit(f), args.output, parse_circuit)
        _print_certificate(cert, inline=args.output is None)
        return EXIT_OK
    lam = code_to_presentation(g)
    cert = ReductionCertificate(
        source=f"one-remainder generator k={g.k} r={g.r} s={g.s} length={g.length}",
        target=lam,
        relation="code-embedding",
        claims=(f"readout value {code_readout_value(g)!r}",),
        notes="coefficient at all-X equals wt_V(1/sqrt2) / (2^(n/2) sqrt|V|)",
    )
    _emit(serialize_presentation(lam), args.output, parse_presentation)
    _print_certificate(cert, inline=args.output is None)
    return EXIT_OK


def _cmd_code(args: argparse.Namespace) -> int:
    code = parse_code(_read(args.code))
    if args.stat == "wt":
        val = wt_eval(code, RealRoot2(0, 1, 1))
        print(f"wt(1/sqrt2) = {val!r}")
        return EXIT_OK
    for t, count in enumerate(weight_distribution(code)):
        print(f"{t} {count}")
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    c = parse_circuit(_read(args.circuit))
    if c.n > args.max_qubits_oracle:
        print(
            f"verify needs a dense oracle; {c.n} wires exceeds "
            f"--max-qubits-oracle {args.max_qubits_oracle}",
            file=sys.stderr,
        )
        return EXIT_BUDGET
    failures = 0

    def check(ok: bool, what: str) -> None:
        nonlocal failures
        print(("ok " if ok else "FAIL ") + what)
        failures += 0 if ok else 1

    check(parse_circuit(serialize_circuit(c)) == c, "serialization round-trip")
    u = dense(c)
    ident = {SymplecticVec(0, 0, c.n): ExactScalar.ONE}
    check(
        pauli_expansion(u.matmul(dense(dagger(c)))) == ident,
        "dagger inverts the unitary [oracle]",
    )
    gens = [SymplecticVec.e_z(j, c.n) for j in range(1, c.n + 1)]
    gens += [SymplecticVec.e_x(j, c.n) for j in range(1, c.n + 1)]
    for x in gens:
        conj = u.matmul(pauli_unitary(PhasedPauli(0, x))).matmul(u.dagger())
        want = pauli_expansion(conj)
        got = expansion(encode(c, x), args.max_chains)
        check(got == want, f"expansion of conjugated {_letters(x)} [oracle]")
        total = RealRoot2.ZERO
        for amp in got.values():
            total = total + amp.abs_squared()
        check(total == RealRoot2.ONE, f"unit norm for conjugated {_letters(x)}")
    return EXIT_OK if failures == 0 else EXIT_FALSE


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="pauliconj",
        description="Exact Pauli conjugation toolkit for Clifford+T circuits",
    )
    top.add_argument(
        "--max-chains",
        type=int,
        default=DEFAULT_BUDGET,
        help="support-chain enumeration budget (default 2^22)",
    )
    top.add_argument(
        "--max-qubits-oracle",
        type=int,
        default=6,
        help="widest circuit the dense oracle will accept",
    )
    sub = top.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("stats", help="wire, gate, T-count and T-depth summary")
    p.add_argument("circuit")
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("conjugate", help="Pauli expansion of C P^x C-dagger")
    p.add_argument("circuit")
    p.add_argument("--pauli", required=True, help="x, e.g. Z1, XYI, or 010|001")
    p.set_defaults(func=_cmd_conjugate)

    p = sub.add_parser("encode", help="circuit + Pauli -> depth-d presentation")
    p.add_argument("circuit")
    p.add_argument("--pauli", required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_encode)

    p = sub.add_parser("decode", help="presentation -> realizing circuit")
    p.add_argument("presentation")
    p.add_argument("--pauli", help="seed Pauli z (default Z1, or I when outer is I)")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_decode)

    p = sub.add_parser("decide", help="answer enic / commute / support questions")
    p.add_argument("question", choices=("enic", "commute", "support"))
    p.add_argument("circuit")
    p.add_argument("--pauli")
    p.add_argument(
        "--exit-status",
        action="store_true",
        help="exit 1 when the answer is no-instance",
    )
    p.set_defaults(func=_cmd_decide)

    p = sub.add_parser("reduce", help="compile a hardness reduction instance")
    p.add_argument(
        "kind", choices=("support-to-enic", "binary-weight", "code-embed")
    )
    p.add_argument("source", help="circuit file (support-to-enic) or code file")
    p.add_argument("--pauli", help="target Pauli for support-to-enic")
    p.add_argument("--t", type=int, help="codeword weight for binary-weight")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("code", help="weight enumerator utilities")
    p.add_argument("stat", choices=("wt", "distribution"))
    p.add_argument("code")
    p.set_defaults(func=_cmd_code)

    p = sub.add_parser("verify", help="cross-check the engine against the oracle")
    p.add_argument("circuit")
    p.set_defaults(func=_cmd_verify)

    return top


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (BudgetError, CodeBoundError) as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (
        _UsageError,
        CircuitError,
        PresentationError,
        DecisionError,
        ReductionError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
