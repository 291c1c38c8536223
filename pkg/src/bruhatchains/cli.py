"""Command-line front end.

Matrices are read in the text format (rows of '0'/'1', blank line
terminates) from a file path or from stdin when the path is ``-``.
Margins are given as ``R/S`` with comma-separated entries, or through the
``--n/--k`` sugar for square classes with uniform sums.  Every subcommand
supports ``--json`` for a machine-readable envelope.

Exit codes: 0 on success, 1 on domain errors, 2 on usage errors.
"""

from __future__ import annotations

import json
import sys
import time

import click

from . import chains, enumeration, matrices, order, search
from .errors import BruhatError
from .matrices import BinaryMatrix, MarginPair


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _read_matrix(path: str) -> BinaryMatrix:
    text = _read_text(path)
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return BinaryMatrix.from_json(text)
    return BinaryMatrix.from_text(text)


def _parse_margins(spec: str) -> MarginPair:
    try:
        row_part, col_part = spec.split("/")
        rows = tuple(int(x) for x in row_part.split(","))
        cols = tuple(int(x) for x in col_part.split(","))
        return MarginPair(rows, cols)
    except ValueError as exc:
        raise click.UsageError(f"bad margins {spec!r}: {exc}") from exc


def _resolve_margins(margins: str | None, n: int | None,
                     k: int | None) -> MarginPair:
    if margins is not None:
        return _parse_margins(margins)
    if n is not None:
        return MarginPair.uniform(n, 2 if k is None else k)
    raise click.UsageError("give either --margins R/S or --n N [--k K]")


def _emit(command: str, result, as_json: bool, started: float,
          plain: str | None = None) -> None:
    if as_json:
        envelope = {"command": command, "result": result,
                    "elapsed_ms": int((time.monotonic() - started) * 1000)}
        click.echo(json.dumps(envelope))
    else:
        click.echo(plain if plain is not None else str(result))


class _DomainErrorGroup(click.Group):
    """Map domain errors to exit code 1, usage problems stay at 2."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except BruhatError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)


@click.group(cls=_DomainErrorGroup)
def main() -> None:
    """Bruhat-order toolkit for (0,1)-matrix classes."""


@main.command()
@click.argument("matrix", default="-")
@click.option("--json", "as_json", is_flag=True)
def inv(matrix: str, as_json: bool) -> None:
    """Inversion count of a matrix."""
    started = time.monotonic()
    nu = matrices.inversion_count(_read_matrix(matrix))
    _emit("inv", nu, as_json, started)


@main.command()
@click.argument("matrix", default="-")
@click.option("--json", "as_json", is_flag=True)
def sigma(matrix: str, as_json: bool) -> None:
    """Cumulative partial-sum table of a matrix."""
    started = time.monotonic()
    table = matrices.cumulative_sums(_read_matrix(matrix))
    rows = [list(r) for r in table.values]
    plain = "\n".join(" ".join(map(str, r)) for r in rows)
    _emit("sigma", rows, as_json, started, plain)


@main.command()
@click.argument("first")
@click.argument("second")
@click.option("--budget", default=order.DEFAULT_NODE_BUDGET, show_default=True)
@click.option("--json", "as_json", is_flag=True)
def compare(first: str, second: str, budget: int, as_json: bool) -> None:
    """Bruhat and secondary Bruhat verdicts for a pair."""
    started = time.monotonic()
    a, c = _read_matrix(first), _read_matrix(second)
    verdict = order.bruhat_verdict(a, c)
    result = {
        "bruhat_leq": verdict.leq,
        "bruhat_geq": verdict.geq,
        "secondary_leq": order.secondary_bruhat_leq(a, c, budget),
        "secondary_geq": order.secondary_bruhat_leq(c, a, budget),
    }
    plain = "\n".join(f"{k}: {str(v).lower()}" for k, v in result.items())
    _emit("compare", result, as_json, started, plain)


@main.command()
@click.option("--margins", default=None)
@click.option("--n", type=int, default=None)
@click.option("--k", type=int, default=None)
@click.option("--count", "count_only", is_flag=True,
              help="print only the number of members")
@click.option("--json", "as_json", is_flag=True)
def enumerate(margins, n, k, count_only, as_json) -> None:
    """List every member of a class."""
    started = time.monotonic()
    pair = _resolve_margins(margins, n, k)
    members = list(enumeration.enumerate_class(pair))
    if count_only:
        _emit("enumerate", len(members), as_json, started)
        return
    if as_json:
        _emit("enumerate", [m.to_json_dict() for m in members], True, started)
    else:
        click.echo("\n\n".join(m.to_text() for m in members))


@main.command()
@click.option("--margins", default=None)
@click.option("--n", type=int, default=None)
@click.option("--k", type=int, default=None)
@click.option("--cap", default=enumeration.DEFAULT_MEMBER_CAP, show_default=True)
@click.option("--dot", "dot_path", type=click.Path(writable=True), default=None)
@click.option("--jsonl", "jsonl_path", type=click.Path(writable=True), default=None)
@click.option("--parallel", type=int, default=None,
              help="accepted for compatibility; computation is serial")
@click.option("--json", "as_json", is_flag=True)
def poset(margins, n, k, cap, dot_path, jsonl_path, parallel, as_json) -> None:
    """Build the class poset and export it."""
    started = time.monotonic()
    pair = _resolve_margins(margins, n, k)
    built = enumeration.build_poset(pair, cap)
    if dot_path:
        with open(dot_path, "w", encoding="utf-8") as fh:
            fh.write(built.to_dot())
    if jsonl_path:
        with open(jsonl_path, "w", encoding="utf-8") as fh:
            fh.write(built.to_jsonl())
    summary = {
        "members": len(built),
        "strict_arcs": sum(1 for _ in built.strict_pairs()),
        "cover_arcs": len(built.cover_pairs()),
        "minimal": len(built.minimal_indices()),
        "maximal": len(built.maximal_indices()),
    }
    plain = "\n".join(f"{key}: {val}" for key, val in summary.items())
    _emit("poset", summary, as_json, started, plain)


@main.command()
@click.option("--n", type=int, required=True)
@click.option("--json", "as_json", is_flag=True)
def extremes(n: int, as_json: bool) -> None:
    """The distinguished minimal and maximal matrices P_n and Q_n."""
    started = time.monotonic()
    p, q = chains.build_extremes(n)
    if as_json:
        _emit("extremes", {"P": p.to_json_dict(), "Q": q.to_json_dict()},
              True, started)
    else:
        click.echo(p.to_text() + "\n\n" + q.to_text())


@main.group()
def chain() -> None:
    """Build and verify chains."""


@chain.command("build")
@click.option("--n", type=int, required=True)
@click.option("--json", "as_json", is_flag=True,
              help="wrap the chain in the result envelope")
def chain_build(n: int, as_json: bool) -> None:
    """Maximum-length chain from P_n to Q_n, as chain JSON."""
    started = time.monotonic()
    built = chains.build_chain(n)
    payload = chains.chain_to_json_dict(built)
    if as_json:
        _emit("chain build", payload, True, started)
    else:
        click.echo(json.dumps(payload))


@chain.command("verify")
@click.argument("chain_file", default="-")
@click.option("--json", "as_json", is_flag=True)
def chain_verify(chain_file: str, as_json: bool) -> None:
    """Replay a chain (chain JSON or text format) and report on it."""
    started = time.monotonic()
    text = _read_text(chain_file)
    if text.lstrip().startswith("{"):
        loaded = chains.chain_from_json(text)
    else:
        loaded = chains.chain_from_text(text)
    report = chains.verify_chain(loaded)
    result = {
        "length": report.length,
        "valid": report.valid,
        "failing_step": report.failing_step,
        "tight": report.tight,
        "nu_profile": list(report.nu_profile),
    }
    plain = (f"length: {report.length}\nvalid: {str(report.valid).lower()}\n"
             f"tight: {str(report.tight).lower()}")
    if report.failing_step is not None:
        plain += f"\nfailing_step: {report.failing_step}"
    _emit("chain verify", result, as_json, started, plain)


def _poset_for_square(n: int, cap: int) -> enumeration.ClassPoset:
    pair = MarginPair.uniform(n, 2)
    if n >= 6:
        # all-pairs comparability is prohibitive here; the interchange
        # digraph supports the same longest-path and spectrum queries
        return enumeration.build_interchange_dag(pair)
    return enumeration.build_poset(pair, cap)


@main.command()
@click.option("--n", type=int, default=None)
@click.option("--margins", default=None)
@click.option("--k", type=int, default=None)
@click.option("--parallel", type=int, default=None,
              help="accepted for compatibility; computation is serial")
@click.option("--json", "as_json", is_flag=True)
def longest(n, margins, k, parallel, as_json) -> None:
    """Length of the longest chain in the Bruhat order of a class."""
    started = time.monotonic()
    if margins is None and k is None and n is not None:
        built = _poset_for_square(n, enumeration.DEFAULT_MEMBER_CAP)
    else:
        built = enumeration.build_poset(_resolve_margins(margins, n, k))
    length, _ = search.longest_chain(built)
    _emit("longest", length, as_json, started)


@main.command()
@click.option("--n", type=int, required=True)
@click.option("--parallel", type=int, default=None,
              help="accepted for compatibility; computation is serial")
@click.option("--json", "as_json", is_flag=True)
def spectrum(n, parallel, as_json) -> None:
    """Maximum chain lengths over all (minimal, maximal) pairs."""
    started = time.monotonic()
    built = _poset_for_square(n, enumeration.DEFAULT_MEMBER_CAP)
    lengths = sorted(search.maximal_chain_spectrum(built))
    _emit("spectrum", lengths, as_json, started,
          " ".join(map(str, lengths)))


@main.command()
@click.argument("from_matrix")
@click.argument("to_matrix")
@click.option("--budget", default=10**6, show_default=True)
@click.option("--json", "as_json", is_flag=True)
def tight(from_matrix, to_matrix, budget, as_json) -> None:
    """Search for a tight chain between two matrices."""
    started = time.monotonic()
    a, c = _read_matrix(from_matrix), _read_matrix(to_matrix)
    outcome = search.tight_chain_search(a, c, budget)
    result = {
        "found": outcome.found,
        "length": outcome.witness.length if outcome.found else None,
        "explored": outcome.explored,
        "budget_hit": outcome.budget_hit,
        "witness": (chains.chain_to_json_dict(outcome.witness)
                    if outcome.found else None),
    }
    plain = (f"found: {str(outcome.found).lower()}\n"
             f"explored: {outcome.explored}")
    if outcome.found:
        plain += f"\nlength: {outcome.witness.length}"
    _emit("tight", result, as_json, started, plain)


@main.command()
@click.option("--margins", default=None)
@click.option("--n", type=int, default=None)
@click.option("--k", type=int, default=None)
@click.option("--json", "as_json", is_flag=True)
def monotone(margins, n, k, as_json) -> None:
    """Check inversion monotonicity over all strict arcs of a class.

    A found violation is printed as a certificate and still exits 0."""
    started = time.monotonic()
    built = enumeration.build_poset(_resolve_margins(margins, n, k))
    report = search.monotonicity_check(built)
    certs = [search.certificate(a, c) for a, c in report.violations]
    result = {"pairs_checked": report.pairs_checked,
              "violations": certs}
    if certs:
        plain = json.dumps(certs, indent=2)
    else:
        plain = f"checked {report.pairs_checked} arcs, no violations"
    _emit("monotone", result, as_json, started, plain)


@main.command()
@click.option("--n", type=int, required=True)
@click.option("--json", "as_json", is_flag=True)
def delta(n: int, as_json: bool) -> None:
    """Closed-form maximum chain length for the all-two square class."""
    started = time.monotonic()
    _emit("delta", chains.delta(n), as_json, started)


if __name__ == "__main__":
    main()
