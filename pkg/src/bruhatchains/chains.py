"""Chain values, the distinguished minimal/maximal matrices P_n and Q_n,
the tabulated base chains, the recursive maximum-chain constructions, and
the closed-form extremal quantities."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Union

from .errors import MalformedChain, UnsupportedOrder
from .matrices import (
    F3,
    J2,
    BinaryMatrix,
    Direction,
    Interchange,
    apply_interchange,
    direct_sum,
    embed,
    inversion_count,
    reverse_columns,
)
from .order import bruhat_less


@dataclass(frozen=True)
class BruhatStep:
    """A chain step that jumps to a full replacement matrix; valid when the
    predecessor strictly precedes it in the Bruhat order."""

    target: BinaryMatrix


Step = Union[Interchange, BruhatStep]


@dataclass(frozen=True)
class Chain:
    """A start matrix and an ordered list of steps.  Pure interchange
    chains have mode ``interchange``; chains with at least one jump step
    have mode ``bruhat``."""

    start: BinaryMatrix
    steps: tuple[Step, ...]

    @property
    def length(self) -> int:
        return len(self.steps)

    @property
    def mode(self) -> str:
        if all(isinstance(s, Interchange) for s in self.steps):
            return "interchange"
        return "bruhat"

    def matrices(self) -> list[BinaryMatrix]:
        """Replay the chain; raises PatternMismatch on an invalid step."""
        out = [self.start]
        for step in self.steps:
            if isinstance(step, Interchange):
                out.append(apply_interchange(out[-1], step))
            elif isinstance(step, BruhatStep):
                out.append(step.target)
            else:
                raise MalformedChain(f"unknown step type {type(step)!r}")
        return out

    @property
    def end(self) -> BinaryMatrix:
        return self.matrices()[-1]

    def concat(self, other: "Chain") -> "Chain":
        if self.end != other.start:
            raise MalformedChain("chains do not meet at a common matrix")
        return Chain(self.start, self.steps + other.steps)


@dataclass(frozen=True)
class ChainReport:
    """Outcome of replaying a chain."""

    length: int
    valid: bool
    failing_step: int | None
    endpoints_ok: bool
    tight: bool
    nu_profile: tuple[int, ...]


def verify_chain(chain: Chain,
                 expected_start: BinaryMatrix | None = None,
                 expected_end: BinaryMatrix | None = None) -> ChainReport:
    """Replay a chain, validating every step by its kind.

    Interchange steps must address a valid ItoL pattern; jump steps must be
    a strict Bruhat ascent.  An invalid step is reported by index rather
    than raised; only structurally malformed data raises."""
    mats = [chain.start]
    failing = None
    for k, step in enumerate(chain.steps):
        cur = mats[-1]
        if isinstance(step, Interchange):
            if step.direction is not Direction.ItoL:
                failing = k
                break
            try:
                mats.append(apply_interchange(cur, step))
            except Exception:
                failing = k
                break
        elif isinstance(step, BruhatStep):
            nxt = step.target
            if nxt.m != cur.m or nxt.n != cur.n:
                raise MalformedChain(f"step {k}: dimension change")
            try:
                ok = bruhat_less(cur, nxt)
            except Exception:
                ok = False
            if not ok:
                failing = k
                break
            mats.append(nxt)
        else:
            raise MalformedChain(f"step {k}: unknown step type")
    nu_profile = tuple(inversion_count(a) for a in mats)
    valid = failing is None
    tight = valid and all(b - a == 1 for a, b in zip(nu_profile, nu_profile[1:]))
    endpoints_ok = valid
    if valid and expected_start is not None and mats[0] != expected_start:
        endpoints_ok = False
    if valid and expected_end is not None and mats[-1] != expected_end:
        endpoints_ok = False
    return ChainReport(len(chain.steps), valid, failing, endpoints_ok,
                       tight, nu_profile)


# --- distinguished matrices ---------------------------------------------


def build_extremes(n: int) -> tuple[BinaryMatrix, BinaryMatrix]:
    """The block-diagonal minimal matrix P_n and its column reversal Q_n,
    the distinguished maximal matrix."""
    if n < 4:
        raise UnsupportedOrder("extremes are defined for n >= 4")
    if n % 2 == 0:
        p = direct_sum([J2] * (n // 2))
    else:
        p = direct_sum([J2] * ((n - 3) // 2) + [F3])
    return p, reverse_columns(p)


def delta(n: int) -> int:
    """Largest possible chain length in the Bruhat order of the all-two
    square class of order n."""
    if n < 2:
        raise UnsupportedOrder("delta is defined for n >= 2")
    if n == 2:
        return 0
    if n == 3:
        return 3
    return 2 * n * (n - 2) - (n % 2)


def extremal_inversions(n: int) -> tuple[int, int]:
    """Closed forms for the inversion counts of P_n and Q_n."""
    if n < 4:
        raise UnsupportedOrder("extremal inversions are defined for n >= 4")
    return math.ceil(n / 2), (4 * n * n - 7 * n) // 2


# --- hand-tabulated order-5 chains, stored as row-string tables ---------

_TABLE_P5_TO_Z = (
    ("11000", "11000", "00110", "00101", "00011"),
    ("11000", "11000", "00110", "00011", "00101"),
    ("11000", "10100", "01010", "00011", "00101"),
    ("11000", "10010", "01100", "00011", "00101"),
    ("11000", "10010", "01010", "00101", "00101"),
    ("11000", "10010", "01001", "00110", "00101"),
    ("11000", "10010", "01001", "00101", "00110"),
)

_TABLE_Z_TO_Q5 = (
    ("11000", "10010", "01001", "00101", "00110"),
    ("11000", "10001", "01010", "00101", "00110"),
    ("11000", "10001", "00110", "01001", "00110"),
    ("11000", "10001", "00110", "00101", "01010"),
    ("11000", "10001", "00110", "00011", "01100"),
    ("10100", "10001", "01010", "00011", "01100"),
    ("10010", "10001", "01100", "00011", "01100"),
    ("10010", "10001", "01010", "00101", "01100"),
    ("10010", "10001", "01001", "00110", "01100"),
    ("10001", "10010", "01001", "00110", "01100"),
    ("10001", "10010", "00101", "01010", "01100"),
    ("10001", "01010", "00101", "10010", "01100"),
    ("10001", "01010", "00101", "01010", "10100"),
    ("10001", "01010", "00101", "00110", "11000"),
    ("10001", "00110", "01001", "00110", "11000"),
    ("10001", "00110", "00101", "01010", "11000"),
    ("10001", "00110", "00011", "01100", "11000"),
    ("00101", "10010", "00011", "01100", "11000"),
    ("00011", "10100", "00011", "01100", "11000"),
    ("00011", "10010", "00101", "01100", "11000"),
    ("00011", "10001", "00110", "01100", "11000"),
    ("00011", "00101", "10010", "01100", "11000"),
    ("00011", "00011", "10100", "01100", "11000"),
    ("00011", "00011", "01100", "10100", "11000"),
)


def _step_between(prev: BinaryMatrix, nxt: BinaryMatrix) -> Interchange:
    """The unique ItoL interchange turning prev into nxt."""
    diff_rows = [i for i in range(prev.m) if prev.bits[i] != nxt.bits[i]]
    if len(diff_rows) != 2:
        raise MalformedChain("consecutive matrices differ in != 2 rows")
    i, i2 = diff_rows
    cols = prev.bits[i] ^ nxt.bits[i]
    if cols != prev.bits[i2] ^ nxt.bits[i2] or cols.bit_count() != 2:
        raise MalformedChain("difference is not a 2x2 interchange")
    j = (cols & -cols).bit_length() - 1
    j2 = cols.bit_length() - 1
    step = Interchange(i, i2, j, j2, Direction.ItoL)
    if apply_interchange(prev, step) != nxt:
        raise MalformedChain("matrices differ by an LtoI move, not ItoL")
    return step


def _chain_from_table(table: Sequence[Sequence[str]]) -> Chain:
    mats = [BinaryMatrix.from_rows(rows) for rows in table]
    steps = tuple(_step_between(a, b) for a, b in zip(mats, mats[1:]))
    return Chain(mats[0], steps)


def tabulated_chains_5() -> tuple[Chain, Chain]:
    """The two tabulated chains: length 6 from P_5 to Z, and length 23
    from Z to Q_5."""
    return _chain_from_table(_TABLE_P5_TO_Z), _chain_from_table(_TABLE_Z_TO_Q5)


def z_matrix() -> BinaryMatrix:
    """The intermediate matrix Z joining the two tabulated chains."""
    return BinaryMatrix.from_rows(_TABLE_Z_TO_Q5[0])


def chain_p5_q5() -> Chain:
    """Length-29 interchange chain from P_5 to Q_5 (the two tabulated
    chains concatenated)."""
    first, second = tabulated_chains_5()
    return first.concat(second)


# The length-16 tight chain from P_4 to Q_4.  Its existence is known; the
# explicit steps were produced once by tight_chain_search and frozen here
# for determinism (see tests for the regeneration check).
_BASE16_STEPS: tuple[tuple[int, int, int, int], ...] = (
    (1, 2, 1, 2), (0, 1, 1, 2), (2, 3, 1, 2), (1, 2, 1, 2),
    (1, 2, 0, 1), (0, 1, 0, 1), (1, 2, 2, 3), (0, 1, 2, 3),
    (0, 1, 1, 2), (2, 3, 0, 1), (2, 3, 2, 3), (2, 3, 1, 2),
    (1, 2, 1, 2), (1, 2, 0, 1), (1, 2, 2, 3), (1, 2, 1, 2),
)


def base_chain_4() -> Chain:
    """Frozen tight chain of length 16 from P_4 to Q_4."""
    p4, _ = build_extremes(4)
    steps = tuple(Interchange(*q, Direction.ItoL) for q in _BASE16_STEPS)
    return Chain(p4, steps)


def chain_y_to_q5() -> Chain:
    """Length-24 mixed chain: one Bruhat jump from Y (the 2x2 all-ones
    block above the reversed 3x3 block) to Z, then the tabulated length-23
    chain to Q_5."""
    from .matrices import F3R

    y = direct_sum([J2, F3R])
    _, second = tabulated_chains_5()
    return Chain(y, (BruhatStep(z_matrix()),) + second.steps)


# --- recursive constructions --------------------------------------------


def _map_steps(steps: Sequence[Step], host: BinaryMatrix,
               rows: Sequence[int], cols: Sequence[int]) -> tuple[list[Step], BinaryMatrix]:
    """Reindex sub-chain steps into a host window, tracking the host state
    so jump steps become full replacement matrices."""
    out: list[Step] = []
    cur = host
    for step in steps:
        if isinstance(step, Interchange):
            mapped = Interchange(rows[step.i], rows[step.i2],
                                 cols[step.j], cols[step.j2], step.direction)
            cur = apply_interchange(cur, mapped)
            out.append(mapped)
        else:
            cur = embed(cur, rows, cols, step.target)
            out.append(BruhatStep(cur))
    return out, cur


@lru_cache(maxsize=None)
def chain_even(n: int) -> Chain:
    """Chain of length 2n(n-2) from P_n to Q_n, for even n >= 4.

    Recursive: lift the order n-2 chain through a direct sum with the
    all-ones 2x2 block, then walk that block to the top-right corner by
    n/2 - 1 embedded copies of the length-16 base chain on sliding 4x4
    windows."""
    if n < 4 or n % 2:
        raise UnsupportedOrder("even construction needs even n >= 4")
    if n == 4:
        return base_chain_4()
    inner = chain_even(n - 2)
    p_n, _ = build_extremes(n)
    steps: list[Step] = list(inner.steps)  # indices unchanged by the lift
    cur = direct_sum([inner.end, J2])
    base = base_chain_4()
    for r in range(1, n // 2):
        rows = (2 * r - 2, 2 * r - 1, n - 2, n - 1)
        cols = tuple(range(n - 2 * r - 2, n - 2 * r + 2))
        mapped, cur = _map_steps(base.steps, cur, rows, cols)
        steps.extend(mapped)
    return Chain(p_n, tuple(steps))


@lru_cache(maxsize=None)
def chain_odd(n: int) -> Chain:
    """Chain of length 2n(n-2)-1 from P_n to Q_n, for odd n >= 5.

    The length-29 chain runs on the trailing 5x5 block; the 3x3 reversed
    block then migrates to the bottom-left corner through (n-5)/2 embedded
    copies of the length-24 mixed chain on sliding 5-row windows; the even
    construction of order n-3 finishes in the top-right block."""
    if n < 5 or n % 2 == 0:
        raise UnsupportedOrder("odd construction needs odd n >= 5")
    if n == 5:
        return chain_p5_q5()
    k = (n - 5) // 2
    p_n, _ = build_extremes(n)
    base29 = chain_p5_q5()
    window = tuple(range(2 * k, n))
    steps, cur = _map_steps(base29.steps, p_n, window, window)
    y_chain = chain_y_to_q5()
    for t in range(1, k + 1):
        rows = (2 * k - 2 * t, 2 * k - 2 * t + 1, n - 3, n - 2, n - 1)
        cols = tuple(range(2 * k - 2 * t, 2 * k - 2 * t + 5))
        mapped, cur = _map_steps(y_chain.steps, cur, rows, cols)
        steps.extend(mapped)
    even = chain_even(n - 3)
    mapped, cur = _map_steps(even.steps, cur,
                             tuple(range(n - 3)), tuple(range(3, n)))
    steps.extend(mapped)
    return Chain(p_n, tuple(steps))


def build_chain(n: int) -> Chain:
    """Dispatch to the even or odd construction."""
    if n < 4:
        raise UnsupportedOrder("chain construction needs n >= 4")
    return chain_even(n) if n % 2 == 0 else chain_odd(n)


# --- serialization -------------------------------------------------------


def chain_to_json_dict(chain: Chain) -> dict:
    steps: list[list[int] | None] = []
    splices = []
    for k, step in enumerate(chain.steps):
        if isinstance(step, Interchange):
            steps.append(list(step.quad()))
        else:
            steps.append(None)
            splices.append({"at": k, "matrix": step.target.to_json_dict()})
    return {"mode": chain.mode, "start": chain.start.to_json_dict(),
            "steps": steps, "splices": splices}


def chain_to_json(chain: Chain) -> str:
    return json.dumps(chain_to_json_dict(chain))


def chain_from_json_dict(data: dict) -> Chain:
    try:
        start = BinaryMatrix.from_json_dict(data["start"])
        splices = {s["at"]: BinaryMatrix.from_json_dict(s["matrix"])
                   for s in data.get("splices", [])}
        steps: list[Step] = []
        for k, quad in enumerate(data["steps"]):
            if quad is None:
                steps.append(BruhatStep(splices[k]))
            else:
                i, i2, j, j2 = quad
                steps.append(Interchange(i, i2, j, j2, Direction.ItoL))
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedChain(str(exc)) from exc
    return Chain(start, tuple(steps))


def chain_from_json(text: str) -> Chain:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedChain(str(exc)) from exc
    return chain_from_json_dict(data)


def chain_to_text(chain: Chain) -> str:
    """Start matrix, a blank line, then one interchange step per line.
    Only pure interchange chains have a text form."""
    if chain.mode != "interchange":
        raise MalformedChain("text format only covers interchange chains")
    lines = [chain.start.to_text(), ""]
    lines.extend(" ".join(map(str, s.quad())) for s in chain.steps)
    return "\n".join(lines) + "\n"


def chain_from_text(text: str) -> Chain:
    lines = text.splitlines()
    try:
        split = lines.index("")
    except ValueError as exc:
        raise MalformedChain("missing blank line after start matrix") from exc
    try:
        start = BinaryMatrix.from_rows([ln.strip() for ln in lines[:split]])
        steps = []
        for ln in lines[split + 1:]:
            if not ln.strip():
                continue
            i, i2, j, j2 = map(int, ln.split())
            steps.append(Interchange(i, i2, j, j2, Direction.ItoL))
    except (ValueError, TypeError) as exc:
        raise MalformedChain(str(exc)) from exc
    return Chain(start, tuple(steps))
