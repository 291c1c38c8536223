"""(0,1)-matrices with bit-packed rows, and the pure kernels on them.

A matrix row is stored as a Python int, bit ``j`` holding column ``j``.
Python ints are arbitrary precision, so a single int per row covers any
width; all kernels below work word-parallel through int bit operations.
All values are immutable and hashable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Sequence

from .errors import IndexOutOfRange, PatternMismatch, SizeMismatch


class Direction(Enum):
    """Orientation of an interchange: identity pattern to anti-identity, or back."""

    ItoL = "ItoL"
    LtoI = "LtoI"


@dataclass(frozen=True)
class BinaryMatrix:
    """An m x n matrix of zeros and ones, one int of packed bits per row."""

    m: int
    n: int
    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.m < 1 or self.n < 1:
            raise ValueError("matrix dimensions must be at least 1x1")
        if len(self.bits) != self.m:
            raise ValueError("bits must hold one int per row")
        limit = 1 << self.n
        if any(b < 0 or b >= limit for b in self.bits):
            raise ValueError("row bits exceed the declared width")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int] | str]) -> "BinaryMatrix":
        """Build from row sequences of 0/1 ints or '0'/'1' strings."""
        if not rows:
            raise ValueError("need at least one row")
        n = len(rows[0])
        bits = []
        for row in rows:
            if len(row) != n:
                raise ValueError("ragged rows")
            mask = 0
            for j, cell in enumerate(row):
                v = int(cell)
                if v not in (0, 1):
                    raise ValueError("cells must be 0 or 1")
                mask |= v << j
            bits.append(mask)
        return cls(len(rows), n, tuple(bits))

    def get(self, i: int, j: int) -> int:
        return (self.bits[i] >> j) & 1

    def row_string(self, i: int) -> str:
        return "".join(str((self.bits[i] >> j) & 1) for j in range(self.n))

    def to_lists(self) -> list[list[int]]:
        return [[(b >> j) & 1 for j in range(self.n)] for b in self.bits]

    def ones(self) -> Iterator[tuple[int, int]]:
        """Positions of ones in row-major order."""
        for i, b in enumerate(self.bits):
            while b:
                low = b & -b
                yield i, low.bit_length() - 1
                b ^= low

    def count_ones(self) -> int:
        return sum(b.bit_count() for b in self.bits)

    def row_sums(self) -> tuple[int, ...]:
        return tuple(b.bit_count() for b in self.bits)

    def col_sums(self) -> tuple[int, ...]:
        return tuple(
            sum((b >> j) & 1 for b in self.bits) for j in range(self.n)
        )

    def margins(self) -> "MarginPair":
        return MarginPair(self.row_sums(), self.col_sums())

    # --- text / JSON wire formats ---

    def to_text(self) -> str:
        """One row per line, characters '0'/'1', no separators."""
        return "\n".join(self.row_string(i) for i in range(self.m))

    @classmethod
    def from_text(cls, text: str) -> "BinaryMatrix":
        """Parse the text format; a blank line terminates the matrix."""
        rows = []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                break
            rows.append(line)
        if not rows:
            raise ValueError("no matrix rows found")
        return cls.from_rows(rows)

    def to_json_dict(self) -> dict:
        return {"m": self.m, "n": self.n,
                "rows": [self.row_string(i) for i in range(self.m)]}

    @classmethod
    def from_json_dict(cls, data: dict) -> "BinaryMatrix":
        mat = cls.from_rows(data["rows"])
        if mat.m != data["m"] or mat.n != data["n"]:
            raise ValueError("declared dimensions disagree with row data")
        return mat

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json(cls, text: str) -> "BinaryMatrix":
        return cls.from_json_dict(json.loads(text))

    def __str__(self) -> str:
        return self.to_text()


@dataclass(frozen=True)
class MarginPair:
    """Row sum vector and column sum vector of a class of (0,1)-matrices."""

    row_sums: tuple[int, ...]
    col_sums: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "row_sums", tuple(self.row_sums))
        object.__setattr__(self, "col_sums", tuple(self.col_sums))
        if any(r < 0 for r in self.row_sums) or any(c < 0 for c in self.col_sums):
            raise ValueError("margins must be nonnegative")
        if sum(self.row_sums) != sum(self.col_sums):
            raise ValueError("row and column sums must have equal totals")

    @classmethod
    def uniform(cls, n: int, k: int) -> "MarginPair":
        """Margins of the square class where every row and column sums to k."""
        return cls((k,) * n, (k,) * n)

    @property
    def m(self) -> int:
        return len(self.row_sums)

    @property
    def n(self) -> int:
        return len(self.col_sums)

    def is_all_two_square(self) -> bool:
        return (self.m == self.n
                and all(r == 2 for r in self.row_sums)
                and all(c == 2 for c in self.col_sums))


@dataclass(frozen=True)
class CumulativeTable:
    """Table of partial sums: entry (k, l) counts ones in the leading
    (k+1) x (l+1) submatrix."""

    m: int
    n: int
    values: tuple[tuple[int, ...], ...]

    def get(self, k: int, l: int) -> int:
        return self.values[k][l]

    def flat(self) -> tuple[int, ...]:
        return tuple(v for row in self.values for v in row)


@dataclass(frozen=True, order=True)
class Interchange:
    """A 2x2 move at rows i < i2 and columns j < j2, with a direction."""

    i: int
    i2: int
    j: int
    j2: int
    direction: Direction = Direction.ItoL

    def __post_init__(self) -> None:
        if not (0 <= self.i < self.i2 and 0 <= self.j < self.j2):
            raise ValueError("interchange needs i < i2 and j < j2")

    def quad(self) -> tuple[int, int, int, int]:
        return (self.i, self.i2, self.j, self.j2)


# Named small matrices used throughout: the all-ones 2x2 block, its
# column reversal is itself; the two interchange patterns; the 3x3
# minimal block and its column reversal.
J2 = BinaryMatrix.from_rows(["11", "11"])
I2 = BinaryMatrix.from_rows(["10", "01"])
L2 = BinaryMatrix.from_rows(["01", "10"])
F3 = BinaryMatrix.from_rows(["110", "101", "011"])
F3R = BinaryMatrix.from_rows(["011", "101", "110"])


def cumulative_sums(a: BinaryMatrix) -> CumulativeTable:
    """Table of leading-submatrix one-counts, computed in O(mn)."""
    values = []
    above = [0] * a.n
    for i in range(a.m):
        running = 0
        row = []
        b = a.bits[i]
        for j in range(a.n):
            above[j] += (b >> j) & 1
            running += above[j]
            row.append(running)
        values.append(tuple(row))
    return CumulativeTable(a.m, a.n, tuple(values))


def inversion_count(a: BinaryMatrix) -> int:
    """Number of unordered pairs of ones where one sits strictly
    top-right of the other.  One O(n) prefix sweep per row."""
    total = 0
    col_counts = [0] * a.n
    seen = 0
    for b in a.bits:
        if seen:
            prefix = 0  # ones in earlier rows at columns <= j
            bb = b
            for j in range(a.n):
                prefix += col_counts[j]
                if (bb >> j) & 1:
                    total += seen - prefix
        bb = b
        while bb:
            low = bb & -bb
            col_counts[low.bit_length() - 1] += 1
            seen += 1
            bb ^= low
    return total


def _bit_positions(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def find_interchanges(a: BinaryMatrix,
                      direction: Direction = Direction.ItoL) -> list[Interchange]:
    """All positions whose 2x2 submatrix matches the source pattern of the
    requested direction, sorted lexicographically by (i, i2, j, j2)."""
    full = (1 << a.n) - 1
    found = []
    for i in range(a.m - 1):
        bi = a.bits[i]
        for i2 in range(i + 1, a.m):
            bi2 = a.bits[i2]
            top = bi & ~bi2 & full   # columns with a one in row i only
            bot = ~bi & bi2 & full   # columns with a one in row i2 only
            if direction is Direction.ItoL:
                left, right = top, bot
            else:
                left, right = bot, top
            if not left or not right:
                continue
            rights = _bit_positions(right)
            for j in _bit_positions(left):
                for j2 in rights:
                    if j < j2:
                        found.append(Interchange(i, i2, j, j2, direction))
    found.sort(key=Interchange.quad)
    return found


def _matches_pattern(a: BinaryMatrix, t: Interchange) -> bool:
    if t.i2 >= a.m or t.j2 >= a.n:
        return False
    cells = (a.get(t.i, t.j), a.get(t.i, t.j2),
             a.get(t.i2, t.j), a.get(t.i2, t.j2))
    want = (1, 0, 0, 1) if t.direction is Direction.ItoL else (0, 1, 1, 0)
    return cells == want


def apply_interchange(a: BinaryMatrix, t: Interchange) -> BinaryMatrix:
    """Replace the addressed 2x2 submatrix by the opposite pattern."""
    if not _matches_pattern(a, t):
        raise PatternMismatch(
            f"submatrix at {t.quad()} is not {t.direction.value[0]}2")
    flip = (1 << t.j) | (1 << t.j2)
    bits = list(a.bits)
    bits[t.i] ^= flip
    bits[t.i2] ^= flip
    return BinaryMatrix(a.m, a.n, tuple(bits))


def interchange_increment(a: BinaryMatrix, t: Interchange) -> int:
    """Exact inversion gain of applying a valid ItoL interchange: one plus
    a weighted count of ones in the five blocks strictly between the two
    rows and two columns of the move."""
    if t.direction is not Direction.ItoL or not _matches_pattern(a, t):
        raise PatternMismatch(f"no ItoL pattern at {t.quad()}")
    mid_cols = 0
    for j in range(t.j + 1, t.j2):
        mid_cols |= 1 << j
    inner = sum((a.bits[i] & mid_cols).bit_count()
                for i in range(t.i + 1, t.i2))
    top = (a.bits[t.i] & mid_cols).bit_count()
    bottom = (a.bits[t.i2] & mid_cols).bit_count()
    left = sum((a.bits[i] >> t.j) & 1 for i in range(t.i + 1, t.i2))
    right = sum((a.bits[i] >> t.j2) & 1 for i in range(t.i + 1, t.i2))
    return 1 + 2 * inner + top + left + right + bottom


def direct_sum(blocks: Sequence[BinaryMatrix]) -> BinaryMatrix:
    """Block-diagonal assembly of the given blocks, in order."""
    if not blocks:
        raise ValueError("need at least one block")
    m = sum(b.m for b in blocks)
    n = sum(b.n for b in blocks)
    bits = []
    col_off = 0
    for blk in blocks:
        bits.extend(row << col_off for row in blk.bits)
        col_off += blk.n
    return BinaryMatrix(m, n, tuple(bits))


def reverse_columns(a: BinaryMatrix) -> BinaryMatrix:
    """Flip the matrix left/right; an involution."""
    def rev(mask: int) -> int:
        out = 0
        for j in range(a.n):
            if (mask >> j) & 1:
                out |= 1 << (a.n - 1 - j)
        return out

    return BinaryMatrix(a.m, a.n, tuple(rev(b) for b in a.bits))


def _check_indices(idx: Sequence[int], bound: int, what: str) -> None:
    if any(v < 0 or v >= bound for v in idx):
        raise IndexOutOfRange(f"{what} indices out of range")
    if any(a >= b for a, b in zip(idx, idx[1:])):
        raise ValueError(f"{what} indices must be strictly increasing")


def submatrix(a: BinaryMatrix, row_idx: Sequence[int],
              col_idx: Sequence[int]) -> BinaryMatrix:
    """The submatrix at the given strictly increasing row/column indices."""
    _check_indices(row_idx, a.m, "row")
    _check_indices(col_idx, a.n, "column")
    bits = []
    for i in row_idx:
        mask = 0
        for jj, j in enumerate(col_idx):
            mask |= ((a.bits[i] >> j) & 1) << jj
        bits.append(mask)
    return BinaryMatrix(len(row_idx), len(col_idx), tuple(bits))


def embed(host: BinaryMatrix, row_idx: Sequence[int], col_idx: Sequence[int],
          sub: BinaryMatrix) -> BinaryMatrix:
    """Overwrite the addressed submatrix of host with sub; everything else
    is unchanged."""
    _check_indices(row_idx, host.m, "row")
    _check_indices(col_idx, host.n, "column")
    if len(row_idx) != sub.m or len(col_idx) != sub.n:
        raise SizeMismatch("index selections do not match sub dimensions")
    clear = 0
    for j in col_idx:
        clear |= 1 << j
    bits = list(host.bits)
    for k, i in enumerate(row_idx):
        mask = bits[i] & ~clear
        for jj, j in enumerate(col_idx):
            mask |= ((sub.bits[k] >> jj) & 1) << j
        bits[i] = mask
    return BinaryMatrix(host.m, host.n, tuple(bits))


def canonical_key(a: BinaryMatrix) -> bytes:
    """Injective byte encoding: dimensions then row-major packed bits.
    For equal dimensions, byte order agrees with row-major bit order."""
    acc = 1  # sentinel high bit so leading zero rows survive to_bytes
    for i in range(a.m):
        for j in range(a.n):
            acc = (acc << 1) | ((a.bits[i] >> j) & 1)
    payload = acc.to_bytes((acc.bit_length() + 7) // 8, "big")
    return a.m.to_bytes(2, "big") + a.n.to_bytes(2, "big") + payload


def all_pair_count(a: BinaryMatrix) -> int:
    """Pairs of ones sharing neither row nor column.  Each such pair is an
    inversion in exactly one of a and its column reversal."""
    ones = a.count_ones()
    total = ones * (ones - 1) // 2
    same_row = sum(r * (r - 1) // 2 for r in a.row_sums())
    same_col = sum(c * (c - 1) // 2 for c in a.col_sums())
    return total - same_row - same_col


def random_interchange_walk(a: BinaryMatrix, steps: int, rng) -> BinaryMatrix:
    """Apply the given number of uniformly chosen interchanges (either
    direction).  Stays inside the class of a; used for sampling members."""
    cur = a
    for _ in range(steps):
        moves = find_interchanges(cur, Direction.ItoL) \
            + find_interchanges(cur, Direction.LtoI)
        if not moves:
            break
        cur = apply_interchange(cur, rng.choice(moves))
    return cur
