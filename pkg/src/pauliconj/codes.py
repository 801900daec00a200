"""Binary linear codes, weight enumerators, and block-structured generators."""

from __future__ import annotations

from dataclasses import dataclass

from .exact import ExactScalar, RealRoot2
from .f2 import F2Matrix, F2Vec, gauss_eliminate

__all__ = [
    "BinaryCode",
    "OneRemainderMatrix",
    "CodeBoundError",
    "weight_distribution",
    "wt_eval",
    "repeat_code",
    "binary_weight_decide",
    "build_one_remainder",
    "split_one_remainder",
    "validate_one_remainder",
    "message_weight_pairs",
    "parse_code",
    "serialize_code",
]

DEFAULT_CODEWORD_BOUND = 1 << 22


class CodeBoundError(RuntimeError):
    """Brute-force enumeration would exceed the configured codeword bound."""


@dataclass(frozen=True)
class BinaryCode:
    """A binary linear code given by a (possibly redundant) generator matrix.

    Parameters
    ----------
    generator : F2Matrix
        Rows spanning the code. Rows may be dependent; the dimension is the
        row rank, so the code has ``2**rank`` words.
    """

    generator: F2Matrix

    @property
    def length(self) -> int:
        return self.generator.ncols

    @property
    def rank(self) -> int:
        return self.generator.rank()

    def independent_rows(self) -> list[int]:
        """A row basis of the code, as packed integers."""
        return list(gauss_eliminate(list(self.generator.rows), self.length)[0])

    def codewords(self, bound: int = DEFAULT_CODEWORD_BOUND):
        """Iterate all codewords as packed integers, in Gray-code order.

        Raises
        ------
        CodeBoundError
            If ``2**rank`` exceeds ``bound``.
        """
        rows = self.independent_rows()
        k = len(rows)
        if 1 << k > bound:
            raise CodeBoundError(
                f"code has 2^{k} words, above the bound of {bound}"
            )
        word = 0
        yield word
        for i in range(1, 1 << k):
            word ^= rows[(i & -i).bit_length() - 1]
            yield word


@dataclass(frozen=True)
class OneRemainderMatrix:
    """Generator ``[I_k | ... | I_k | P | ... | P]`` with r I-blocks, s P-blocks.

    Parameters
    ----------
    k : int
        Number of rows.
    r : int
        Count of identity blocks; must be 1 mod 4.
    s : int
        Count of P blocks; must be 0 mod 4.
    p : F2Matrix
        The repeated block, with ``k`` rows (may have zero columns).
    """

    k: int
    r: int
    s: int
    p: F2Matrix

    def __post_init__(self) -> None:
        if self.r % 4 != 1:
            raise ValueError("identity block count must be 1 mod 4")
        if self.s % 4 != 0:
            raise ValueError("P block count must be 0 mod 4")
        if self.p.nrows != self.k:
            raise ValueError("P must have k rows")

    @property
    def length(self) -> int:
        return self.r * self.k + self.s * self.p.ncols

    def to_matrix(self) -> F2Matrix:
        rows = []
        for i in range(self.k):
            row = 0
            offset = 0
            for _ in range(self.r):
                row |= 1 << (offset + i)
                offset += self.k
            prow = self.p.rows[i]
            for _ in range(self.s):
                row |= prow << offset
                offset += self.p.ncols
            rows.append(row)
        return F2Matrix(tuple(rows), self.length)

    def code(self) -> BinaryCode:
        return BinaryCode(self.to_matrix())


def weight_distribution(
    code: BinaryCode, bound: int = DEFAULT_CODEWORD_BOUND
) -> list[int]:
    """Counts ``a_j`` of codewords of each Hamming weight.

    Returns
    -------
    list of int
        ``a[j]`` is the number of codewords of weight ``j``; length n+1.
    """
    counts = [0] * (code.length + 1)
    for w in code.codewords(bound):
        counts[w.bit_count()] += 1
    return counts


def _scalar_count(template, count: int):
    if isinstance(template, ExactScalar):
        return ExactScalar.from_int(count)
    if isinstance(template, RealRoot2):
        return RealRoot2(count, 0, 0)
    raise TypeError(f"unsupported scalar type {type(template).__name__}")


def wt_eval(code: BinaryCode, alpha, bound: int = DEFAULT_CODEWORD_BOUND):
    """Weight enumerator ``sum_j a_j alpha^j`` evaluated exactly.

    Parameters
    ----------
    alpha : ExactScalar or RealRoot2
        Evaluation point; the result has the same type.
    """
    counts = weight_distribution(code, bound)
    one = _scalar_count(alpha, 1)
    total = _scalar_count(alpha, 0)
    power = one
    for j, a_j in enumerate(counts):
        if j:
            power = power * alpha
        if a_j:
            total = total + _scalar_count(alpha, a_j) * power
    return total


def repeat_code(code: BinaryCode, k: int) -> BinaryCode:
    """The code whose words are each word of ``code`` written ``k`` times.

    Satisfies ``wt_{V^k}(x) = wt_V(x^k)``.
    """
    if k < 1:
        raise ValueError("repetition count must be >= 1")
    n = code.length
    rows = []
    for row in code.generator.rows:
        acc = 0
        for block in range(k):
            acc |= row << (block * n)
        rows.append(acc)
    return BinaryCode(F2Matrix(tuple(rows), k * n))


def binary_weight_decide(
    code: BinaryCode, t: int, bound: int = DEFAULT_CODEWORD_BOUND
) -> bool:
    """Whether some codeword has Hamming weight exactly ``t`` (brute force)."""
    if t < 0 or t > code.length:
        return False
    return any(w.bit_count() == t for w in code.codewords(bound))


def build_one_remainder(p: F2Matrix, r: int, s: int) -> OneRemainderMatrix:
    """Assemble ``[I_k|...|I_k|P|...|P]`` with the 1-mod-4 / 0-mod-4 counts."""
    return OneRemainderMatrix(p.nrows, r, s, p)


def split_one_remainder(g: F2Matrix) -> OneRemainderMatrix:
    """Recover the ``[I_k|...|I_k|P|...|P]`` block structure of ``g``.

    Tries every split with r = 1 mod 4 identity blocks and s = 0 mod 4 equal
    tail blocks; full row rank k follows syntactically from the leading
    identity.  Raises ValueError when no admissible split exists.
    """
    k, n = g.nrows, g.ncols
    ident = tuple(1 << i for i in range(k))

    def block(cols_from: int, width: int) -> tuple[int, ...] | None:
        if cols_from + width > n:
            return None
        mask = (1 << width) - 1
        return tuple((row >> cols_from) & mask for row in g.rows)

    if k > 0 and n >= k:
        max_r = n // k
        for r in range(1, max_r + 1, 4):
            if any(block(i * k, k) != ident for i in range(r)):
                continue
            tail = n - r * k
            if tail == 0:
                return OneRemainderMatrix(k, r, 0, F2Matrix((0,) * k, 0))
            for s in range(4, tail + 1, 4):
                if tail % s:
                    continue
                width = tail // s
                first = block(r * k, width)
                if all(
                    block(r * k + j * width, width) == first for j in range(1, s)
                ):
                    return OneRemainderMatrix(k, r, s, F2Matrix(first, width))
    raise ValueError("matrix has no [I_k|...|I_k|P|...|P] split")


def validate_one_remainder(g: F2Matrix) -> bool:
    """Whether ``g`` splits as ``[I_k|...|I_k|P|...|P]`` with admissible counts."""
    try:
        split_one_remainder(g)
    except ValueError:
        return False
    return True


def message_weight_pairs(p: F2Matrix) -> dict[tuple[int, int], int]:
    """Counts of ``(|v|, |vP|)`` over all messages v in F2^k.

    The map v -> vP multiplies the row vector v by P on the right.
    """
    k = p.nrows
    if k > 22:
        raise CodeBoundError("message enumeration bounded at 2^22")
    out: dict[tuple[int, int], int] = {}
    for msg in range(1 << k):
        img = 0
        m = msg
        i = 0
        while m:
            if m & 1:
                img ^= p.rows[i]
            m >>= 1
            i += 1
        key = (msg.bit_count(), img.bit_count())
        out[key] = out.get(key, 0) + 1
    return out


def parse_code(text: str) -> BinaryCode:
    """Read a generator matrix: one 0/1 row per line, '#' comments allowed."""
    rows = []
    width = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if any(ch not in "01" for ch in line):
            raise ValueError(f"bad code row: {line!r}")
        if width is None:
            width = len(line)
        elif len(line) != width:
            raise ValueError("code rows have unequal lengths")
        rows.append(sum(1 << j for j, ch in enumerate(line) if ch == "1"))
    if width is None:
        raise ValueError("empty code file")
    return BinaryCode(F2Matrix(tuple(rows), width))


def serialize_code(code: BinaryCode) -> str:
    lines = []
    for row in code.generator.rows:
        lines.append("".join("1" if (row >> j) & 1 else "0" for j in range(code.length)))
    return "\n".join(lines) + "\n"
