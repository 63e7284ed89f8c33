"""Aggregation of repeated reads into an interpolation multiplicity matrix.

Construction rule, per codeword position (one matrix column per position):
every read occurrence of symbol v adds mu to entry (v, j).  After
accumulation, a column whose most frequent read symbol is unique AND has
read count >= 2 is overwritten by a single entry mu*K at that symbol; ties
at the top count and all-distinct columns keep their accumulated entries.
The predicate is evaluated on read counts, not on the mu-scaled entries
(equivalent for K >= 2, and identical in value for K = 1).

Columns hold at most K nonzeros, so storage is per-column sparse.

Position taxonomy against the transmitted symbol c_j, with m = top read
count of the column:

- Success:   m >= 2, unique top symbol, and that symbol equals c_j
- Erasure_A: m == 1 and c_j appears (exactly once) among the reads
- Erasure_B: m == 1 and c_j does not appear
- Error:     everything else (wrong unique plurality, or a tie at m >= 2)
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import ReadSet

SUCCESS, ERASURE_A, ERASURE_B, ERROR = 0, 1, 2, 3
LABEL_NAMES = ("success", "erasure_a", "erasure_b", "error")


@dataclass(frozen=True)
class PositionTally:
    success: int
    erasure_a: int
    erasure_b: int
    error: int

    @property
    def n(self) -> int:
        return self.success + self.erasure_a + self.erasure_b + self.error

    def as_tuple(self) -> tuple:
        return (self.success, self.erasure_a, self.erasure_b, self.error)


class MultiplicityMatrix:
    """Column-sparse q x n multiplicity matrix."""

    def __init__(self, q: int, mu: int, col_rows: list, col_mults: list, overwritten: np.ndarray):
        self.q = q
        self.mu = mu
        self.col_rows = col_rows
        self.col_mults = col_mults
        self.overwritten = overwritten
        self.n = len(col_rows)

    def cost(self) -> int:
        """Number of linear interpolation constraints: sum of C(m+1, 2)."""
        return int(sum(int((m * (m + 1)) // 2) for col in self.col_mults for m in col))

    def score(self, word) -> int:
        """<M, [word]>: sum over positions of the entry at the word's symbol."""
        word = np.asarray(word, dtype=np.int64)
        if word.shape != (self.n,):
            raise ValueError(f"word must have length n={self.n}")
        total = 0
        for j in range(self.n):
            hit = self.col_rows[j] == word[j]
            if hit.any():
                total += int(self.col_mults[j][hit][0])
        return total

    def entry(self, row: int, j: int) -> int:
        hit = self.col_rows[j] == row
        return int(self.col_mults[j][hit][0]) if hit.any() else 0

    def max_entry(self) -> int:
        return int(max(col.max() for col in self.col_mults))

    def nnz(self) -> int:
        return int(sum(len(col) for col in self.col_rows))

    def dense(self) -> np.ndarray:
        out = np.zeros((self.q, self.n), dtype=np.int64)
        for j in range(self.n):
            out[self.col_rows[j], j] = self.col_mults[j]
        return out

    def to_text(self) -> str:
        """Sparse dump, one line per column: 'j: row=entry row=entry ...'."""
        lines = []
        for j in range(self.n):
            order = np.argsort(self.col_rows[j])
            pairs = " ".join(
                f"{int(r)}={int(m)}"
                for r, m in zip(self.col_rows[j][order], self.col_mults[j][order])
            )
            lines.append(f"{j}: {pairs}")
        return "\n".join(lines) + "\n"


def build_multiplicity(readset: ReadSet, mu: int) -> MultiplicityMatrix:
    if mu < 1:
        raise ValueError(f"multiplicity scale mu must be >= 1, got {mu}")
    reads = readset.reads
    K, n = reads.shape
    col_rows, col_mults = [], []
    overwritten = np.zeros(n, dtype=bool)
    for j in range(n):
        vals, cnts = np.unique(reads[:, j], return_counts=True)
        top = cnts.max()
        if top >= 2 and np.count_nonzero(cnts == top) == 1:
            col_rows.append(np.array([vals[np.argmax(cnts)]], dtype=np.int64))
            col_mults.append(np.array([mu * K], dtype=np.int64))
            overwritten[j] = True
        else:
            col_rows.append(vals.astype(np.int64))
            col_mults.append(mu * cnts.astype(np.int64))
    return MultiplicityMatrix(readset.channel.q, mu, col_rows, col_mults, overwritten)


def classify_positions(readset: ReadSet, transmitted):
    """Label every position and tally the four outcome classes.

    Returns (labels, tally) with labels[j] in {SUCCESS, ERASURE_A, ERASURE_B,
    ERROR}.
    """
    reads = readset.reads
    transmitted = np.asarray(transmitted, dtype=np.int64)
    K, n = reads.shape
    if transmitted.shape != (n,):
        raise ValueError("transmitted word length does not match the reads")
    labels = np.empty(n, dtype=np.int64)
    counts = [0, 0, 0, 0]
    for j in range(n):
        vals, cnts = np.unique(reads[:, j], return_counts=True)
        top = cnts.max()
        c_hit = vals == transmitted[j]
        c_count = int(cnts[c_hit][0]) if c_hit.any() else 0
        if top >= 2 and np.count_nonzero(cnts == top) == 1 and vals[np.argmax(cnts)] == transmitted[j]:
            lab = SUCCESS
        elif top == 1 and c_count == 1:
            lab = ERASURE_A
        elif top == 1 and c_count == 0:
            lab = ERASURE_B
        else:
            lab = ERROR
        labels[j] = lab
        counts[lab] += 1
    return labels, PositionTally(*counts)
