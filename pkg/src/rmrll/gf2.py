"""Bit-packed vectors and matrices over GF(2).

Bits are packed little-endian into 64-bit words: bit ``i`` of a vector lives
in word ``i // 64`` at position ``i % 64``. Padding bits past the logical
length are always zero, so word-level equality and popcounts are exact.

Everything here is built on a single Gauss-Jordan kernel, :func:`_eliminate`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

_WORD_BITS = 64

#: Status marker used by :func:`determined_coordinates` for positions whose
#: value is not forced by the known coordinates.
AMBIGUOUS = -1


class InconsistentError(ValueError):
    """Raised when observed bits are not consistent with any codeword."""


def _nwords(n: int) -> int:
    return (n + _WORD_BITS - 1) // _WORD_BITS


def pack_bits(bits) -> np.ndarray:
    """Pack a ``(..., n)`` array of 0/1 values into ``(..., ceil(n/64))`` uint64 words."""
    a = np.asarray(bits, dtype=np.uint8)
    n = a.shape[-1]
    pad = _nwords(n) * _WORD_BITS - n
    if pad:
        a = np.concatenate([a, np.zeros(a.shape[:-1] + (pad,), dtype=np.uint8)], axis=-1)
    packed = np.packbits(a & 1, axis=-1, bitorder="little")
    return np.ascontiguousarray(packed).view("<u8").astype(np.uint64, copy=False)


def unpack_bits(words: np.ndarray, n: int) -> np.ndarray:
    """Inverse of :func:`pack_bits`; returns a uint8 array of shape ``(..., n)``."""
    w = np.ascontiguousarray(words, dtype=np.uint64)
    as_bytes = w.view(np.uint8)
    return np.unpackbits(as_bytes, axis=-1, count=n, bitorder="little")


def popcount(words: np.ndarray) -> np.ndarray:
    """Hamming weight of each packed row (sum over the last axis)."""
    return np.bitwise_count(words).sum(axis=-1, dtype=np.int64)


def _tail_mask(n: int) -> np.uint64:
    rem = n % _WORD_BITS
    if rem == 0:
        return np.uint64(0xFFFFFFFFFFFFFFFF)
    return np.uint64((1 << rem) - 1)


class BitVector:
    """Immutable binary vector of fixed length."""

    __slots__ = ("length", "_words")

    def __init__(self, bits: Iterable[int] | np.ndarray | str = ()):
        if isinstance(bits, str):
            bits = [int(ch) for ch in bits if ch in "01"]
        arr = np.asarray(list(bits) if not isinstance(bits, np.ndarray) else bits, dtype=np.int64)
        if arr.ndim != 1:
            raise ValueError("BitVector needs a one-dimensional input")
        if arr.size and ((arr < 0) | (arr > 1)).any():
            raise ValueError("BitVector entries must be 0 or 1")
        self.length = int(arr.size)
        words = pack_bits(arr.astype(np.uint8)) if arr.size else np.zeros(0, dtype=np.uint64)
        words.flags.writeable = False
        self._words = words

    @classmethod
    def from_words(cls, words: np.ndarray, length: int) -> "BitVector":
        out = cls.__new__(cls)
        w = np.array(words, dtype=np.uint64).reshape(-1)[: _nwords(length)].copy()
        if w.size != _nwords(length):
            raise ValueError("not enough words for the requested length")
        if length:
            w[-1] &= _tail_mask(length)
        w.flags.writeable = False
        out.length = length
        out._words = w
        return out

    @classmethod
    def zeros(cls, n: int) -> "BitVector":
        return cls.from_words(np.zeros(_nwords(n), dtype=np.uint64), n)

    @classmethod
    def ones(cls, n: int) -> "BitVector":
        return cls.from_words(np.full(_nwords(n), 0xFFFFFFFFFFFFFFFF, dtype=np.uint64), n)

    @classmethod
    def from_int(cls, value: int, n: int) -> "BitVector":
        """Bit ``i`` of the vector is bit ``i`` of ``value``."""
        return cls([(value >> i) & 1 for i in range(n)])

    @property
    def words(self) -> np.ndarray:
        return self._words

    def to_array(self) -> np.ndarray:
        return unpack_bits(self._words, self.length)

    def to_int(self) -> int:
        return sum(int(w) << (_WORD_BITS * i) for i, w in enumerate(self._words))

    def weight(self) -> int:
        return int(np.bitwise_count(self._words).sum())

    def support(self) -> np.ndarray:
        return np.flatnonzero(self.to_array())

    def complement(self) -> "BitVector":
        return BitVector.from_words(~self._words, self.length)

    def _check(self, other: "BitVector") -> None:
        if not isinstance(other, BitVector) or other.length != self.length:
            raise ValueError("length mismatch")

    def __xor__(self, other: "BitVector") -> "BitVector":
        self._check(other)
        return BitVector.from_words(self._words ^ other._words, self.length)

    __add__ = __xor__

    def __and__(self, other: "BitVector") -> "BitVector":
        self._check(other)
        return BitVector.from_words(self._words & other._words, self.length)

    def __or__(self, other: "BitVector") -> "BitVector":
        self._check(other)
        return BitVector.from_words(self._words | other._words, self.length)

    def __invert__(self) -> "BitVector":
        return self.complement()

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, i: int) -> int:
        if i < 0:
            i += self.length
        if not 0 <= i < self.length:
            raise IndexError(i)
        return int((int(self._words[i // _WORD_BITS]) >> (i % _WORD_BITS)) & 1)

    def __iter__(self):
        return iter(int(b) for b in self.to_array())

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitVector):
            return NotImplemented
        return self.length == other.length and bool(np.array_equal(self._words, other._words))

    def __hash__(self) -> int:
        return hash((self.length, self._words.tobytes()))

    def __repr__(self) -> str:
        s = "".join(map(str, self.to_array()))
        if len(s) > 72:
            s = s[:69] + "..."
        return f"BitVector('{s}')"


class BitMatrix:
    """Immutable binary matrix stored as packed rows."""

    __slots__ = ("rows", "cols", "_words")

    def __init__(self, data: Sequence[Sequence[int]] | np.ndarray | Sequence[BitVector], cols: int | None = None):
        if isinstance(data, np.ndarray) and data.ndim == 2:
            arr = data.astype(np.uint8)
        else:
            data = list(data)
            if data and isinstance(data[0], BitVector):
                arr = np.array([v.to_array() for v in data], dtype=np.uint8)
            else:
                arr = np.array(data, dtype=np.uint8)
            if arr.size == 0:
                arr = np.zeros((len(data), cols or 0), dtype=np.uint8)
        if arr.ndim != 2:
            raise ValueError("BitMatrix needs two-dimensional input")
        if cols is not None and arr.shape[1] != cols:
            raise ValueError("column count mismatch")
        if (arr > 1).any():
            raise ValueError("BitMatrix entries must be 0 or 1")
        self.rows, self.cols = int(arr.shape[0]), int(arr.shape[1])
        words = pack_bits(arr) if self.cols else np.zeros((self.rows, 0), dtype=np.uint64)
        words.flags.writeable = False
        self._words = words

    @classmethod
    def from_words(cls, words: np.ndarray, cols: int) -> "BitMatrix":
        out = cls.__new__(cls)
        w = np.array(words, dtype=np.uint64).reshape(-1, _nwords(cols))
        if cols:
            w[:, -1] &= _tail_mask(cols)
        w.flags.writeable = False
        out.rows, out.cols = int(w.shape[0]), cols
        out._words = w
        return out

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(np.eye(n, dtype=np.uint8))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls.from_words(np.zeros((rows, _nwords(cols)), dtype=np.uint64), cols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def words(self) -> np.ndarray:
        return self._words

    def to_array(self) -> np.ndarray:
        if self.rows == 0:
            return np.zeros((0, self.cols), dtype=np.uint8)
        return unpack_bits(self._words, self.cols)

    def row(self, i: int) -> BitVector:
        return BitVector.from_words(self._words[i], self.cols)

    def __iter__(self):
        return (self.row(i) for i in range(self.rows))

    def __len__(self) -> int:
        return self.rows

    def transpose(self) -> "BitMatrix":
        return BitMatrix(self.to_array().T)

    @property
    def T(self) -> "BitMatrix":
        return self.transpose()

    def columns(self, idx) -> "BitMatrix":
        """Column-selected submatrix ``M[:, idx]``."""
        idx = np.asarray(sorted(idx) if isinstance(idx, (set, frozenset)) else idx, dtype=np.int64)
        return BitMatrix(self.to_array()[:, idx].reshape(self.rows, idx.size))

    def vecmul(self, v: BitVector) -> BitVector:
        """Row-vector product ``v · M``: XOR of the rows selected by ``v``."""
        if v.length != self.rows:
            raise ValueError(f"vector length {v.length} != matrix rows {self.rows}")
        sel = v.to_array().astype(bool)
        acc = np.bitwise_xor.reduce(self._words[sel], axis=0) if sel.any() else np.zeros(_nwords(self.cols), np.uint64)
        return BitVector.from_words(acc, self.cols)

    def matvec(self, x: BitVector) -> BitVector:
        """Column-vector product ``M · x``."""
        if x.length != self.cols:
            raise ValueError(f"vector length {x.length} != matrix cols {self.cols}")
        par = np.bitwise_count(self._words & x.words).sum(axis=-1) & 1
        return BitVector(par.astype(np.uint8))

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._words, other._words))

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._words.tobytes()))

    def __repr__(self) -> str:
        return f"BitMatrix(rows={self.rows}, cols={self.cols})"


def _eliminate_numpy(A: np.ndarray, ncols: int) -> list[int]:
    nrows = A.shape[0]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        w = c // _WORD_BITS
        bit = np.uint64(1 << (c % _WORD_BITS))
        hits = (A[:, w] & bit) != 0
        cand = np.flatnonzero(hits[r:])
        if cand.size == 0:
            continue
        k = r + int(cand[0])
        if k != r:
            A[[r, k]] = A[[k, r]]
            hits[r], hits[k] = hits[k], hits[r]
        hits[r] = False
        np.bitwise_xor(A, A[r], out=A, where=hits[:, None])
        pivots.append(c)
        r += 1
    return pivots


def _eliminate_loops(A, ncols, pivots):
    # plain loops, meant to be compiled; returns the number of pivots found
    nrows, nw = A.shape
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        w = c // 64
        bit = np.uint64(1) << np.uint64(c % 64)
        k = r
        while k < nrows and (A[k, w] & bit) == 0:
            k += 1
        if k == nrows:
            continue
        if k != r:
            for j in range(nw):
                t = A[r, j]
                A[r, j] = A[k, j]
                A[k, j] = t
        for i in range(nrows):
            if i != r and (A[i, w] & bit) != 0:
                for j in range(nw):
                    A[i, j] ^= A[r, j]
        pivots[r] = c
        r += 1
    return r


try:
    import numba

    _eliminate_compiled = numba.njit(cache=True, nogil=True)(_eliminate_loops)
except ImportError:  # pragma: no cover - depends on the environment
    _eliminate_compiled = None


def _eliminate(A: np.ndarray, ncols: int) -> list[int]:
    """In-place Gauss-Jordan elimination on packed rows.

    Only the first ``ncols`` columns are eligible as pivots, which lets callers
    carry augmented columns along. Returns the pivot columns; pivot ``j`` sits
    in row ``j``. Uses a compiled kernel when numba is importable.
    """
    if _eliminate_compiled is None or A.shape[0] == 0:
        return _eliminate_numpy(A, ncols)
    pivots = np.empty(min(A.shape[0], ncols), dtype=np.int64)
    npiv = _eliminate_compiled(A, ncols, pivots)
    return pivots[:npiv].tolist()


def rank(M: BitMatrix) -> int:
    if M.rows == 0 or M.cols == 0:
        return 0
    return len(_eliminate(M.words.copy(), M.cols))


def row_reduce(M: BitMatrix) -> tuple[BitMatrix, list[int]]:
    """Reduced row-echelon form (nonzero rows only) and the pivot columns."""
    A = M.words.copy()
    piv = _eliminate(A, M.cols) if M.rows and M.cols else []
    return BitMatrix.from_words(A[: len(piv)], M.cols), piv


def _nullspace_from_rref(R: np.ndarray, pivots: list[int], ncols: int) -> np.ndarray:
    """Nullspace basis (unpacked, one vector per row) given unpacked RREF rows."""
    free = np.setdiff1d(np.arange(ncols), pivots)
    N = np.zeros((free.size, ncols), dtype=np.uint8)
    N[np.arange(free.size), free] = 1
    if pivots and free.size:
        N[:, pivots] = R[: len(pivots)][:, free].T
    return N


def nullspace(A: BitMatrix) -> BitMatrix:
    """Basis of ``{x : A·x = 0}``, one basis vector per row."""
    R, piv = row_reduce(A)
    return BitMatrix(_nullspace_from_rref(R.to_array(), piv, A.cols).reshape(-1, A.cols), cols=A.cols)


@dataclass(frozen=True)
class SolutionSet:
    """Solutions of ``A·x = b``.

    ``kind`` is ``"unique"``, ``"affine"`` or ``"inconsistent"``. For the first
    two, ``particular`` solves the system and ``nullspace`` spans the
    homogeneous solutions (empty when unique).
    """

    kind: str
    particular: BitVector | None = None
    nullspace: BitMatrix | None = None

    @property
    def consistent(self) -> bool:
        return self.kind != "inconsistent"

    @property
    def dimension(self) -> int:
        return self.nullspace.rows if self.nullspace is not None else -1


def solve(A: BitMatrix, b: BitVector) -> SolutionSet:
    if b.length != A.rows:
        raise ValueError(f"right-hand side has length {b.length}, expected {A.rows}")
    n = A.cols
    aug = np.concatenate([A.to_array(), b.to_array()[:, None]], axis=1)
    W = pack_bits(aug)
    piv = _eliminate(W, n)
    R = unpack_bits(W, n + 1)
    if R[len(piv):, n].any():
        return SolutionSet("inconsistent")
    x = np.zeros(n, dtype=np.uint8)
    if piv:
        x[piv] = R[: len(piv), n]
    N = _nullspace_from_rref(R[:, :n], piv, n)
    kind = "unique" if N.shape[0] == 0 else "affine"
    return SolutionSet(kind, BitVector(x), BitMatrix(N.reshape(-1, n), cols=n))


def in_row_space(v: BitVector, M: BitMatrix) -> bool:
    """Whether ``v`` is a GF(2) combination of the rows of ``M``."""
    if v.length != M.cols:
        raise ValueError("length mismatch")
    if M.rows == 0:
        return v.weight() == 0
    stacked = BitMatrix.from_words(np.vstack([M.words, v.words[None, :]]), M.cols)
    return rank(stacked) == rank(M)


@dataclass
class ErasureResolver:
    """Which coordinates of a linear code are forced by a set of known bits.

    Works on the parity-check side: with ``H`` spanning the dual code, the
    unknown coordinates ``x_E`` must satisfy ``H_E x_E = H_K x_K``. A position
    in ``E`` is forced exactly when it is a pivot of that system whose row has
    no free variables; this is the same as its generator column lying in the
    span of the known generator columns, but costs an elimination over only
    ``|E|`` columns.
    """

    generator: BitMatrix
    _parity: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        H = nullspace(self.generator)
        self._parity = H.to_array().astype(np.uint8)
        self._parity_words = H.words

    @property
    def n(self) -> int:
        return self.generator.cols

    def resolve(self, erased: np.ndarray, values: np.ndarray) -> np.ndarray:
        """Status per position given an erasure mask and the unerased values.

        ``values`` is read only where ``erased`` is False. Returns an int8 array
        holding the forced bit or :data:`AMBIGUOUS`.
        """
        erased = np.asarray(erased, dtype=bool)
        values = np.asarray(values, dtype=np.uint8) & 1
        out = np.where(erased, AMBIGUOUS, values).astype(np.int8)
        H = self._parity
        E = np.flatnonzero(erased)
        if H.shape[0] == 0:
            return out
        known = ~erased
        observed = pack_bits(np.where(known, values, 0).astype(np.uint8))
        syndrome = (popcount(self._parity_words & observed) & 1).astype(np.uint8)
        if E.size == 0:
            if syndrome.any():
                raise InconsistentError("known bits are not a codeword")
            return out
        aug = np.concatenate([H[:, E], syndrome[:, None]], axis=1)
        W = pack_bits(aug)
        piv = _eliminate(W, E.size)
        R = unpack_bits(W, E.size + 1)
        if R[len(piv):, E.size].any():
            raise InconsistentError("known bits are not consistent with any codeword")
        if piv:
            Rp = R[: len(piv)]
            free = np.ones(E.size, dtype=bool)
            free[piv] = False
            forced = ~Rp[:, :E.size][:, free].any(axis=1)
            pos = E[np.asarray(piv)[forced]]
            out[pos] = Rp[forced, E.size]
        return out


def determined_coordinates(G: BitMatrix, known: Mapping[int, int]) -> np.ndarray:
    """Per-position status for the row space of ``G`` given some known bits.

    Entry ``i`` is the bit every consistent codeword carries at ``i``, or
    :data:`AMBIGUOUS` when consistent codewords disagree there.
    """
    n = G.cols
    erased = np.ones(n, dtype=bool)
    values = np.zeros(n, dtype=np.uint8)
    for pos, bit in known.items():
        if not 0 <= pos < n:
            raise IndexError(pos)
        erased[pos] = False
        values[pos] = bit & 1
    return ErasureResolver(G).resolve(erased, values)


__all__ = [
    "AMBIGUOUS",
    "BitMatrix",
    "BitVector",
    "ErasureResolver",
    "InconsistentError",
    "SolutionSet",
    "determined_coordinates",
    "in_row_space",
    "nullspace",
    "pack_bits",
    "popcount",
    "rank",
    "row_reduce",
    "solve",
    "unpack_bits",
]
