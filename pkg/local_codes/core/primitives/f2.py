"""
Linear algebra over the two-element field.

Matrices keep their rows as sorted support tuples, which is also the JSON
interchange form. Internally rows are handled as Python-int bitsets
(bit i = column i) or as packed numpy words.
"""

from __future__ import annotations

import logging
import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import sparse

from .errors import FormatError, ImageNotContained, ShapeMismatch

LOGGER = logging.getLogger(__name__)

INFINITY_TOKEN = "infinity"

_POPCOUNT8 = np.array([bin(i).count("1") for i in range(256)], dtype=np.int64)
_LOW_TABLE_BITS = 16


def bits_to_support(bits: int) -> Tuple[int, ...]:
    support: List[int] = []
    while bits:
        low = bits & -bits
        support.append(low.bit_length() - 1)
        bits ^= low
    return tuple(support)


def support_to_bits(support: Iterable[int]) -> int:
    bits = 0
    for index in support:
        bits |= 1 << int(index)
    return bits


def lex_less(a: int, b: int) -> bool:
    """True when the support of ``a`` is lexicographically smaller than that of ``b``."""
    diff = a ^ b
    return bool(diff) and bool(a & diff & -diff)


def encode_weight(value: Union[int, float]) -> Union[int, str]:
    return INFINITY_TOKEN if value == math.inf else int(value)


def decode_weight(value: Union[int, str]) -> Union[int, float]:
    return math.inf if value == INFINITY_TOKEN else int(value)


def _validate_support(support: Iterable[int], length: int, what: str) -> Tuple[int, ...]:
    normalized = tuple(int(i) for i in support)
    for left, right in zip(normalized, normalized[1:]):
        if left >= right:
            raise ValueError(f"{what} support must be strictly increasing, got {normalized}.")
    if normalized and (normalized[0] < 0 or normalized[-1] >= length):
        raise ValueError(f"{what} support {normalized} out of range for length {length}.")
    return normalized


@dataclass(frozen=True)
class BitVector:
    """Sparse vector over the two-element field."""

    length: int
    support: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "support", _validate_support(self.support, self.length, "BitVector"))

    @classmethod
    def from_bits(cls, length: int, bits: int) -> "BitVector":
        return cls(length, bits_to_support(bits))

    @classmethod
    def from_dense(cls, values: Sequence[int]) -> "BitVector":
        dense = np.asarray(values, dtype=np.int64).reshape(-1) & 1
        return cls(int(dense.size), tuple(int(i) for i in np.flatnonzero(dense)))

    @cached_property
    def bits(self) -> int:
        return support_to_bits(self.support)

    @property
    def weight(self) -> int:
        return len(self.support)

    def to_dense(self) -> np.ndarray:
        dense = np.zeros(self.length, dtype=np.uint8)
        dense[list(self.support)] = 1
        return dense

    def __add__(self, other: "BitVector") -> "BitVector":
        if other.length != self.length:
            raise ShapeMismatch(f"Cannot add vectors of length {self.length} and {other.length}.")
        return BitVector.from_bits(self.length, self.bits ^ other.bits)

    def to_dict(self) -> Dict[str, Any]:
        return {"len": self.length, "support": list(self.support)}

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "BitVector":
        try:
            return cls(int(payload["len"]), tuple(payload["support"]))
        except KeyError as exc:
            raise FormatError("missing key", field=str(exc.args[0])) from exc


@dataclass(frozen=True)
class BitMatrix:
    """
    Sparse matrix over the two-element field stored row by row.

    ``row_support[i]`` lists the columns holding a one in row ``i``.
    """

    rows: int
    cols: int
    row_support: Tuple[Tuple[int, ...], ...] = ()

    def __post_init__(self) -> None:
        supports = tuple(
            _validate_support(row, self.cols, f"BitMatrix row {index}")
            for index, row in enumerate(self.row_support)
        )
        if not supports:
            supports = tuple(() for _ in range(self.rows))
        if len(supports) != self.rows:
            raise ShapeMismatch(f"Expected {self.rows} rows, got {len(supports)}.")
        object.__setattr__(self, "row_support", supports)

    # ------------------------------------------------------------------ builders
    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, size: int) -> "BitMatrix":
        return cls(size, size, tuple((i,) for i in range(size)))

    @classmethod
    def from_row_bits(cls, row_bits: Sequence[int], cols: int) -> "BitMatrix":
        return cls(len(row_bits), cols, tuple(bits_to_support(bits) for bits in row_bits))

    @classmethod
    def from_dense(cls, values: Any) -> "BitMatrix":
        dense = np.asarray(values, dtype=np.int64)
        if dense.ndim != 2:
            raise ShapeMismatch(f"Dense matrix must be 2-dimensional, got shape {dense.shape}.")
        dense = dense & 1
        return cls(
            int(dense.shape[0]),
            int(dense.shape[1]),
            tuple(tuple(int(c) for c in np.flatnonzero(row)) for row in dense),
        )

    @classmethod
    def from_sparse(cls, matrix: Any) -> "BitMatrix":
        csr = sparse.csr_matrix(matrix)
        csr.data = csr.data.astype(np.int64) % 2
        csr.eliminate_zeros()
        csr.sort_indices()
        rows = tuple(
            tuple(int(c) for c in csr.indices[csr.indptr[i] : csr.indptr[i + 1]])
            for i in range(csr.shape[0])
        )
        return cls(int(csr.shape[0]), int(csr.shape[1]), rows)

    @classmethod
    def from_alist(cls, text: str, *, source: Optional[str] = None) -> "BitMatrix":
        """Parse the classical alist sparse parity-check format (1-based indices)."""
        lines = [line.split() for line in text.splitlines() if line.strip()]
        try:
            n_cols, n_rows = (int(v) for v in lines[0][:2])
            row_lines = lines[4 + n_cols : 4 + n_cols + n_rows]
            col_lines = lines[4 : 4 + n_cols]
            if len(row_lines) != n_rows or len(col_lines) != n_cols:
                raise FormatError(f"expected {n_cols} column and {n_rows} row lines", source=source)
            rows = tuple(tuple(sorted(int(v) - 1 for v in line if int(v) > 0)) for line in row_lines)
        except (IndexError, ValueError) as exc:
            if isinstance(exc, FormatError):
                raise
            raise FormatError(f"malformed alist ({exc})", source=source) from exc
        matrix = cls(n_rows, n_cols, rows)
        by_column = matrix.transpose().row_support
        for index, line in enumerate(col_lines):
            expected = tuple(sorted(int(v) - 1 for v in line if int(v) > 0))
            if expected != by_column[index]:
                raise FormatError(
                    f"column {index + 1} disagrees with row section", source=source, field=f"line {5 + index}"
                )
        return matrix

    # Block builders work on supports directly so that empty blocks are fine.
    @classmethod
    def hstack(cls, blocks: Sequence["BitMatrix"]) -> "BitMatrix":
        rows = {b.rows for b in blocks}
        if len(rows) != 1:
            raise ShapeMismatch(f"hstack needs equal row counts, got {sorted(rows)}.")
        merged: List[List[int]] = [[] for _ in range(blocks[0].rows)]
        offset = 0
        for block in blocks:
            for i, row in enumerate(block.row_support):
                merged[i].extend(c + offset for c in row)
            offset += block.cols
        return cls(blocks[0].rows, offset, tuple(tuple(row) for row in merged))

    @classmethod
    def vstack(cls, blocks: Sequence["BitMatrix"]) -> "BitMatrix":
        cols = {b.cols for b in blocks}
        if len(cols) != 1:
            raise ShapeMismatch(f"vstack needs equal column counts, got {sorted(cols)}.")
        supports = tuple(row for block in blocks for row in block.row_support)
        return cls(len(supports), blocks[0].cols, supports)

    @classmethod
    def kron(cls, left: "BitMatrix", right: "BitMatrix") -> "BitMatrix":
        supports = tuple(
            tuple(a * right.cols + b for a in row_a for b in row_b)
            for row_a in left.row_support
            for row_b in right.row_support
        )
        return cls(left.rows * right.rows, left.cols * right.cols, supports)

    # ----------------------------------------------------------------- queries
    @cached_property
    def row_bits(self) -> Tuple[int, ...]:
        return tuple(support_to_bits(row) for row in self.row_support)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def nnz(self) -> int:
        return sum(len(row) for row in self.row_support)

    def column_weights(self) -> np.ndarray:
        weights = np.zeros(self.cols, dtype=np.int64)
        for row in self.row_support:
            weights[list(row)] += 1
        return weights

    @property
    def max_row_weight(self) -> int:
        return max((len(row) for row in self.row_support), default=0)

    @property
    def max_col_weight(self) -> int:
        return int(self.column_weights().max(initial=0))

    def is_zero(self) -> bool:
        return self.nnz == 0

    def to_dense(self) -> np.ndarray:
        dense = np.zeros((self.rows, self.cols), dtype=np.uint8)
        for i, row in enumerate(self.row_support):
            dense[i, list(row)] = 1
        return dense

    def to_sparse(self) -> sparse.csr_matrix:
        indptr = np.zeros(self.rows + 1, dtype=np.int64)
        indptr[1:] = np.cumsum([len(row) for row in self.row_support])
        indices = np.fromiter((c for row in self.row_support for c in row), dtype=np.int64, count=int(indptr[-1]))
        data = np.ones(indices.size, dtype=np.int64)
        return sparse.csr_matrix((data, indices, indptr), shape=(self.rows, self.cols))

    def transpose(self) -> "BitMatrix":
        columns: List[List[int]] = [[] for _ in range(self.cols)]
        for i, row in enumerate(self.row_support):
            for c in row:
                columns[c].append(i)
        return BitMatrix(self.cols, self.rows, tuple(tuple(col) for col in columns))

    @property
    def T(self) -> "BitMatrix":
        return self.transpose()

    def multiply(self, other: "BitMatrix") -> "BitMatrix":
        if self.cols != other.rows:
            raise ShapeMismatch(f"Cannot multiply {self.shape} by {other.shape}.")
        return BitMatrix.from_sparse(self.to_sparse() @ other.to_sparse())

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        return self.multiply(other)

    def apply(self, vector: BitVector) -> BitVector:
        """Return M·v."""
        if vector.length != self.cols:
            raise ShapeMismatch(f"Vector of length {vector.length} does not match {self.cols} columns.")
        bits = vector.bits
        result = 0
        for i, row in enumerate(self.row_bits):
            if (row & bits).bit_count() & 1:
                result |= 1 << i
        return BitVector.from_bits(self.rows, result)

    def rows_as_vectors(self) -> List[BitVector]:
        return [BitVector(self.cols, row) for row in self.row_support]

    def to_dict(self) -> Dict[str, Any]:
        return {"rows": self.rows, "cols": self.cols, "row_support": [list(row) for row in self.row_support]}

    @classmethod
    def from_dict(cls, payload: Dict[str, Any], *, source: Optional[str] = None) -> "BitMatrix":
        try:
            return cls(int(payload["rows"]), int(payload["cols"]), tuple(tuple(r) for r in payload["row_support"]))
        except KeyError as exc:
            raise FormatError("missing key", source=source, field=str(exc.args[0])) from exc
        except (TypeError, ValueError) as exc:
            raise FormatError(str(exc), source=source, field="row_support") from exc


class GF2Basis:
    """
    Incrementally reduced basis. Each stored row is keyed by its lowest set bit
    and no stored row contains another row's key bit.
    """

    def __init__(self, rows: Iterable[int] = ()) -> None:
        self._rows: Dict[int, int] = {}
        for row in rows:
            self.insert(row)

    def reduce(self, vector: int) -> int:
        for pivot, row in self._rows.items():
            if vector >> pivot & 1:
                vector ^= row
        return vector

    def insert(self, vector: int) -> bool:
        vector = self.reduce(vector)
        if not vector:
            return False
        pivot = (vector & -vector).bit_length() - 1
        for key, row in self._rows.items():
            if row >> pivot & 1:
                self._rows[key] = row ^ vector
        self._rows[pivot] = vector
        return True

    def contains(self, vector: int) -> bool:
        return self.reduce(vector) == 0

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> List[int]:
        return sorted(self._rows)

    def items(self) -> List[Tuple[int, int]]:
        return sorted(self._rows.items())

    def copy(self) -> "GF2Basis":
        clone = GF2Basis()
        clone._rows = dict(self._rows)
        return clone


def rank(matrix: BitMatrix) -> int:
    """Rank over the two-element field."""
    return GF2Basis(matrix.row_bits).rank


def nullspace_basis(matrix: BitMatrix) -> List[BitVector]:
    """Basis of {v : M·v = 0}, one vector per free column in increasing order."""
    basis = GF2Basis(matrix.row_bits)
    reduced = basis.items()
    pivots = {pivot for pivot, _ in reduced}
    vectors: List[BitVector] = []
    for free in range(matrix.cols):
        if free in pivots:
            continue
        bits = 1 << free
        for pivot, row in reduced:
            if row >> free & 1:
                bits |= 1 << pivot
        vectors.append(BitVector.from_bits(matrix.cols, bits))
    return vectors


def span_contains(basis_vectors: Sequence[BitVector], vector: BitVector) -> bool:
    return GF2Basis(v.bits for v in basis_vectors).contains(vector.bits)


@dataclass(frozen=True)
class SearchBudget:
    """Limits for minimum-weight coset search."""

    exact_qubits: int = 20  # largest quotient dimension searched exactly
    enumeration_bits: int = 24  # log2 of the largest enumerated kernel slice
    isd_iterations: int = 200
    isd_window: int = 24
    seed: int = 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "exact_qubits": self.exact_qubits,
            "enumeration_bits": self.enumeration_bits,
            "isd_iterations": self.isd_iterations,
            "isd_window": self.isd_window,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "SearchBudget":
        return cls(**{key: int(value) for key, value in payload.items() if key in cls.__dataclass_fields__})


@dataclass(frozen=True)
class CosetSearchResult:
    """Outcome of a minimum-weight search over span(kernel) minus span(image)."""

    weight: Union[int, float]  # math.inf when the quotient is trivial
    witness: Optional[BitVector]
    exact: bool
    method: str  # trivial | graphic | enumeration | isd
    quotient_dim: int
    extras: Dict[str, Any] = field(default_factory=dict)

    @property
    def is_trivial(self) -> bool:
        return self.weight == math.inf

    @property
    def limit(self) -> Optional[str]:
        """Budget field that pushed the search off the exact path, if any."""
        return self.extras.get("limit")

    def to_dict(self) -> Dict[str, Any]:
        payload = {
            "weight": encode_weight(self.weight),
            "witness": self.witness.to_dict() if self.witness is not None else None,
            "exact": self.exact,
            "method": self.method,
            "quotient_dim": self.quotient_dim,
        }
        if self.limit is not None:
            payload["limit"] = self.limit
        return payload


def _common_length(groups: Sequence[Sequence[BitVector]], length: Optional[int]) -> Optional[int]:
    for group in groups:
        for vector in group:
            if length is None:
                length = vector.length
            elif vector.length != length:
                raise ShapeMismatch(f"Vectors of lengths {length} and {vector.length} mixed.")
    return length


def _split_quotient(kernel: Sequence[int], image: Sequence[int]) -> Tuple[List[int], List[int], GF2Basis]:
    """Return (independent image rows, quotient representatives, image basis)."""
    kernel_basis = GF2Basis(kernel)
    image_rows: List[int] = []
    image_basis = GF2Basis()
    for index, row in enumerate(image):
        if not kernel_basis.contains(row):
            raise ImageNotContained(f"Image vector {index} is not in the kernel span.")
        if image_basis.insert(row):
            image_rows.append(row)
    extended = image_basis.copy()
    reps = [row for row in kernel if extended.insert(row)]
    return image_rows, reps, image_basis


def _words(bits: int, words: int) -> np.ndarray:
    return np.frombuffer(bits.to_bytes(words * 8, "little"), dtype="<u8").copy()


def _row_weights(block: np.ndarray) -> np.ndarray:
    counter = getattr(np, "bitwise_count", None)
    if counter is not None:
        return counter(block).sum(axis=1, dtype=np.int64)
    as_bytes = block.view(np.uint8).reshape(block.shape[0], -1)
    return _POPCOUNT8[as_bytes].sum(axis=1)


def _enumerate_quotient(reps: List[int], image: List[int], length: int) -> Tuple[int, int]:
    """
    Exhaustive search over span(reps) + span(image) with a nonzero reps part.

    Combinations are indexed by N = sum c_j 2^j over generators
    [reps..., image...]. Among words of minimum weight the one with the
    lexicographically smallest support wins.
    """
    generators = reps + image
    total = len(generators)
    k = len(reps)
    words = max(1, (length + 63) // 64)
    lo = min(total, _LOW_TABLE_BITS)
    hi = total - lo

    table = np.zeros((1 << lo, words), dtype="<u8")
    for j in range(lo):
        table[1 << j : 1 << (j + 1)] = table[: 1 << j] ^ _words(generators[j], words)
    low_index = np.arange(1 << lo, dtype=np.int64)
    low_valid = (low_index & ((1 << min(k, lo)) - 1)) != 0
    high_words = [_words(generators[lo + j], words) for j in range(hi)]
    high_q_mask = (1 << max(k - lo, 0)) - 1
    sentinel = np.int64(length + 1)

    best_weight, best_bits = length + 1, 0
    current = np.zeros(words, dtype="<u8")
    for step in range(1 << hi):
        if step:
            current ^= high_words[(step & -step).bit_length() - 1]
        gray = step ^ (step >> 1)
        words_here = table ^ current
        weights = _row_weights(words_here)
        if not gray & high_q_mask:
            weights = np.where(low_valid, weights, sentinel)
        chunk_best = int(weights.min())
        if chunk_best > best_weight:
            continue
        candidates = (int.from_bytes(row.tobytes(), "little") for row in words_here[weights == chunk_best])
        candidate = min(candidates, key=bits_to_support)
        if chunk_best < best_weight or lex_less(candidate, best_bits):
            best_weight, best_bits = chunk_best, candidate
    return best_weight, best_bits


def _graphic_search(check: BitMatrix, image_basis: GF2Basis) -> Optional[Tuple[int, int]]:
    """
    Shortest nontrivial cycle when every column of ``check`` has weight <= 2.

    Columns are edges between check rows (weight-1 columns end at a virtual
    vertex, weight-0 columns are loops). Fundamental cycles of BFS trees from
    every root contain a shortest nontrivial cycle.
    """
    virtual = check.rows
    adjacency: List[List[Tuple[int, int]]] = [[] for _ in range(check.rows + 1)]
    edges: List[Tuple[int, int, int]] = []
    best: Optional[Tuple[int, int]] = None

    def consider(candidate: int) -> None:
        nonlocal best
        if not candidate:
            return
        weight = candidate.bit_count()
        if best is not None and (weight > best[0] or (weight == best[0] and not lex_less(candidate, best[1]))):
            return
        if image_basis.contains(candidate):
            return
        best = (weight, candidate)

    for column, rows in enumerate(check.transpose().row_support):
        if not rows:
            consider(1 << column)
            continue
        u, v = (rows[0], virtual) if len(rows) == 1 else rows
        adjacency[u].append((v, column))
        adjacency[v].append((u, column))
        edges.append((u, v, column))

    for root, neighbours in enumerate(adjacency):
        if not neighbours:
            continue
        paths = {root: 0}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v, column in adjacency[u]:
                if v not in paths:
                    paths[v] = paths[u] | (1 << column)
                    queue.append(v)
        for u, v, column in edges:
            if u in paths:
                consider(paths[u] ^ paths[v] ^ (1 << column))
    return best


def _isd_search(
    kernel: List[int],
    image_basis: GF2Basis,
    length: int,
    budget: SearchBudget,
    seed_best: Tuple[int, int],
) -> Tuple[int, int]:
    """Randomized information-set search over the kernel span (heuristic)."""
    independent = GF2Basis()
    rows = [row for row in kernel if independent.insert(row)]
    generator = np.array(
        [np.unpackbits(np.frombuffer(row.to_bytes((length + 7) // 8, "little"), dtype=np.uint8), bitorder="little")[:length] for row in rows],
        dtype=np.uint8,
    )
    rng = np.random.default_rng(budget.seed)
    best_weight, best_bits = seed_best

    def consider(candidates: np.ndarray, perm: np.ndarray) -> None:
        nonlocal best_weight, best_bits
        weights = candidates.sum(axis=1)
        for index in np.flatnonzero(weights <= best_weight):
            restored = np.zeros(length, dtype=np.uint8)
            restored[perm] = candidates[index]
            bits = int.from_bytes(np.packbits(restored, bitorder="little").tobytes(), "little")
            weight = int(weights[index])
            if not bits or image_basis.contains(bits):
                continue
            if weight < best_weight or (weight == best_weight and lex_less(bits, best_bits)):
                best_weight, best_bits = weight, bits

    for _ in range(budget.isd_iterations):
        perm = rng.permutation(length)
        work = generator[:, perm].copy()
        pivot_row = 0
        for column in range(length):
            if pivot_row >= work.shape[0]:
                break
            hits = np.flatnonzero(work[pivot_row:, column]) + pivot_row
            if hits.size == 0:
                continue
            if hits[0] != pivot_row:
                work[[pivot_row, hits[0]]] = work[[hits[0], pivot_row]]
            others = np.flatnonzero(work[:, column])
            others = others[others != pivot_row]
            work[others] ^= work[pivot_row]
            pivot_row += 1
        consider(work, perm)
        for offset in range(1, min(budget.isd_window, work.shape[0] - 1) + 1):
            consider(work[:-offset] ^ work[offset:], perm)
    return best_weight, best_bits


def min_coset_weight(
    kernel_basis: Sequence[BitVector],
    image_basis: Sequence[BitVector],
    budget: Optional[SearchBudget] = None,
    *,
    check_matrix: Optional[BitMatrix] = None,
    length: Optional[int] = None,
) -> CosetSearchResult:
    """
    Minimum Hamming weight over span(kernel_basis) minus span(image_basis).

    ``check_matrix`` (optional) is a matrix whose nullspace equals the kernel
    span; when its columns have weight at most two the search runs as an exact
    shortest-cycle computation at any size.

    Otherwise the search is exact only while the quotient dimension fits
    ``budget.exact_qubits`` and quotient plus image generators fit
    ``budget.enumeration_bits``. Past either limit it falls back to
    information-set search, returns ``exact=False`` and names the limit it
    hit in ``result.limit``.
    """
    budget = budget or SearchBudget()
    length = _common_length([kernel_basis, image_basis], length)
    kernel = [v.bits for v in kernel_basis]
    image_rows, reps, image_span = _split_quotient(kernel, [v.bits for v in image_basis])
    k = len(reps)
    if k == 0 or length is None:
        return CosetSearchResult(math.inf, None, True, "trivial", 0)

    if check_matrix is not None and check_matrix.cols == length and check_matrix.max_col_weight <= 2:
        kernel_rank = len(reps) + len(image_rows)
        annihilated = all(check_matrix.apply(v).weight == 0 for v in kernel_basis)
        if annihilated and kernel_rank == length - rank(check_matrix):
            found = _graphic_search(check_matrix, image_span)
            if found is not None:
                weight, bits = found
                return CosetSearchResult(weight, BitVector.from_bits(length, bits), True, "graphic", k)

    limit = "exact_qubits" if k > budget.exact_qubits else None
    if limit is None and k + len(image_rows) > budget.enumeration_bits:
        limit = "enumeration_bits"
    if limit is None:
        weight, bits = _enumerate_quotient(reps, image_rows, length)
        return CosetSearchResult(weight, BitVector.from_bits(length, bits), True, "enumeration", k)

    LOGGER.info(
        "\n%s\n[COSET SEARCH] heuristic\nQuotient dim: %d\nImage rank: %d\nLimit: %s\nIterations: %d\n%s",
        "-" * 80,
        k,
        len(image_rows),
        limit,
        budget.isd_iterations,
        "-" * 80,
    )
    seed_rep = min(reps, key=lambda bits: (bits.bit_count(), bits_to_support(bits)))
    weight, bits = _isd_search(kernel, image_span, length, budget, (seed_rep.bit_count(), seed_rep))
    return CosetSearchResult(weight, BitVector.from_bits(length, bits), False, "isd", k, {"limit": limit})


__all__ = [
    "BitMatrix",
    "BitVector",
    "CosetSearchResult",
    "GF2Basis",
    "INFINITY_TOKEN",
    "SearchBudget",
    "bits_to_support",
    "decode_weight",
    "encode_weight",
    "lex_less",
    "min_coset_weight",
    "nullspace_basis",
    "rank",
    "span_contains",
    "support_to_bits",
]
