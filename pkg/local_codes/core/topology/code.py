"""
CSS codes as three-term chain complexes.

``h2`` is stored as the check matrix (rows are the X-type generators); the
chain map C2 -> C1 is its transpose.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple, Union

import networkx as nx

from ..primitives.errors import ChainConditionViolated, DimensionOutOfRange, FormatError, ShapeMismatch
from ..primitives.f2 import (
    BitMatrix,
    CosetSearchResult,
    GF2Basis,
    SearchBudget,
    encode_weight,
    min_coset_weight,
    nullspace_basis,
    rank,
)
from .complex import CellComplex, cubical_torus

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class CssCode:
    h1: BitMatrix  # m0 x q, the map C1 -> C0
    h2: BitMatrix  # m2 x q, rows generate the image of C2 -> C1
    qubit_labels: Optional[Tuple[str, ...]] = None
    name: str = field(default="", compare=False)

    @property
    def size(self) -> int:
        return self.h1.cols

    def validate(self) -> None:
        validate(self)

    def to_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {"h1": self.h1.to_dict(), "h2": self.h2.to_dict()}
        payload["labels"] = list(self.qubit_labels) if self.qubit_labels is not None else None
        if self.name:
            payload["name"] = self.name
        return payload

    @classmethod
    def from_dict(cls, payload: Dict[str, Any], *, source: Optional[str] = None) -> "CssCode":
        try:
            h1 = BitMatrix.from_dict(payload["h1"], source=source)
            h2 = BitMatrix.from_dict(payload["h2"], source=source)
        except KeyError as exc:
            raise FormatError("missing key", source=source, field=str(exc.args[0])) from exc
        labels = payload.get("labels")
        return cls(h1, h2, tuple(labels) if labels is not None else None, payload.get("name", ""))


def validate(code: CssCode) -> None:
    """Raise unless shapes agree and h1 · h2ᵀ = 0; the first offending pair is reported row-major."""
    if code.h1.cols != code.h2.cols:
        raise ShapeMismatch(f"h1 has {code.h1.cols} columns but h2 has {code.h2.cols}.")
    if code.qubit_labels is not None and len(code.qubit_labels) != code.size:
        raise ShapeMismatch("qubit_labels must name every qubit.")
    product = code.h1 @ code.h2.transpose()
    for i, row in enumerate(product.row_support):
        if row:
            raise ChainConditionViolated(i, row[0])


@dataclass(frozen=True)
class CodeReport:
    size: int
    dim: int
    d_x: Union[int, float]
    d_z: Union[int, float]
    ldpc_degree: int
    x_search: CosetSearchResult
    z_search: CosetSearchResult

    @property
    def d(self) -> Union[int, float]:
        return min(self.d_x, self.d_z)

    @property
    def exact_x(self) -> bool:
        return self.x_search.exact

    @property
    def exact_z(self) -> bool:
        return self.z_search.exact

    @property
    def exact(self) -> bool:
        return self.exact_x and self.exact_z

    def describe(self) -> str:
        def fmt(value: Union[int, float], exact: bool) -> str:
            text = "inf" if value == math.inf else str(value)
            return text if exact else f"<= {text} (heuristic)"

        return "\n".join(
            [
                f"size: {self.size}",
                f"dim: {self.dim}",
                f"d_x: {fmt(self.d_x, self.exact_x)} [{self.x_search.method}]",
                f"d_z: {fmt(self.d_z, self.exact_z)} [{self.z_search.method}]",
                f"d: {fmt(self.d, self.exact)}",
                f"ldpc_degree: {self.ldpc_degree}",
            ]
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "size": self.size,
            "dim": self.dim,
            "d_x": encode_weight(self.d_x),
            "d_z": encode_weight(self.d_z),
            "d": encode_weight(self.d),
            "ldpc_degree": self.ldpc_degree,
            "exact": {"d_x": self.exact_x, "d_z": self.exact_z},
            "witness": {
                "d_x": self.x_search.witness.to_dict() if self.x_search.witness else None,
                "d_z": self.z_search.witness.to_dict() if self.z_search.witness else None,
            },
            "method": {"d_x": self.x_search.method, "d_z": self.z_search.method},
        }


def ldpc_degree(code: CssCode) -> int:
    return max(code.h1.max_row_weight, code.h1.max_col_weight, code.h2.max_row_weight, code.h2.max_col_weight)


def report(code: CssCode, budget: Optional[SearchBudget] = None) -> CodeReport:
    validate(code)
    q = code.size
    dim = q - rank(code.h1) - rank(code.h2)
    LOGGER.info(
        "\n%s\n[CODE REPORT]\nName: %s\nSize: %d\nDim: %d\n%s",
        "=" * 80,
        code.name or "(unnamed)",
        q,
        dim,
        "=" * 80,
    )
    x_search = min_coset_weight(
        nullspace_basis(code.h1), code.h2.rows_as_vectors(), budget, check_matrix=code.h1, length=q
    )
    z_search = min_coset_weight(
        nullspace_basis(code.h2), code.h1.rows_as_vectors(), budget, check_matrix=code.h2, length=q
    )
    return CodeReport(q, dim, x_search.weight, z_search.weight, ldpc_degree(code), x_search, z_search)


def check_graph(code: CssCode) -> nx.Graph:
    """Qubits joined when some check of h1 or h2 acts on both."""
    graph = nx.Graph()
    graph.add_nodes_from(range(code.size))
    for matrix in (code.h1, code.h2):
        for row in matrix.row_support:
            for a in range(len(row)):
                for b in range(a + 1, len(row)):
                    graph.add_edge(row[a], row[b])
    return graph


def code_from_complex(x: CellComplex, k: int) -> CssCode:
    """Qubits are k-cells; h1 = boundary[k], h2 = coboundary incidence (empty at the top)."""
    if not 0 < k <= x.dims:
        raise DimensionOutOfRange(f"k={k} outside (0, {x.dims}].")
    return CssCode(x.boundary[k], x.coboundary(k), name=f"complex(k={k})")


def toric_code(n: int, side: int, k: int = 1) -> CssCode:
    if not 0 < k < n:
        raise DimensionOutOfRange(f"toric_code needs 0 < k < n, got k={k}, n={n}.")
    code = code_from_complex(cubical_torus(n, side), k)
    return CssCode(code.h1, code.h2, name=f"toric(n={n},L={side},k={k})")


def hypergraph_product(a: BitMatrix, b: BitMatrix) -> CssCode:
    """
    Product of two classical parity-check matrices:
    h1 = [a ⊗ I | I ⊗ bᵀ], h2 = [I ⊗ b | aᵀ ⊗ I].
    """
    ma, na = a.shape
    mb, nb = b.shape
    h1 = BitMatrix.hstack([BitMatrix.kron(a, BitMatrix.identity(nb)), BitMatrix.kron(BitMatrix.identity(ma), b.transpose())])
    h2 = BitMatrix.hstack([BitMatrix.kron(BitMatrix.identity(na), b), BitMatrix.kron(a.transpose(), BitMatrix.identity(mb))])
    return CssCode(h1, h2, name=f"hgp({ma}x{na},{mb}x{nb})")


def hamming_matrix() -> BitMatrix:
    """3 x 7 parity checks whose columns are 1..7 in binary."""
    return BitMatrix(3, 7, tuple(tuple(c - 1 for c in range(1, 8) if c >> bit & 1) for bit in range(3)))


def steane_code() -> CssCode:
    return CssCode(hamming_matrix(), hamming_matrix(), name="steane")


def repetition_matrix(length: int) -> BitMatrix:
    """(length-1) x length checks of an open repetition code."""
    return BitMatrix(length - 1, length, tuple((i, i + 1) for i in range(length - 1)))


def cycle_matrix(length: int) -> BitMatrix:
    """Vertex-edge incidence of a cycle of the given length (closed repetition code)."""
    return BitMatrix(length, length, tuple(tuple(sorted((i, (i - 1) % length))) for i in range(length)))


def direct_sum(first: CssCode, second: CssCode) -> CssCode:
    """Block-diagonal sum of two codes; qubits of ``second`` follow those of ``first``."""

    def block(top: BitMatrix, bottom: BitMatrix) -> BitMatrix:
        upper = BitMatrix.hstack([top, BitMatrix.zeros(top.rows, bottom.cols)])
        lower = BitMatrix.hstack([BitMatrix.zeros(bottom.rows, top.cols), bottom])
        return BitMatrix.vstack([upper, lower])

    labels = None
    if first.qubit_labels is not None and second.qubit_labels is not None:
        labels = first.qubit_labels + second.qubit_labels
    return CssCode(block(first.h1, second.h1), block(first.h2, second.h2), labels, first.name)


def quotient_dimension(code: CssCode) -> int:
    """Dimension of ker h1 / im h2ᵀ from an explicit quotient basis (independent of the rank formula)."""
    kernel = nullspace_basis(code.h1)
    span = GF2Basis(code.h2.row_bits)
    return sum(1 for v in kernel if span.insert(v.bits))


__all__ = [
    "CodeReport",
    "CssCode",
    "check_graph",
    "code_from_complex",
    "cycle_matrix",
    "direct_sum",
    "hamming_matrix",
    "hypergraph_product",
    "ldpc_degree",
    "quotient_dimension",
    "repetition_matrix",
    "report",
    "steane_code",
    "toric_code",
    "validate",
]
