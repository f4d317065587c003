"""Finite-ring representations and the construction-time axiom check.

Every ring is realized over dense element handles 0..size-1 with handle 0
the additive zero.  A ring always carries full addition/multiplication/
negation tables (numpy arrays); prime-characteristic algebras additionally
carry their structure constants, which back the linear-algebra paths of the
annihilator and polynomial modules.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import CapacityError, ContractError

RING_SIZE_CAP = 4096
PRIME_CAP = 7
DIM_CAP = 16


@dataclass(frozen=True)
class PrimeAlgebra:
    """A Z_p-algebra given by structure constants on a fixed basis.

    ``constants[i, j]`` is the coordinate vector of (basis_i * basis_j).
    Elements are coordinate vectors in (Z_p)^dim; the dense handle of a
    vector is its base-p integer encoding (most significant digit last, so
    the zero vector encodes to handle 0).
    """

    p: int
    dim: int
    basis_labels: tuple[str, ...]
    constants: np.ndarray  # (dim, dim, dim)
    unit_vector: np.ndarray  # (dim,)

    def __post_init__(self):
        if self.p > PRIME_CAP:
            raise CapacityError(f"characteristic {self.p} exceeds cap {PRIME_CAP}")
        if self.dim > DIM_CAP:
            raise CapacityError(f"dimension {self.dim} exceeds cap {DIM_CAP}")
        if len(self.basis_labels) != self.dim:
            raise ContractError("basis label count does not match dimension")

    @property
    def size(self) -> int:
        return self.p**self.dim

    def encode(self, vec) -> int:
        vec = np.asarray(vec, dtype=np.int64) % self.p
        h = 0
        for i in range(self.dim - 1, -1, -1):
            h = h * self.p + int(vec[i])
        return h

    def decode(self, handle: int) -> np.ndarray:
        vec = np.zeros(self.dim, dtype=np.int64)
        for i in range(self.dim):
            handle, vec[i] = divmod(handle, self.p)
        return vec

    def decode_all(self) -> np.ndarray:
        """Coordinate vectors of every handle, shape (p^dim, dim)."""
        idx = np.arange(self.size)
        vecs = np.zeros((self.size, self.dim), dtype=np.int64)
        for i in range(self.dim):
            vecs[:, i] = idx % self.p
            idx = idx // self.p
        return vecs

    def left_mul_matrix(self, vec) -> np.ndarray:
        """Matrix of v -> a*v in basis coordinates (columns are a*e_j)."""
        vec = np.asarray(vec, dtype=np.int64)
        # (a e_j)_k = sum_i a_i constants[i, j, k]
        return np.einsum("i,ijk->kj", vec, self.constants) % self.p

    def right_mul_matrix(self, vec) -> np.ndarray:
        """Matrix of v -> v*a in basis coordinates."""
        vec = np.asarray(vec, dtype=np.int64)
        return np.einsum("j,ijk->ki", vec, self.constants) % self.p

    def coord_string(self, vec) -> str:
        """Human-readable form like ``x+2*yx``; the identity label is elided."""
        parts = []
        for c, label in zip(vec, self.basis_labels):
            c = int(c) % self.p
            if c == 0:
                continue
            if label in ("1", ""):
                parts.append(str(c))
            elif c == 1:
                parts.append(label)
            else:
                parts.append(f"{c}*{label}")
        return "+".join(parts) if parts else "0"

    def check_basis_axioms(self) -> None:
        """Associativity and unitality on basis triples; raises on failure."""
        c = self.constants
        p = self.p
        lhs = np.einsum("ijm,mkl->ijkl", c, c) % p
        rhs = np.einsum("jkm,iml->ijkl", c, c) % p
        if not np.array_equal(lhs, rhs):
            i, j, k, _ = np.argwhere(lhs != rhs)[0]
            raise ContractError(
                f"structure constants not associative at basis triple ({i},{j},{k})"
            )
        u = self.unit_vector
        left = np.einsum("i,ijk->jk", u, c) % p
        right = np.einsum("j,ijk->ik", u, c) % p
        if not np.array_equal(left, np.eye(self.dim, dtype=np.int64)):
            raise ContractError("unit vector is not a left identity")
        if not np.array_equal(right, np.eye(self.dim, dtype=np.int64)):
            raise ContractError("unit vector is not a right identity")


@dataclass(frozen=True)
class AxiomReport:
    ok: bool
    law: str | None = None
    witness: tuple | None = None

    def message(self) -> str:
        if self.ok:
            return "all ring axioms hold"
        return f"axiom '{self.law}' fails at {self.witness}"


class FiniteRing:
    """A finite associative unital ring over dense handles.

    Immutable after construction; all queries are pure reads, so one ring
    may be shared freely across workers.
    """

    zero = 0

    def __init__(self, rid, add_table, mul_table, neg_table, one,
                 algebra: PrimeAlgebra | None = None, meta: dict | None = None):
        self.id = rid
        self.add_table = np.ascontiguousarray(add_table, dtype=np.int32)
        self.mul_table = np.ascontiguousarray(mul_table, dtype=np.int32)
        self.neg_table = np.ascontiguousarray(neg_table, dtype=np.int32)
        self.one = int(one)
        self.algebra = algebra
        self.meta = dict(meta or {})
        n = self.add_table.shape[0]
        if self.add_table.shape != (n, n) or self.mul_table.shape != (n, n):
            raise ContractError("ring tables must be square and equally sized")
        if self.neg_table.shape != (n,):
            raise ContractError("negation table has wrong shape")
        self.size = n

    # -- scalar arithmetic -------------------------------------------------

    def add(self, a, b):
        return int(self.add_table[a, b])

    def mul(self, a, b):
        return int(self.mul_table[a, b])

    def neg(self, a):
        return int(self.neg_table[a])

    def sub(self, a, b):
        return int(self.add_table[a, self.neg_table[b]])

    def pow(self, a, k):
        if k < 1:
            raise ContractError("only positive powers are defined")
        acc = a
        for _ in range(k - 1):
            acc = int(self.mul_table[acc, a])
        return acc

    def elements(self):
        return range(self.size)

    # -- cached bulk structure --------------------------------------------

    @cached_property
    def units_mask(self) -> np.ndarray:
        """Boolean array of invertible handles.

        One-sided inverses suffice in a finite ring: right multiplication by
        a right-invertible element is surjective, hence injective, hence the
        element is invertible.
        """
        return (self.mul_table == self.one).any(axis=1)

    @cached_property
    def right_ann_masks(self) -> list[int]:
        """right_ann_masks[a] = bitmask of {c : a*c = 0}."""
        zero_rows = self.mul_table == 0
        return [_bits(row) for row in zero_rows]

    @cached_property
    def left_ann_masks(self) -> list[int]:
        """left_ann_masks[a] = bitmask of {c : c*a = 0}."""
        zero_cols = (self.mul_table == 0).T
        return [_bits(col) for col in zero_cols]

    @cached_property
    def reversible_elements(self) -> np.ndarray:
        """Boolean array: handle a is a reversible element (l(a) = r(a))."""
        z = self.mul_table == 0
        return (z == z.T).all(axis=0)

    @cached_property
    def row_image_masks(self) -> list[int]:
        """row_image_masks[a] = bitmask of the cyclic right ideal aR."""
        return [_bits_from_values(self.mul_table[a], self.size) for a in range(self.size)]

    @cached_property
    def col_image_masks(self) -> list[int]:
        """col_image_masks[a] = bitmask of the cyclic left ideal Ra."""
        return [_bits_from_values(self.mul_table[:, a], self.size) for a in range(self.size)]

    # -- presentation ------------------------------------------------------

    def describe(self, handle) -> str:
        handle = int(handle)
        if self.algebra is not None:
            return self.algebra.coord_string(self.algebra.decode(handle))
        decoder = self.meta.get("describe")
        if decoder is not None:
            return decoder(handle)
        return str(handle)

    def __repr__(self):
        return f"FiniteRing({self.id!r}, size={self.size})"


def _bits(bool_row: np.ndarray) -> int:
    return int.from_bytes(np.packbits(bool_row, bitorder="little").tobytes(), "little")


def _bits_from_values(values: np.ndarray, size: int) -> int:
    present = np.zeros(size, dtype=bool)
    present[values] = True
    return _bits(present)


def validate_ring(ring: FiniteRing, size_cap: int = RING_SIZE_CAP) -> AxiomReport:
    """Exhaustive axiom check; returns the first failing instance if any.

    Laws are checked in a fixed order and the lexicographically first
    failing triple is reported, so the outcome is deterministic.
    """
    n = ring.size
    if n > size_cap:
        raise CapacityError(f"ring {ring.id!r} has {n} elements, cap is {size_cap}")
    add, mul, neg = ring.add_table, ring.mul_table, ring.neg_table
    idx = np.arange(n)

    for name, table in (("addition", add), ("multiplication", mul)):
        if table.min() < 0 or table.max() >= n:
            bad = np.argwhere((table < 0) | (table >= n))[0]
            return AxiomReport(False, f"{name} closure", tuple(int(v) for v in bad))
    if neg.min() < 0 or neg.max() >= n:
        return AxiomReport(False, "negation closure", (int(np.argwhere((neg < 0) | (neg >= n))[0]),))

    if not np.array_equal(add[0], idx):
        a = int(np.argwhere(add[0] != idx)[0])
        return AxiomReport(False, "additive identity", (0, a))
    bad = np.argwhere(add != add.T)
    if bad.size:
        return AxiomReport(False, "additive commutativity", tuple(int(v) for v in bad[0]))
    inv = add[idx, neg]
    if (inv != 0).any():
        a = int(np.argwhere(inv != 0)[0])
        return AxiomReport(False, "additive inverse", (a,))

    report = _check_triples(add, add, "additive associativity", n, kind="assoc")
    if report is not None:
        return report
    report = _check_triples(mul, mul, "multiplicative associativity", n, kind="assoc")
    if report is not None:
        return report
    report = _check_triples(mul, add, "left distributivity", n, kind="ldist")
    if report is not None:
        return report
    report = _check_triples(mul, add, "right distributivity", n, kind="rdist")
    if report is not None:
        return report

    e = ring.one
    if not np.array_equal(mul[e], idx):
        a = int(np.argwhere(mul[e] != idx)[0])
        return AxiomReport(False, "left identity", (e, a))
    if not np.array_equal(mul[:, e], idx):
        a = int(np.argwhere(mul[:, e] != idx)[0])
        return AxiomReport(False, "right identity", (a, e))
    return AxiomReport(True)


def _check_triples(op, base, law, n, kind):
    """Chunked exhaustive triple check; returns a report on first failure."""
    chunk = max(1, min(n, (2**22) // max(1, n * n)))
    for start in range(0, n, chunk):
        a = np.arange(start, min(start + chunk, n))
        if kind == "assoc":
            lhs = op[op[a][:, :, None], np.arange(n)[None, None, :]]
            rhs = op[a[:, None, None], op[None, :, :]]
        elif kind == "ldist":
            # a*(b+c) == a*b + a*c
            lhs = op[a[:, None, None], base[None, :, :]]
            rhs = base[op[a][:, :, None], op[a][:, None, :]]
        else:
            # (b+c)*a == b*a + c*a
            lhs = op[base[None, :, :], a[:, None, None]]
            rhs = base[op[:, a].T[:, :, None], op[:, a].T[:, None, :]]
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            i, b, c = (int(v) for v in bad[0])
            return AxiomReport(False, law, (start + i, b, c))
    return None
