"""Primitive algebraic queries on finite rings.

Element subsets are bit-vectors keyed by handle (Python ints used as
bitmasks), which keeps the intersection-heavy annihilator workloads cheap.
"""

from __future__ import annotations

import numpy as np

from . import modp
from .errors import ContractError
from .rings import FiniteRing


class ElementSet:
    """A subset of one ring's elements, stored as a bitmask."""

    __slots__ = ("ring", "mask")

    def __init__(self, ring: FiniteRing, mask: int):
        self.ring = ring
        self.mask = mask & ((1 << ring.size) - 1)

    @classmethod
    def from_iter(cls, ring, handles):
        mask = 0
        for h in handles:
            h = int(h)
            if not 0 <= h < ring.size:
                raise ContractError(f"handle {h} out of range for ring {ring.id!r}")
            mask |= 1 << h
        return cls(ring, mask)

    @classmethod
    def full(cls, ring):
        return cls(ring, (1 << ring.size) - 1)

    @classmethod
    def zero(cls, ring):
        return cls(ring, 1)

    def members(self) -> list[int]:
        out = []
        m = self.mask
        while m:
            low = m & -m
            out.append(low.bit_length() - 1)
            m ^= low
        return out

    def __contains__(self, h):
        return bool((self.mask >> int(h)) & 1)

    def __len__(self):
        return self.mask.bit_count()

    def __eq__(self, other):
        return (isinstance(other, ElementSet) and other.ring is self.ring
                and other.mask == self.mask)

    def __hash__(self):
        return hash((id(self.ring), self.mask))

    def _combine(self, other, op):
        if other.ring is not self.ring:
            raise ContractError("element sets belong to different rings")
        return ElementSet(self.ring, op(self.mask, other.mask))

    def union(self, other):
        return self._combine(other, int.__or__)

    def intersection(self, other):
        return self._combine(other, int.__and__)

    def complement(self):
        return ElementSet(self.ring, ~self.mask)

    def is_empty(self):
        return self.mask == 0

    def is_zero_only(self):
        return self.mask == 1

    def __repr__(self):
        n = len(self)
        shown = self.members()[:8]
        tail = ", ..." if n > 8 else ""
        return f"ElementSet({self.ring.id}, {{{', '.join(map(str, shown))}{tail}}} size={n})"


class TwoSidedIdeal(ElementSet):
    """An ElementSet verified closed under +, - and two-sided multiplication."""

    def __init__(self, ring, mask, *, check=True):
        super().__init__(ring, mask)
        if check and not is_two_sided_ideal(ElementSet(ring, mask)):
            raise ContractError("set is not a two-sided ideal")


# -- ideal predicates ------------------------------------------------------

def _closed_under_add(s: ElementSet) -> bool:
    ring = s.ring
    mem = s.members()
    if not mem:
        return False
    arr = np.array(mem)
    sums = ring.add_table[np.ix_(arr, arr)]
    return all(v in s for v in np.unique(sums))


def is_right_ideal(s: ElementSet) -> bool:
    ring = s.ring
    if 0 not in s or not _closed_under_add(s):
        return False
    for a in s.members():
        if ring.neg(a) not in s:
            return False
        if any(v not in s for v in np.unique(ring.mul_table[a])):
            return False
    return True


def is_left_ideal(s: ElementSet) -> bool:
    ring = s.ring
    if 0 not in s or not _closed_under_add(s):
        return False
    for a in s.members():
        if ring.neg(a) not in s:
            return False
        if any(v not in s for v in np.unique(ring.mul_table[:, a])):
            return False
    return True


def is_two_sided_ideal(s: ElementSet) -> bool:
    return is_right_ideal(s) and is_left_ideal(s)


# -- annihilators ----------------------------------------------------------

def annihilator(ring: FiniteRing, side: str, x: ElementSet) -> ElementSet:
    """Left/right annihilator of a nonempty element set.

    For prime algebras this is computed as the kernel of the stacked
    multiplication-operator matrix over Z_p and cross-checked against the
    table scan in the test suite; the scan is authoritative here because it
    is valid for every representation.
    """
    _require_side(side)
    if x.is_empty():
        raise ContractError("annihilator of an empty set is undefined")
    masks = ring.right_ann_masks if side == "right" else ring.left_ann_masks
    mask = (1 << ring.size) - 1
    for a in x.members():
        mask &= masks[a]
    return ElementSet(ring, mask)


def annihilator_kernel(ring: FiniteRing, side: str, x: ElementSet) -> ElementSet:
    """Kernel-based annihilator for prime-algebra rings (independent path)."""
    _require_side(side)
    alg = ring.algebra
    if alg is None:
        raise ContractError(f"ring {ring.id!r} is not a prime algebra")
    if x.is_empty():
        raise ContractError("annihilator of an empty set is undefined")
    blocks = []
    for a in x.members():
        vec = alg.decode(a)
        mat = alg.left_mul_matrix(vec) if side == "right" else alg.right_mul_matrix(vec)
        blocks.append(mat)
    basis = modp.kernel_basis(np.vstack(blocks), alg.p)
    vecs = modp.span_vectors(basis, alg.p, limit=ring.size)
    return ElementSet.from_iter(ring, (alg.encode(v) for v in vecs))


def _require_side(side):
    if side not in ("left", "right"):
        raise ContractError(f"side must be 'left' or 'right', got {side!r}")


# -- powers and nilpotents -------------------------------------------------

def power_orbit(ring: FiniteRing, a: int) -> list[int]:
    """Distinct positive powers a, a^2, ... up to the first repetition."""
    seen = set()
    orbit = []
    cur = int(a)
    while cur not in seen:
        seen.add(cur)
        orbit.append(cur)
        cur = ring.mul(cur, a)
    return orbit


def nilpotency_index(ring: FiniteRing, a: int) -> int | None:
    """Least m with a^m = 0, or None when a is not nilpotent."""
    if a == 0:
        return 1
    cur = int(a)
    for m in range(1, ring.size + 1):
        if cur == 0:
            return m
        cur = ring.mul(cur, a)
    return 1 if cur == 0 else None


def nil_set(ring: FiniteRing) -> ElementSet:
    """All nilpotent elements, found by iterating the power map."""
    n = ring.size
    idx = np.arange(n)
    cur = idx.copy()
    nil = cur == 0
    for _ in range(n):
        cur = ring.mul_table[cur, idx]
        nil |= cur == 0
    return ElementSet(ring, int.from_bytes(np.packbits(nil, bitorder="little").tobytes(), "little"))


def jacobson_radical(ring: FiniteRing) -> TwoSidedIdeal:
    """J(R) = {x : 1 - r*x is invertible for every r}.

    For finite rings this single radical stands in for the whole radical
    chain (Wedderburn, Levitzky, lower/upper nil): J(R) is nilpotent, so
    all of them coincide.
    """
    units = ring.units_mask
    one = ring.one
    mask = 0
    for x in range(ring.size):
        col = ring.mul_table[:, x]
        t = ring.add_table[one, ring.neg_table[col]]
        if units[t].all():
            mask |= 1 << x
    return TwoSidedIdeal(ring, mask, check=False)


# -- ideal generation ------------------------------------------------------

def ideal_closure(ring: FiniteRing, x: ElementSet) -> TwoSidedIdeal:
    """Two-sided ideal generated by X: additive closure of R·X·R."""
    if x.is_empty():
        raise ContractError("ideal closure of an empty set is undefined")
    n = ring.size
    all_idx = np.arange(n)
    gens = {0}
    for a in x.members():
        left = ring.mul_table[:, a]  # r*a for all r
        prods = ring.mul_table[left][:, all_idx]  # (r*a)*s
        gens.update(int(v) for v in np.unique(prods))
    # additive closure of the generator set
    span = np.zeros(n, dtype=bool)
    span[list(gens)] = True
    while True:
        mem = np.nonzero(span)[0]
        sums = np.unique(ring.add_table[np.ix_(mem, mem)])
        new = sums[~span[sums]]
        if new.size == 0:
            break
        span[new] = True
    mask = int.from_bytes(np.packbits(span, bitorder="little").tobytes(), "little")
    return TwoSidedIdeal(ring, mask, check=False)


def bound_of_right_ideal(ring: FiniteRing, ideal: ElementSet) -> TwoSidedIdeal:
    """Largest two-sided ideal inside a right ideal: {x in I : R*x ⊆ I}."""
    if not is_right_ideal(ideal):
        raise ContractError("bound_of_right_ideal requires a right ideal")
    return _bound(ring, ideal, left_side=False)


def bound_of_left_ideal(ring: FiniteRing, ideal: ElementSet) -> TwoSidedIdeal:
    """Largest two-sided ideal inside a left ideal: {x in I : x*R ⊆ I}."""
    if not is_left_ideal(ideal):
        raise ContractError("bound_of_left_ideal requires a left ideal")
    return _bound(ring, ideal, left_side=True)


def _bound(ring, ideal, left_side):
    in_ideal = np.zeros(ring.size, dtype=bool)
    in_ideal[ideal.members()] = True
    mask = 0
    for x in ideal.members():
        image = ring.mul_table[x] if left_side else ring.mul_table[:, x]
        if in_ideal[image].all():
            mask |= 1 << x
    return TwoSidedIdeal(ring, mask, check=False)


# -- essentiality and singularity ------------------------------------------

def essentiality(ring: FiniteRing, side: str, ideal: ElementSet) -> bool:
    """Whether a one-sided ideal meets every nonzero cyclic ideal nontrivially.

    Cyclic ideals suffice: every nonzero one-sided ideal contains a nonzero
    cyclic one.
    """
    _require_side(side)
    cyclic = ring.row_image_masks if side == "right" else ring.col_image_masks
    imask = ideal.mask
    for a in range(1, ring.size):
        if (cyclic[a] & imask & ~1) == 0:
            return False
    return True


def singular_set(ring: FiniteRing, side: str) -> ElementSet:
    """Z(R): elements whose one-sided annihilator is essential."""
    _require_side(side)
    ann_masks = ring.right_ann_masks if side == "right" else ring.left_ann_masks
    cyclic = ring.row_image_masks if side == "right" else ring.col_image_masks
    mask = 0
    for a in range(ring.size):
        amask = ann_masks[a]
        if all(cyclic[b] & amask & ~1 for b in range(1, ring.size)):
            mask |= 1 << a
    return ElementSet(ring, mask)
