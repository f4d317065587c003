"""Bounded-degree arithmetic in R[x] and polynomial annihilator search.

Coefficients are ring handles, constant term first, trailing zeros trimmed.
The degree cap guards user-facing calls; internal searches (the McCoy
falsifier) pass an explicit larger cap so that products of two capped
factors stay representable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import modp
from .errors import ContractError, DegreeOverflowError
from .kernel import ElementSet, annihilator
from .rings import FiniteRing

DEFAULT_DEGREE_CAP = 4


@dataclass(frozen=True)
class Polynomial:
    ring: FiniteRing
    coeffs: tuple[int, ...]

    @staticmethod
    def make(ring, coeffs) -> "Polynomial":
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        for c in cs:
            if not 0 <= c < ring.size:
                raise ContractError(f"coefficient {c} out of range for {ring.id!r}")
        return Polynomial(ring, tuple(cs))

    @staticmethod
    def zero(ring) -> "Polynomial":
        return Polynomial(ring, ())

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, i) -> int:
        return self.coeffs[i] if i < len(self.coeffs) else 0

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            name = self.ring.describe(c)
            if i == 0:
                terms.append(f"({name})")
            elif i == 1:
                terms.append(f"({name})*X")
            else:
                terms.append(f"({name})*X^{i}")
        return " + ".join(terms)


def content(polys, ring=None) -> ElementSet:
    """Union of coefficient sets; the zero polynomial contributes {0}."""
    polys = list(polys)
    if ring is None:
        if not polys:
            raise ContractError("content of an empty set needs an explicit ring")
        ring = polys[0].ring
    handles = {0}
    for f in polys:
        if f.ring is not ring:
            raise ContractError("polynomials over different rings")
        handles.update(f.coeffs)
    return ElementSet.from_iter(ring, handles)


def poly_mul(f: Polynomial, g: Polynomial, cap: int | None = DEFAULT_DEGREE_CAP) -> Polynomial:
    """Convolution product, guarded by the degree cap."""
    ring = f.ring
    if g.ring is not ring:
        raise ContractError("polynomials over different rings")
    if f.is_zero() or g.is_zero():
        return Polynomial.zero(ring)
    deg = f.degree + g.degree
    if cap is not None and deg > cap:
        raise DegreeOverflowError(f"product degree {deg} exceeds cap {cap}")
    out = [0] * (deg + 1)
    for i, a in enumerate(f.coeffs):
        if a == 0:
            continue
        for j, b in enumerate(g.coeffs):
            out[i + j] = ring.add(out[i + j], ring.mul(a, b))
    return Polynomial.make(ring, out)


@dataclass(frozen=True)
class PolyAnnihilator:
    """Description of {g : deg g <= d, f*g = 0} (or g*f for the left side)."""

    kind: str  # "all" (f = 0), "some", or "none"
    witness: Polynomial | None = None
    via: str = ""

    @property
    def nonzero_exists(self) -> bool:
        return self.kind in ("all", "some")


def right_poly_annihilator(f: Polynomial, d: int,
                           cap: int | None = DEFAULT_DEGREE_CAP) -> PolyAnnihilator:
    return poly_annihilator(f, "right", d, cap=cap)


def poly_annihilator(f: Polynomial, side: str, d: int,
                     cap: int | None = DEFAULT_DEGREE_CAP) -> PolyAnnihilator:
    """Is there a nonzero g with deg g <= d and f*g = 0 (right) / g*f = 0 (left)?

    Prime algebras solve the block-convolution linear system over Z_p;
    table rings run a pruned leading-coefficient-first enumeration.  The two
    paths agree wherever both run (checked in the test suite).
    """
    if side not in ("left", "right"):
        raise ContractError(f"side must be 'left' or 'right', got {side!r}")
    if d < 0:
        raise ContractError("annihilator degree bound must be >= 0")
    ring = f.ring
    if f.is_zero():
        witness = Polynomial.make(ring, [ring.one])
        return PolyAnnihilator("all", witness, via="trivial")
    if cap is not None and f.degree + d > cap:
        raise DegreeOverflowError(f"degree {f.degree} + {d} exceeds cap {cap}")
    if ring.algebra is not None:
        return _annihilator_kernel(f, side, d)
    return _annihilator_enumerate(f, side, d)


def _annihilator_kernel(f, side, d):
    alg = f.ring.algebra
    m = f.degree
    dim, p = alg.dim, alg.p
    rows = (m + d + 1) * dim
    cols = (d + 1) * dim
    mat = np.zeros((rows, cols), dtype=np.int64)
    for i, a in enumerate(f.coeffs):
        vec = alg.decode(a)
        op = alg.left_mul_matrix(vec) if side == "right" else alg.right_mul_matrix(vec)
        for j in range(d + 1):
            k = i + j
            mat[k * dim:(k + 1) * dim, j * dim:(j + 1) * dim] += op
    mat %= p
    basis = modp.kernel_basis(mat, p)
    if basis.shape[0] == 0:
        return PolyAnnihilator("none", via="kernel")
    vec = basis[0]
    coeffs = [alg.encode(vec[j * dim:(j + 1) * dim]) for j in range(d + 1)]
    return PolyAnnihilator("some", Polynomial.make(f.ring, coeffs), via="kernel")


def _annihilator_enumerate(f, side, d):
    """DFS from the leading coefficient of g down, pruning on the constraint
    that product coefficient m+j is a_m*g_j plus already-fixed terms."""
    ring = f.ring
    m = f.degree
    # For the left side (g*f = 0) the needed products are g_j * a_i; running
    # the same DFS over the transposed multiplication table covers it.
    mul = ring.mul_table if side == "right" else ring.mul_table.T
    add = ring.add_table
    neg = ring.neg_table
    a = f.coeffs
    lead = a[m]

    # solutions v of lead*v = t, grouped by t
    sol_by_target: dict[int, list[int]] = {}
    for v in range(ring.size):
        sol_by_target.setdefault(int(mul[lead, v]), []).append(v)

    g = [0] * (d + 1)

    def conv_partial(k, j_min):
        """sum over i+j = k with j >= j_min of a_i * g_j."""
        acc = 0
        for i in range(m + 1):
            j = k - i
            if j_min <= j <= d and a[i] != 0:
                acc = int(add[acc, mul[a[i], g[j]]])
        return acc

    def dfs(j):
        if j < 0:
            for k in range(m):
                if conv_partial(k, 0) != 0:
                    return None
            if all(c == 0 for c in g):
                return None
            return list(g)
        rest = conv_partial(m + j, j + 1)
        for v in sol_by_target.get(int(neg[rest]), ()):
            g[j] = v
            found = dfs(j - 1)
            if found is not None:
                return found
            g[j] = 0
        return None

    found = dfs(d)
    if found is None:
        return PolyAnnihilator("none", via="enumeration")
    return PolyAnnihilator("some", Polynomial.make(ring, found), via="enumeration")


def constant_annihilator(polys, side: str, ring=None) -> ElementSet:
    """{c : f(x)*c = 0 for all f in X} (right; left is symmetric).

    Equals the coefficient-wise intersection of single-element annihilators.
    """
    polys = list(polys)
    if not polys:
        raise ContractError("constant_annihilator requires a nonempty set")
    if ring is None:
        ring = polys[0].ring
    return annihilator(ring, side, content(polys, ring))
