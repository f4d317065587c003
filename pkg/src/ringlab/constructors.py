"""Builders for every concrete finite ring the laboratory works with.

All constructors return validated ``FiniteRing`` values.  Full-table axiom
sweeps are run automatically for rings up to ``AUTO_VALIDATE_LIMIT``
elements; larger rings are validated structurally (prime algebras on basis
triples, derived rings by construction from a validated base) and can still
be swept explicitly with ``validate_ring``.
"""

from __future__ import annotations

import numpy as np

from .errors import CapacityError, ContractError
from .kernel import ElementSet, ideal_closure
from .rings import RING_SIZE_CAP, FiniteRing, PrimeAlgebra, validate_ring

AUTO_VALIDATE_LIMIT = 256


def _finalize(ring: FiniteRing) -> FiniteRing:
    if ring.size <= AUTO_VALIDATE_LIMIT:
        report = validate_ring(ring)
        if not report.ok:
            raise ContractError(f"ring {ring.id!r} fails axioms: {report.message()}")
    return ring


def _check_cap(rid, size, cap):
    if size > cap:
        raise CapacityError(f"ring {rid!r} would have {size} elements, cap is {cap}")


# -- base rings ------------------------------------------------------------

def make_zn(n: int, cap: int = RING_SIZE_CAP) -> FiniteRing:
    """The ring of integers modulo n."""
    if n < 2:
        raise ContractError("make_zn requires n >= 2")
    _check_cap(f"Z{n}", n, cap)
    idx = np.arange(n)
    add = (idx[:, None] + idx[None, :]) % n
    mul = (idx[:, None] * idx[None, :]) % n
    neg = (-idx) % n
    return _finalize(FiniteRing(f"Z{n}", add, mul, neg, one=1,
                                meta={"family": "zn", "n": n}))


# -- matrix families -------------------------------------------------------

def make_matrix(base: FiniteRing, k: int, cap: int = RING_SIZE_CAP) -> FiniteRing:
    """Full k-by-k matrix ring over ``base``."""
    positions = [(i, j) for i in range(k) for j in range(k)]
    return _matrix_ring(f"M{k}({base.id})", base, k, positions, shared_diag=False,
                        family="M", cap=cap)


def make_upper_triangular(base: FiniteRing, k: int, cap: int = RING_SIZE_CAP) -> FiniteRing:
    """Upper-triangular k-by-k matrix ring over ``base``."""
    positions = [(i, j) for i in range(k) for j in range(i, k)]
    return _matrix_ring(f"T{k}({base.id})", base, k, positions, shared_diag=False,
                        family="T", cap=cap)


def make_skew_triangular(base: FiniteRing, k: int, cap: int = RING_SIZE_CAP) -> FiniteRing:
    """Upper-triangular matrices with one shared value on the whole diagonal.

    The strictly-upper entries are free and everything below the diagonal is
    zero; size is |base|^(1 + k(k-1)/2).
    """
    positions = [(i, j) for i in range(k) for j in range(i + 1, k)]
    return _matrix_ring(f"S{k}({base.id})", base, k, positions, shared_diag=True,
                        family="S", cap=cap)


def _matrix_ring(rid, base, k, positions, shared_diag, family, cap):
    if k < 1:
        raise ContractError("matrix size k must be >= 1")
    ndigits = len(positions) + (1 if shared_diag else 0)
    size = base.size**ndigits
    _check_cap(rid, size, cap)
    n = int(size)
    b = base.size

    digits = np.zeros((n, ndigits), dtype=np.int64)
    idx = np.arange(n)
    for t in range(ndigits):
        digits[:, t] = idx % b
        idx = idx // b

    mats = np.zeros((n, k, k), dtype=np.int64)
    off = 0
    if shared_diag:
        for i in range(k):
            mats[:, i, i] = digits[:, 0]
        off = 1
    for t, (i, j) in enumerate(positions):
        mats[:, i, j] = digits[:, off + t]

    radix = b ** np.arange(ndigits, dtype=np.int64)

    def encode_digits(dg):
        return dg @ radix

    # addition/negation act entrywise on the digit vectors
    add = np.zeros((n, n), dtype=np.int64)
    for t in range(ndigits):
        add += base.add_table[np.ix_(digits[:, t], digits[:, t])].astype(np.int64) * radix[t]
    neg = encode_digits(base.neg_table[digits])

    # multiplication: matrix product over the base ring, re-read at positions
    mul = np.zeros((n, n), dtype=np.int64)
    targets = ([(0, 0)] if shared_diag else []) + positions
    for t, (i, j) in enumerate(targets):
        acc = np.zeros((n, n), dtype=np.int64)
        for l in range(k):
            term = base.mul_table[mats[:, i, l][:, None], mats[:, l, j][None, :]]
            acc = base.add_table[acc, term]
        mul += acc * radix[t]

    one_mat = np.zeros((k, k), dtype=np.int64)
    for i in range(k):
        one_mat[i, i] = base.one
    one = _encode_matrix(one_mat, base, positions, shared_diag, radix)

    def describe(h, _mats=mats, _base=base):
        rows = ["[" + " ".join(_base.describe(int(v)) for v in row) + "]" for row in _mats[h]]
        return "[" + " ".join(rows) + "]"

    meta = {"family": family, "k": k, "base": base, "describe": describe,
            "positions": positions, "shared_diag": shared_diag}
    return _finalize(FiniteRing(rid, add, mul, neg, one, meta=meta))


def _encode_matrix(mat, base, positions, shared_diag, radix):
    dg = []
    if shared_diag:
        dg.append(int(mat[0, 0]))
    dg.extend(int(mat[i, j]) for (i, j) in positions)
    return int(np.asarray(dg) @ radix)


def matrix_unit(ring: FiniteRing, i: int, j: int) -> int:
    """Handle of the matrix unit e_ij (entry = base identity) in a matrix-family ring."""
    meta = ring.meta
    if meta.get("family") not in ("M", "T", "S"):
        raise ContractError(f"ring {ring.id!r} is not a matrix-family ring")
    k = meta["k"]
    base = meta["base"]
    if not (0 <= i < k and 0 <= j < k):
        raise ContractError("matrix unit index out of range")
    mat = np.zeros((k, k), dtype=np.int64)
    mat[i, j] = base.one
    if meta["shared_diag"] and i == j:
        raise ContractError("skew-triangular rings have no single diagonal unit")
    if (i, j) not in meta["positions"] and not (meta["shared_diag"] and i == j):
        raise ContractError(f"position ({i},{j}) is not free in {ring.id!r}")
    ndigits = len(meta["positions"]) + (1 if meta["shared_diag"] else 0)
    radix = base.size ** np.arange(ndigits, dtype=np.int64)
    return _encode_matrix(mat, base, meta["positions"], meta["shared_diag"], radix)


# -- the two-generator nil algebra (free algebra modulo monomial relations) -

EX22_RELATIONS = ("xy", "xxx", "yyy", "yyx", "yxx")
EX22_BASIS_WORDS = ("", "x", "xx", "y", "yy", "yx")
EX22_LABELS = ("1", "x", "x2", "y", "y2", "yx")


def reduce_word(word: str) -> int | None:
    """Normal form of a word over {x, y} modulo the monomial relations.

    Returns the basis index of the normal form, or None when the word lies
    in the relation ideal (i.e. is zero).  All relations are monomial, so a
    word is zero exactly when it contains a relation as a subword; a nonzero
    word must itself be a basis word.
    """
    if any(rel in word for rel in EX22_RELATIONS):
        return None
    try:
        return EX22_BASIS_WORDS.index(word)
    except ValueError:
        raise ContractError(f"word {word!r} is neither zero nor in normal form")


def rewriting_basis_table() -> list[list[int | None]]:
    """6x6 basis product table derived purely from word rewriting."""
    return [[reduce_word(u + v) for v in EX22_BASIS_WORDS] for u in EX22_BASIS_WORDS]


def check_rewriting_closure(max_len: int = 4) -> None:
    """Every short word is either zero or a basis word (confluence check)."""
    for length in range(max_len + 1):
        for bits in range(2**length):
            word = "".join("xy"[(bits >> i) & 1] for i in range(length))
            reduce_word(word)  # raises if not in normal form and not zero


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


def make_ex22(p: int, cap: int = RING_SIZE_CAP) -> FiniteRing:
    """The 6-dimensional algebra F<x,y> / (xy, y^2x, yx^2, x^3, y^3) over Z_p.

    Basis {1, x, x^2, y, y^2, yx}; the only nonzero products of non-identity
    basis elements are x*x = x^2, y*y = y^2 and y*x = yx.  The hard-coded
    constants are cross-checked against the word-rewriting oracle before the
    ring is trusted.
    """
    if not _is_prime(p):
        raise ContractError(f"make_ex22 requires a prime, got {p}")
    rid = f"ex22({p})"
    _check_cap(rid, p**6, cap)
    dim = 6
    c = np.zeros((dim, dim, dim), dtype=np.int64)
    for j in range(dim):
        c[0, j, j] = 1  # 1 * e_j
        c[j, 0, j] = 1  # e_j * 1
    c[1, 1, 2] = 1  # x * x  = x^2
    c[3, 3, 4] = 1  # y * y  = y^2
    c[3, 1, 5] = 1  # y * x  = yx

    check_rewriting_closure()
    oracle = rewriting_basis_table()
    for i in range(dim):
        for j in range(dim):
            expected = np.zeros(dim, dtype=np.int64)
            if oracle[i][j] is not None:
                expected[oracle[i][j]] = 1
            if not np.array_equal(c[i, j], expected):
                raise ContractError(f"structure constants disagree with rewriting at ({i},{j})")

    alg = PrimeAlgebra(p=p, dim=dim, basis_labels=EX22_LABELS,
                       constants=c, unit_vector=np.eye(dim, dtype=np.int64)[0])
    alg.check_basis_axioms()
    return _finalize(_ring_from_algebra(rid, alg, meta={"family": "ex22", "p": p}))


def basis_element(ring: FiniteRing, label: str) -> int:
    """Handle of a named basis element of a prime-algebra ring."""
    alg = ring.algebra
    if alg is None:
        raise ContractError(f"ring {ring.id!r} has no basis")
    i = alg.basis_labels.index(label)
    vec = np.zeros(alg.dim, dtype=np.int64)
    vec[i] = 1
    return alg.encode(vec)


def _ring_from_algebra(rid: str, alg: PrimeAlgebra, meta: dict | None = None) -> FiniteRing:
    """Materialize dense tables from structure constants."""
    vecs = alg.decode_all()
    p = alg.p
    powers = p ** np.arange(alg.dim, dtype=np.int64)

    add = ((vecs[:, None, :] + vecs[None, :, :]) % p) @ powers
    neg = ((-vecs) % p) @ powers
    prod_vecs = np.einsum("ai,bj,ijk->abk", vecs, vecs, alg.constants, optimize=True) % p
    mul = prod_vecs @ powers
    one = alg.encode(alg.unit_vector)
    return FiniteRing(rid, add, mul, neg, one, algebra=alg, meta=meta)


# -- derived rings ---------------------------------------------------------

def make_product(r1: FiniteRing, r2: FiniteRing, cap: int = RING_SIZE_CAP) -> FiniteRing:
    """Componentwise product ring; handles pack as h1 * |r2| + h2."""
    rid = f"{r1.id} x {r2.id}"
    _check_cap(rid, r1.size * r2.size, cap)
    n1, n2 = r1.size, r2.size
    h = np.arange(n1 * n2)
    d1, d2 = h // n2, h % n2

    add = r1.add_table[np.ix_(d1, d1)].astype(np.int64) * n2 + r2.add_table[np.ix_(d2, d2)]
    mul = r1.mul_table[np.ix_(d1, d1)].astype(np.int64) * n2 + r2.mul_table[np.ix_(d2, d2)]
    neg = r1.neg_table[d1].astype(np.int64) * n2 + r2.neg_table[d2]
    one = r1.one * n2 + r2.one

    def describe(handle, _n2=n2, _r1=r1, _r2=r2):
        return f"({_r1.describe(handle // _n2)}, {_r2.describe(handle % _n2)})"

    meta = {"family": "product", "factors": (r1, r2), "describe": describe}
    return _finalize(FiniteRing(rid, add, mul, neg, one, meta=meta))


def make_corner(ring: FiniteRing, e: int, cap: int = RING_SIZE_CAP) -> FiniteRing:
    """Corner ring eRe for an idempotent e, with identity e."""
    e = int(e)
    if not 0 <= e < ring.size:
        raise ContractError(f"handle {e} out of range for {ring.id!r}")
    if ring.mul(e, e) != e:
        raise ContractError(f"element {e} is not idempotent in {ring.id!r}")
    col = ring.mul_table[e]  # e*a
    eae = ring.mul_table[col, e]  # (e*a)*e
    members = np.unique(eae)
    _check_cap(f"corner({ring.id},{e})", len(members), cap)
    index = {int(v): i for i, v in enumerate(members)}
    n = len(members)
    add = np.zeros((n, n), dtype=np.int64)
    mul = np.zeros((n, n), dtype=np.int64)
    neg = np.zeros(n, dtype=np.int64)
    for i, a in enumerate(members):
        neg[i] = index[ring.neg(int(a))]
        for j, b in enumerate(members):
            add[i, j] = index[ring.add(int(a), int(b))]
            mul[i, j] = index[ring.mul(int(a), int(b))]

    def describe(h, _members=members, _ring=ring):
        return _ring.describe(int(_members[h]))

    meta = {"family": "corner", "parent": ring, "idempotent": e,
            "members": members, "describe": describe}
    return _finalize(FiniteRing(f"corner({ring.id},{e})", add, mul, neg,
                                one=index[e], meta=meta))


def make_quotient(ring: FiniteRing, gens: ElementSet, cap: int = RING_SIZE_CAP,
                  rid: str | None = None) -> FiniteRing:
    """Quotient by the two-sided ideal generated by ``gens`` (closure taken first)."""
    if gens.is_empty():
        raise ContractError("quotient generators must be nonempty")
    ideal = ideal_closure(ring, gens)
    imembers = np.array(ideal.members())
    # coset representative: least handle in x + I
    rep = np.zeros(ring.size, dtype=np.int64)
    for x in range(ring.size):
        rep[x] = int(ring.add_table[x, imembers].min())
    reps = np.unique(rep)
    _check_cap(f"{ring.id}/I", len(reps), cap)
    index = {int(v): i for i, v in enumerate(reps)}
    n = len(reps)
    add = np.zeros((n, n), dtype=np.int64)
    mul = np.zeros((n, n), dtype=np.int64)
    neg = np.zeros(n, dtype=np.int64)
    for i, a in enumerate(reps):
        neg[i] = index[int(rep[ring.neg(int(a))])]
        for j, b in enumerate(reps):
            add[i, j] = index[int(rep[ring.add(int(a), int(b))])]
            mul[i, j] = index[int(rep[ring.mul(int(a), int(b))])]

    def describe(h, _reps=reps, _ring=ring):
        return f"[{_ring.describe(int(_reps[h]))}]"

    meta = {"family": "quotient", "parent": ring, "ideal": ideal,
            "reps": reps, "describe": describe}
    return _finalize(FiniteRing(rid or f"{ring.id}/I", add, mul, neg,
                                one=index[int(rep[ring.one])], meta=meta))
