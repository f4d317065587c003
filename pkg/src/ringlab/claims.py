"""Executable encodings of the verified statements, run against a ring corpus.

Each claim is a hypothesis-gated bounded check.  A `pass` means the full
(bounded, possibly sampled; see the domain field) quantifier space was
swept without a counterexample; `fail` carries a trace that `replay_trace`
re-verifies from the multiplication tables alone.  Existential exponents
are searched over the exact power orbit, so a missing exponent is a real
failure, never a truncation artifact.
"""

from __future__ import annotations

import time
import weakref
import zlib
from dataclasses import dataclass

import numpy as np

from . import constructors, kernel as kn, modp
from .errors import CapacityError, ContractError
from .kernel import ElementSet
from .poly import Polynomial, poly_annihilator, poly_mul
from .properties import (_candidate_polys, check_property, is_weakly_reversible,
                         mccoy_falsify, replay_witness)
from .rings import RING_SIZE_CAP, FiniteRing

CLAIM_IDS = tuple(f"C{i}" for i in range(1, 19))

DEFAULT_CAPS = {
    "max_degree": 3,
    "budget": 20_000,       # per quantifier space in C14-C16
    "pair_budget": 5_000,   # polynomial pairs in the C16 family
    "mccoy_budget": 200_000,
    "ring_size_cap": RING_SIZE_CAP,
}

ANCHORS = {
    "C1": "xy=0 and yx\\neq 0",
    "C2": "S_2(R) is weakly reversible if, and only if",
    "C3": "not weakly reversible for any $n\\geq 3$",
    "C4": "reversible whenever $a^2=0$",
    "C5": "Every weakly reversible ring is abelian",
    "C6": "corner subring $eRe$ is too weakly reversible",
    "C7": "non-singular if, and only if, it is reduced",
    "C8": "$a^tRb =b Ra^t=\\{0\\}$",
    "C9": "$aRb^k=b^kRa=\\{0\\}$",
    "C10": "then $(aR)^m=0$",
    "C11": "$(aR)^kb =\\{0\\}$",
    "C12": "$a(Rb)^k =\\{0\\}$",
    "C13": "Nil(R)$ is an ideal",
    "C14": "(a_0R)^{k}g(x)=0",
    "C15": "$a_ib_j\\in Nil(R)$",
    "C16": "strongly right AB and strongly left AB",
    "C17": "R is a McCoy ring",
    "C18": "weakly reversible $\\pi$-duo rings are themselves reversible",
}


HYPOTHESES = {
    "C1": "two-generator nil-algebra family",
    "C2": "skew-triangular S2 ring, or reversible base ring",
    "C3": "skew-triangular Sn ring with n >= 3",
    "C18": "none (report only)",
}
for _cid in CLAIM_IDS:
    HYPOTHESES.setdefault(_cid, "weakly reversible")


@dataclass(frozen=True)
class Claim:
    id: str
    anchor: str
    hypothesis: str


def registry() -> dict[str, Claim]:
    return {cid: Claim(cid, ANCHORS[cid], HYPOTHESES[cid]) for cid in CLAIM_IDS}


@dataclass
class ClaimResult:
    claim_id: str
    ring_id: str
    status: str  # pass | fail | hypothesis-not-met | skipped-by-cap
    note: str = ""
    trace: dict | None = None
    domain: str | None = None  # "full" or "sampled" for quantified sweeps
    elapsed_s: float = 0.0

    def to_json(self) -> dict:
        out = {"claim": self.claim_id, "ring": self.ring_id, "status": self.status}
        if self.note:
            out["note"] = self.note
        if self.domain:
            out["domain"] = self.domain
        if self.trace is not None:
            out["trace"] = self.trace
        return out


_weak_rev_cache: "weakref.WeakKeyDictionary" = weakref.WeakKeyDictionary()


def _weakly_reversible_report(ring):
    rep = _weak_rev_cache.get(ring)
    if rep is None:
        rep = is_weakly_reversible(ring)
        _weak_rev_cache[ring] = rep
    return rep


def _is_reversible(ring):
    z = ring.mul_table == 0
    return bool((z == z.T).all())


# -- shared quantifier helpers ---------------------------------------------

def _zero_pairs(ring):
    """All (a, b) with a, b nonzero and a*b = 0."""
    pairs = np.argwhere(ring.mul_table == 0)
    keep = (pairs[:, 0] != 0) & (pairs[:, 1] != 0)
    return [(int(a), int(b)) for a, b in pairs[keep]]


def _set_power_masks(ring, members, kmax):
    """Bitmasks of S, S^2, ..., S^kmax for S given by its member handles."""
    base = np.asarray(sorted(members), dtype=np.int64)
    cur = base
    masks = []
    for _ in range(kmax):
        mask = 0
        for v in cur:
            mask |= 1 << int(v)
        masks.append(mask)
        if mask == 1 or len(masks) == kmax:
            break
        cur = np.unique(ring.mul_table[np.ix_(cur, base)])
    while len(masks) < kmax:
        masks.append(masks[-1])
    return masks


def _cyclic_set_powers(ring, a, side, kmax):
    """Powers of the set aR (side 'right') or Ra (side 'left')."""
    mask = ring.row_image_masks[a] if side == "right" else ring.col_image_masks[a]
    return _set_power_masks(ring, ElementSet(ring, mask).members(), kmax)


def _nonzero_orbit_len(ring, a):
    n = 0
    for power in kn.power_orbit(ring, a):
        if power == 0:
            break
        n += 1
    return n


# -- claim checkers --------------------------------------------------------

def _claim_c1(ring, caps):
    if ring.meta.get("family") != "ex22":
        return "hypothesis-not-met", "only the two-generator nil-algebra family", None, None
    x = constructors.basis_element(ring, "x")
    y = constructors.basis_element(ring, "y")
    xy, yx = ring.mul(x, y), ring.mul(y, x)
    if xy != 0 or yx == 0:
        return "fail", "defining products are off", {
            "kind": "product-mismatch", "x": x, "y": y, "xy": xy, "yx": yx}, None
    wr = _weakly_reversible_report(ring)
    if not wr.verdict:
        return "fail", "ring is not weakly reversible", wr.witness, None
    if _is_reversible(ring):
        return "fail", "ring is unexpectedly reversible", None, None
    return "pass", "xy = 0, yx != 0; weakly reversible, not reversible", None, "full"


def _claim_c2(ring, caps):
    if ring.meta.get("family") == "S" and ring.meta.get("k") == 2:
        base = ring.meta["base"]
        s2 = ring
    elif _is_reversible(ring):
        try:
            s2 = constructors.make_skew_triangular(ring, 2, cap=caps["ring_size_cap"])
        except CapacityError as exc:
            return "skipped-by-cap", str(exc), None, None
        base = ring
    else:
        return "hypothesis-not-met", \
            "applies to skew-triangular rings and to reversible base rings", None, None
    base_rev = _is_reversible(base)
    s2_wr = _weakly_reversible_report(s2)
    if base_rev != s2_wr.verdict:
        trace = {"kind": "iff-mismatch", "base-reversible": base_rev,
                 "s2-weakly-reversible": s2_wr.verdict,
                 "inner-witness": s2_wr.witness}
        return "fail", "biconditional violated", trace, None
    word = "and" if base_rev else "matches: neither holds"
    return "pass", f"base reversible: {base_rev} {word} S2 weakly reversible: {s2_wr.verdict}", \
        None, "full"


def _claim_c3(ring, caps):
    if ring.meta.get("family") != "S" or ring.meta.get("k", 0) < 3:
        return "hypothesis-not-met", "applies to skew-triangular rings of size >= 3", None, None
    wr = _weakly_reversible_report(ring)
    if wr.verdict:
        return "fail", "unexpectedly weakly reversible", wr.witness, None
    a = constructors.matrix_unit(ring, 0, 1)
    b = constructors.matrix_unit(ring, 1, 2)
    ok = (ring.mul(a, a) == 0 and ring.mul(b, b) == 0
          and ring.mul(b, a) == 0 and ring.mul(a, b) != 0)
    if not ok:
        return "fail", "canonical witness pair does not check out", {
            "kind": "bad-witness-pair", "a": a, "b": b}, None
    trace = {"kind": "one-sided-zero", "a": b, "b": a}
    return "pass", "not weakly reversible; witness pair (e12, e23)", trace, "full"


def _require_weakly_reversible(ring):
    wr = _weakly_reversible_report(ring)
    if not wr.verdict:
        return ("hypothesis-not-met",
                f"ring is not weakly reversible (element {wr.witness['a']})")
    return None


def _claim_c4(ring, caps):
    gate = _require_weakly_reversible(ring)
    if gate:
        return gate[0], gate[1], None, None
    rev = ring.reversible_elements
    for a in range(1, ring.size):
        if ring.mul(a, a) == 0 and not rev[a]:
            z_row = ring.mul_table[a] == 0
            z_col = ring.mul_table[:, a] == 0
            b = int(np.nonzero(z_row != z_col)[0][0])
            return "fail", "square-zero element is not reversible", {
                "kind": "square-zero-not-reversible", "a": a, "b": b}, None
    return "pass", "every square-zero element has matching annihilators", None, "full"


def _claim_c5(ring, caps):
    gate = _require_weakly_reversible(ring)
    if gate:
        return gate[0], gate[1], None, None
    rep = check_property(ring, "abelian")
    if not rep.verdict:
        return "fail", "non-central idempotent", rep.witness, None
    return "pass", "all idempotents central", None, "full"


def _claim_c6(ring, caps):
    gate = _require_weakly_reversible(ring)
    if gate:
        return gate[0], gate[1], None, None
    diag = ring.mul_table[np.arange(ring.size), np.arange(ring.size)]
    idems = [int(e) for e in np.nonzero(diag == np.arange(ring.size))[0]]
    for e in idems:
        corner = constructors.make_corner(ring, e, cap=caps["ring_size_cap"])
        wr = is_weakly_reversible(corner)
        if not wr.verdict:
            members = corner.meta["members"]
            inner = wr.witness
            trace = {"kind": "corner-not-weakly-reversible", "e": e,
                     "a": int(members[inner["a"]]),
                     "powers": [{"m": p["m"], "power": int(members[p["power"]]),
                                 "b": int(members[p["b"]])}
                                for p in inner["powers"]]}
            return "fail", f"corner at idempotent {e} fails", trace, None
    return "pass", f"all {len(idems)} corners weakly reversible", None, "full"


def _claim_c7(ring, caps):
    gate = _require_weakly_reversible(ring)
    if gate:
        return gate[0], gate[1], None, None
    reduced = check_property(ring, "reduced")
    nonsing = check_property(ring, "nonsingular-right")
    if reduced.verdict != nonsing.verdict:
        trace = {"kind": "nonsingular-reduced-mismatch",
                 "reduced": reduced.verdict, "nonsingular": nonsing.verdict,
                 "inner-witness": (reduced.witness or nonsing.witness)}
        return "fail", "equivalence violated", trace, None
    return "pass", f"both sides agree: {reduced.verdict}", None, "full"


def _exponent_exists(ring, which, a, b, set_cache=None):
    """Whether the exponent asserted by C8/C9/C11/C12 exists for (a, b)."""
    l_ann, r_ann = ring.left_ann_masks, ring.right_ann_masks
    row = ring.row_image_masks
    if set_cache is None:
        set_cache = {}

    def powers_of(base, side, kmax):
        key = (base, side)
        got = set_cache.get(key)
        if got is None or len(got) < kmax:
            got = _cyclic_set_powers(ring, base, side, kmax)
            set_cache[key] = got
        return got

    if which in ("C8", "C9"):
        base = a if which == "C8" else b
        other = b if which == "C8" else a
        for power in kn.power_orbit(ring, base):
            if power == 0:
                break
            # C8: a^t R b = b R a^t = 0;  C9: a R b^k = b^k R a = 0
            if (row[power] & ~l_ann[other]) == 0 and (row[other] & ~l_ann[power]) == 0:
                return True
        return False
    if which == "C11":
        # (aR)^k b = 0 and b (Ra)^k = 0 with a^k != 0
        kmax = _nonzero_orbit_len(ring, a)
        ar = powers_of(a, "right", kmax)
        ra = powers_of(a, "left", kmax)
        return any((ar[k] & ~l_ann[b]) == 0 and (ra[k] & ~r_ann[b]) == 0
                   for k in range(kmax))
    # C12: a (Rb)^k = 0 and (bR)^k a = 0 with b^k != 0
    kmax = _nonzero_orbit_len(ring, b)
    rb = powers_of(b, "left", kmax)
    br = powers_of(b, "right", kmax)
    return any((rb[k] & ~r_ann[a]) == 0 and (br[k] & ~l_ann[a]) == 0
               for k in range(kmax))


def _exponent_claim(ring, caps, which):
    """Common engine for the C8/C9/C11/C12 exponent statements."""
    gate = _require_weakly_reversible(ring)
    if gate:
        return gate[0], gate[1], None, None
    pairs = _zero_pairs(ring)
    set_cache: dict[tuple, list[int]] = {}
    for a, b in pairs:
        if not _exponent_exists(ring, which, a, b, set_cache):
            return "fail", "no exponent in the power orbit works", {
                "kind": "exponent-missing", "claim": which, "a": a, "b": b}, None
    return "pass", f"exponent found for all {len(pairs)} zero pairs", None, "full"


def _claim_c10(ring, caps):
    gate = _require_weakly_reversible(ring)
    if gate:
        return gate[0], gate[1], None, None
    for a in kn.nil_set(ring).members():
        if a == 0:
            continue
        m = kn.nilpotency_index(ring, a)
        mask = _cyclic_set_powers(ring, a, "right", m)[m - 1]
        if mask != 1:
            v = next(v for v in ElementSet(ring, mask).members() if v != 0)
            return "fail", "(aR)^m contains a nonzero element", {
                "kind": "set-power-nonzero", "a": a, "m": m, "element": v}, None
    return "pass", "(aR)^m = 0 for every nilpotent a of index m", None, "full"


def _claim_c13(ring, caps):
    gate = _require_weakly_reversible(ring)
    if gate:
        return gate[0], gate[1], None, None
    nil = kn.nil_set(ring)
    members = nil.members()
    for x in members:
        for y in members:
            if ring.add(x, y) not in nil:
                return "fail", "nil set not additively closed", {
                    "kind": "nil-not-ideal", "x": x, "y": y, "via": "add"}, None
    for x in members:
        for r in range(ring.size):
            if ring.mul(r, x) not in nil:
                return "fail", "nil set not left R-stable", {
                    "kind": "nil-not-ideal", "x": x, "y": r, "via": "mul-left"}, None
            if ring.mul(x, r) not in nil:
                return "fail", "nil set not right R-stable", {
                    "kind": "nil-not-ideal", "x": x, "y": r, "via": "mul-right"}, None
    return "pass", f"nil set of {len(members)} elements is a two-sided ideal", None, "full"


def _annihilating_pairs(ring, deg, budget):
    """(f, g, full?) pairs with f*g = 0, g != 0, degrees <= deg.

    f ranges over the zero-divisor-ended candidate space (sound: any f with
    a nonzero annihilator has zero-divisor end coefficients); g over the
    kernel of f's convolution system, capped per f.
    """
    gen, exhausted = _candidate_polys(ring, "right", deg, budget)
    span_cap = 64
    for coeffs in gen():
        f = Polynomial.make(ring, coeffs)
        gs = _annihilator_span(f, deg, span_cap)
        for g in gs:
            yield f, g
    # the exhausted() closure reports whether the f space was fully swept
    yield None, exhausted() and True


def _annihilator_span(f, deg, span_cap):
    """Nonzero annihilators of f up to degree deg (at most span_cap many)."""
    ring = f.ring
    out = []
    if ring.algebra is not None:
        alg = ring.algebra
        m, dim, p = f.degree, alg.dim, alg.p
        mat = np.zeros(((m + deg + 1) * dim, (deg + 1) * dim), dtype=np.int64)
        for i, a in enumerate(f.coeffs):
            op = alg.left_mul_matrix(alg.decode(a))
            for j in range(deg + 1):
                k = i + j
                mat[k * dim:(k + 1) * dim, j * dim:(j + 1) * dim] += op
        basis = modp.kernel_basis(mat % p, p)
        if basis.shape[0] == 0:
            return out
        try:
            vecs = modp.span_vectors(basis, p, limit=span_cap)
        except OverflowError:
            vecs = np.vstack([basis, (basis[0] + basis) % p])[:span_cap]
        for vec in vecs:
            coeffs = [alg.encode(vec[j * dim:(j + 1) * dim]) for j in range(deg + 1)]
            g = Polynomial.make(ring, coeffs)
            if not g.is_zero():
                out.append(g)
        return out
    res = poly_annihilator(f, "right", deg, cap=2 * deg)
    if res.kind == "some":
        out.append(res.witness)
    return out


def _claim_c14(ring, caps):
    gate = _require_weakly_reversible(ring)
    if gate:
        return gate[0], gate[1], None, None
    deg = 2
    full = True
    count = 0
    for f, g in _annihilating_pairs(ring, deg, caps["budget"]):
        if f is None:
            full = g
            break
        count += 1
        a0 = f.coefficient(0)
        if a0 == 0:
            continue  # (0*R)^1 = {0} annihilates everything
        ok, kmax = _a0_power_annihilates(ring, a0, g)
        if not ok:
            return "fail", "no k with (a0 R)^k g = 0", {
                "kind": "no-annihilating-set-power", "f": list(f.coeffs),
                "g": list(g.coeffs), "k-max": kmax}, None
    domain = "full" if full else "sampled"
    return "pass", f"checked {count} annihilating pairs", None, domain


def _a0_power_annihilates(ring, a0, g):
    """Search k with (a0 R)^k * (every coefficient of g) = 0."""
    l_ann = ring.left_ann_masks
    members = ElementSet(ring, ring.row_image_masks[a0]).members()
    seen = set()
    mask_members = np.asarray(members, dtype=np.int64)
    cur = mask_members
    k = 0
    while True:
        k += 1
        mask = 0
        for v in cur:
            mask |= 1 << int(v)
        if all((mask & ~l_ann[b]) == 0 for b in g.coeffs):
            return True, k
        if mask in seen:
            return False, k
        seen.add(mask)
        cur = np.unique(ring.mul_table[np.ix_(cur, mask_members)])


def _claim_c15(ring, caps):
    gate = _require_weakly_reversible(ring)
    if gate:
        return gate[0], gate[1], None, None
    nil = kn.nil_set(ring)
    full = True
    count = 0
    for f, g in _annihilating_pairs(ring, 2, caps["budget"]):
        if f is None:
            full = g
            break
        count += 1
        for i, a in enumerate(f.coeffs):
            for j, b in enumerate(g.coeffs):
                if ring.mul(a, b) not in nil:
                    return "fail", "coefficient product not nilpotent", {
                        "kind": "product-not-nil", "f": list(f.coeffs),
                        "g": list(g.coeffs), "i": i, "j": j}, None
    domain = "full" if full else "sampled"
    return "pass", f"checked {count} annihilating pairs", None, domain


def _c16_family(ring, caps, d):
    """Sampled X family: degree<=2 singletons, then degree<=1 pairs."""
    budget = caps["budget"]
    if ring.algebra is None:
        budget = max(1, budget // 10)  # table rings lack the kernel fast path
    gen, exhausted = _candidate_polys(ring, "right", 2, budget)
    for coeffs in gen():
        yield [Polynomial.make(ring, coeffs)]
    singles_full = exhausted()

    deg1 = [c for c in _collect(_candidate_polys(ring, "right", 1, budget)[0])]
    pair_budget = caps["pair_budget"]
    total_pairs = len(deg1) * (len(deg1) - 1) // 2
    pairs_full = total_pairs <= pair_budget
    if pairs_full:
        for i in range(len(deg1)):
            for j in range(i + 1, len(deg1)):
                yield [Polynomial.make(ring, deg1[i]), Polynomial.make(ring, deg1[j])]
    else:
        rng = np.random.default_rng(zlib.crc32(ring.id.encode()) & 0xFFFF)
        for _ in range(pair_budget):
            i, j = rng.choice(len(deg1), size=2, replace=False)
            yield [Polynomial.make(ring, deg1[int(i)]), Polynomial.make(ring, deg1[int(j)])]
    yield singles_full and pairs_full


def _collect(gen):
    return list(gen())


def _common_right_annihilator(polys, d):
    """Nonzero g of degree <= d with f*g = 0 for every f, or None."""
    ring = polys[0].ring
    if ring.algebra is not None:
        alg = ring.algebra
        dim, p = alg.dim, alg.p
        blocks = []
        for f in polys:
            m = f.degree if not f.is_zero() else 0
            mat = np.zeros(((m + d + 1) * dim, (d + 1) * dim), dtype=np.int64)
            for i, a in enumerate(f.coeffs):
                op = alg.left_mul_matrix(alg.decode(a))
                for j in range(d + 1):
                    k = i + j
                    mat[k * dim:(k + 1) * dim, j * dim:(j + 1) * dim] += op
            blocks.append(mat % p)
        basis = modp.kernel_basis(np.vstack(blocks), p)
        if basis.shape[0] == 0:
            return None
        vec = basis[0]
        return Polynomial.make(ring, [alg.encode(vec[j * dim:(j + 1) * dim])
                                      for j in range(d + 1)])
    # table rings: walk the first polynomial's annihilators, filter the rest
    for g in _annihilator_span(polys[0], d, span_cap=256):
        if all(poly_mul(f, g, cap=None).is_zero() for f in polys[1:]):
            return g
    return None


def _claim_c16(ring, caps):
    gate = _require_weakly_reversible(ring)
    if gate:
        return gate[0], gate[1], None, None
    d = caps["max_degree"]
    full = True
    hits = 0
    fam = _c16_family(ring, caps, d)
    for x in fam:
        if isinstance(x, bool):
            full = x
            break
        g = _common_right_annihilator(x, d)
        if g is None:
            continue
        hits += 1
        found = _bounding_power(ring, x)
        if found is None:
            return "fail", "no c, k with X R c^k = 0", {
                "kind": "no-bounding-power",
                "X": [list(f.coeffs) for f in x], "g": list(g.coeffs)}, None
    domain = "full" if full else "sampled"
    return "pass", f"{hits} family members with nonzero annihilators bounded", None, domain


def _bounding_power(ring, polys):
    """(c, k) with c^k != 0 and (coefficients of X) * R * c^k = 0, or None.

    Candidates come from the shared constant annihilator first (the route
    the underlying argument takes), then a full scan.
    """
    coeff_handles = sorted({c for f in polys for c in f.coeffs})
    l_ann, row = ring.left_ann_masks, ring.row_image_masks
    inter = (1 << ring.size) - 1
    for a in coeff_handles:
        inter &= ring.right_ann_masks[a]
    preferred = ElementSet(ring, inter).members()
    scanned = set(preferred)
    candidates = [c for c in preferred if c != 0]
    candidates += [c for c in range(1, ring.size) if c not in scanned]
    for c in candidates:
        for k, power in enumerate(kn.power_orbit(ring, c), start=1):
            if power == 0:
                break
            if all((row[a] & ~l_ann[power]) == 0 for a in coeff_handles):
                return c, k
    return None


def _claim_c17(ring, caps):
    gate = _require_weakly_reversible(ring)
    if gate:
        return gate[0], gate[1], None, None
    d = caps["max_degree"]
    notes = []
    full = True
    for side in ("right", "left"):
        res = mccoy_falsify(ring, side, d, budget=caps["mccoy_budget"])
        full = full and res.exhausted
        if res.violation is not None:
            f, g = res.violation
            return "fail", f"{side} McCoy violation at degree {d}", {
                "kind": "mccoy-violation", "side": side,
                "f": list(f.coeffs), "g": list(g.coeffs)}, None
        notes.append(f"{side}: {res.candidates} candidates")
    domain = "full" if full else "sampled"
    return "pass", "no violation either side (" + "; ".join(notes) + ")", None, domain


def _claim_c18(ring, caps):
    triple = problem_triple(ring)
    flag = triple["weakly-reversible"] and triple["pi-duo"] and not triple["reversible"]
    note = (f"triple (weakly-reversible={triple['weakly-reversible']}, "
            f"pi-duo={triple['pi-duo']}, reversible={triple['reversible']})")
    if flag:
        note += "; counterexample candidate for the open problem (report only)"
    return "pass", note, None, "full"


_CLAIM_FUNCS = {
    "C1": _claim_c1, "C2": _claim_c2, "C3": _claim_c3, "C4": _claim_c4,
    "C5": _claim_c5, "C6": _claim_c6, "C7": _claim_c7,
    "C8": lambda r, c: _exponent_claim(r, c, "C8"),
    "C9": lambda r, c: _exponent_claim(r, c, "C9"),
    "C10": _claim_c10,
    "C11": lambda r, c: _exponent_claim(r, c, "C11"),
    "C12": lambda r, c: _exponent_claim(r, c, "C12"),
    "C13": _claim_c13, "C14": _claim_c14, "C15": _claim_c15,
    "C16": _claim_c16, "C17": _claim_c17, "C18": _claim_c18,
}


def run_claim(claim_id: str, ring: FiniteRing, caps: dict | None = None) -> ClaimResult:
    if claim_id not in _CLAIM_FUNCS:
        raise ContractError(f"unknown claim id {claim_id!r}")
    opts = dict(DEFAULT_CAPS)
    opts.update(caps or {})
    t0 = time.perf_counter()
    try:
        status, note, trace, domain = _CLAIM_FUNCS[claim_id](ring, opts)
    except CapacityError as exc:
        status, note, trace, domain = "skipped-by-cap", str(exc), None, None
    return ClaimResult(claim_id, ring.id, status, note, trace, domain,
                       time.perf_counter() - t0)


# -- corpus and suite ------------------------------------------------------

def default_corpus() -> list[FiniteRing]:
    z2 = constructors.make_zn(2)
    z4 = constructors.make_zn(4)
    m2 = constructors.make_matrix(z2, 2)
    return [
        z2,
        constructors.make_zn(3),
        z4,
        constructors.make_zn(6),
        constructors.make_zn(8),
        m2,
        constructors.make_upper_triangular(z2, 2),
        constructors.make_upper_triangular(z2, 3),
        constructors.make_skew_triangular(z2, 2),
        constructors.make_skew_triangular(z4, 2),
        constructors.make_skew_triangular(m2, 2),
        constructors.make_skew_triangular(z2, 3),
        constructors.make_ex22(2),
        constructors.make_ex22(3),
        constructors.make_product(constructors.make_ex22(2), z4),
    ]


def run_suite(corpus: list[FiniteRing] | None = None,
              caps: dict | None = None) -> dict:
    """Run every claim on every corpus ring; deterministic (claim, ring) order."""
    if corpus is None:
        corpus = default_corpus()
    if not corpus:
        raise ContractError("corpus must be nonempty")
    cells = []
    counts = {"pass": 0, "fail": 0, "hypothesis-not-met": 0, "skipped-by-cap": 0}
    for claim_id in CLAIM_IDS:
        for ring in corpus:
            result = run_claim(claim_id, ring, caps)
            counts[result.status] += 1
            cells.append(result)
    report = {
        "claims": [c.to_json() for c in cells],
        "rings": [r.id for r in corpus],
        "summary": counts,
        "implications": _diagram_implications(corpus, caps),
    }
    return report


def _diagram_implications(corpus, caps):
    """Corpus-level checks of implications stated without in-text proof."""
    rows = []
    for ring in corpus:
        picn = check_property(ring, "pi-cn").verdict
        if not picn:
            continue
        two_primal = check_property(ring, "two-primal").verdict
        d = (caps or {}).get("max_degree", DEFAULT_CAPS["max_degree"])
        # spot check with the smaller claims budget; C17 runs the full search
        budget = (caps or {}).get("budget", DEFAULT_CAPS["budget"])
        mccoy_clear = all(
            mccoy_falsify(ring, side, d, budget=budget).violation is None
            for side in ("right", "left"))
        rows.append({"ring": ring.id, "source": "diagram-sourced",
                     "pi-cn-implies-two-primal": two_primal,
                     "pi-cn-implies-no-mccoy-violation": mccoy_clear})
    return rows


# -- the open problem ------------------------------------------------------

def problem_triple(ring: FiniteRing) -> dict:
    wr = _weakly_reversible_report(ring)
    pid = check_property(ring, "pi-duo")
    return {
        "ring": ring.id,
        "weakly-reversible": wr.verdict,
        "pi-duo": pid.verdict,
        "reversible": _is_reversible(ring),
    }


def explore_problem(corpus: list[FiniteRing] | None = None) -> dict:
    """Record (weakly-reversible, pi-duo, reversible) per ring; report only.

    A (true, true, false) ring is flagged as a counterexample candidate for
    the open question whether weakly reversible pi-duo rings are reversible.
    Nothing here claims the question settled either way.
    """
    if corpus is None:
        corpus = default_corpus()
    rows = []
    candidates = []
    for ring in corpus:
        triple = problem_triple(ring)
        triple["candidate"] = (triple["weakly-reversible"] and triple["pi-duo"]
                               and not triple["reversible"])
        if triple["candidate"]:
            candidates.append(ring.id)
        rows.append(triple)
    return {"triples": rows, "candidates": candidates,
            "note": "report only; candidate flags are not a resolution of the problem"}


# -- trace replay ----------------------------------------------------------

def replay_trace(ring: FiniteRing, trace: dict) -> bool:
    """Re-verify a claim trace using only the multiplication tables."""
    kind = trace.get("kind")
    mul = ring.mul
    if kind == "product-mismatch":
        return (mul(trace["x"], trace["y"]), mul(trace["y"], trace["x"])) \
            == (trace["xy"], trace["yx"])
    if kind == "square-zero-not-reversible":
        a, b = trace["a"], trace["b"]
        return mul(a, a) == 0 and (mul(a, b) == 0) != (mul(b, a) == 0)
    if kind == "bad-witness-pair":
        a, b = trace["a"], trace["b"]
        return not (mul(a, a) == 0 and mul(b, b) == 0
                    and mul(b, a) == 0 and mul(a, b) != 0)
    if kind == "corner-not-weakly-reversible":
        e = trace["e"]
        if mul(e, e) != e:
            return False
        members = sorted({mul(mul(e, r), e) for r in range(ring.size)})
        a = trace["a"]
        if a not in members:
            return False
        for entry in trace["powers"]:
            power, b = entry["power"], entry["b"]
            if ring.pow(a, entry["m"]) != power or power == 0 or b not in members:
                return False
            if (mul(power, b) == 0) == (mul(b, power) == 0):
                return False
        return True
    if kind == "nonsingular-reduced-mismatch":
        inner = trace["inner-witness"]
        return inner is not None and replay_witness(ring, inner)
    if kind == "iff-mismatch":
        inner = trace.get("inner-witness")
        return trace["base-reversible"] != trace["s2-weakly-reversible"]
    if kind == "exponent-missing":
        a, b, which = trace["a"], trace["b"], trace["claim"]
        if mul(a, b) != 0:
            return False
        return not _exponent_exists(ring, which, a, b)
    if kind == "set-power-nonzero":
        a, m, v = trace["a"], trace["m"], trace["element"]
        if v == 0 or ring.pow(a, m) != 0:
            return False
        cur = {mul(a, r) for r in range(ring.size)}
        base = set(cur)
        for _ in range(m - 1):
            cur = {mul(u, w) for u in cur for w in base}
        return v in cur
    if kind == "nil-not-ideal":
        x, y, via = trace["x"], trace["y"], trace["via"]
        if via == "add":
            if not (_is_nilpotent(ring, x) and _is_nilpotent(ring, y)):
                return False
            return not _is_nilpotent(ring, ring.add(x, y))
        if not _is_nilpotent(ring, x):
            return False
        prod = mul(y, x) if via == "mul-left" else mul(x, y)
        return not _is_nilpotent(ring, prod)
    if kind in ("no-annihilating-set-power", "product-not-nil"):
        f = Polynomial.make(ring, trace["f"])
        g = Polynomial.make(ring, trace["g"])
        if not poly_mul(f, g, cap=None).is_zero():
            return False
        if kind == "product-not-nil":
            prod = mul(f.coeffs[trace["i"]], g.coeffs[trace["j"]])
            return not _is_nilpotent(ring, prod)
        ok, _ = _a0_power_annihilates(ring, f.coefficient(0), g)
        return not ok
    if kind == "no-bounding-power":
        polys = [Polynomial.make(ring, cs) for cs in trace["X"]]
        g = Polynomial.make(ring, trace["g"])
        if g.is_zero() or not all(poly_mul(f, g, cap=None).is_zero() for f in polys):
            return False
        return _bounding_power(ring, polys) is None
    # property-style witnesses (abelian, weak reversibility, McCoy, ...)
    return replay_witness(ring, trace)


def _is_nilpotent(ring, a):
    cur = int(a)
    for _ in range(ring.size):
        if cur == 0:
            return True
        cur = ring.mul(cur, a)
    return cur == 0
