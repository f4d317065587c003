"""Decision procedures for the ring classes under study.

Every checker returns a PropertyReport whose witness is a plain dict of
handles that ``replay_witness`` can re-verify using only the ring tables.
Existential exponent searches are bounded by the power orbit, so they are
exact, never truncated.  The McCoy check is a bounded-degree falsifier: a
"true" verdict means "no violation found up to the degree bound", and the
report says whether the candidate space was exhausted or sampled.
"""

from __future__ import annotations

import time
import zlib
from dataclasses import dataclass

import numpy as np

from . import kernel as kn
from .errors import ContractError
from .kernel import ElementSet
from .poly import Polynomial, poly_annihilator, poly_mul
from .rings import FiniteRing

PROPERTY_IDS = (
    "reversible", "weakly-reversible", "nil-reversible", "semicommutative",
    "abelian", "two-primal", "cn", "pi-cn", "duo-right", "duo-left", "pi-duo",
    "reduced", "nonsingular-right", "nonsingular-left", "strongly-bounded",
    "strongly-ab-right", "strongly-ab-left", "ab-right", "ab-left",
    "mccoy-right", "mccoy-left",
)

DEFAULT_SEARCH_BUDGET = 200_000
ANNIHILATOR_LATTICE_CAP = 100_000


@dataclass
class PropertyReport:
    ring_id: str
    property_id: str
    verdict: bool
    witness: dict | None
    elapsed_s: float
    note: str = ""

    def to_json(self, ring: FiniteRing | None = None) -> dict:
        out = {
            "ring": self.ring_id,
            "property": self.property_id,
            "verdict": self.verdict,
            "elapsed-ms": round(self.elapsed_s * 1000.0, 3),
        }
        if self.witness is not None:
            out["witness"] = _pretty_witness(self.witness, ring)
        if self.note:
            out["note"] = self.note
        return out


def _pretty_witness(witness, ring):
    if ring is None:
        return witness
    out = {}
    for k, v in witness.items():
        out[k] = v
        if isinstance(v, int) and k in ("a", "b", "c", "e", "r", "s", "x", "element"):
            out[f"{k}-repr"] = ring.describe(v)
        if k in ("f", "g") and isinstance(v, (list, tuple)):
            out[f"{k}-repr"] = str(Polynomial.make(ring, v))
    return out


# -- element-level predicates ----------------------------------------------

def is_reversible_element(ring: FiniteRing, a: int) -> bool:
    """Whether the left and right annihilators of ``a`` coincide."""
    return bool(ring.reversible_elements[a])


def weak_reversibility_exponent(ring: FiniteRing, a: int) -> int | None:
    """Least m with a^m != 0 and a^m reversible; None if there is none."""
    rev = ring.reversible_elements
    for m, power in enumerate(kn.power_orbit(ring, a), start=1):
        if power != 0 and rev[power]:
            return m
    return None


def _one_sided_zero_pair(ring, v):
    """Some b with v*b = 0 != b*v or b*v = 0 != v*b (None if v reversible)."""
    z_row = ring.mul_table[v] == 0
    z_col = ring.mul_table[:, v] == 0
    diff = np.nonzero(z_row != z_col)[0]
    if diff.size == 0:
        return None
    return int(diff[0])


def is_weakly_reversible(ring: FiniteRing) -> PropertyReport:
    """Every nonzero element has a nonzero reversible power.

    Positive witness maps each nonzero handle to its least exponent;
    negative witness names the failing element and, for each of its nonzero
    powers, an element annihilating it on one side only.
    """
    t0 = time.perf_counter()
    exponents = {}
    for a in range(1, ring.size):
        m = weak_reversibility_exponent(ring, a)
        if m is None:
            pairs = []
            for k, power in enumerate(kn.power_orbit(ring, a), start=1):
                if power != 0:
                    pairs.append({"m": k, "power": power,
                                  "b": _one_sided_zero_pair(ring, power)})
            witness = {"kind": "no-reversible-power", "a": a, "powers": pairs}
            return PropertyReport(ring.id, "weakly-reversible", False, witness,
                                  time.perf_counter() - t0)
        exponents[a] = m
    return PropertyReport(ring.id, "weakly-reversible", True,
                          {"kind": "exponent-map", "exponents": exponents},
                          time.perf_counter() - t0)


# -- individual checkers ---------------------------------------------------

def _check_reversible(ring, opts):
    z = ring.mul_table == 0
    bad = np.argwhere(z & ~z.T)
    if bad.size:
        a, b = (int(v) for v in bad[0])
        return False, {"kind": "one-sided-zero", "a": a, "b": b}, ""
    return True, None, ""


def _check_weakly_reversible(ring, opts):
    report = is_weakly_reversible(ring)
    return report.verdict, report.witness, report.note


def _check_nil_reversible(ring, opts):
    z = ring.mul_table == 0
    for a in kn.nil_set(ring).members():
        bad = np.nonzero(z[a] & ~z[:, a])[0]
        if bad.size:
            return False, {"kind": "nil-one-sided-zero", "a": a,
                           "index": kn.nilpotency_index(ring, a),
                           "b": int(bad[0])}, ""
    return True, None, ""


def _check_semicommutative(ring, opts):
    z = ring.mul_table == 0
    for a in range(ring.size):
        bs = np.nonzero(z[a])[0]
        if bs.size == 0:
            continue
        prods = ring.mul_table[np.ix_(ring.mul_table[a], bs)]
        bad = np.argwhere(prods != 0)
        if bad.size:
            r, bi = (int(v) for v in bad[0])
            return False, {"kind": "arb-product-nonzero", "a": a,
                           "b": int(bs[bi]), "r": r}, ""
    return True, None, ""


def _idempotents(ring):
    diag = ring.mul_table[np.arange(ring.size), np.arange(ring.size)]
    return np.nonzero(diag == np.arange(ring.size))[0]


def _check_abelian(ring, opts):
    for e in _idempotents(ring):
        e = int(e)
        diff = np.nonzero(ring.mul_table[e] != ring.mul_table[:, e])[0]
        if diff.size:
            return False, {"kind": "non-central-idempotent", "e": e,
                           "r": int(diff[0])}, ""
    return True, None, ""


def _check_two_primal(ring, opts):
    nil = kn.nil_set(ring)
    rad = kn.jacobson_radical(ring)
    gap = nil.mask & ~rad.mask
    if gap:
        x = (gap & -gap).bit_length() - 1
        # exhibit r with 1 - r*x not invertible
        one = ring.one
        r_bad = None
        for r in range(ring.size):
            t = ring.sub(one, ring.mul(r, x))
            if not ring.units_mask[t]:
                r_bad = r
                break
        return False, {"kind": "nilpotent-outside-radical", "x": x,
                       "index": kn.nilpotency_index(ring, x), "r": r_bad}, ""
    gap = rad.mask & ~nil.mask
    if gap:
        x = (gap & -gap).bit_length() - 1
        return False, {"kind": "radical-not-nilpotent", "x": x}, ""
    return True, None, ""


def _central_mask(ring):
    return np.array([(ring.mul_table[a] == ring.mul_table[:, a]).all()
                     for a in range(ring.size)])


def _check_cn(ring, opts):
    central = _central_mask(ring)
    for a in kn.nil_set(ring).members():
        if not central[a]:
            r = int(np.nonzero(ring.mul_table[a] != ring.mul_table[:, a])[0][0])
            return False, {"kind": "non-central-nilpotent", "a": a,
                           "index": kn.nilpotency_index(ring, a), "r": r}, ""
    return True, None, ""


def _check_pi_cn(ring, opts):
    central = _central_mask(ring)
    for a in range(1, ring.size):
        if ring.mul(a, a) == 0 and not central[a]:
            r = int(np.nonzero(ring.mul_table[a] != ring.mul_table[:, a])[0][0])
            return False, {"kind": "non-central-square-zero", "a": a, "r": r}, ""
    return True, None, ""


def _check_duo(ring, opts, side):
    # aR is two-sided iff Ra ⊆ aR (right case); dual on the left.
    for a in range(ring.size):
        if side == "right":
            ok = ring.col_image_masks[a] & ~ring.row_image_masks[a] == 0
        else:
            ok = ring.row_image_masks[a] & ~ring.col_image_masks[a] == 0
        if not ok:
            col = ring.mul_table[:, a] if side == "right" else ring.mul_table[a]
            inside = ring.row_image_masks[a] if side == "right" else ring.col_image_masks[a]
            r = next(int(r) for r in range(ring.size) if not (inside >> int(col[r])) & 1)
            return False, {"kind": "cyclic-ideal-not-two-sided", "a": a,
                           "r": r, "side": side}, ""
    return True, None, ""


def _pi_duo_exponent(ring, a, side):
    """Least k with a^k != 0 and (left: a^kR ⊆ Ra^k / right: Ra^k ⊆ a^kR)."""
    for k, power in enumerate(kn.power_orbit(ring, a), start=1):
        if power == 0:
            return None
        row, col = ring.row_image_masks[power], ring.col_image_masks[power]
        if (side == "left" and row & ~col == 0) or (side == "right" and col & ~row == 0):
            return k
    return None


def _check_pi_duo(ring, opts):
    exponents = {}
    for a in range(1, ring.size):
        kl = _pi_duo_exponent(ring, a, "left")
        kr = _pi_duo_exponent(ring, a, "right")
        if kl is None or kr is None:
            side = "left" if kl is None else "right"
            detail = []
            for k, power in enumerate(kn.power_orbit(ring, a), start=1):
                if power == 0:
                    break
                row, col = ring.row_image_masks[power], ring.col_image_masks[power]
                out = row & ~col if side == "left" else col & ~row
                detail.append({"k": k, "power": power,
                               "escapee": (out & -out).bit_length() - 1})
            return False, {"kind": "no-pi-duo-exponent", "a": a, "side": side,
                           "powers": detail}, ""
        exponents[a] = [kl, kr]
    return True, {"kind": "pi-duo-exponent-map", "exponents": exponents}, ""


def _check_reduced(ring, opts):
    for a in range(1, ring.size):
        if ring.mul(a, a) == 0:
            return False, {"kind": "square-zero", "a": a}, ""
    return True, None, ""


def _check_nonsingular(ring, opts, side):
    z = kn.singular_set(ring, side)
    if z.is_zero_only():
        return True, None, ""
    a = next(m for m in z.members() if m != 0)
    return False, {"kind": "singular-element", "a": a, "side": side}, ""


def _check_strongly_bounded(ring, opts):
    for side in ("right", "left"):
        masks = ring.row_image_masks if side == "right" else ring.col_image_masks
        for a in range(1, ring.size):
            ideal = ElementSet(ring, masks[a])
            if ideal.is_zero_only():
                continue
            bound = kn._bound(ring, ideal, left_side=(side == "left"))
            if bound.is_zero_only():
                return False, {"kind": "unbounded-cyclic-ideal", "a": a,
                               "side": side}, ""
    return True, None, ""


def annihilator_lattice(ring: FiniteRing, side: str) -> dict[int, tuple[int, ...]]:
    """All annihilators of subsets, as {mask: generating handles}.

    r(X) = intersection of r(x) over x in X, so closing the single-element
    annihilators under intersection enumerates the whole lattice.
    """
    masks = ring.right_ann_masks if side == "right" else ring.left_ann_masks
    lattice: dict[int, tuple[int, ...]] = {}
    for a in range(ring.size):
        lattice.setdefault(masks[a], (a,))
    frontier = list(lattice.items())
    while frontier:
        new = []
        for mask, gens in frontier:
            for a in range(ring.size):
                inter = mask & masks[a]
                if inter not in lattice:
                    lattice[inter] = gens + (a,)
                    new.append((inter, gens + (a,)))
                    if len(lattice) > ANNIHILATOR_LATTICE_CAP:
                        raise ContractError("annihilator lattice exceeds cap")
        frontier = new
    return lattice


def _check_strongly_ab(ring, opts, side):
    lattice = annihilator_lattice(ring, side)
    for mask, gens in sorted(lattice.items()):
        if mask & ~1 == 0:
            continue
        ideal = ElementSet(ring, mask)
        bound = kn._bound(ring, ideal, left_side=(side == "left"))
        if bound.is_zero_only():
            return False, {"kind": "unbounded-annihilator", "side": side,
                           "annihilated": list(gens)}, ""
    return True, None, ""


def _check_ab(ring, opts, side):
    lattice = annihilator_lattice(ring, side)
    for mask, gens in sorted(lattice.items()):
        if mask & ~1 == 0:
            continue
        ideal = ElementSet(ring, mask)
        if not kn.essentiality(ring, side, ideal):
            continue
        bound = kn._bound(ring, ideal, left_side=(side == "left"))
        if bound.is_zero_only():
            return False, {"kind": "unbounded-essential-annihilator", "side": side,
                           "annihilated": list(gens)}, ""
    return True, None, ""


# -- McCoy falsifier -------------------------------------------------------

@dataclass
class MccoyResult:
    violation: tuple[Polynomial, Polynomial] | None  # (f, g) with f*g = 0
    exhausted: bool
    candidates: int
    dmax: int
    side: str


def _zero_divisor_list(ring, side):
    """Nonzero handles with a nonzero annihilator on the given side."""
    masks = ring.right_ann_masks if side == "right" else ring.left_ann_masks
    return [a for a in range(1, ring.size) if masks[a] & ~1]


def _candidate_polys(ring, side, dmax, budget):
    """Coefficient tuples (constant first) that could annihilate on ``side``.

    In any violation f*g = 0 the leading and trailing nonzero coefficients
    of each factor kill a nonzero element on the matching side, so both
    ends are restricted to zero divisors; middle coefficients are free.
    Spaces above the budget are sampled deterministically (seeded by ring
    id), and the second return value says whether enumeration was full.
    """
    zd = _zero_divisor_list(ring, side)
    zd_mask = 0
    for a in zd:
        zd_mask |= 1 << a
    n = ring.size
    out_exhausted = True
    per_degree = max(1, budget // (dmax + 1))

    def gen():
        nonlocal out_exhausted
        rng = np.random.default_rng(zlib.crc32(ring.id.encode()) & 0xFFFF)
        for deg in range(dmax + 1):
            space = len(zd) * (n**deg)
            if space <= per_degree:
                lows = [()] if deg == 0 else np.ndindex(*([n] * deg))
                for low in lows:
                    for lead in zd:
                        coeffs = tuple(low) + (lead,)
                        if _trailing_ok(coeffs, zd_mask):
                            yield coeffs
            else:
                out_exhausted = False
                leads = rng.choice(len(zd), size=per_degree)
                lowers = rng.integers(0, n, size=(per_degree, deg))
                for t in range(per_degree):
                    coeffs = tuple(int(v) for v in lowers[t]) + (zd[int(leads[t])],)
                    if _trailing_ok(coeffs, zd_mask):
                        yield coeffs

    return gen, lambda: out_exhausted


def _trailing_ok(coeffs, zd_mask):
    for c in coeffs:
        if c:
            return bool((zd_mask >> c) & 1)
    return False


def mccoy_falsify(ring: FiniteRing, side: str, dmax: int,
                  budget: int = DEFAULT_SEARCH_BUDGET) -> MccoyResult:
    """Search for a bounded-degree McCoy violation.

    Right case: nonzero f, g of degree <= dmax with f*g = 0 while no nonzero
    constant c has f*c = 0.  Left case is dual.  Returns the first violation
    in deterministic order, or None after the (possibly sampled) candidate
    space is exhausted.
    """
    if side not in ("left", "right"):
        raise ContractError(f"side must be 'left' or 'right', got {side!r}")
    if ring.meta.get("family") == "product":
        return _mccoy_falsify_product(ring, side, dmax, budget)
    ann_masks = ring.right_ann_masks if side == "right" else ring.left_ann_masks
    gen, exhausted = _candidate_polys(ring, side, dmax, budget)
    cap = 2 * dmax
    count = 0
    for coeffs in gen():
        count += 1
        inter = (1 << ring.size) - 1
        for c in coeffs:
            inter &= ann_masks[c]
        if inter & ~1:
            continue  # a nonzero constant annihilator exists: not a violation
        h = Polynomial.make(ring, coeffs)
        res = poly_annihilator(h, side, dmax, cap=cap)
        if res.kind == "some":
            if side == "right":
                pair = (h, res.witness)
            else:
                pair = (res.witness, h)
            return MccoyResult(pair, exhausted(), count, dmax, side)
    return MccoyResult(None, exhausted(), count, dmax, side)


def _mccoy_falsify_product(ring, side, dmax, budget):
    """Search the factors and lift; exact for product rings.

    Annihilators in R1 x R2 split componentwise, so a violation projects to
    a violation in some factor, and a factor violation lifts by putting the
    identity in the other slot of every f coefficient and zero in g.
    """
    r1, r2 = ring.meta["factors"]
    n2 = r2.size
    total = 0
    exhausted = True
    for pos, factor in enumerate((r1, r2)):
        res = mccoy_falsify(factor, side, dmax, budget=budget)
        total += res.candidates
        exhausted = exhausted and res.exhausted
        if res.violation is None:
            continue
        f, g = res.violation
        # the side's constrained factor carries the identity in the spare
        # slot so its constant annihilator stays zero; the other carries 0
        other_one = r2.one if pos == 0 else r1.one
        f_fill = other_one if side == "right" else 0
        g_fill = 0 if side == "right" else other_one

        def lift(c, fill):
            return c * n2 + fill if pos == 0 else fill * n2 + c

        pair = (Polynomial.make(ring, [lift(c, f_fill) for c in f.coeffs]),
                Polynomial.make(ring, [lift(c, g_fill) for c in g.coeffs]))
        return MccoyResult(pair, exhausted, total, dmax, side)
    return MccoyResult(None, exhausted, total, dmax, side)


def _check_mccoy(ring, opts, side):
    dmax = opts.get("max_degree", 3)
    budget = opts.get("budget", DEFAULT_SEARCH_BUDGET)
    res = mccoy_falsify(ring, side, dmax, budget=budget)
    scope = "exhaustive" if res.exhausted else "sampled"
    if res.violation is None:
        note = (f"no violation up to degree {dmax} ({scope}, {res.candidates} "
                f"candidates); not a proof of the McCoy property")
        return True, None, note
    f, g = res.violation
    witness = {"kind": "mccoy-violation", "side": side,
               "f": list(f.coeffs), "g": list(g.coeffs)}
    return False, witness, f"violation found at degree bound {dmax}"


# -- registry --------------------------------------------------------------

_CHECKERS = {
    "reversible": _check_reversible,
    "weakly-reversible": _check_weakly_reversible,
    "nil-reversible": _check_nil_reversible,
    "semicommutative": _check_semicommutative,
    "abelian": _check_abelian,
    "two-primal": _check_two_primal,
    "cn": _check_cn,
    "pi-cn": _check_pi_cn,
    "duo-right": lambda r, o: _check_duo(r, o, "right"),
    "duo-left": lambda r, o: _check_duo(r, o, "left"),
    "pi-duo": _check_pi_duo,
    "reduced": _check_reduced,
    "nonsingular-right": lambda r, o: _check_nonsingular(r, o, "right"),
    "nonsingular-left": lambda r, o: _check_nonsingular(r, o, "left"),
    "strongly-bounded": _check_strongly_bounded,
    "strongly-ab-right": lambda r, o: _check_strongly_ab(r, o, "right"),
    "strongly-ab-left": lambda r, o: _check_strongly_ab(r, o, "left"),
    "ab-right": lambda r, o: _check_ab(r, o, "right"),
    "ab-left": lambda r, o: _check_ab(r, o, "left"),
    "mccoy-right": lambda r, o: _check_mccoy(r, o, "right"),
    "mccoy-left": lambda r, o: _check_mccoy(r, o, "left"),
}


def check_property(ring: FiniteRing, prop: str, **opts) -> PropertyReport:
    """Run one registered ring-class check; see PROPERTY_IDS for the names."""
    if prop not in _CHECKERS:
        raise ContractError(f"unknown property id {prop!r}")
    t0 = time.perf_counter()
    verdict, witness, note = _CHECKERS[prop](ring, opts)
    return PropertyReport(ring.id, prop, verdict, witness,
                          time.perf_counter() - t0, note)


# -- witness replay --------------------------------------------------------

def replay_witness(ring: FiniteRing, witness: dict) -> bool:
    """Re-verify a witness using only the ring tables (and scans over them)."""
    kind = witness.get("kind")
    mul = ring.mul
    if kind == "one-sided-zero":
        a, b = witness["a"], witness["b"]
        return mul(a, b) == 0 and mul(b, a) != 0
    if kind == "no-reversible-power":
        a = witness["a"]
        for entry in witness["powers"]:
            power = entry["power"]
            if ring.pow(a, entry["m"]) != power or power == 0:
                return False
            b = entry["b"]
            if b is None or (mul(power, b) == 0) == (mul(b, power) == 0):
                return False
        return True
    if kind == "exponent-map":
        return all(ring.pow(int(a), m) != 0 and
                   is_reversible_element(ring, ring.pow(int(a), m))
                   for a, m in witness["exponents"].items())
    if kind == "nil-one-sided-zero":
        a, b = witness["a"], witness["b"]
        return (ring.pow(a, witness["index"]) == 0
                and mul(a, b) == 0 and mul(b, a) != 0)
    if kind == "arb-product-nonzero":
        a, b, r = witness["a"], witness["b"], witness["r"]
        return mul(a, b) == 0 and mul(mul(a, r), b) != 0
    if kind == "non-central-idempotent":
        e, r = witness["e"], witness["r"]
        return mul(e, e) == e and mul(e, r) != mul(r, e)
    if kind == "nilpotent-outside-radical":
        x, r = witness["x"], witness["r"]
        if ring.pow(x, witness["index"]) != 0:
            return False
        t = ring.sub(ring.one, mul(r, x))
        has_right_inv = any(mul(t, v) == ring.one for v in range(ring.size))
        return not has_right_inv
    if kind in ("non-central-nilpotent", "non-central-square-zero"):
        a, r = witness["a"], witness["r"]
        nil_ok = (ring.pow(a, witness["index"]) == 0 if "index" in witness
                  else mul(a, a) == 0)
        return nil_ok and mul(a, r) != mul(r, a)
    if kind == "cyclic-ideal-not-two-sided":
        a, r = witness["a"], witness["r"]
        if witness["side"] == "right":
            image = {mul(a, s) for s in range(ring.size)}
            return mul(r, a) not in image
        image = {mul(s, a) for s in range(ring.size)}
        return mul(a, r) not in image
    if kind == "no-pi-duo-exponent":
        a, side = witness["a"], witness["side"]
        for entry in witness["powers"]:
            power, esc = entry["power"], entry["escapee"]
            if ring.pow(a, entry["k"]) != power:
                return False
            row = {mul(power, s) for s in range(ring.size)}
            col = {mul(s, power) for s in range(ring.size)}
            ok = esc in row and esc not in col if side == "left" \
                else esc in col and esc not in row
            if not ok:
                return False
        return True
    if kind == "square-zero":
        a = witness["a"]
        return a != 0 and mul(a, a) == 0
    if kind == "singular-element":
        a, side = witness["a"], witness["side"]
        ann = kn.annihilator(ring, side, ElementSet.from_iter(ring, [a]))
        return a != 0 and kn.essentiality(ring, side, ann)
    if kind == "unbounded-cyclic-ideal":
        a, side = witness["a"], witness["side"]
        masks = ring.row_image_masks if side == "right" else ring.col_image_masks
        ideal = ElementSet(ring, masks[a])
        return (not ideal.is_zero_only()
                and kn._bound(ring, ideal, side == "left").is_zero_only())
    if kind in ("unbounded-annihilator", "unbounded-essential-annihilator"):
        side = witness["side"]
        ann = kn.annihilator(ring, side, ElementSet.from_iter(ring, witness["annihilated"]))
        if ann.is_zero_only():
            return False
        if kind == "unbounded-essential-annihilator" and not kn.essentiality(ring, side, ann):
            return False
        return kn._bound(ring, ann, side == "left").is_zero_only()
    if kind == "mccoy-violation":
        f = Polynomial.make(ring, witness["f"])
        g = Polynomial.make(ring, witness["g"])
        if f.is_zero() or g.is_zero() or not poly_mul(f, g, cap=None).is_zero():
            return False
        coeffs = f.coeffs if witness["side"] == "right" else g.coeffs
        for c in range(1, ring.size):
            if witness["side"] == "right":
                if all(mul(a, c) == 0 for a in coeffs):
                    return False
            else:
                if all(mul(c, b) == 0 for b in coeffs):
                    return False
        return True
    raise ContractError(f"unknown witness kind {kind!r}")
