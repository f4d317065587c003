import pytest

from ringlab import (PROPERTY_IDS, check_property, constructors, mccoy_falsify,
                     replay_witness)
from ringlab.errors import ContractError
from ringlab.kernel import ElementSet, annihilator
from ringlab.poly import Polynomial, constant_annihilator, poly_mul
from ringlab.properties import (annihilator_lattice, is_reversible_element,
                                is_weakly_reversible,
                                weak_reversibility_exponent)


@pytest.fixture(scope="module")
def corpus():
    z2 = constructors.make_zn(2)
    return {
        "Z4": constructors.make_zn(4),
        "M2": constructors.make_matrix(z2, 2),
        "T2": constructors.make_upper_triangular(z2, 2),
        "S2": constructors.make_skew_triangular(z2, 2),
        "ex22": constructors.make_ex22(2),
    }


# Verdicts below the line are hand-checkable: Z4 and S2(Z2) are commutative
# (so everything but reducedness and nonsingularity holds), M2 and T2 have the
# non-central idempotent E11 with no reversible power, and the nil algebra is
# abelian and semicommutative but x has one-sided annihilators only.
EXPECTED = {
    "Z4": dict(reversible=True, abelian=True, semicommutative=True,
               reduced=False, cn=True, pi_duo=True,
               nonsingular_right=False, mccoy_right=True),
    "M2": dict(reversible=False, abelian=False, semicommutative=False,
               reduced=False, cn=False, pi_duo=False,
               nonsingular_right=True, mccoy_right=False),
    "T2": dict(reversible=False, abelian=False, semicommutative=False,
               reduced=False, cn=False, pi_duo=False,
               nonsingular_right=True, mccoy_right=False),
    "S2": dict(reversible=True, abelian=True, semicommutative=True,
               reduced=False, cn=True, pi_duo=True,
               nonsingular_right=False, mccoy_right=True),
    "ex22": dict(reversible=False, abelian=True, semicommutative=True,
                 reduced=False, cn=False, pi_duo=True,
                 nonsingular_right=False, mccoy_right=True),
}

EXPECTED_WEAKLY_REVERSIBLE = {"Z4": True, "M2": False, "T2": False,
                              "S2": True, "ex22": True}


def test_known_verdicts(corpus):
    for name, ring in corpus.items():
        for key, want in EXPECTED[name].items():
            prop = key.replace("_", "-")
            got = check_property(ring, prop)
            assert got.verdict is want, (name, prop)
        assert check_property(ring, "weakly-reversible").verdict \
            is EXPECTED_WEAKLY_REVERSIBLE[name]


def test_unknown_property_rejected(corpus):
    with pytest.raises(ContractError):
        check_property(corpus["Z4"], "mcoy-right")


def test_reversible_element_and_exponent(corpus):
    ex22 = corpus["ex22"]
    x = constructors.basis_element(ex22, "x")
    assert not is_reversible_element(ex22, x)
    assert is_reversible_element(ex22, 0)
    assert weak_reversibility_exponent(ex22, x) == 2
    m2 = corpus["M2"]
    e11 = constructors.matrix_unit(m2, 0, 0)
    assert weak_reversibility_exponent(m2, e11) is None


def test_weakly_reversible_witness_shapes(corpus):
    pos = is_weakly_reversible(corpus["ex22"])
    assert pos.verdict
    assert pos.witness["kind"] == "exponent-map"
    assert set(pos.witness["exponents"]) == set(range(1, 64))
    assert max(pos.witness["exponents"].values()) == 2
    neg = is_weakly_reversible(corpus["T2"])
    assert not neg.verdict
    assert neg.witness["kind"] == "no-reversible-power"
    assert replay_witness(corpus["T2"], neg.witness)


def test_every_witness_replays(corpus):
    count = 0
    for ring in corpus.values():
        for prop in PROPERTY_IDS:
            report = check_property(ring, prop)
            if report.verdict or report.witness is None:
                continue
            assert replay_witness(ring, report.witness), (ring.id, prop)
            count += 1
    assert count > 25  # the sweep must actually exercise witnesses


def test_replay_detects_tampering(corpus):
    report = check_property(corpus["M2"], "abelian")
    bad = dict(report.witness)
    bad["e"] = corpus["M2"].one  # central, so the claim is false
    assert not replay_witness(corpus["M2"], bad)


@pytest.mark.parametrize("side", ["left", "right"])
def test_mccoy_falsifier_on_full_matrix_ring(corpus, side):
    m2 = corpus["M2"]
    res = mccoy_falsify(m2, side, 1)
    assert res.violation is not None
    f, g = res.violation
    assert poly_mul(f, g, cap=None).is_zero()
    constrained = f if side == "right" else g
    # a genuine violation: no single ring element kills the whole polynomial
    assert constant_annihilator([constrained], side).is_zero_only()


def test_mccoy_falsifier_negative_is_exhaustive_on_small_ring(corpus):
    res = mccoy_falsify(corpus["Z4"], "right", 2)
    assert res.violation is None
    assert res.exhausted


def test_mccoy_product_decomposition_replays(corpus):
    prod = constructors.make_product(corpus["M2"], corpus["Z4"])
    for side in ("left", "right"):
        report = check_property(prod, f"mccoy-{side}")
        assert not report.verdict
        assert replay_witness(prod, report.witness)
        f, g = mccoy_falsify(prod, side, 1).violation
        assert poly_mul(f, g, cap=None).is_zero()


def test_annihilator_lattice(corpus):
    z8 = constructors.make_zn(8)
    for side in ("left", "right"):
        lat = annihilator_lattice(z8, side)
        masks = set(lat)
        for mask, gens in lat.items():
            got = annihilator(z8, side, ElementSet.from_iter(z8, gens))
            assert got.mask == mask
        # closed under intersection
        for m1 in masks:
            for m2 in masks:
                assert m1 & m2 in masks
    # annihilators in Z8: ann(1)={0}, ann(2)={0,4}, ann(4)={0,2,4,6}, ann(0)=R
    assert set(annihilator_lattice(z8, "right")) == \
        {0b11111111, 0b00000001, 0b00010001, 0b01010101}
