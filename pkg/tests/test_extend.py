"""Step-by-step witnesses for the three non-integrability scenarios."""

from fractions import Fraction
import random

import pytest

from aclab.extend import (
    BIG_INT,
    KINDS,
    SMALL_EXP_INT,
    SMALL_INT,
    ExtScenario,
    Witness,
    big_form_value,
    chain,
    chain_report,
    construct_witness,
    example,
    initial_witness,
    member,
    s_value,
    step_bound,
    verify_downward_no_max,
    yardstick_step,
)
from aclab.logts import Frac, ell, x_elem
from aclab.ogroup import GroupElem

V = GroupElem.parse


class TestScenarioBasics:
    def test_shipped_valuations(self):
        assert example(SMALL_INT).s_valuation() == V("[2, 1]")
        assert example(SMALL_EXP_INT).s_valuation() == V("[2, 1]")
        assert example(BIG_INT).s_valuation() == V("[0, -1/2]")

    def test_initial_witnesses(self):
        assert initial_witness(example(SMALL_INT)) == Witness(Frac.ZERO, V("[2, 1]"))
        assert initial_witness(example(BIG_INT)).gamma == V("[0, 1/2]")

    def test_kind_validation(self):
        with pytest.raises(ValueError):
            ExtScenario("mystery", x_elem())
        with pytest.raises(ValueError):
            ExtScenario(BIG_INT, ell(1))

    def test_membership_closed_forms(self):
        small = example(SMALL_INT)
        assert member(small, V("[2, 1]"))
        assert member(small, V("[2, -9]"))
        assert member(small, V("[1, 2]"))
        assert not member(small, V("[5/2, 1]"))
        assert not member(small, V("[0, 3]"))
        assert not member(small, V("[1]"))
        big = example(BIG_INT)
        assert member(big, V("[0, 5]"))
        assert member(big, V("[-3, 7]"))
        assert not member(big, V("[1/2]"))


class TestYardstickStep:
    def test_smallint_one_step_oracle(self):
        sc = example(SMALL_INT)
        stepped = yardstick_step(sc, initial_witness(sc))
        assert stepped.gamma == V("[2, 2]")
        assert step_bound(V("[2, 1]")) == V("[2, 2]")

    def test_steps_meet_the_exact_bound(self):
        for kind in KINDS:
            sc = example(kind)
            ws = chain(sc, 12)
            for prev, cur in zip(ws, ws[1:]):
                assert cur.gamma >= step_bound(prev.gamma)
                assert cur.gamma > prev.gamma

    def test_chain_values_are_reverified(self):
        for kind in KINDS:
            sc = example(kind)
            for w in chain(sc, 8):
                assert s_value(sc, w.eps) == w.gamma

    def test_chain_endpoints(self):
        assert chain(example(SMALL_INT), 10)[-1].gamma == V("[2, 11]")
        assert chain(example(SMALL_EXP_INT), 10)[-1].gamma == V("[2, 11]")
        assert chain(example(BIG_INT), 10)[-1].gamma == V("[0, 21/2]")

    def test_step_past_interleaved_defect_terms(self):
        # A single leading-term kill from this member lands between the
        # member and its bound; the step must keep killing until the bound.
        sc = example(SMALL_INT)
        w = construct_witness(sc, V("[2, 0, 2, -3]"))
        stepped = yardstick_step(sc, w)
        assert stepped.gamma >= V("[2, 1, 2, -3]")

    def test_rejects_non_infinitesimal_witness(self):
        sc = example(SMALL_INT)
        with pytest.raises(ValueError):
            yardstick_step(sc, Witness(x_elem(), V("[2, 1]")))

    def test_rejects_negative_steps(self):
        with pytest.raises(ValueError):
            chain(example(SMALL_INT), -1)


class TestWitnessConstruction:
    def test_realizes_targets_exactly(self):
        targets = {
            SMALL_INT: [V("[2, 5]"), V("[2]"), V("[1, 3, -2]"), V("[1, 1, 5]")],
            SMALL_EXP_INT: [V("[2, 3]"), V("[2]"), V("[1, 1, 3/2]")],
            BIG_INT: [V("[0, 9/2]"), V("[-1]"), V("[0, 0, 4]"), V("[-2, 1, 1]")],
        }
        for kind, gammas in targets.items():
            sc = example(kind)
            for gamma in gammas:
                w = construct_witness(sc, gamma)
                assert w.gamma == gamma
                assert s_value(sc, w.eps) == gamma

    def test_rejects_non_members(self):
        with pytest.raises(ValueError):
            construct_witness(example(SMALL_INT), V("[3]"))
        with pytest.raises(ValueError):
            construct_witness(example(BIG_INT), V("[1, 1]"))

    def test_agreement_with_membership(self):
        rng = random.Random(41)
        pool = [Fraction(n, 2) for n in range(-6, 7)]
        for kind in KINDS:
            sc = example(kind)
            for _ in range(25):
                gamma = GroupElem((i, rng.choice(pool)) for i in range(rng.randint(1, 4)))
                if member(sc, gamma):
                    assert construct_witness(sc, gamma).gamma == gamma
                else:
                    with pytest.raises(ValueError):
                        construct_witness(sc, gamma)


class TestBigComparisonForm:
    def test_initial_form_value(self):
        sc = example(BIG_INT)
        assert big_form_value(sc, Frac.ZERO) == V("[0, 1/2]")

    def test_round_trip_through_witness(self):
        # Values above the seed are realized by candidates asymptotic to g,
        # so they reappear through the multiplicative comparison form.
        sc = example(BIG_INT)
        for target in (V("[0, 7/2]"), V("[0, 5]")):
            w = construct_witness(sc, target)
            delta = w.eps / sc.g - Frac.ONE
            assert big_form_value(sc, delta) == target

    def test_only_defined_for_big_scenarios(self):
        with pytest.raises(ValueError):
            big_form_value(example(SMALL_INT), Frac.ZERO)


class TestStructureSuite:
    def test_all_kinds_verify(self):
        for kind in KINDS:
            report = verify_downward_no_max(example(kind), probes=20, seed=7)
            assert report.ok, report.failures[:2]

    def test_second_seed_verifies(self):
        report = verify_downward_no_max(example(SMALL_EXP_INT), probes=15, seed=12)
        assert report.ok

    def test_chain_report_shape(self):
        data = chain_report(example(SMALL_INT), 4)
        assert data["kind"] == SMALL_INT
        assert data["s"] == "x^-2*l1^-1"
        assert len(data["gammas"]) == 5
        assert data["gammas"][0] == [2, 1]
