"""Smoke tests for the python bindings."""

from fractions import Fraction

import pytest

import nlswap


def test_ch_values():
    assert nlswap.ch_value(nlswap.Box.pr()) == Fraction(3, 2)
    assert nlswap.ch_value(nlswap.Box.identity()) == Fraction(1, 2)
    assert nlswap.ch_value(nlswap.failure_box()) == 0
    assert nlswap.ch_value(nlswap.Box.noisy("3/10", Fraction(1, 5))) == Fraction(4, 5)


def test_correlators_and_validation():
    box = nlswap.Box.noisy(Fraction(3, 10), Fraction(1, 5))
    assert nlswap.correlator(box, 0, 0) == Fraction(1, 2)
    assert nlswap.correlator(box, 1, 1) == Fraction(-1, 10)
    assert nlswap.validate(box).ok()
    assert not nlswap.SingleBox.from_entries([["1/2", "1/3"], [0, 1]]).is_valid()


def test_mix_and_entries():
    centre = nlswap.mix([(Fraction(1, 2), nlswap.Box.pr()),
                         ("1/2", nlswap.Box.identity())])
    assert nlswap.ch_value(centre) == 1
    assert centre.entry(0, 0, 0, 0) == Fraction(3, 8)
    assert centre.entries()[1][1][0][0] == Fraction(1, 8)


def test_membership_and_classification():
    cert = nlswap.member_of_hull(nlswap.Box.pr(), "genuine")
    assert cert.is_member
    assert cert.weights == {"PR": Fraction(1)}

    assert not nlswap.member_of_hull(nlswap.Box.anti_pr(), "genuine").is_member
    assert nlswap.is_local(nlswap.Box.noisy("1/2", 0))

    result = nlswap.classify(nlswap.Box.noisy("9/10", 0))
    assert result.tier == nlswap.Tier.GenuineNonlocal
    assert result.tlm == nlswap.TlmStatus.Violated
    assert result.ch == Fraction(7, 5)
    assert '"tier": "GenuineNonlocal"' in result.to_json()

    assert nlswap.slice_boundary_check("1/2", "1/2") == nlswap.SliceVerdict.Useless
    assert nlswap.slice_boundary_check(1, 0) == nlswap.SliceVerdict.Useful


def test_coupler_and_swapping():
    coupler = nlswap.canonical_coupler()
    assert nlswap.apply_to_single(coupler, nlswap.Box.pr()) == (1, 0)

    with pytest.raises(nlswap.InvalidProbabilityError):
        nlswap.apply_to_single(coupler, nlswap.Box.anti_pr())

    outcome = nlswap.swap_boxes(coupler, nlswap.Box.pr(), nlswap.Box.pr())
    assert outcome.q == Fraction(1, 3)
    assert outcome.success_box == nlswap.Box.pr()
    assert outcome.failure_box == nlswap.failure_box()

    with pytest.raises(nlswap.NotGenuineError):
        nlswap.swap_boxes(coupler, nlswap.Box.anti_pr(), nlswap.Box.pr())

    tri = nlswap.apply_to_pair(coupler, nlswap.Box.pr(), nlswap.Box.pr())
    assert tri.entry(0, 0, 0, 0, 0) == Fraction(1, 6)
    assert nlswap.condition_on_outcome(tri).q == Fraction(1, 3)


def test_sweep():
    records = nlswap.sweep_noisy_family(nlswap.canonical_coupler(), step="1/4")
    assert len(records) == 12
    by_params = {(r.xi, r.gamma): r for r in records}
    noiseless = by_params[(Fraction(1), Fraction(0))]
    assert noiseless.ch_out_success == Fraction(3, 2)
    assert noiseless.swappable
    assert noiseless.tlm == nlswap.TlmStatus.Violated
    csv = nlswap.sweep_to_csv(records)
    assert csv.startswith("xi,gamma,ch_in,q,ch_out_success,swappable,tlm\n")


def test_teleport():
    bob = nlswap.SingleBox.local(1, 1)
    result = nlswap.teleport(nlswap.canonical_coupler(), bob)
    assert result.q == Fraction(1, 3)
    assert result.alice_box == bob


def test_consistency_reports():
    coupler = nlswap.canonical_coupler()
    report = nlswap.verify_coupler(coupler, random_mixtures=20)
    assert report.all_pass()
    assert report.solution_space_dim == 14

    demos = nlswap.demonstrate_inconsistencies(coupler)
    assert demos.unscaled_pr_value == Fraction(3, 2)
    assert demos.unscaled_pr_invalid
    assert demos.anti_pr_value == Fraction(-1, 3)
    assert demos.anti_pr_invalid

    assert nlswap.verify_d1_identity(coupler)
    assert nlswap.facet_centre_from_vertices() == nlswap.facet_centre_from_pr()


def test_json_round_trips():
    box = nlswap.Box.noisy("7/20", "1/10")
    assert nlswap.Box.from_json(box.to_json()) == box

    coupler = nlswap.canonical_coupler()
    assert nlswap.CouplerTensor.from_json(coupler.to_json()) == coupler

    with pytest.raises(nlswap.ParseError):
        nlswap.Box.from_json("{}")
