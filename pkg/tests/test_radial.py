from fractions import Fraction

import pytest

from wildskel.delta_morphism import DeltaMorphism, MetricDeltaMorphism
from wildskel.elliptic import EllipticInput, classify_elliptic
from wildskel.genus_graph import MetricGenusGraph
from wildskel.radial import (
    WrongDegreeError,
    degree_p_locus,
    radial_vs_ball,
    supersingular_witness,
)
from wildskel.special import Lengths, metric_lift
from wildskel.valuation import LogAbs, ResidueSetting

MIXED2 = ResidueSetting.mixed(2, Fraction(-1))
WILD2 = ResidueSetting.equichar(2)
TAME0 = ResidueSetting.equichar_zero()


def kummer_segment(p, log_p, length=Fraction(1)):
    setting = ResidueSetting.mixed(p, log_p)
    src = MetricGenusGraph({"u": 0, "v": 0}, {"e": ("u", "v")}, {"e": length})
    tgt = MetricGenusGraph(
        {"u'": 0, "v'": 0}, {"e'": ("u'", "v'")}, {"e'": p * length}
    )
    dm = DeltaMorphism(
        src, tgt, {"u": "u'", "v": "v'"}, {"e": "e'"}, {"e": p}, {"e": 0}
    )
    return (
        MetricDeltaMorphism(dm, {"u": LogAbs(log_p), "v": LogAbs(log_p)}, setting),
        setting,
    )


class TestDegreePLocus:
    def test_kummer_constant_radius(self):
        for p, log_p in ((2, Fraction(-1)), (3, Fraction(-1)), (5, Fraction(-2, 3))):
            mm, _ = kummer_segment(p, log_p)
            desc = degree_p_locus(mm, p)
            expected = -log_p / (p - 1)
            for num in range(0, 5):
                assert desc.radius_at("e", Fraction(num, 4)) == expected

    def test_radius_zero_where_delta_one(self):
        mm = metric_lift("WB", Lengths(l0=Fraction(1)), WILD2)
        desc = degree_p_locus(mm, 2)
        # the core is not in the center (multiplicity 1 there); tails are
        for e in desc.center.edge_ids:
            assert desc.radius_at(e, 0) == 0  # delta = 1 at the finite end

    def test_slope_scaling(self):
        # slope -3 of log delta over p = 2 gives radius slope 3
        mm = metric_lift(
            "MS", Lengths(l1=Fraction(1, 2), l3=Fraction(1, 6)), MIXED2
        )
        desc = degree_p_locus(mm, 2)
        slope3 = [
            e
            for e in desc.center.edge_ids
            if abs(mm.morphism.sdelta_stored(e)) == 3
        ][0]
        r = desc.radii[slope3]
        assert r.value_at(Fraction(1, 6)) - r.value_at(0) == Fraction(1, 2)
        assert [s for *_, s in r.neg_log_delta.segments()] == [3]

    def test_wrong_degree(self):
        mm, _ = kummer_segment(3, Fraction(-1))
        with pytest.raises(WrongDegreeError):
            degree_p_locus(mm, 2)

    def test_pointwise_oracle(self):
        mm = metric_lift(
            "MS", Lengths(l1=Fraction(1, 2), l3=Fraction(1, 6)), MIXED2
        )
        desc = degree_p_locus(mm, 2)
        for e in desc.center.edge_ids:
            prof = mm.delta_profile(e)
            length = mm.source.length(e)
            for k in range(8):
                x = Fraction(k, 48)
                if not x <= length:
                    break
                assert desc.radius_at(e, x) == -prof.value_at(x)

    def test_center_excludes_split_part(self):
        mm = metric_lift("WB", Lengths(l0=Fraction(1)), WILD2)
        desc = degree_p_locus(mm, 2)
        # the two loop edges have multiplicity one and are excluded
        assert len(desc.center.edge_ids) == 2
        for e in desc.center.edge_ids:
            assert mm.morphism.mult[e] == 2


class TestRadialVsBall:
    def test_constant_radius_is_equal(self):
        mm, _ = kummer_segment(2, Fraction(-1))
        assert not radial_vs_ball(degree_p_locus(mm, 2)).strict

    def test_slope_one_boundary_is_equal(self):
        # WO tails: log delta has slope -1, radius decreases at rate exactly 1
        mm = metric_lift("WO", Lengths(), WILD2)
        report = radial_vs_ball(degree_p_locus(mm, 2))
        assert not report.strict

    def test_slope_three_is_strict(self):
        mm = metric_lift("WS", Lengths(l3=Fraction(1, 2)), WILD2)
        report = radial_vs_ball(degree_p_locus(mm, 2))
        assert report.strict
        assert abs(mm.morphism.sdelta_stored(report.witness_edge)) == 3

    def test_invariant_under_subdivision(self):
        # subdividing the slope-3 edge of a Kummer-like segment changes nothing
        setting = WILD2
        src = MetricGenusGraph(
            {"u": 0, "m": 0, "v": 0},
            {"e1": ("u", "m"), "e2": ("m", "v")},
            {"e1": Fraction(1, 4), "e2": Fraction(1, 4)},
        )
        tgt = MetricGenusGraph(
            {"u'": 0, "m'": 0, "v'": 0},
            {"e1'": ("u'", "m'"), "e2'": ("m'", "v'")},
            {"e1'": Fraction(1, 2), "e2'": Fraction(1, 2)},
        )
        dm = DeltaMorphism(
            src,
            tgt,
            {"u": "u'", "m": "m'", "v": "v'"},
            {"e1": "e1'", "e2": "e2'"},
            {"e1": 2, "e2": 2},
            {"e1": -3, "e2": -3},
        )
        mm = MetricDeltaMorphism(
            dm,
            {
                "u": LogAbs(0),
                "m": LogAbs(Fraction(-3, 4)),
                "v": LogAbs(Fraction(-3, 2)),
            },
            setting,
        )
        assert radial_vs_ball(degree_p_locus(mm, 2)).strict

        whole = MetricDeltaMorphism(
            DeltaMorphism(
                MetricGenusGraph(
                    {"u": 0, "v": 0}, {"e": ("u", "v")}, {"e": Fraction(1, 2)}
                ),
                MetricGenusGraph(
                    {"u'": 0, "v'": 0}, {"e'": ("u'", "v'")}, {"e'": Fraction(1)}
                ),
                {"u": "u'", "v": "v'"},
                {"e": "e'"},
                {"e": 2},
                {"e": -3},
            ),
            {"u": LogAbs(0), "v": LogAbs(Fraction(-3, 2))},
            setting,
        )
        assert radial_vs_ball(degree_p_locus(whole, 2)).strict


class TestSupersingularWitness:
    def test_supersingular_types_true(self):
        assert supersingular_witness(
            classify_elliptic(EllipticInput.of(MIXED2, Fraction(-4)))
        )
        assert supersingular_witness(
            classify_elliptic(EllipticInput.j_zero(MIXED2))
        )
        assert supersingular_witness(
            classify_elliptic(EllipticInput.of(WILD2, Fraction(-6)))
        )
        assert supersingular_witness(
            classify_elliptic(EllipticInput.j_zero(WILD2))
        )

    def test_other_types_false(self):
        assert not supersingular_witness(
            classify_elliptic(EllipticInput.of(MIXED2, Fraction(0)))
        )
        assert not supersingular_witness(
            classify_elliptic(EllipticInput.of(MIXED2, Fraction(3)))
        )
        assert not supersingular_witness(
            classify_elliptic(EllipticInput.of(TAME0, Fraction(-1)))
        )
        assert not supersingular_witness(
            classify_elliptic(EllipticInput.of(WILD2, Fraction(0)))
        )
