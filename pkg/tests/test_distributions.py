"""The distribution catalogue: parsing, known values, samplers versus CDFs."""
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tailtest import TailClass
from tailtest.distributions import (
    FAMILIES,
    DistributionSpec,
    format_spec,
    parse_spec,
    quantile,
    sample,
    survival,
    tail_class,
)
from tailtest.rng import SeedSpec, make_stream

from . import oracles

E = math.e


class TestParseFormat:
    @pytest.mark.parametrize(
        "text,family,params",
        [
            ("exp:1", "exp", (1.0,)),
            ("exp:100", "exp", (100.0,)),
            ("exponential:0.01", "exp", (0.01,)),
            ("logistic", "logistic", ()),
            ("gamma:0.7", "gamma", (0.7,)),
            ("uniform", "uniform", ()),
            ("unif", "uniform", ()),
            ("uniform01", "uniform", ()),
            ("normal", "normal", ()),
            ("norm", "normal", ()),
            ("lognormal", "lognormal", ()),
            ("lnorm", "lognormal", ()),
            ("gumbel", "gumbel", ()),
            ("extval", "gumbel", ()),
            ("extreme-value", "gumbel", ()),
            ("cauchy", "cauchy", ()),
            ("t:3", "t", (3.0,)),
            ("student:5", "t", (5.0,)),
            ("pareto:2", "pareto", (2.0,)),
            ("paretoshifted:1", "pareto", (1.0,)),
            ("weibull:0.5", "weibull", (0.5,)),
            ("loggamma:0.5,1", "loggamma", (0.5, 1.0)),
            ("  EXP:1  ", "exp", (1.0,)),
        ],
    )
    def test_parse(self, text, family, params):
        spec = parse_spec(text)
        assert spec.family == family
        assert spec.params == params

    def test_format_round_trip(self):
        for text in ("exp:1", "pareto:2", "weibull:0.5", "loggamma:0.5,1", "normal"):
            spec = parse_spec(text)
            assert parse_spec(format_spec(spec)) == spec

    def test_format_examples(self):
        assert format_spec(parse_spec("exp:1.0")) == "exp:1"
        assert format_spec(parse_spec("loggamma:0.5,0.16666666666666666")) == "loggamma:0.5,0.166667"

    @pytest.mark.parametrize(
        "bad",
        [
            "nosuchlaw",
            "nosuchlaw:1",
            "exp",            # missing required rate
            "exp:1,2",        # too many parameters
            "exp:0",          # rate must be > 0
            "exp:-1",
            "exp:inf",
            "exp:abc",
            "weibull",
            "loggamma:0.5",
            "normal:1",
            "t",
            "pareto:0",
        ],
    )
    def test_parse_rejects(self, bad):
        with pytest.raises(ValueError):
            parse_spec(bad)

    def test_spec_str_is_format(self):
        assert str(parse_spec("pareto:2")) == "pareto:2"


class TestTailClasses:
    @pytest.mark.parametrize(
        "text,cls",
        [
            ("exp:1", TailClass.MEDIUM),
            ("exp:100", TailClass.MEDIUM),
            ("logistic", TailClass.MEDIUM),
            ("gamma:0.7", TailClass.MEDIUM),
            ("gamma:2", TailClass.MEDIUM),
            ("uniform", TailClass.SHORT),
            ("normal", TailClass.SHORT),
            ("gumbel", TailClass.SHORT),
            ("weibull:5", TailClass.SHORT),
            ("weibull:2", TailClass.SHORT),
            ("weibull:1", TailClass.MEDIUM),
            ("weibull:0.5", TailClass.LONG),
            ("lognormal", TailClass.LONG),
            ("cauchy", TailClass.LONG),
            ("t:3", TailClass.LONG),
            ("pareto:1", TailClass.LONG),
            ("pareto:5", TailClass.LONG),
            ("loggamma:0.5,1", TailClass.LONG),
        ],
    )
    def test_known_classes(self, text, cls):
        assert tail_class(parse_spec(text)) is cls


class TestKnownValues:
    def test_pareto_median_is_one(self):
        # F-bar(1) = 1/2 for every gamma
        assert quantile(parse_spec("pareto:1"), 0.5) == pytest.approx(1.0, abs=1e-15)
        assert quantile(parse_spec("pareto:5"), 0.5) == pytest.approx(1.0, abs=1e-15)
        assert survival(parse_spec("pareto:3"), 1.0) == pytest.approx(0.5, abs=1e-15)

    def test_pareto_quantile(self):
        # u = 0.9 gives (0.9/0.1)^(1/gamma) = 9^(1/5)
        assert quantile(parse_spec("pareto:5"), 0.9) == pytest.approx(9.0 ** 0.2, rel=1e-12)

    def test_weibull_unit_values(self):
        assert quantile(parse_spec("weibull:1"), -math.expm1(-1.0)) == pytest.approx(1.0, rel=1e-12)
        assert survival(parse_spec("weibull:2"), 1.0) == pytest.approx(math.exp(-1.0), rel=1e-12)
        assert survival(parse_spec("weibull:0.5"), 4.0) == pytest.approx(math.exp(-2.0), rel=1e-12)

    def test_exponential_rate_convention(self):
        # exp:theta has survival e^(-theta x): mean 1/theta
        assert survival(parse_spec("exp:2"), 1.0) == pytest.approx(math.exp(-2.0), rel=1e-12)
        assert quantile(parse_spec("exp:100"), 0.5) == pytest.approx(math.log(2.0) / 100.0, rel=1e-12)

    def test_uniform_is_identity(self):
        assert quantile(parse_spec("uniform"), 0.25) == 0.25
        assert survival(parse_spec("uniform"), 0.25) == 0.75
        assert survival(parse_spec("uniform"), 2.0) == 0.0

    def test_normal_symmetry(self):
        assert survival(parse_spec("normal"), 0.0) == pytest.approx(0.5, abs=1e-15)
        assert quantile(parse_spec("normal"), 0.975) == pytest.approx(1.959963985, abs=1e-8)

    def test_lognormal_median(self):
        assert quantile(parse_spec("lognormal"), 0.5) == pytest.approx(1.0, rel=1e-12)

    def test_cauchy_quartiles(self):
        assert quantile(parse_spec("cauchy"), 0.75) == pytest.approx(1.0, rel=1e-12)
        assert survival(parse_spec("cauchy"), 1.0) == pytest.approx(0.25, rel=1e-12)

    def test_gumbel_is_short_form(self):
        # survival exp(-e^(x - gamma_E)); mean zero
        g = oracles.EULER_GAMMA
        assert survival(parse_spec("gumbel"), g) == pytest.approx(math.exp(-1.0), rel=1e-12)
        x = sample(parse_spec("gumbel"), 400_000, SeedSpec(3))
        assert abs(x.mean()) < 0.01

    def test_loggamma_support_above_one(self):
        assert survival(parse_spec("loggamma:0.5,1"), 1.0) == 1.0
        assert quantile(parse_spec("loggamma:2,1"), 0.5) > 1.0

    def test_support_boundaries_return_survival_one(self):
        for text in ("exp:1", "gamma:2", "weibull:2", "pareto:1", "lognormal"):
            assert survival(parse_spec(text), 0.0) == 1.0
            assert survival(parse_spec(text), -3.0) == 1.0


class TestQuantileSurvivalInverse:
    @pytest.mark.parametrize("text", [
        "exp:1", "exp:100", "logistic", "gamma:0.7", "gamma:2", "uniform",
        "normal", "lognormal", "gumbel", "cauchy", "t:3", "pareto:1",
        "pareto:5", "weibull:0.5", "weibull:5", "loggamma:0.5,1",
    ])
    def test_survival_of_quantile(self, text):
        spec = parse_spec(text)
        for u in (0.001, 0.05, 0.25, 0.5, 0.75, 0.95, 0.999):
            assert survival(spec, quantile(spec, u)) == pytest.approx(1.0 - u, abs=1e-9)

    @pytest.mark.parametrize("text", ["exp:1", "pareto:2", "weibull:0.5", "normal"])
    def test_quantile_rejects_bad_u(self, text):
        spec = parse_spec(text)
        for u in (0.0, 1.0, -0.5, 2.0):
            with pytest.raises(ValueError):
                quantile(spec, u)


class TestSampling:
    def test_deterministic_by_seed(self):
        spec = parse_spec("pareto:2")
        a = sample(spec, 100, SeedSpec(11, 4))
        b = sample(spec, 100, SeedSpec(11, 4))
        assert np.array_equal(a, b)

    def test_generator_passthrough_advances(self):
        spec = parse_spec("exp:1")
        g = make_stream(5)
        a = sample(spec, 50, g)
        b = sample(spec, 50, g)
        assert not np.array_equal(a, b)

    def test_rejects_nonpositive_n(self):
        with pytest.raises(ValueError):
            sample(parse_spec("exp:1"), 0, 1)

    KS_CASES = [
        ("exp:1", oracles.cdf_exponential(1.0)),
        ("exp:100", oracles.cdf_exponential(100.0)),
        ("logistic", oracles.cdf_logistic()),
        ("uniform", oracles.cdf_uniform01()),
        ("normal", oracles.cdf_normal()),
        ("lognormal", oracles.cdf_lognormal()),
        ("gumbel", oracles.cdf_gumbel_short()),
        ("cauchy", oracles.cdf_cauchy()),
        ("t:3", oracles.cdf_t3()),
        ("pareto:2", oracles.cdf_pareto(2.0)),
        ("pareto:1", oracles.cdf_pareto(1.0)),
        ("weibull:0.5", oracles.cdf_weibull(0.5)),
        ("weibull:5", oracles.cdf_weibull(5.0)),
    ]

    @pytest.mark.parametrize("text,cdf", KS_CASES, ids=[c[0] for c in KS_CASES])
    def test_sampler_matches_cdf(self, text, cdf):
        # 1e5 draws; KS distance must sit inside 0.006 (99.9% point is 0.0062)
        x = sample(parse_spec(text), 100_000, SeedSpec(2026, 8))
        assert oracles.ks_distance(x, cdf) < 0.006

    @pytest.mark.parametrize(
        "text,cdf",
        [
            ("gamma:0.7", oracles.cdf_gamma_ref(0.7)),
            ("gamma:2", oracles.cdf_gamma_ref(2.0)),
            ("loggamma:0.5,1", oracles.cdf_loggamma_ref(0.5, 1.0)),
        ],
    )
    def test_sampler_matches_reference_cdf(self, text, cdf):
        # mpmath reference is slow, so fewer points and the matching critical value
        x = sample(parse_spec(text), 4000, SeedSpec(2026, 9))
        assert oracles.ks_distance(x, cdf) < oracles.ks_critical(4000)

    @given(u=st.floats(min_value=1e-6, max_value=1 - 1e-6))
    @settings(max_examples=60)
    def test_pareto_quantile_survival_property(self, u):
        spec = DistributionSpec("pareto", (2.0,))
        assert survival(spec, quantile(spec, u)) == pytest.approx(1.0 - u, abs=1e-12)


def test_families_constant_lists_catalogue():
    assert FAMILIES == (
        "exp", "logistic", "gamma", "uniform", "normal", "lognormal",
        "gumbel", "cauchy", "t", "pareto", "weibull", "loggamma",
    )
