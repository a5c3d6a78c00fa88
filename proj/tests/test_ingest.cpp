#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "fdao/ingest.hpp"
#include "fdao/prng.hpp"
#include "fdao/stats.hpp"

using fdao::AbsorbanceSets;
using fdao::Mt19937;

namespace {

std::vector<double> gaussian_wells(Mt19937& g, std::size_t n, double mu, double sd) {
    std::vector<double> out(n);
    for (double& v : out) v = mu + sd * g.gaussian();
    return out;
}

AbsorbanceSets synthetic_plate(Mt19937& g, std::size_t nb, std::size_t nd,
                               std::size_t nf) {
    AbsorbanceSets sets;
    sets.blanks = gaussian_wells(g, nb, 0.20, 0.01);
    sets.live = gaussian_wells(g, nd, 0.90, 0.05);
    for (double conc : {0.01, 0.03, 0.1, 0.3, 1.0}) {
        // stronger concentrations kill more cells, absorbance drops
        const double mu = 0.20 + 0.70 / (1.0 + std::pow(conc / 0.1, 2.0));
        sets.treated.emplace_back(conc, gaussian_wells(g, nf, mu, 0.05));
    }
    return sets;
}

}  // namespace

TEST_CASE("blank correction is the pairwise difference set") {
    CHECK(fdao::blank_correct(std::vector<double>{1.0}, std::vector<double>{0.2}) ==
          std::vector<double>{0.8});
    CHECK(fdao::blank_correct(std::vector<double>{0.5}, std::vector<double>{0.5}) ==
          std::vector<double>{0.0});

    std::vector<double> s(48, 1.0), b(10, 0.1);
    CHECK(fdao::blank_correct(s, b).size() == 480);
    CHECK_THROWS_AS(fdao::blank_correct({}, b), std::invalid_argument);
}

TEST_CASE("living fraction keeps finite quotients and counts the rest") {
    const auto r =
        fdao::living_fraction(std::vector<double>{0.4}, std::vector<double>{0.8});
    CHECK(r.values == std::vector<double>{0.5});
    CHECK(r.dropped_nonfinite == 0);

    const auto with_zero = fdao::living_fraction(std::vector<double>{0.4, 0.0},
                                                 std::vector<double>{0.8, 0.0});
    // 0.4/0.8 kept, 0.4/0 inf dropped, 0/0.8 kept, 0/0 NaN dropped
    CHECK(with_zero.values.size() == 2);
    CHECK(with_zero.dropped_nonfinite == 2);

    // negative denominators stay: the quotient is finite
    const auto negative = fdao::living_fraction(std::vector<double>{0.4},
                                                std::vector<double>{-0.2});
    CHECK(negative.values == std::vector<double>{-2.0});
}

TEST_CASE("percent death transformation") {
    const auto y = fdao::percent_death(std::vector<double>{1.0, 0.0, 1.1});
    CHECK(y[0] == 0.0);
    CHECK(y[1] == 100.0);
    CHECK(y[2] == doctest::Approx(-10.0).epsilon(1e-12));
}

TEST_CASE("cardinality: nb=10 nd=48 nf=5 gives 24000 quotients per concentration") {
    Mt19937 g(55);
    const AbsorbanceSets sets = synthetic_plate(g, 10, 48, 5);
    const auto samples = fdao::build_effect_samples(sets);
    REQUIRE(samples.size() == 5);
    for (const auto& s : samples) {
        CHECK(s.y.size() + s.dropped_nonfinite == 24000);
        for (double y : s.y) CHECK(std::isfinite(y));
    }
}

TEST_CASE("cardinality conservation holds for random shapes") {
    Mt19937 g(56);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t nb = 1 + g.next_u32() % 6;
        const std::size_t nd = 1 + g.next_u32() % 12;
        const std::size_t nf = 1 + g.next_u32() % 4;
        AbsorbanceSets sets = synthetic_plate(g, nb, nd, nf);
        for (const auto& s : fdao::build_effect_samples(sets))
            CHECK(s.y.size() + s.dropped_nonfinite == nf * nd * nb * nb);
    }
}

TEST_CASE("more surviving cells means lower percent death everywhere") {
    Mt19937 g(57);
    AbsorbanceSets sets = synthetic_plate(g, 4, 6, 3);
    const auto base = fdao::build_effect_samples(sets);
    for (auto& [conc, f] : sets.treated)
        for (double& v : f) v += 0.2;  // raise every treated absorbance
    const auto raised = fdao::build_effect_samples(sets);
    for (std::size_t c = 0; c < base.size(); ++c) {
        REQUIRE(base[c].y.size() == raised[c].y.size());
        for (std::size_t i = 0; i < base[c].y.size(); ++i)
            CHECK(raised[c].y[i] < base[c].y[i]);
    }
}

TEST_CASE("near-cancelling corrections produce heavy-tailed effects") {
    // L and F sit close to the blank level, so the corrected values straddle
    // zero and the ratio disperses pathologically.
    Mt19937 g(58);
    AbsorbanceSets sets;
    sets.blanks = gaussian_wells(g, 10, 0.20, 0.03);
    sets.live = gaussian_wells(g, 48, 0.22, 0.03);
    sets.treated.emplace_back(0.1, gaussian_wells(g, 5, 0.22, 0.03));
    const auto samples = fdao::build_effect_samples(sets);
    REQUIRE(samples.size() == 1);
    REQUIRE(samples[0].y.size() > 1000);
    CHECK(fdao::jarque_bera(samples[0].y).p_value < 0.005);
}

TEST_CASE("effect samples flatten into a fit-ready dataset") {
    Mt19937 g(59);
    const AbsorbanceSets sets = synthetic_plate(g, 3, 4, 2);
    const auto samples = fdao::build_effect_samples(sets);
    const fdao::Dataset data = fdao::to_dataset(samples);
    std::size_t total = 0;
    for (const auto& s : samples) total += s.y.size();
    CHECK(data.size() == total);
    CHECK(data.points.front().x == samples.front().concentration);
    CHECK(data.points.back().x == samples.back().concentration);
}
