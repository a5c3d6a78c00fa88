#pragma once

#include <span>
#include <utility>
#include <vector>

#include "fdao/models.hpp"

namespace fdao {

// Absorbance pipeline: blank correction by pairwise subtraction, living
// fraction by pairwise ratio, percent-death transformation. The pairwise
// (Cartesian) combinations give nf*nd*nb^2 raw quotients per concentration;
// non-finite quotients are dropped and counted.

// All pairwise differences s - b.
std::vector<double> blank_correct(std::span<const double> s, std::span<const double> b);

struct RatioResult {
    std::vector<double> values;  // finite quotients, f-major order
    std::size_t dropped_nonfinite = 0;
};

// All pairwise quotients fstar/lstar; zero denominators and other non-finite
// results are dropped and counted. Negative but finite quotients are kept.
RatioResult living_fraction(std::span<const double> fstar, std::span<const double> lstar);

// y = 100 * (1 - p); negative percentages are preserved.
std::vector<double> percent_death(std::span<const double> p);

struct AbsorbanceSets {
    std::vector<double> blanks;  // {B}, nb values
    std::vector<double> live;    // {L}, nd values
    // concentration (mg/mL) -> treated absorbances {F}, nf values each
    std::vector<std::pair<double, std::vector<double>>> treated;
};

struct EffectSample {
    double concentration = 0.0;
    std::vector<double> y;  // percent death after filtering
    std::size_t dropped_nonfinite = 0;
};

std::vector<EffectSample> build_effect_samples(const AbsorbanceSets& sets);

// Flatten effect samples into (x = concentration, y = percent death) pairs.
Dataset to_dataset(std::span<const EffectSample> samples);

}  // namespace fdao
