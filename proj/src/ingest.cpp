#include "fdao/ingest.hpp"

#include <cmath>
#include <stdexcept>

namespace fdao {

std::vector<double> blank_correct(std::span<const double> s, std::span<const double> b) {
    if (s.empty() || b.empty())
        throw std::invalid_argument("blank_correct: empty input set");
    std::vector<double> out;
    out.reserve(s.size() * b.size());
    for (double sv : s)
        for (double bv : b) out.push_back(sv - bv);
    return out;
}

RatioResult living_fraction(std::span<const double> fstar,
                            std::span<const double> lstar) {
    if (fstar.empty() || lstar.empty())
        throw std::invalid_argument("living_fraction: empty input set");
    RatioResult out;
    out.values.reserve(fstar.size() * lstar.size());
    for (double f : fstar) {
        for (double l : lstar) {
            const double q = f / l;
            if (std::isfinite(q))
                out.values.push_back(q);
            else
                ++out.dropped_nonfinite;
        }
    }
    return out;
}

std::vector<double> percent_death(std::span<const double> p) {
    std::vector<double> out;
    out.reserve(p.size());
    for (double v : p) out.push_back(100.0 * (1.0 - v));
    return out;
}

std::vector<EffectSample> build_effect_samples(const AbsorbanceSets& sets) {
    if (sets.treated.empty())
        throw std::invalid_argument("build_effect_samples: no treated sets");
    const std::vector<double> lstar = blank_correct(sets.live, sets.blanks);
    std::vector<EffectSample> samples;
    samples.reserve(sets.treated.size());
    for (const auto& [conc, f] : sets.treated) {
        const std::vector<double> fstar = blank_correct(f, sets.blanks);
        RatioResult ratio = living_fraction(fstar, lstar);
        EffectSample sample;
        sample.concentration = conc;
        sample.y = percent_death(ratio.values);
        sample.dropped_nonfinite = ratio.dropped_nonfinite;
        samples.push_back(std::move(sample));
    }
    return samples;
}

Dataset to_dataset(std::span<const EffectSample> samples) {
    Dataset data;
    for (const EffectSample& s : samples)
        for (double y : s.y) data.points.push_back({s.concentration, y});
    return data;
}

}  // namespace fdao
