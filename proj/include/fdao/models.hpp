#pragma once

#include <array>
#include <cmath>
#include <span>
#include <string>
#include <vector>

namespace fdao {

// Ordered, named parameter vector of a model instance.
struct ParamVector {
    std::vector<std::string> names;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    bool all_finite() const {
        for (double v : values)
            if (!std::isfinite(v)) return false;
        return true;
    }
};

struct DataPoint {
    double x = 0.0;
    double y = 0.0;
};

struct Dataset {
    std::vector<DataPoint> points;
    std::size_t size() const { return points.size(); }
};

// y(d) = y0 + ym / (1 + (Km/d)^n), d > 0
struct HillParams {
    double y0 = 0.0;  // offset (%)
    double ym = 0.0;  // maximum effect (%)
    double km = 1.0;  // half-effect concentration, > 0
    double n = 1.0;   // Hill coefficient
};

// B(v) = 1 / (1 + exp(-(v - vhalf)/kappa))
struct BoltzmannParams {
    double vhalf = 0.0;  // half-distribution potential (mV)
    double kappa = 1.0;  // slope factor (mV), != 0
};

enum class ModelFamily { hill4, boltzmann2 };

struct ModelSpec {
    ModelFamily family = ModelFamily::hill4;

    std::size_t arity() const { return family == ModelFamily::hill4 ? 4 : 2; }
    std::span<const char* const> param_names() const;
    bool x_admissible(double x) const {
        return family == ModelFamily::hill4 ? x > 0.0 : std::isfinite(x);
    }
    ParamVector make_params(std::span<const double> values) const;
};

ModelSpec model_spec_from_name(const std::string& name);  // "hill4" | "boltzmann2"
const char* model_family_name(ModelFamily family);

namespace detail {
// logistic(x) without overflow in exp
inline double logistic(double x) {
    if (x >= 0.0) {
        const double e = std::exp(-x);
        return 1.0 / (1.0 + e);
    }
    const double e = std::exp(x);
    return e / (1.0 + e);
}
}  // namespace detail

// Non-throwing evaluation cores. Parameter excursions outside the model
// domain (e.g. Km <= 0) yield NaN, which the optimizer treats as a rejected
// vertex. zeta = (Km/d)^n is handled in log space so large n saturates to
// the correct limit instead of overflowing.
inline double hill_value(double d, const HillParams& p) noexcept {
    const double t = p.n * (std::log(p.km) - std::log(d));  // log(zeta)
    return p.y0 + p.ym * detail::logistic(-t);
}

inline double boltzmann_value(double v, const BoltzmannParams& p) noexcept {
    return detail::logistic((v - p.vhalf) / p.kappa);
}

// Checked single-point evaluation: d <= 0 is a domain error.
double hill_eval(double d, const HillParams& p);
double boltzmann_eval(double v, const BoltzmannParams& p);

// First derivatives with respect to the parameters, evaluated at one point.
// Order: (y0, ym, Km, n). omega(n) is exactly 0 at d == Km; with n == 0 it is
// reported as NaN (the analytic form divides by n).
std::array<double, 4> hill_grad(double d, const HillParams& p);

// Order: (vhalf, kappa).
std::array<double, 2> boltzmann_grad(double v, const BoltzmannParams& p);

// Sum of the two Boltzmann partials, -(kappa+nu)*sech^2(nu/2kappa)/(4kappa^2);
// equals omega(vhalf) + omega(kappa) identically.
double boltzmann_param_gradient_sum(double v, const BoltzmannParams& p);

using HillHessian = std::array<std::array<double, 4>, 4>;

// Symmetric 4x4 second-derivative matrix of the Hill curve at one point;
// the y0 row and column are identically zero and the determinant vanishes
// at d == Km (degenerate critical point).
HillHessian hill_hessian(double d, const HillParams& p);

// Family dispatch over a raw parameter span (theta in family order).
// Throws on arity mismatch or inadmissible x.
double model_eval(const ModelSpec& spec, double x, std::span<const double> theta);
void model_grad(const ModelSpec& spec, double x, std::span<const double> theta,
                std::span<double> out);

// Unchecked dispatch used inside optimization loops (never throws; NaN marks
// an invalid vertex). x admissibility is validated before iteration begins.
inline double model_value(const ModelSpec& spec, double x,
                          std::span<const double> theta) noexcept {
    if (spec.family == ModelFamily::hill4)
        return hill_value(x, HillParams{theta[0], theta[1], theta[2], theta[3]});
    return boltzmann_value(x, BoltzmannParams{theta[0], theta[1]});
}

}  // namespace fdao
