#include "fdao/models.hpp"

#include <stdexcept>

namespace fdao {

namespace {
constexpr const char* kHillNames[] = {"y0", "ym", "Km", "n"};
constexpr const char* kBoltzmannNames[] = {"Vhalf", "kappa"};
}  // namespace

std::span<const char* const> ModelSpec::param_names() const {
    if (family == ModelFamily::hill4) return {kHillNames, 4};
    return {kBoltzmannNames, 2};
}

ParamVector ModelSpec::make_params(std::span<const double> values) const {
    if (values.size() != arity())
        throw std::invalid_argument("parameter count does not match model arity");
    ParamVector pv;
    for (const char* n : param_names()) pv.names.emplace_back(n);
    pv.values.assign(values.begin(), values.end());
    return pv;
}

ModelSpec model_spec_from_name(const std::string& name) {
    if (name == "hill4") return ModelSpec{ModelFamily::hill4};
    if (name == "boltzmann2") return ModelSpec{ModelFamily::boltzmann2};
    throw std::invalid_argument("unknown model family: " + name);
}

const char* model_family_name(ModelFamily family) {
    return family == ModelFamily::hill4 ? "hill4" : "boltzmann2";
}

double hill_eval(double d, const HillParams& p) {
    if (!(d > 0.0)) throw std::domain_error("hill_eval: concentration must be > 0");
    return hill_value(d, p);
}

double boltzmann_eval(double v, const BoltzmannParams& p) {
    if (p.kappa == 0.0) throw std::domain_error("boltzmann_eval: kappa must be nonzero");
    return boltzmann_value(v, p);
}

std::array<double, 4> hill_grad(double d, const HillParams& p) {
    if (!(d > 0.0)) throw std::domain_error("hill_grad: concentration must be > 0");
    const double t = p.n * (std::log(p.km) - std::log(d));  // log(zeta)
    // prefactor zeta/(1+zeta)^2 = sech^2(t/2)/4, immune to zeta overflow
    const double sech_half = 1.0 / std::cosh(0.5 * t);
    const double pref = 0.25 * sech_half * sech_half;
    std::array<double, 4> w;
    w[0] = 1.0;
    w[1] = detail::logistic(-t);          // 1/(1+zeta)
    w[2] = -pref * p.n * p.ym / p.km;     // d/dKm
    w[3] = -pref * p.ym * t / p.n;        // d/dn, exact 0 at d == Km (t == 0)
    return w;
}

HillHessian hill_hessian(double d, const HillParams& p) {
    if (!(d > 0.0)) throw std::domain_error("hill_hessian: concentration must be > 0");
    const double t = p.n * (std::log(p.km) - std::log(d));
    const double sech_half = 1.0 / std::cosh(0.5 * t);
    const double pref = 0.25 * sech_half * sech_half;  // zeta/(1+zeta)^2
    const double th = std::tanh(0.5 * t);              // (zeta-1)/(zeta+1)

    // Second derivatives rewritten via tanh(t/2) so saturated zeta stays
    // finite:
    //   d2/dym dKm = -pref * n / Km
    //   d2/dym dn  = -pref * t / n
    //   d2/dKm^2   =  pref * n * ym * (1 + n*th) / Km^2
    //   d2/dKm dn  = -pref * ym * (1 - t*th) / Km
    //   d2/dn^2    =  pref * ym * t^2 * th / n^2
    HillHessian h{};
    const double h_ym_km = -pref * p.n / p.km;
    const double h_ym_n = -pref * t / p.n;
    const double h_km_km = pref * p.n * p.ym * (1.0 + p.n * th) / (p.km * p.km);
    const double h_km_n = -pref * p.ym * (1.0 - t * th) / p.km;
    const double h_n_n = pref * p.ym * t * t * th / (p.n * p.n);

    h[1][2] = h[2][1] = h_ym_km;
    h[1][3] = h[3][1] = h_ym_n;
    h[2][2] = h_km_km;
    h[2][3] = h[3][2] = h_km_n;
    h[3][3] = h_n_n;
    return h;
}

std::array<double, 2> boltzmann_grad(double v, const BoltzmannParams& p) {
    if (p.kappa == 0.0) throw std::domain_error("boltzmann_grad: kappa must be nonzero");
    const double nu = v - p.vhalf;
    const double sech_half = 1.0 / std::cosh(0.5 * nu / p.kappa);
    const double s2 = sech_half * sech_half;
    return {-s2 / (4.0 * p.kappa), -nu * s2 / (4.0 * p.kappa * p.kappa)};
}

double boltzmann_param_gradient_sum(double v, const BoltzmannParams& p) {
    if (p.kappa == 0.0)
        throw std::domain_error("boltzmann_param_gradient_sum: kappa must be nonzero");
    const double nu = v - p.vhalf;
    const double sech_half = 1.0 / std::cosh(0.5 * nu / p.kappa);
    return -(p.kappa + nu) * sech_half * sech_half / (4.0 * p.kappa * p.kappa);
}

double model_eval(const ModelSpec& spec, double x, std::span<const double> theta) {
    if (theta.size() != spec.arity())
        throw std::invalid_argument("model_eval: parameter arity mismatch");
    if (!spec.x_admissible(x))
        throw std::domain_error("model_eval: x outside the model domain");
    if (spec.family == ModelFamily::hill4)
        return hill_eval(x, HillParams{theta[0], theta[1], theta[2], theta[3]});
    return boltzmann_eval(x, BoltzmannParams{theta[0], theta[1]});
}

void model_grad(const ModelSpec& spec, double x, std::span<const double> theta,
                std::span<double> out) {
    if (theta.size() != spec.arity() || out.size() != spec.arity())
        throw std::invalid_argument("model_grad: parameter arity mismatch");
    if (!spec.x_admissible(x))
        throw std::domain_error("model_grad: x outside the model domain");
    if (spec.family == ModelFamily::hill4) {
        const auto g = hill_grad(x, HillParams{theta[0], theta[1], theta[2], theta[3]});
        std::copy(g.begin(), g.end(), out.begin());
    } else {
        const auto g = boltzmann_grad(x, BoltzmannParams{theta[0], theta[1]});
        std::copy(g.begin(), g.end(), out.begin());
    }
}

}  // namespace fdao
