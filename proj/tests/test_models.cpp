#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "fdao/models.hpp"
#include "fdao/prng.hpp"

using fdao::BoltzmannParams;
using fdao::HillParams;
using fdao::ModelFamily;
using fdao::ModelSpec;
using fdao::Mt19937;

namespace {

// Central finite difference of f along parameter j, step 1e-6 * |theta_j|
// (floored at 1 for near-zero parameters).
template <class F>
double central_diff(F&& f, std::vector<double> theta, std::size_t j) {
    const double h = 1e-6 * std::max(std::fabs(theta[j]), 1.0);
    std::vector<double> up = theta, dn = theta;
    up[j] += h;
    dn[j] -= h;
    return (f(up) - f(dn)) / (2.0 * h);
}

// Extended-precision Hill oracle for second differences; double-precision
// rounding noise at eps^(1/4) steps would swamp the small Hessian entries.
long double hill_value_ld(const std::vector<long double>& t) {
    const long double lz = t[3] * (std::log(t[2]) - std::log(t[4]));
    return t[0] + t[1] / (1.0L + std::exp(lz));
}

double central_diff2(const std::vector<double>& theta, std::size_t a, std::size_t b) {
    std::vector<long double> base(theta.begin(), theta.end());
    const long double ha = 1.2e-4L * std::fabs(theta[a]);
    const long double hb = 1.2e-4L * std::fabs(theta[b]);
    auto at = [&](long double da, long double db) {
        std::vector<long double> t = base;
        t[a] += da;
        t[b] += db;
        return hill_value_ld(t);
    };
    if (a == b)
        return double((at(ha, 0) - 2.0L * at(0, 0) + at(-ha, 0)) / (ha * ha));
    return double((at(ha, hb) - at(ha, -hb) - at(-ha, hb) + at(-ha, -hb)) /
                  (4.0L * ha * hb));
}

double rel_err(double got, double want, double scale) {
    const double denom = std::max({std::fabs(got), std::fabs(want), 1e-6 * scale});
    return std::fabs(got - want) / denom;
}

// Random Hill case inside the regime where double-precision finite
// differences resolve every component (d away from the omega(n) root at Km).
struct HillCase {
    HillParams p;
    double d;
};

HillCase random_hill_case(Mt19937& g) {
    HillCase c;
    c.p.y0 = -20.0 + 40.0 * g.uniform01();
    c.p.ym = 20.0 + 130.0 * g.uniform01();
    c.p.km = 0.02 * std::pow(100.0, g.uniform01());  // 0.02 .. 2
    c.p.n = 0.8 + 4.2 * g.uniform01();
    double log_ratio;
    do {
        log_ratio = -1.1 + 2.2 * g.uniform01();
    } while (std::fabs(log_ratio) < 0.1);
    c.d = c.p.km * std::exp(log_ratio);
    return c;
}

BoltzmannParams random_boltzmann_params(Mt19937& g) {
    BoltzmannParams p;
    do {
        p.vhalf = -80.0 + 120.0 * g.uniform01();
    } while (std::fabs(p.vhalf) < 5.0);
    p.kappa = 2.0 + 23.0 * g.uniform01();
    if (g.uniform01() < 0.5) p.kappa = -p.kappa;
    return p;
}

}  // namespace

TEST_CASE("hill evaluation fixed points") {
    const HillParams p{-0.1, 1.0, 0.5, 2.0};
    CHECK(fdao::hill_eval(p.km, p) == doctest::Approx(p.y0 + p.ym / 2).epsilon(1e-15));
    CHECK(fdao::hill_eval(1e9, p) == doctest::Approx(0.9).epsilon(1e-9));
    const HillParams q{0.0, 100.0, 0.1, 2.0};
    CHECK(fdao::hill_eval(0.1, q) == doctest::Approx(50.0).epsilon(1e-15));
    CHECK_THROWS_AS(fdao::hill_eval(0.0, p), std::domain_error);
    CHECK_THROWS_AS(fdao::hill_eval(-1.0, p), std::domain_error);
}

TEST_CASE("hill gradient structure") {
    Mt19937 g(21);
    for (int i = 0; i < 50; ++i) {
        const auto c = random_hill_case(g);
        CHECK(fdao::hill_grad(c.d, c.p)[0] == 1.0);
    }
    const HillParams p{-5.0, 100.0, 0.25, 3.0};
    const auto at_km = fdao::hill_grad(p.km, p);
    CHECK(at_km[1] == 0.5);
    CHECK(at_km[3] == 0.0);

    // omega(n) shrinks as n grows, evaluated away from the root
    const HillParams p2{-5.0, 100.0, 0.25, 2.0};
    const HillParams p10{-5.0, 100.0, 0.25, 10.0};
    const double d_half = p.km / 2.0;
    CHECK(std::fabs(fdao::hill_grad(d_half, p10)[3]) <
          std::fabs(fdao::hill_grad(d_half, p2)[3]));

    // n == 0 makes omega(n) undefined
    const HillParams pz{0.0, 1.0, 0.5, 0.0};
    CHECK(std::isnan(fdao::hill_grad(0.3, pz)[3]));
}

TEST_CASE("hill gradient matches central finite differences") {
    Mt19937 g(22);
    auto eval = [](const std::vector<double>& t) {
        return fdao::hill_value(t[4], HillParams{t[0], t[1], t[2], t[3]});
    };
    double worst = 0.0;
    for (int rep = 0; rep < 1000; ++rep) {
        const auto c = random_hill_case(g);
        const std::vector<double> t{c.p.y0, c.p.ym, c.p.km, c.p.n, c.d};
        const auto grad = fdao::hill_grad(c.d, c.p);
        double scale = 0.0;
        for (double w : grad) scale = std::max(scale, std::fabs(w));
        for (std::size_t j = 0; j < 4; ++j)
            worst = std::max(worst, rel_err(grad[j], central_diff(eval, t, j), scale));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("omega(ym) grows with concentration toward 1") {
    const HillParams p{-0.1, 1.0, 0.5, 2.0};
    double prev = -1.0;
    for (double d = p.km / 1000; d < 1000 * p.km; d *= 1.3) {
        const double w = fdao::hill_grad(d, p)[1];
        CHECK(w >= prev);
        prev = w;
    }
    CHECK(fdao::hill_grad(p.km, p)[1] == 0.5);
    CHECK(fdao::hill_grad(1e8 * p.km, p)[1] == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("omega(Km) vanishes at the boundaries and peaks at Km") {
    const HillParams p{-0.1, 1.0, 0.5, 3.0};
    CHECK(std::fabs(fdao::hill_grad(1e-12, p)[2]) < 1e-20);
    CHECK(std::fabs(fdao::hill_grad(1e12, p)[2]) < 1e-20);
    // max |omega(Km)| lands on the log-grid step containing Km
    double best_d = 0.0, best = -1.0;
    for (double d = p.km / 100; d < 100 * p.km; d *= 1.05) {
        const double w = std::fabs(fdao::hill_grad(d, p)[2]);
        if (w > best) {
            best = w;
            best_d = d;
        }
    }
    CHECK(std::fabs(std::log(best_d / p.km)) < std::log(1.05) * 1.5);
}

TEST_CASE("saturated zeta keeps evaluation and gradient finite") {
    const HillParams p{-5.0, 100.0, 1.0, 60.0};
    for (double d : {1e-10, 1e-3, 1e3, 1e10}) {
        CHECK(std::isfinite(fdao::hill_eval(d, p)));
        for (double w : fdao::hill_grad(d, p)) CHECK(std::isfinite(w));
        for (const auto& row : fdao::hill_hessian(d, p))
            for (double h : row) CHECK(std::isfinite(h));
    }
    CHECK(fdao::hill_eval(1e-10, p) == doctest::Approx(-5.0));
    CHECK(fdao::hill_eval(1e10, p) == doctest::Approx(95.0));
}

TEST_CASE("hill hessian is symmetric with a zero y0 row") {
    Mt19937 g(23);
    for (int rep = 0; rep < 100; ++rep) {
        const auto c = random_hill_case(g);
        const auto h = fdao::hill_hessian(c.d, c.p);
        for (int a = 0; a < 4; ++a) {
            CHECK(h[0][a] == 0.0);
            CHECK(h[a][0] == 0.0);
            for (int b = 0; b < 4; ++b) CHECK(h[a][b] == h[b][a]);
        }
    }
}

TEST_CASE("hill hessian determinant vanishes at d = Km") {
    const HillParams p{-5.0, 100.0, 0.3, 4.0};
    const auto h = fdao::hill_hessian(p.km, p);
    // direct 4x4 determinant by cofactor expansion over the (zero) first row
    double det = 0.0;
    for (int c = 0; c < 4; ++c) det += h[0][c];  // all zero contributions
    CHECK(det == 0.0);
    // and the nontrivial 3x3 block determinant collapses as well
    const double sub = h[1][1] * (h[2][2] * h[3][3] - h[2][3] * h[3][2]) -
                       h[1][2] * (h[2][1] * h[3][3] - h[2][3] * h[3][1]) +
                       h[1][3] * (h[2][1] * h[3][2] - h[2][2] * h[3][1]);
    CHECK(std::fabs(sub) < 1e-10);
}

TEST_CASE("hill hessian matches second-order finite differences") {
    Mt19937 g(24);
    double worst = 0.0;
    for (int rep = 0; rep < 300; ++rep) {
        const auto c = random_hill_case(g);
        const std::vector<double> t{c.p.y0, c.p.ym, c.p.km, c.p.n, c.d};
        const auto h = fdao::hill_hessian(c.d, c.p);
        double scale = 0.0;
        for (const auto& row : h)
            for (double v : row) scale = std::max(scale, std::fabs(v));
        for (std::size_t a = 1; a < 4; ++a)
            for (std::size_t b = a; b < 4; ++b)
                worst = std::max(worst, rel_err(h[a][b], central_diff2(t, a, b), scale));
    }
    CHECK(worst < 1e-4);
}

TEST_CASE("boltzmann evaluation fixed points") {
    const BoltzmannParams p{-40.0, 10.0};
    CHECK(fdao::boltzmann_eval(-40.0, p) == 0.5);
    CHECK(fdao::boltzmann_eval(1e6, p) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fdao::boltzmann_eval(-1e6, p) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(fdao::boltzmann_eval(0.0, BoltzmannParams{0.0, 0.0}),
                    std::domain_error);
}

TEST_CASE("boltzmann gradient fixed points and finite differences") {
    const BoltzmannParams p{-40.0, 10.0};
    const auto at_half = fdao::boltzmann_grad(-40.0, p);
    CHECK(at_half[0] == -1.0 / (4.0 * p.kappa));
    CHECK(at_half[0] == -0.025);
    CHECK(at_half[1] == 0.0);

    Mt19937 g(25);
    auto eval = [](const std::vector<double>& t) {
        return fdao::boltzmann_value(t[2], BoltzmannParams{t[0], t[1]});
    };
    double worst = 0.0;
    for (int rep = 0; rep < 1000; ++rep) {
        const auto bp = random_boltzmann_params(g);
        double nu;
        do {
            nu = (2.0 * g.uniform01() - 1.0) * 4.0 * std::fabs(bp.kappa);
        } while (std::fabs(nu) < 1.0);
        const std::vector<double> t{bp.vhalf, bp.kappa, bp.vhalf + nu};
        const auto grad = fdao::boltzmann_grad(t[2], bp);
        const double scale = std::max(std::fabs(grad[0]), std::fabs(grad[1]));
        for (std::size_t j = 0; j < 2; ++j)
            worst = std::max(worst, rel_err(grad[j], central_diff(eval, t, j), scale));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("boltzmann parameter-gradient sum identity") {
    Mt19937 g(26);
    for (int rep = 0; rep < 500; ++rep) {
        const auto p = random_boltzmann_params(g);
        const double v = p.vhalf + (2.0 * g.uniform01() - 1.0) * 5.0 * std::fabs(p.kappa);
        const auto grad = fdao::boltzmann_grad(v, p);
        const double sum = fdao::boltzmann_param_gradient_sum(v, p);
        CHECK(std::fabs(sum - (grad[0] + grad[1])) <
              1e-12 * std::max(1.0, std::fabs(sum)));
    }
    for (double kappa : {1.0, 2.0, 3.0, 10.0}) {
        const BoltzmannParams p{0.0, kappa};
        CHECK(std::fabs(fdao::boltzmann_param_gradient_sum(0.0, p) +
                        1.0 / (4.0 * kappa)) < 1e-12);
    }
}

TEST_CASE("model dispatch") {
    const ModelSpec hill{ModelFamily::hill4};
    const std::vector<double> ht{-5.0, 100.0, 0.25, 3.0};
    CHECK(fdao::model_eval(hill, 0.25, ht) == doctest::Approx(45.0).epsilon(1e-12));
    std::vector<double> grad(4);
    fdao::model_grad(hill, 0.25, ht, grad);
    CHECK(grad[0] == 1.0);
    CHECK(grad[1] == 0.5);

    const ModelSpec boltz{ModelFamily::boltzmann2};
    const std::vector<double> bt{-40.0, 10.0};
    CHECK(fdao::model_eval(boltz, -40.0, bt) == 0.5);

    CHECK_THROWS_AS(fdao::model_eval(hill, 1.0, bt), std::invalid_argument);
    CHECK_THROWS_AS(fdao::model_eval(hill, -1.0, ht), std::domain_error);
    CHECK_THROWS_AS(fdao::model_eval(hill, 0.0, ht), std::domain_error);
    CHECK_THROWS_AS(fdao::model_spec_from_name("gompertz"), std::invalid_argument);
    CHECK(fdao::model_spec_from_name("hill4").arity() == 4);
    CHECK(fdao::model_spec_from_name("boltzmann2").arity() == 2);
}

TEST_CASE("parameter names follow the reporting convention") {
    const ModelSpec hill{ModelFamily::hill4};
    const auto hn = hill.param_names();
    CHECK(std::string(hn[0]) == "y0");
    CHECK(std::string(hn[1]) == "ym");
    CHECK(std::string(hn[2]) == "Km");
    CHECK(std::string(hn[3]) == "n");
    const ModelSpec boltz{ModelFamily::boltzmann2};
    CHECK(std::string(boltz.param_names()[0]) == "Vhalf");
    CHECK(std::string(boltz.param_names()[1]) == "kappa");
}
