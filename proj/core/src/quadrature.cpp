#include "subw/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "subw/errors.hpp"

namespace subw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPanelTol = 1e-9;
constexpr double kLogClamp = 700.0;  // exp(700) ~ 1e304, still finite

double safe_exp(double logv) {
    if (std::isnan(logv)) return 0.0;
    return std::exp(std::min(logv, kLogClamp));
}

struct PanelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <typename F>
double integrate_panel(F&& f, double a, double b) {
    double err = 0.0, l1 = 0.0;
    double v = 0.0;
    try {
        if (std::isinf(b)) {
            boost::math::quadrature::exp_sinh<double> integrator;
            v = integrator.integrate(f, a, b, kPanelTol, &err, &l1);
        } else {
            if (b - a < 1e-300) return 0.0;
            boost::math::quadrature::tanh_sinh<double> integrator;
            v = integrator.integrate(f, a, b, kPanelTol, &err, &l1);
        }
    } catch (const std::exception& e) {
        throw PanelError(e.what());
    }
    if (std::isinf(v)) return kInf;
    if (std::isnan(v)) throw PanelError("quadrature produced NaN");
    if (err > 1e-6 * std::max(std::abs(v), 1e-12) && err > 1e-14) {
        std::ostringstream msg;
        msg << "panel [" << a << ", " << b << "] error estimate " << err
            << " too large for value " << v;
        throw PanelError(msg.str());
    }
    return v;
}

/// Branch form: substitute u = (t/c)^gamma so S(t) dt = e^-u (c/gamma) u^(1/gamma-1) du.
double branch_quadrature(const SurvivalFunction& s, const GeneratorView& g, double eta) {
    const auto& branches = s.branches();
    const auto& last = branches.back();
    // convergence of the unbounded panel, decided from exponents
    if (g.growth_gamma > 0.0) {
        if (g.growth_gamma > last.gamma) return kInf;
        if (g.growth_gamma == last.gamma && eta * g.growth_scale <= last.scale) return kInf;
    }
    const double log_eta = std::log(eta);
    double total = 0.0;
    for (const auto& b : branches) {
        std::vector<double> edges{b.t_lo};
        for (double k : g.kinks) {
            double t = eta * k;
            if (t > b.t_lo && t < b.t_hi) edges.push_back(t);
        }
        edges.push_back(b.t_hi);
        std::sort(edges.begin(), edges.end());
        const double log_c = std::log(b.scale);
        const double inv_gamma = 1.0 / b.gamma;
        auto f = [&](double u) {
            if (u <= 1e-290) return 0.0;
            double log_u = std::log(u);
            double log_x = log_c + inv_gamma * log_u - log_eta;
            double logf = g.log_deriv_logx(log_x) - log_eta - u +
                          std::log(b.scale * inv_gamma) + (inv_gamma - 1.0) * log_u;
            return safe_exp(logf);
        };
        for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
            double ua = std::pow(edges[i] / b.scale, b.gamma);
            double ub = std::isinf(edges[i + 1])
                            ? kInf
                            : std::pow(edges[i + 1] / b.scale, b.gamma);
            total += integrate_panel(f, ua, ub);
            if (std::isinf(total)) return kInf;
        }
    }
    return total;
}

/// Closure-only form: integrate in t with panel doubling until the certified
/// tail criterion holds (integrand small relative to the accumulated value and
/// still decreasing).
double closure_quadrature(const SurvivalFunction& s, const GeneratorView& g, double eta) {
    const double log_eta = std::log(eta);
    auto f = [&](double t) {
        if (t <= 1e-290) return 0.0;
        double log_s = s.log_survival(t);
        if (log_s == -kInf) return 0.0;
        double logf = g.log_deriv_logx(std::log(t) - log_eta) - log_eta + log_s;
        return safe_exp(logf);
    };
    std::vector<double> edges{0.0};
    for (double k : g.kinks) {
        if (eta * k > 0.0) edges.push_back(eta * k);
    }
    edges.push_back(std::max({eta, 1.0, edges.back() * 2.0}));
    std::sort(edges.begin(), edges.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        total += integrate_panel(f, edges[i], edges[i + 1]);
    }
    double t_hi = edges.back();
    for (int rounds = 0; rounds < 200; ++rounds) {
        double piece = integrate_panel(f, t_hi, 2.0 * t_hi);
        total += piece;
        t_hi *= 2.0;
        if (std::isinf(total)) return kInf;
        bool decreasing = f(2.0 * t_hi) <= f(t_hi);
        if (decreasing && std::abs(piece) <= 1e-14 * std::max(std::abs(total), 1e-300) &&
            f(t_hi) * t_hi <= 1e-14 * std::max(std::abs(total), 1e-300)) {
            return total;
        }
    }
    throw numerical_error("survival_expectation: tail of closure-defined law did not "
                          "satisfy the truncation criterion within 200 doublings");
}

}  // namespace

double survival_expectation(const SurvivalFunction& s, const GeneratorView& g, double eta) {
    if (!(eta > 0.0) || !std::isfinite(eta)) {
        throw std::domain_error("survival_expectation: eta must be positive and finite");
    }
    if (s.is_zero()) return 0.0;
    try {
        if (!s.branches().empty()) return branch_quadrature(s, g, eta);
        return closure_quadrature(s, g, eta);
    } catch (const PanelError& e) {
        std::ostringstream msg;
        msg << "survival_expectation failed at eta=" << eta << ": " << e.what();
        throw numerical_error(msg.str());
    }
}

GeneratorView make_view(const GBOFunction& g) {
    GeneratorView view;
    view.log_deriv_logx = [g](double log_x) {
        // exponent and its derivative evaluated from log x
        double alpha = g.alpha();
        double l = g.scale();
        double log_q = 2.0 * log_x;                    // x^2
        double exp_q = safe_exp(log_q);
        if (g.is_psi()) {
            double log_w = alpha * log_x;
            return safe_exp(log_w) + std::log(alpha) + (alpha - 1.0) * log_x;
        }
        if (l <= 0.0) {
            return exp_q + std::numbers::ln2 + log_x;  // exp(x^2) * 2x
        }
        double log_w = alpha * (log_x - std::log(l));  // (x/l)^alpha
        double exp_w = safe_exp(log_w);
        if (exp_q <= exp_w) {
            return exp_q + std::numbers::ln2 + log_x;
        }
        return exp_w + std::log(alpha / l) + (alpha - 1.0) * (log_x - std::log(l));
    };
    double xc = g.crossover();
    if (std::isfinite(xc) && xc > 0.0) view.kinks.push_back(xc);
    view.growth_gamma = g.growth_gamma();
    view.growth_scale = g.growth_scale();
    return view;
}

GeneratorView make_view(const PairMeanFunction& g) {
    GeneratorView view;
    const double p = g.p();
    view.log_deriv_logx = [p](double log_x) {
        if (log_x > 30.0) {
            // (1+x)^(p-1) + (x-1)^(p-1) ~ 2 x^(p-1) to sub-1e-12 accuracy
            return std::log(p) + (p - 1.0) * log_x;
        }
        double x = std::exp(log_x);
        double la = (p - 1.0) * std::log1p(x);
        if (x == 1.0) return std::log(0.5 * p) + la;
        double lb = (p - 1.0) * std::log(std::abs(1.0 - x));
        if (x > 1.0) {
            double m = std::max(la, lb);
            return std::log(0.5 * p) + m + std::log(std::exp(la - m) + std::exp(lb - m));
        }
        return std::log(0.5 * p) + la + std::log1p(-std::exp(lb - la));
    };
    view.kinks.push_back(1.0);
    view.growth_gamma = 0.0;
    return view;
}

}  // namespace subw
