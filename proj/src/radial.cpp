#include "packbound/radial.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

namespace pb {

namespace {

constexpr double kPi = 3.14159265358979323846;

long double bessel_series(int n, long double x) {
    // sum_m (-1)^m (x/2)^{2m+n} / (m! (m+n)!)
    long double half = x / 2.0L;
    long double term = 1.0L;
    for (int k = 1; k <= n; ++k) term *= half / k;
    long double sum = term;
    for (int m = 1; m < 200; ++m) {
        term *= -(half * half) / (long double)(m * (m + n));
        sum += term;
        if (std::fabs((double)term) < 1e-20 * (1.0 + std::fabs((double)sum))) break;
    }
    return sum;
}

long double bessel_asymptotic(int n, long double x) {
    // J_n(x) ~ sqrt(2/(pi x)) (P cos chi - Q sin chi), chi = x - n pi/2 - pi/4
    const long double mu = 4.0L * n * n;
    long double p = 1.0L, q = 0.0L;
    long double term = 1.0L;
    long double prev = 1e300L;
    for (int k = 1; k < 60; ++k) {
        long double odd = 2.0L * k - 1.0L;
        term *= (mu - odd * odd) / (8.0L * x * k);
        long double mag = std::fabs((double)term);
        if (mag > prev) break; // asymptotic series: stop at the smallest term
        prev = mag;
        switch (k % 4) {
        case 1: q += term; break;
        case 2: p -= term; break;
        case 3: q -= term; break;
        case 0: p += term; break;
        }
        if (mag < 1e-19) break;
    }
    const long double pi_l = 3.141592653589793238462643383279503L;
    long double chi = x - (n * 0.5L + 0.25L) * pi_l;
    return std::sqrt(2.0L / (pi_l * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

} // namespace

double bessel_j(double nu, double x) {
    if (x < 0.0) throw std::invalid_argument("bessel_j: negative argument");
    if (nu == -0.5) {
        if (x == 0.0) throw std::invalid_argument("bessel_j: J_{-1/2} singular at 0");
        return std::sqrt(2.0 / (kPi * x)) * std::cos(x);
    }
    if (nu == 0.5) {
        if (x == 0.0) return 0.0;
        return std::sqrt(2.0 / (kPi * x)) * std::sin(x);
    }
    if (nu == 0.0 || nu == 1.0) {
        int n = int(nu);
        if (x < 12.0) return double(bessel_series(n, (long double)x));
        return double(bessel_asymptotic(n, (long double)x));
    }
    throw std::invalid_argument("bessel_j: unsupported order");
}

double unit_ball_volume(int n) {
    return std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

double unit_sphere_area(int n) {
    return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
}

RadialProfile RadialProfile::piecewise(int dim, std::vector<double> breakpoints,
                                       std::vector<std::vector<double>> coeffs) {
    if (breakpoints.size() < 2 || coeffs.size() + 1 != breakpoints.size())
        throw std::invalid_argument("RadialProfile: breakpoints/coefficients mismatch");
    RadialProfile f;
    f.dim_ = dim;
    f.kind_ = Kind::PiecewisePoly;
    f.support_ = breakpoints.back();
    f.breaks_ = std::move(breakpoints);
    f.coeffs_ = std::move(coeffs);
    return f;
}

RadialProfile RadialProfile::tabulated(int dim, double support, std::vector<double> samples,
                                       int interp_order) {
    if (samples.size() < 2 || support <= 0.0) throw std::invalid_argument("RadialProfile: bad table");
    RadialProfile f;
    f.dim_ = dim;
    f.kind_ = Kind::Tabulated;
    f.support_ = support;
    f.samples_ = std::move(samples);
    f.interp_order_ = interp_order;
    return f;
}

double RadialProfile::operator()(double r) const {
    r = std::fabs(r);
    if (r >= support_) return 0.0;
    switch (kind_) {
    case Kind::PiecewisePoly: {
        std::size_t piece = 0;
        while (piece + 2 < breaks_.size() && r >= breaks_[piece + 1]) ++piece;
        double acc = 0.0, pow_r = 1.0;
        for (double c : coeffs_[piece]) {
            acc += c * pow_r;
            pow_r *= r;
        }
        return acc;
    }
    case Kind::Tabulated: {
        const double h = support_ / double(samples_.size() - 1);
        double u = r / h;
        std::size_t i = std::min(std::size_t(u), samples_.size() - 2);
        double w = u - double(i);
        if (interp_order_ <= 1 || samples_.size() < 4) {
            return samples_[i] * (1.0 - w) + samples_[i + 1] * w;
        }
        // Catmull-Rom cubic through the four surrounding samples
        std::size_t i0 = i > 0 ? i - 1 : 0;
        std::size_t i2 = i + 1, i3 = std::min(i + 2, samples_.size() - 1);
        double p0 = samples_[i0], p1 = samples_[i], p2 = samples_[i2], p3 = samples_[i3];
        double a = -0.5 * p0 + 1.5 * p1 - 1.5 * p2 + 0.5 * p3;
        double b = p0 - 2.5 * p1 + 2.0 * p2 - 0.5 * p3;
        double c = -0.5 * p0 + 0.5 * p2;
        return ((a * w + b) * w + c) * w + p1;
    }
    case Kind::BallAutocorrelation: {
        const int n = dim_;
        if (n == 1) return 2.0 - r;
        if (n == 2) return 2.0 * std::acos(0.5 * r) - 0.5 * r * std::sqrt(4.0 - r * r);
        if (n == 3) {
            return 4.0 * kPi / 3.0 - kPi * r + kPi * r * r * r / 12.0;
        }
        // n = 4: 2 vol(B^3) * integral_{r/2}^{1} (1-x^2)^{3/2} dx
        auto anti = [](double x) {
            return (x * (5.0 - 2.0 * x * x) * std::sqrt(1.0 - x * x) + 3.0 * std::asin(x)) / 8.0;
        };
        return (8.0 * kPi / 3.0) * (anti(1.0) - anti(0.5 * r));
    }
    }
    return 0.0;
}

RadialProfile ball_autocorrelation(int n) {
    if (n < 1 || n > 4) throw std::invalid_argument("ball_autocorrelation: n must be 1..4");
    if (n == 1) return RadialProfile::piecewise(1, {0.0, 2.0}, {{2.0, -1.0}});
    if (n == 3)
        return RadialProfile::piecewise(3, {0.0, 2.0},
                                        {{4.0 * kPi / 3.0, -kPi, 0.0, kPi / 12.0}});
    RadialProfile f;
    f.dim_ = n;
    f.kind_ = RadialProfile::Kind::BallAutocorrelation;
    f.support_ = 2.0;
    return f;
}

RadialProfile RadialProfile::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open profile: " + path);
    nlohmann::json j;
    try {
        in >> j;
        int dim = j.at("dim").get<int>();
        std::string kind = j.at("kind").get<std::string>();
        if (kind == "piecewise") {
            return piecewise(dim, j.at("breakpoints").get<std::vector<double>>(),
                             j.at("coefficients").get<std::vector<std::vector<double>>>());
        }
        if (kind == "tabulated") {
            return tabulated(dim, j.at("support").get<double>(),
                             j.at("samples").get<std::vector<double>>(),
                             j.value("interp_order", 3));
        }
        if (kind == "ball-autocorr") return ball_autocorrelation(dim);
        throw ParseError("profile kind must be piecewise, tabulated, or ball-autocorr");
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("profile json: ") + e.what());
    }
}

// --- quadrature -----------------------------------------------------------

namespace {

struct GaussRule {
    std::vector<double> nodes, weights; // on [-1, 1]
};

const GaussRule& gauss16() {
    static GaussRule rule = [] {
        GaussRule r;
        const int n = 16;
        r.nodes.resize(n);
        r.weights.resize(n);
        for (int i = 0; i < n; ++i) {
            // Newton on P_n with the Chebyshev initial guess
            double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                double dp = n * (x * p1 - p0) / (x * x - 1.0);
                double dx = p1 / dp;
                x -= dx;
                if (std::fabs(dx) < 1e-16) break;
            }
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (x * p1 - p0) / (x * x - 1.0);
            r.nodes[n - 1 - i] = x;
            r.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        return r;
    }();
    return rule;
}

template <typename F>
double panel_integral(F&& f, double a, double b) {
    const GaussRule& g = gauss16();
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) acc += g.weights[i] * f(mid + half * g.nodes[i]);
    return acc * half;
}

template <typename F>
double refine_panel(F&& f, double a, double b, double whole, double tol, int depth) {
    if (depth > 40) throw QuadratureFailure("radial_fourier: refinement did not converge");
    double mid = 0.5 * (a + b);
    double left = panel_integral(f, a, mid);
    double right = panel_integral(f, mid, b);
    double err = std::fabs(left + right - whole);
    if (err <= tol) return left + right;
    return refine_panel(f, a, mid, left, 0.5 * tol, depth + 1) +
           refine_panel(f, mid, b, right, 0.5 * tol, depth + 1);
}

template <typename F>
double adaptive_integral(F&& f, const std::vector<double>& base_breaks, double osc_period) {
    // panels: profile breakpoints refined below a fraction of the oscillation,
    // then each panel is refined locally until its error share is negligible;
    // endpoint derivative singularities only deepen the panels that touch them
    std::vector<double> breaks = base_breaks;
    if (osc_period > 0.0) {
        std::vector<double> refined;
        for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
            double a = breaks[k], b = breaks[k + 1];
            int pieces = std::max(1, int(std::ceil((b - a) / (0.5 * osc_period))));
            for (int t = 0; t < pieces; ++t) refined.push_back(a + (b - a) * t / pieces);
        }
        refined.push_back(breaks.back());
        breaks = std::move(refined);
    }
    std::vector<double> coarse(breaks.size() - 1);
    double gross = 0.0;
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
        coarse[k] = panel_integral(f, breaks[k], breaks[k + 1]);
        gross += std::fabs(coarse[k]);
    }
    const double span = breaks.back() - breaks.front();
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
        double width = breaks[k + 1] - breaks[k];
        double tol = 1e-11 * (gross + 1.0) * (width / span) + 1e-16 * (gross + 1.0);
        total += refine_panel(f, breaks[k], breaks[k + 1], coarse[k], tol, 0);
    }
    return total;
}

std::vector<double> profile_breaks(const RadialProfile& f) {
    if (f.kind() == RadialProfile::Kind::PiecewisePoly) return f.breakpoints();
    return {0.0, f.support()};
}

} // namespace

double radial_fourier(const RadialProfile& f, double s) {
    if (s < 0.0) throw std::invalid_argument("radial_fourier: s must be >= 0");
    const int n = f.dim();
    const double R = f.support();
    if (s == 0.0) {
        double area = unit_sphere_area(n);
        return area * adaptive_integral([&](double r) { return f(r) * std::pow(r, n - 1); },
                                        profile_breaks(f), 0.0);
    }
    const double nu = 0.5 * n - 1.0;
    const double period = 1.0 / s; // J(2 pi r s) oscillates on that scale in r
    double integral = adaptive_integral(
        [&](double r) {
            if (r <= 0.0) return 0.0;
            return f(r) * bessel_j(nu, 2.0 * kPi * r * s) * std::pow(r, 0.5 * n);
        },
        profile_breaks(f), std::min(period, R));
    return 2.0 * kPi * std::pow(s, -(0.5 * n - 1.0)) * integral;
}

LpCertificateReport lp_certificate_check(const RadialProfile& f, ThetaVariant variant) {
    LpCertificateReport rep;
    rep.variant = variant;
    rep.n = f.dim();
    const double R = f.support();
    rep.f0 = f(0.0);
    rep.fhat0 = radial_fourier(f, 0.0);

    // sign conditions on a dense grid over [0, R]
    const double step = 1e-3;
    double worst = 0.0, worst_at = 0.0;
    for (double r = 0.0; r <= R + 1e-12; r += step) {
        double v = f(r);
        double violation = 0.0;
        if (r >= 2.0) {
            if (variant == ThetaVariant::ThetaPrime)
                violation = std::max(0.0, v); // f <= 0 beyond 2
            else
                violation = std::fabs(v); // f = 0 beyond 2
        } else if (variant == ThetaVariant::ThetaPlus) {
            violation = std::max(0.0, -v); // f >= 0 inside 2
        }
        if (violation > worst) {
            worst = violation;
            worst_at = r;
        }
    }
    rep.sign_margin = worst;
    bool sign_ok = worst <= 1e-9;
    if (!sign_ok) {
        rep.violation = "sign condition";
        rep.violation_location = worst_at;
    }

    // spectral condition: fhat >= 0, checked on a frequency grid
    const double s_max = 10.0 + 4.0 * R;
    const double s_step = 5e-3;
    double min_fhat = rep.fhat0, min_at = 0.0;
    for (double s = s_step; s <= s_max; s += s_step) {
        double v = radial_fourier(f, s);
        if (v < min_fhat) {
            min_fhat = v;
            min_at = s;
        }
    }
    rep.min_fhat_margin = min_fhat;
    bool fhat_ok = min_fhat >= -1e-7;
    if (sign_ok && !fhat_ok) {
        rep.violation = "fhat negative";
        rep.violation_location = min_at;
    }

    // decay envelope of the Hankel integrand beyond the checked grid; a fixed
    // composite rule is plenty for an envelope
    double mass = 0.0;
    const int mass_steps = 20000;
    for (int k = 0; k < mass_steps; ++k) {
        double r = R * (k + 0.5) / mass_steps;
        mass += std::fabs(f(r)) * std::pow(r, 0.5 * (rep.n - 1));
    }
    mass *= R / mass_steps;
    rep.tail_envelope = 2.0 * mass * std::pow(s_max, -0.5 * (rep.n - 1));

    if (rep.fhat0 <= 0.0) {
        rep.feasible = false;
        if (rep.violation.empty()) rep.violation = "fhat(0) not positive";
        return rep;
    }
    rep.ratio = rep.f0 / rep.fhat0;
    rep.density_bound = rep.ratio * unit_ball_volume(rep.n);
    rep.feasible = sign_ok && fhat_ok;
    return rep;
}

std::string lp_report_json(const LpCertificateReport& r) {
    nlohmann::json j;
    j["variant"] = to_string(r.variant);
    j["n"] = r.n;
    j["f0"] = r.f0;
    j["fhat0"] = r.fhat0;
    j["ratio"] = r.ratio;
    j["density_bound"] = r.density_bound;
    j["min_fhat_margin"] = r.min_fhat_margin;
    j["sign_margin"] = r.sign_margin;
    j["tail_envelope"] = r.tail_envelope;
    j["feasible"] = r.feasible;
    if (!r.violation.empty()) {
        j["violation"] = r.violation;
        j["violation_location"] = r.violation_location;
    }
    return j.dump();
}

} // namespace pb
