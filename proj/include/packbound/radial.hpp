#pragma once

#include <string>
#include <vector>

#include "packbound/common.hpp"
#include "packbound/theta.hpp"

namespace pb {

// Bessel function of the first kind, order nu in {-1/2, 0, 1/2, 1}
// (trigonometric closed forms for half-integer orders, series/asymptotic
// split at argument 12 for integer orders).
double bessel_j(double nu, double x);

double unit_ball_volume(int n);   // pi^{n/2} / Gamma(n/2 + 1)
double unit_sphere_area(int n);   // surface of S^{n-1} in R^n

// One-dimensional radial slice of a function on R^n with compact support.
class RadialProfile {
public:
    enum class Kind { PiecewisePoly, Tabulated, BallAutocorrelation };

    static RadialProfile piecewise(int dim, std::vector<double> breakpoints,
                                   std::vector<std::vector<double>> coeffs);
    static RadialProfile tabulated(int dim, double support, std::vector<double> samples,
                                   int interp_order);

    int dim() const { return dim_; }
    double support() const { return support_; }
    Kind kind() const { return kind_; }
    const std::vector<double>& breakpoints() const { return breaks_; }

    double operator()(double r) const; // 0 beyond the support radius

    static RadialProfile from_json_file(const std::string& path);

private:
    int dim_ = 1;
    double support_ = 0.0;
    Kind kind_ = Kind::PiecewisePoly;
    std::vector<double> breaks_;              // piecewise: 0 = b0 < ... < bk = R
    std::vector<std::vector<double>> coeffs_; // ascending powers per piece
    std::vector<double> samples_;             // tabulated on a uniform grid over [0,R]
    int interp_order_ = 1;

    friend RadialProfile ball_autocorrelation(int n);
};

// f = indicator of the unit ball convolved with itself, f(r) = volume of the
// lens B_1(0) n B_1(r e_1); supported on [0,2]. 1 <= n <= 4.
RadialProfile ball_autocorrelation(int n);

// n-dimensional radial Fourier transform under the e^{-2 pi i <x,xi>}
// convention, so fhat(0) = integral of f. Adaptive panel Gauss-Legendre.
double radial_fourier(const RadialProfile& f, double s);

struct LpCertificateReport {
    ThetaVariant variant = ThetaVariant::ThetaPrime;
    int n = 0;
    double f0 = 0.0;
    double fhat0 = 0.0;
    double ratio = 0.0;
    double density_bound = 0.0;
    double min_fhat_margin = 0.0; // grid minimum of fhat
    double sign_margin = 0.0;     // worst sign-condition violation, 0 when clean
    double tail_envelope = 0.0;   // Hankel-integrand envelope beyond the checked grid
    bool feasible = false;
    std::string violation;          // empty when feasible
    double violation_location = 0.0;
};

// Checks a radial auxiliary function against the selected variant's sign
// conditions (grid spacing 1e-3 on [0,R]) and fhat >= -1e-7 on a frequency
// grid up to 10 + 4R; reports f(0)/fhat(0) and the resulting density bound.
LpCertificateReport lp_certificate_check(const RadialProfile& f,
                                         ThetaVariant variant = ThetaVariant::ThetaPrime);

std::string lp_report_json(const LpCertificateReport& r);

} // namespace pb
