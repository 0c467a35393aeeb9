#include "pudtai/model.hpp"

#include <cmath>

#include "pudtai/faddeeva.hpp"
#include "pudtai/fft.hpp"
#include "pudtai/signals.hpp"

namespace pudtai {

namespace {
constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kSqrt2 = 1.4142135623730950488016887242097;
}  // namespace

double clipped_norm(double t_a_sigma) { return std::erfc(kSqrt2 * t_a_sigma); }

double small_eps_slope(double t_a_sigma) {
    return std::erfc(kSqrt2 * t_a_sigma) +
           std::sqrt(8.0 / kPi) * t_a_sigma * std::exp(-2.0 * t_a_sigma * t_a_sigma);
}

double aux_f(double t_a_sigma, double epsilon) {
    const double e = std::abs(epsilon);
    if (e == 0.0) return clipped_norm(t_a_sigma);
    const std::complex<double> z{4.0 * t_a_sigma / (2.0 * kSqrt2), -e / (2.0 * kSqrt2)};
    return cerfc(z).real();
}

double aux_f_deps(double t_a_sigma, double epsilon) {
    const double t = t_a_sigma, e = epsilon;
    return -std::exp(-2.0 * t * t + e * e / 8.0) * std::sin(t * e) / std::sqrt(2.0 * kPi);
}

PortProbabilities port_probabilities(double epsilon, const DeviceCalibration& cal) {
    const double e = std::abs(epsilon);
    const double base = clipped_norm(cal.t_a_sigma);
    const double vf = std::exp(-e * e / 8.0) * aux_f(cal.t_a_sigma, e);
    PortProbabilities p;
    p.p_minus = 0.5 * (base - cal.v_minus * vf);
    p.p_plus = 0.5 * cal.eta_plus * (base + cal.v_plus * vf);
    p.p_cross = 1.0 - p.p_minus - p.p_plus;
    return p;
}

PortProbabilities port_probabilities_deps(double epsilon, const DeviceCalibration& cal) {
    const double e = std::abs(epsilon);
    // d/de [e^{-e^2/8} f] = e^{-e^2/8} (f' - e f / 4)
    const double f = aux_f(cal.t_a_sigma, e);
    const double fp = aux_f_deps(cal.t_a_sigma, e);
    const double dvf = std::exp(-e * e / 8.0) * (fp - e * f / 4.0);
    PortProbabilities d;
    d.p_minus = -0.5 * cal.v_minus * dvf;
    d.p_plus = 0.5 * cal.eta_plus * cal.v_plus * dvf;
    d.p_cross = -d.p_minus - d.p_plus;
    return d;
}

std::pair<SampledField, SampledField> port_distributions(double epsilon,
                                                         const DeviceCalibration& cal,
                                                         const SampledField& grid) {
    grid.require(Domain::frequency, "port distributions live on a frequency grid");
    const std::size_t n = grid.size();
    const double dw = grid.step;
    const double half_t = kPi / dw;
    SampledField gm = make_field(Domain::time, n, half_t);
    SampledField gp = gm;
    const ApertureSpec ap{cal.t_a_sigma};
    for (std::size_t i = 0; i < n; ++i) {
        const double t = gm.coord(i);
        const double env = (std::abs(t) < ap.t_a) ? 0.0 : gaussian_time(t, 1.0);
        gm.samples[i] = env * std::sin(epsilon * t / 2.0);
        gp.samples[i] = env * std::cos(epsilon * t / 2.0);
    }
    SampledField pm = fft_forward(gm);
    SampledField pp = fft_forward(gp);
    for (std::size_t i = 0; i < n; ++i) {
        pm.samples[i] = std::norm(pm.samples[i]);
        pp.samples[i] = cal.eta_plus * std::norm(pp.samples[i]);
    }
    return {pm, pp};
}

}  // namespace pudtai
