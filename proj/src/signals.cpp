#include "pudtai/signals.hpp"

#include <cmath>

namespace pudtai {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

void check_sigma(double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
}
}  // namespace

SampledField gaussian_spectrum(const GaussianParams& params, const SampledField& grid) {
    check_sigma(params.sigma);
    SampledField out = grid;
    out.domain = Domain::frequency;
    const double amp = 1.0 / std::sqrt(std::sqrt(kTwoPi) * params.sigma);
    const double inv4s2 = 1.0 / (4.0 * params.sigma * params.sigma);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double d = out.coord(i) - params.omega0;
        out.samples[i] = amp * std::exp(-d * d * inv4s2);
    }
    return out;
}

SampledField hermite_gauss1_spectrum(const GaussianParams& params, const SampledField& grid) {
    check_sigma(params.sigma);
    SampledField out = gaussian_spectrum({params.sigma, 0.0}, grid);
    for (std::size_t i = 0; i < out.size(); ++i)
        out.samples[i] *= out.coord(i) / params.sigma;
    return out;
}

double gaussian_time(double t, double sigma) {
    const double amp = std::pow(2.0 / 3.1415926535897932384626433832795, 0.25) * std::sqrt(sigma);
    return amp * std::exp(-sigma * sigma * t * t);
}

SampledField synthesize_two_source(const TwoSourceSpec& spec, const SampledField& grid) {
    check_sigma(spec.gaussian.sigma);
    const double sigma = spec.gaussian.sigma;
    const double dw = sigma * spec.epsilon;
    const cplx gphase{std::cos(spec.phi / 2.0), std::sin(spec.phi / 2.0)};
    SampledField out = grid;
    out.domain = Domain::time;
    const double r2 = std::sqrt(2.0);
    const double w0 = spec.gaussian.omega0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double t = out.coord(i);
        const cplx carrier = (w0 == 0.0) ? cplx{1.0, 0.0}
                                         : cplx{std::cos(w0 * t), std::sin(w0 * t)};
        out.samples[i] = gaussian_time(t, sigma) * r2 *
                         std::cos((dw * t - spec.phi) / 2.0) * gphase * carrier;
    }
    return out;
}

SampledField apply_aperture(const SampledField& field, const ApertureSpec& ap) {
    field.require(Domain::time, "aperture acts on time-domain fields");
    if (ap.t_a < 0.0) throw std::invalid_argument("aperture half-gap must be >= 0");
    SampledField out = field;
    for (std::size_t i = 0; i < out.size(); ++i)
        if (std::abs(out.coord(i)) < ap.t_a) out.samples[i] = 0.0;
    return out;
}

}  // namespace pudtai
