#include "pudtai/processor.hpp"

#include <cmath>
#include <stdexcept>

#include "pudtai/fft.hpp"
#include "pudtai/phasespace.hpp"

namespace pudtai {

namespace {
constexpr double kPi = 3.1415926535897932384626433832795;

void check_symmetric_axis(const SampledField& f, const char* who) {
    const double span = f.step * static_cast<double>(f.size());
    if (std::abs(f.start + 0.5 * span) > 1e-9 * span)
        throw std::invalid_argument(std::string(who) + ": time axis must be symmetric about zero");
}

double band_power(const SampledField& f, double halfwidth, bool inside) {
    double acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        if ((std::abs(f.coord(i)) <= halfwidth) == inside) acc += std::norm(f.samples[i]);
    return acc * f.step;
}
}  // namespace

void ProcessorParams::validate() const {
    if (!(alpha > 0.0)) throw std::invalid_argument("lens rate must be positive");
    if (std::abs(kappa * alpha - 1.0) >= 1e-9)
        throw std::invalid_argument("grating rate does not match the lens: kappa*alpha != 1");
    if (internal_samples < 16) throw std::invalid_argument("internal grid too small");
    if (!(collection_halfwidth > 0.0))
        throw std::invalid_argument("retrieval window must have positive width");
}

double ProcessorParams::time_focus() const {
    if (omega0 == 0.0) throw std::domain_error("time_focus needs a nonzero carrier");
    return omega0 / alpha;
}

double ProcessorParams::dispersion() const {
    if (omega0 == 0.0 || beta == 0.0)
        throw std::domain_error("dispersion needs a nonzero carrier and gradient");
    return kappa / (omega0 * beta * beta);
}

PortAmplitudes pudtai_ports_ideal(const SampledField& signal, const ApertureSpec& aperture) {
    signal.require(Domain::time, "pudtai_ports_ideal");
    check_symmetric_axis(signal, "pudtai_ports_ideal");
    const std::size_t n = signal.size();
    PortAmplitudes out{signal, signal};
    for (std::size_t j = 0; j < n; ++j) {
        const cplx s = signal.samples[j];
        const cplx r = signal.samples[(n - j) % n];  // S(-t_j), periodic wrap
        out.minus.samples[j] = 0.5 * (s - r);
        out.plus.samples[j] = 0.5 * (s + r);
    }
    out.minus = apply_aperture(out.minus, aperture);
    out.plus = apply_aperture(out.plus, aperture);
    return out;
}

PipelineResult pudtai_pipeline(const SampledField& signal, const ProcessorParams& params,
                               const StageSink& sink) {
    signal.require(Domain::time, "pudtai_pipeline");
    check_symmetric_axis(signal, "pudtai_pipeline");
    params.validate();

    SampledField s = signal;
    if (s.size() < params.internal_samples) {
        std::size_t factor = (params.internal_samples + s.size() - 1) / s.size();
        s = upsample(s, factor);
    }
    if (sink) sink("input", s);

    s = apply_aperture(s, params.aperture);
    if (sink) sink("apertured", s);
    PipelineResult res;
    res.input_power = s.norm2();

    // dual time lens: chirp of opposite sign on the two pulse halves
    s = apply_phase(s, {PhaseDomain::temporal, PhaseKind::dual_lens, params.alpha, 0.0});
    if (sink) sink("dual_lens", s);

    // store: the gradient maps frequency onto position
    SampledField z = fft_forward(s);
    if (sink) sink("stored", params.beta > 0.0 ? coordinate_map(z, params.beta) : z);

    // Nyquist guard: the first grating's local wavevector is kappa*|z|
    const double z_edge = std::max(std::abs(z.coord(0)), std::abs(z.coord(z.size() - 1)));
    if (params.kappa * z_edge * z.step > kPi)
        throw std::runtime_error("grid too coarse to resolve the grating chirp");

    const double zeta1 = -kPi / 4 + params.theta / 2;
    const double zeta2 = kPi / 2 + params.theta;
    const double w_half = params.collection_halfwidth / params.alpha;

    SampledField g1 = apply_phase(
        z, {PhaseDomain::spectral, PhaseKind::bidirectional_propagation, params.kappa, zeta1});
    if (sink) sink("grating1", g1);

    SampledField b1 = fft_forward(g1);
    res.minus_port = b1;
    for (std::size_t i = 0; i < b1.size(); ++i) {
        if (std::abs(b1.coord(i)) <= w_half)
            b1.samples[i] = 0.0;  // retrieved
        else
            res.minus_port.samples[i] = 0.0;
    }
    res.minus_power = res.minus_port.norm2();
    if (sink) sink("retrieval_minus", res.minus_port);

    // the unretrieved remainder stays in the memory for the second pass
    SampledField zr = fft_inverse(b1);
    if (sink) sink("remainder", zr);
    SampledField g2 = apply_phase(
        zr, {PhaseDomain::spectral, PhaseKind::bidirectional_propagation, 2.0 * params.kappa, zeta2});
    if (sink) sink("grating2", g2);

    SampledField b2 = fft_forward(g2);
    res.plus_port = b2;
    for (std::size_t i = 0; i < b2.size(); ++i) {
        if (std::abs(b2.coord(i)) > w_half) res.plus_port.samples[i] = 0.0;
    }
    res.plus_power = res.plus_port.norm2();
    res.remainder_power = band_power(b2, w_half, false);
    if (sink) sink("retrieval_plus", res.plus_port);
    return res;
}

std::pair<double, double> band_capture_fractions(double eps, const ApertureSpec& aperture,
                                                 const ProcessorParams& params) {
    params.validate();
    // the ideal port modes on the fine grid, carrier phase stripped
    std::size_t n = params.internal_samples;
    SampledField um = make_field(Domain::time, n, 8.0);
    SampledField up = um;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = um.coord(i);
        const double env = gaussian_time(t, 1.0);
        um.samples[i] = env * std::sin(0.5 * eps * t);
        up.samples[i] = env * std::cos(0.5 * eps * t);
    }
    um = apply_aperture(um, aperture);
    up = apply_aperture(up, aperture);
    SampledField fm = fft_forward(um);
    SampledField fp = fft_forward(up);
    auto fraction = [&](const SampledField& f) {
        const double total = f.norm2();
        if (total <= 1e-30) return 1.0;
        return band_power(f, params.collection_halfwidth, true) / total;
    };
    return {fraction(fm), fraction(fp)};
}

SampledField qmti_spectrum(const SampledField& signal, const ProcessorParams& params) {
    signal.require(Domain::time, "qmti_spectrum");
    if (!(params.alpha_di > 0.0)) throw std::invalid_argument("spectrometer lens rate must be positive");
    SampledField s = apply_phase(
        signal, {PhaseDomain::temporal, PhaseKind::lens, 2.0 * params.alpha_di, 0.0});
    SampledField f = fft_forward(s);
    f = apply_phase(f, {PhaseDomain::spectral, PhaseKind::propagation, 1.0 / (2.0 * params.alpha_di), 0.0});
    return fft_inverse(f);
}

}  // namespace pudtai
