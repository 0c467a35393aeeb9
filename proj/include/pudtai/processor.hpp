#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <utility>

#include "pudtai/field.hpp"
#include "pudtai/signals.hpp"

namespace pudtai {

// Interferometer device settings. alpha is the dual-lens chirp rate, kappa the
// grating chirp rate; retrieval focuses only when kappa*alpha == 1. beta is the
// memory gradient slope (z = w/beta), theta the analysis phase offset between
// the two grating patterns, alpha_di the lens rate of the direct spectrometer
// arm, omega0 the optical carrier used in engineering reports.
struct ProcessorParams {
    double alpha = 700.0;
    double kappa = 1.0 / 700.0;
    double alpha_di = 1.0;
    double beta = 1.0;
    double theta = 0.0;
    ApertureSpec aperture{};
    double omega0 = 0.0;

    // Numerical knobs. The pipeline resamples its input onto a grid of at
    // least internal_samples points; the retrieval window half-width on the
    // k_z axis is collection_halfwidth / alpha.
    std::size_t internal_samples = 16384;
    double collection_halfwidth = 19.2;

    void validate() const;  // throws unless |kappa*alpha - 1| < 1e-9

    double time_focus() const;  // omega0 / alpha
    double dispersion() const;  // kappa / (omega0 * beta^2)
};

// Fraction of the input power an ideal grating pair diverts into each
// retrieval order. The 0..pi square-wave profile puts 2/pi of the amplitude
// into each first order; the two pulse halves interfere coherently, giving
// 8/pi^2 of the matched mode's power per port.
inline constexpr double collection_factor = 0.81056946913870217;  // 8/pi^2

struct PortAmplitudes {
    SampledField minus;
    SampledField plus;
};

// Exact symmetric/antisymmetric split: u_pm = f_A(t) (S(t) +- S(-t)) / 2.
// Time reversal is index reversal on the periodic grid, so the time axis must
// be symmetric about zero.
PortAmplitudes pudtai_ports_ideal(const SampledField& signal, const ApertureSpec& aperture);

struct PipelineResult {
    double input_power = 0.0;      // after the entry aperture
    double minus_power = 0.0;      // retrieved in the first-pass window
    double plus_power = 0.0;       // retrieved in the second-pass window
    double remainder_power = 0.0;  // left in the memory after both passes
    SampledField minus_port;       // windowed retrieval fields (k_z axis)
    SampledField plus_port;
};

using StageSink = std::function<void(const std::string&, const SampledField&)>;

// Full device simulation: resample, aperture, dual time lens, store (FFT to
// the gradient axis), first grating + retrieval window (antisymmetric port),
// second grating on the remainder + window (symmetric port). Pass the raw
// synthesized signal; the aperture is applied here on the fine grid.
PipelineResult pudtai_pipeline(const SampledField& signal, const ProcessorParams& params,
                               const StageSink& sink = {});

// In-band power fraction of the ideal port modes for the configured retrieval
// window: the phase-independent spectra of f_A psi sin(eps t/2) (minus port)
// and f_A psi cos(eps t/2) (plus port). A port with no power reports 1.
std::pair<double, double> band_capture_fractions(double eps, const ApertureSpec& aperture,
                                                 const ProcessorParams& params);

// Direct spectrometer arm: time lens of rate 2*alpha_di followed by matched
// dispersion 1/(2*alpha_di). The output intensity |out(t)|^2 maps the input
// spectrum at frequency 2*alpha_di*t.
SampledField qmti_spectrum(const SampledField& signal, const ProcessorParams& params);

}  // namespace pudtai
