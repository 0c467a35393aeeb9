#pragma once

#include <utility>

#include "pudtai/field.hpp"

namespace pudtai {

// Measured device imperfections: port visibilities, symmetric-port
// transmission, and the aperture half-gap in units of 1/sigma.
struct DeviceCalibration {
    double v_minus = 1.0;
    double v_plus = 1.0;
    double eta_plus = 1.0;
    double t_a_sigma = 0.0;
};

// Reference calibration of the physical device.
inline DeviceCalibration measured_calibration() {
    return {0.9751, 0.764, 0.719, 0.564};
}

struct PortProbabilities {
    double p_minus = 0.0;
    double p_plus = 0.0;
    double p_cross = 0.0;  // 1 - p_minus - p_plus by construction
};

// f(t_a, eps) = Re erfc((4 t_a - i eps)/(2 sqrt 2)); the conjugate-pair sum
// is real. f(0, eps) = 1; f(t_a, 0) = erfc(sqrt2 t_a).
double aux_f(double t_a_sigma, double epsilon);

// d f / d eps, closed form.
double aux_f_deps(double t_a_sigma, double epsilon);

// erfc(sqrt2 t_a): the aperture-surviving fraction of the Gaussian mode.
double clipped_norm(double t_a_sigma);

// Slope of the small-eps expansion e^{-eps^2/8} f = f0 - (eps^2/8) B(t_a):
// B(t_a) = erfc(sqrt2 t_a) + sqrt(8/pi) t_a e^{-2 t_a^2}.
double small_eps_slope(double t_a_sigma);

// Outcome probabilities of the three-way port split:
//   p- = 1/2 (erfc(sqrt2 t_a) - V- e^{-eps^2/8} f)
//   p+ = eta+/2 (erfc(sqrt2 t_a) + V+ e^{-eps^2/8} f)
// The model is even in eps; |eps| is used.
PortProbabilities port_probabilities(double epsilon, const DeviceCalibration& cal);

// Analytic d p_i / d eps for the same convention (p_cross derivative is the
// negated sum).
PortProbabilities port_probabilities_deps(double epsilon, const DeviceCalibration& cal);

// phi-averaged spectral count densities of the two ideal ports on the given
// frequency grid. V = 1 reference shapes; integrals reproduce the V = 1
// port probabilities up to grid truncation.
std::pair<SampledField, SampledField> port_distributions(double epsilon,
                                                         const DeviceCalibration& cal,
                                                         const SampledField& grid);

}  // namespace pudtai
