#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "pudtai/field.hpp"
#include "pudtai/model.hpp"

namespace pudtai {

// Per-photon Fisher information about the line separation eps, in units of
// 1/sigma^2. The quantum limit is 1/4 regardless of eps.
double qfi();

// Binary symmetric/antisymmetric sorter with interference visibility v:
// outcome probabilities (1 -+ v e^{-eps^2/8})/2. Exact; 1/4 - eps^2/32 + ...
// at v = 1.
double f_sliver(double eps, double visibility = 1.0);

// Three-outcome port model with the full calibration (visibilities,
// symmetric-port transmission, entry aperture). A quadratic series takes over
// below |eps| = 1e-4 where the exact expression loses digits.
double f_pudtai(double eps, const DeviceCalibration& cal);

// Direct spectral imaging of the two-line mixture, unit detection efficiency:
// quadrature over the analytic intensity profile and its eps derivative.
double f_di(double eps);

// Generic numeric Fisher information of a parametric outcome distribution,
// central differences with one Richardson step. Outcomes below prob_floor are
// excluded; their total mass is reported so the caller can judge the bias.
struct NumericFisher {
    double value = 0.0;
    double excluded_mass = 0.0;
};
NumericFisher fisher_numeric(const std::function<std::vector<double>(double)>& probs,
                             double eps, double d_eps = 1e-4, double prob_floor = 1e-12);

// Density variant: outcomes are bins of the given measure (bin width, or
// bin width times transmission for lossy detection).
NumericFisher fisher_numeric_density(const std::function<std::vector<double>(double)>& density,
                                     double measure, double eps, double d_eps = 1e-4,
                                     double prob_floor = 1e-12);

// Time-resolved Fisher information flux of the port split, for the ideal
// time-tagged readout: p_-+(t) = f_A psi^2 (1 -+ V cos(eps t))/2 per port.
// total sums the two ports; at V = 1 and t_a = 0 it equals psi^2 t^2 and
// integrates to 1/4 for every eps.
struct FiDensityCurve {
    std::vector<double> time;
    std::vector<double> minus;
    std::vector<double> plus;
    std::vector<double> total;
};
FiDensityCurve fi_density(double eps, const DeviceCalibration& cal, const SampledField& time_grid);

// Fraction of the small-eps information flux and of the photon flux that
// survive the entry aperture: {B(t_a), erfc(sqrt2 t_a)}.
std::pair<double, double> aperture_flux_efficiencies(double t_a_sigma);

// Fraction of the information retained by the aperture once the lines are
// well resolved: ratio of upper incomplete gamma(5/2, 2 t_a^2) to gamma(5/2).
double resolved_fi_efficiency(double t_a_sigma);

// Limiting ratio F(eps)/F_DI(eps) for eps -> 0, using the exact direct-imaging
// quadratic F_DI = eps^2/8. Evaluated at eps_probe with one Richardson step.
double s_factor(const std::function<double(double)>& fisher, double eps_probe = 1e-3);

// Closed forms of the same limit.
double s_sliver_closed_form(double visibility);
double s_pudtai_closed_form(const DeviceCalibration& cal);

// Grating spectrometer with Gaussian response of rms width sigma_rl and a
// detection band of half-width bandwidth, applied to a line pair of rms
// width sigma. Returns the two-point separation superresolution factor.
struct SpectrometerSpec {
    double sigma = 1.0;
    double sigma_rl = 0.0;
    double bandwidth = 0.0;
};
double di_spectrometer_s(const SpectrometerSpec& spec);

struct FisherCurve {
    std::vector<double> epsilon;
    std::vector<double> value;
};
FisherCurve fisher_curve(const std::function<double(double)>& fisher,
                         const std::vector<double>& epsilon);

}  // namespace pudtai
