#pragma once

#include "pudtai/field.hpp"

namespace pudtai {

struct GaussianParams {
    double sigma = 1.0;   // spectral width; 1 in normalized units
    double omega0 = 0.0;  // centroid frequency
};

// Two incoherent spectral lines at omega0 +- sigma*epsilon/2 with relative
// phase phi per shot. mean_photons is carried for shot-level Monte Carlo.
struct TwoSourceSpec {
    double epsilon = 0.0;
    double phi = 0.0;
    GaussianParams gaussian;
    double mean_photons = 1.0;
};

// Hard temporal mask removing |t| < t_a. t_a = 0 means no aperture.
struct ApertureSpec {
    double t_a = 0.0;
};

// Unit-norm Gaussian mode, spectral domain:
//   psi(w) = (sqrt(2 pi) sigma)^(-1/2) exp(-(w - w0)^2 / (4 sigma^2))
SampledField gaussian_spectrum(const GaussianParams& params, const SampledField& grid);

// First Hermite-Gauss correction mode: (w/sigma) times the Gaussian envelope
// (centered at w0 = 0 by construction); odd, unit-norm, orthogonal to the
// Gaussian on any symmetric grid.
SampledField hermite_gauss1_spectrum(const GaussianParams& params, const SampledField& grid);

// Time-domain Gaussian mode paired with gaussian_spectrum by the unitary FT:
//   psi(t) = (2/pi)^(1/4) sqrt(sigma) exp(-sigma^2 t^2)
double gaussian_time(double t, double sigma);

// Single-shot coherent amplitude of the two-line mixture:
//   S_phi(t) = psi(t) * sqrt(2) cos((sigma eps t - phi)/2) e^{i phi/2}
// Averaging |S_phi|^2 over uniform phi gives psi(t)^2.
SampledField synthesize_two_source(const TwoSourceSpec& spec, const SampledField& grid);

// Zeroes samples whose centers satisfy |t| < t_a. Idempotent.
SampledField apply_aperture(const SampledField& field, const ApertureSpec& ap);

}  // namespace pudtai
