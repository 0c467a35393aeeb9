#pragma once

#include "pudtai/field.hpp"

namespace pudtai {

// Real-valued quasiprobability on a conjugate coordinate pair.
struct WignerGrid {
    std::vector<double> q_axis;
    std::vector<double> p_axis;
    std::vector<double> values;  // row-major, values[iq * p_axis.size() + ip]

    double at(std::size_t iq, std::size_t ip) const {
        return values[iq * p_axis.size() + ip];
    }
    // integral over both axes (equals the field norm)
    double total() const;
    std::vector<double> q_marginal() const;  // integral over p
    std::vector<double> p_marginal() const;  // integral over q
};

enum class PhaseKind { lens, propagation, dual_lens, bidirectional_propagation };
enum class PhaseDomain { temporal, spectral };

// Quadratic and square-wave phase masks:
//   lens                    (temporal)  phi(t) = strength t^2 / 2
//   propagation             (spectral)  chi(w) = strength w^2 / 2
//   dual_lens               (temporal)  phi(t) = -strength t|t| / 2
//   bidirectional_propagation (spectral) chi(z) = sq(strength z^2 / 2 + offset)
// where sq(xi) = pi ((-1)^floor(xi/pi) + 1)/2, a 0/pi square wave whose
// local grating wavevector is strength*z.
struct PhaseProfile {
    PhaseDomain domain = PhaseDomain::temporal;
    PhaseKind kind = PhaseKind::lens;
    double strength = 0.0;
    double phase_offset = 0.0;  // square-wave kinds only
};

// 0/pi square wave; right-limit value at the discontinuities.
double square_wave(double xi);

// W(q,p) = (2 pi)^(-1) int Q(q + s/2) Q*(q - s/2) e^{-i p s} ds, evaluated
// by FFT on a zero-padded correlation grid. The prefactor makes both
// marginals exact densities and the total equal to the field norm.
WignerGrid wigner(const SampledField& field);

// Multiplies by exp(i * phase(x)); norm preserved exactly.
SampledField apply_phase(const SampledField& field, const PhaseProfile& profile);

// Applies the catalogued phase-space shear of the profile by bilinear
// interpolation; oracle for apply_phase composed with wigner.
//   lens:        p -> p + strength*q   (shear of the p coordinate)
//   propagation: q -> q - strength*p
//   dual_lens:   p -> p - strength*|q|
WignerGrid wigner_shear_check(const PhaseProfile& profile, const WignerGrid& grid);

// Relabels frequency -> position (x/beta) or time -> wavevector (x*beta)
// without touching samples; inverse directions likewise.
SampledField coordinate_map(const SampledField& field, double beta);

}  // namespace pudtai
