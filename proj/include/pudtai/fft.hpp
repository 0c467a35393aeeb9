#pragma once

#include "pudtai/field.hpp"

namespace pudtai {

// Unitary centered Fourier transforms, angular-frequency convention:
//   forward:  F(w) = (2*pi)^(-1/2) * integral f(x) e^{-i w x} dx
//   inverse:  f(x) = (2*pi)^(-1/2) * integral F(w) e^{+i w x} dw
// Grids are centered (make_field); the conjugate grid spans +-pi/step with
// conjugate step 2*pi/(n*step). Both directions preserve the L2 norm to
// machine precision and compose to the identity.

// Conjugate-domain tag: time<->frequency, position<->wavevector.
Domain conjugate_domain(Domain d);

// Returns F on the conjugate centered grid.
SampledField fft_forward(const SampledField& f);
SampledField fft_inverse(const SampledField& F);

// Band-limited upsampling by an integer factor: same span, step/factor.
// Exact for fields whose conjugate support fits the original grid.
SampledField upsample(const SampledField& f, std::size_t factor);

}  // namespace pudtai
