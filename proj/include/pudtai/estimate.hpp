#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "pudtai/model.hpp"

namespace pudtai {

// Counter-mode splitmix64: output i is a hash of key + i * golden ratio, so
// draws are reproducible under any evaluation order and streams with distinct
// keys are independent for practical purposes.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t key) : key_(key) {}

    // Decorrelated per-set stream: hash the seed, offset by the stream index,
    // hash again inside the counter.
    static CounterRng stream(std::uint64_t seed, std::uint64_t index);

    std::uint64_t next_u64();
    double uniform();  // [0, 1), 53-bit
    double normal();   // standard normal, Box-Muller pair cache

  private:
    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

// Inverse-CDF walk over the binomial pmf, started 20 standard deviations
// below the mean (truncated tail mass < 1e-80).
std::uint64_t binomial_sample(CounterRng& rng, std::uint64_t n, double p);

// Inverse-CDF walk from k = 0; meant for small means (photons per shot).
std::uint64_t poisson_sample(CounterRng& rng, double mean);

struct CountRecord {
    std::uint64_t n_minus = 0;
    std::uint64_t n_plus = 0;
    std::uint64_t n_total = 0;  // includes the unretrieved remainder
};

// Trinomial draw from port_probabilities(epsilon, cal).
CountRecord sample_counts(double epsilon, const DeviceCalibration& cal,
                          std::uint64_t n_photons, std::uint64_t rng_seed);

// Frequency tags of the direct spectrometer: two lines at +-sigma*eps/2 of
// width sigma, plus an optional flat dark-count background over
// +-dark_halfwidth. Fig.-style overlays need the dark fraction calibrated;
// it defaults to none.
std::vector<double> sample_qmti_tags(double epsilon, double sigma, std::size_t n_tags,
                                     std::uint64_t rng_seed, double dark_fraction = 0.0,
                                     double dark_halfwidth = 6.0);

// Ratio estimator: conditioned on a photon being retrieved in either port,
// the likelihood is maximal where p_minus(eps)/p_plus(eps) = N-/N+.
// Bracketed root search on eps in [0, 5],
// solved in eps^2 to keep conditioning near the flat bottom; ratios below the
// eps = 0 floor return 0, ratios above the bracket clamp to 5 and set
// *clamped. Throws on n_plus = 0 (degenerate record).
double mle_pudtai(const CountRecord& counts, const DeviceCalibration& cal,
                  bool* clamped = nullptr);

// Two-line mixture likelihood over the frequency tags, maximized on [0, 5] by
// golden-section search plus one parabolic refinement. Needs >= 10 tags.
double mle_qmti(const std::vector<double>& frequency_tags, double sigma,
                bool* clamped = nullptr);

struct EstimatorReport {
    double eps_true = 0.0;
    double eps_hat_mean = 0.0;
    double variance = 0.0;
    double variance_per_10 = 0.0;  // variance * photons_per_set / 10
    double bias = 0.0;
    std::size_t n_boot = 0;
    std::uint64_t photons_per_set = 0;
    double crb_pudtai = 0.0;  // 1/(N F) at eps_true
    double crb_qmti = 0.0;
    std::size_t n_clamped = 0;
};

// Repeated sample_counts + mle_pudtai, one RNG stream per set. shot_mean > 0
// switches to shot mode: the per-set photon total is itself the sum of
// Poisson(shot_mean) draws over photons_per_set/shot_mean shots.
EstimatorReport bootstrap(double epsilon_true, const DeviceCalibration& cal,
                          std::uint64_t photons_per_set, std::size_t n_boot,
                          std::uint64_t rng_seed, double shot_mean = 0.0);

// Variance advantage over the direct spectrometer at equal photon number,
// from the Cramer-Rao bounds: F_instrument / F_direct. A custom direct-arm
// Fisher model may be supplied; the default is the ideal imaging mixture.
double improvement_ratio(double epsilon, const DeviceCalibration& cal,
                         const std::function<double(double)>& direct_fisher = {});

}  // namespace pudtai
