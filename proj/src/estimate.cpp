#include "pudtai/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pudtai/fisher.hpp"

namespace pudtai {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr double kTwoPi = 6.283185307179586476925286766559;

std::uint64_t mix64(std::uint64_t z) {
    z += kGolden;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double log_binomial_pmf(std::uint64_t n, double p, std::uint64_t k) {
    const double nn = static_cast<double>(n), kk = static_cast<double>(k);
    return std::lgamma(nn + 1.0) - std::lgamma(kk + 1.0) - std::lgamma(nn - kk + 1.0) +
           kk * std::log(p) + (nn - kk) * std::log1p(-p);
}
}  // namespace

CounterRng CounterRng::stream(std::uint64_t seed, std::uint64_t index) {
    return CounterRng(mix64(mix64(seed) + index));
}

std::uint64_t CounterRng::next_u64() { return mix64(key_ + (++counter_) * kGolden); }

double CounterRng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::normal() {
    if (have_cached_) {
        have_cached_ = false;
        return cached_;
    }
    const double r = std::sqrt(-2.0 * std::log1p(-uniform()));
    const double a = kTwoPi * uniform();
    cached_ = r * std::sin(a);
    have_cached_ = true;
    return r * std::cos(a);
}

std::uint64_t binomial_sample(CounterRng& rng, std::uint64_t n, double p) {
    if (n == 0 || p <= 0.0) return 0;
    if (p >= 1.0) return n;
    const double nn = static_cast<double>(n);
    const double mean = nn * p, sd = std::sqrt(nn * p * (1.0 - p));
    std::uint64_t k = 0;
    if (mean > 20.0 * sd) k = static_cast<std::uint64_t>(std::floor(mean - 20.0 * sd));
    double pmf = std::exp(log_binomial_pmf(n, p, k));
    double cum = pmf;
    const double u = rng.uniform();
    while (cum < u && k < n) {
        pmf *= (nn - static_cast<double>(k)) / (static_cast<double>(k) + 1.0) * p / (1.0 - p);
        ++k;
        cum += pmf;
    }
    return k;
}

std::uint64_t poisson_sample(CounterRng& rng, double mean) {
    if (!(mean > 0.0)) return 0;
    std::uint64_t k = 0;
    double pmf = std::exp(-mean);
    double cum = pmf;
    const double u = rng.uniform();
    while (cum < u && k < 10000000) {
        ++k;
        pmf *= mean / static_cast<double>(k);
        cum += pmf;
    }
    return k;
}

CountRecord sample_counts(double epsilon, const DeviceCalibration& cal,
                          std::uint64_t n_photons, std::uint64_t rng_seed) {
    if (n_photons < 1) throw std::invalid_argument("need at least one photon");
    const PortProbabilities p = port_probabilities(epsilon, cal);
    CounterRng rng(rng_seed);
    CountRecord rec;
    rec.n_total = n_photons;
    rec.n_minus = binomial_sample(rng, n_photons, p.p_minus);
    const double rest = 1.0 - p.p_minus;
    if (rest > 0.0)
        rec.n_plus = binomial_sample(rng, n_photons - rec.n_minus,
                                     std::min(1.0, p.p_plus / rest));
    return rec;
}

std::vector<double> sample_qmti_tags(double epsilon, double sigma, std::size_t n_tags,
                                     std::uint64_t rng_seed, double dark_fraction,
                                     double dark_halfwidth) {
    if (!(sigma > 0.0)) throw std::invalid_argument("line width must be positive");
    CounterRng rng(rng_seed);
    std::vector<double> tags(n_tags);
    for (double& w : tags) {
        if (dark_fraction > 0.0 && rng.uniform() < dark_fraction) {
            w = sigma * dark_halfwidth * (2.0 * rng.uniform() - 1.0);
            continue;
        }
        const double line = (rng.uniform() < 0.5 ? -0.5 : 0.5) * sigma * epsilon;
        w = line + sigma * rng.normal();
    }
    return tags;
}

double mle_pudtai(const CountRecord& counts, const DeviceCalibration& cal, bool* clamped) {
    if (clamped) *clamped = false;
    if (counts.n_plus == 0) throw std::invalid_argument("degenerate record: no symmetric-port counts");
    const double target = static_cast<double>(counts.n_minus) / static_cast<double>(counts.n_plus);
    auto ratio_at_u = [&](double u) {
        const PortProbabilities p = port_probabilities(std::sqrt(u), cal);
        return p.p_minus / p.p_plus;
    };
    if (target <= ratio_at_u(0.0)) return 0.0;  // sub-floor fluctuation
    if (target >= ratio_at_u(25.0)) {
        if (clamped) *clamped = true;
        return 5.0;
    }
    double lo = 0.0, hi = 25.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (ratio_at_u(mid) < target ? lo : hi) = mid;
    }
    return std::sqrt(0.5 * (lo + hi));
}

double mle_qmti(const std::vector<double>& frequency_tags, double sigma, bool* clamped) {
    if (clamped) *clamped = false;
    if (frequency_tags.size() < 10) throw std::invalid_argument("need at least 10 frequency tags");
    if (!(sigma > 0.0)) throw std::invalid_argument("line width must be positive");
    auto loglike = [&](double eps) {
        const double d = 0.5 * sigma * eps;
        double acc = 0.0;
        for (double w : frequency_tags) {
            const double a = (w - d) / sigma, b = (w + d) / sigma;
            acc += std::log(0.5 * (std::exp(-0.5 * a * a) + std::exp(-0.5 * b * b)));
        }
        return acc;
    };
    // golden-section maximization on [0, 5]
    const double gr = 0.61803398874989485;
    double a = 0.0, b = 5.0;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = loglike(x1), f2 = loglike(x2);
    while (b - a > 1e-9) {
        if (f1 < f2) {
            a = x1;
            x1 = x2; f1 = f2;
            x2 = a + gr * (b - a); f2 = loglike(x2);
        } else {
            b = x2;
            x2 = x1; f2 = f1;
            x1 = b - gr * (b - a); f1 = loglike(x1);
        }
    }
    double best = 0.5 * (a + b), fbest = loglike(best);
    // one parabolic refinement through (a, best, b)
    const double fa = loglike(a), fb = loglike(b);
    const double den = (best - a) * (fbest - fb) - (best - b) * (fbest - fa);
    if (den != 0.0) {
        const double num = (best - a) * (best - a) * (fbest - fb) -
                           (best - b) * (best - b) * (fbest - fa);
        const double cand = best - 0.5 * num / den;
        if (cand > 0.0 && cand < 5.0 && loglike(cand) > fbest) best = cand;
    }
    if (best <= 1e-7) best = 0.0;
    if (best >= 5.0 - 1e-7) {
        best = 5.0;
        if (clamped) *clamped = true;
    }
    return best;
}

EstimatorReport bootstrap(double epsilon_true, const DeviceCalibration& cal,
                          std::uint64_t photons_per_set, std::size_t n_boot,
                          std::uint64_t rng_seed, double shot_mean) {
    if (n_boot < 2) throw std::invalid_argument("variance needs at least two bootstrap sets");
    if (photons_per_set < 1) throw std::invalid_argument("need at least one photon per set");
    std::vector<double> hats;
    hats.reserve(n_boot);
    std::size_t clamped_count = 0;
    for (std::size_t i = 0; i < n_boot; ++i) {
        CounterRng stream = CounterRng::stream(rng_seed, i);
        std::uint64_t total = photons_per_set;
        if (shot_mean > 0.0) {
            const std::uint64_t shots = static_cast<std::uint64_t>(
                std::llround(static_cast<double>(photons_per_set) / shot_mean));
            std::uint64_t acc = 0;
            for (std::uint64_t s = 0; s < shots; ++s) acc += poisson_sample(stream, shot_mean);
            total = std::max<std::uint64_t>(1, acc);
        }
        const CountRecord rec = sample_counts(epsilon_true, cal, total, stream.next_u64());
        bool clamped = false;
        hats.push_back(mle_pudtai(rec, cal, &clamped));
        if (clamped) ++clamped_count;
    }
    EstimatorReport rep;
    rep.eps_true = epsilon_true;
    rep.n_boot = n_boot;
    rep.photons_per_set = photons_per_set;
    rep.n_clamped = clamped_count;
    double mean = 0.0;
    for (double h : hats) mean += h;
    mean /= static_cast<double>(n_boot);
    double var = 0.0;
    for (double h : hats) var += (h - mean) * (h - mean);
    var /= static_cast<double>(n_boot - 1);
    rep.eps_hat_mean = mean;
    rep.variance = var;
    rep.variance_per_10 = var * static_cast<double>(photons_per_set) / 10.0;
    rep.bias = mean - epsilon_true;
    const double n = static_cast<double>(photons_per_set);
    const double fp = f_pudtai(epsilon_true, cal);
    const double fd = f_di(epsilon_true);
    rep.crb_pudtai = fp > 0.0 ? 1.0 / (n * fp) : 0.0;
    rep.crb_qmti = fd > 0.0 ? 1.0 / (n * fd) : 0.0;
    return rep;
}

double improvement_ratio(double epsilon, const DeviceCalibration& cal,
                         const std::function<double(double)>& direct_fisher) {
    const double fd = direct_fisher ? direct_fisher(epsilon) : f_di(epsilon);
    if (!(fd > 0.0)) throw std::domain_error("direct-arm information vanishes at this separation");
    return f_pudtai(epsilon, cal) / fd;
}

}  // namespace pudtai
