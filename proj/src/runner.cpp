#include "pudtai/runner.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>
#include <vector>

#include "pudtai/estimate.hpp"
#include "pudtai/fft.hpp"
#include "pudtai/fisher.hpp"
#include "pudtai/model.hpp"
#include "pudtai/processor.hpp"
#include "pudtai/signals.hpp"

namespace pudtai {

namespace {

using nlohmann::json;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// CSV with the resolved run description embedded as a leading comment, so
// every output file can be reproduced from its own header.
class CsvWriter {
  public:
    CsvWriter(const std::string& path, const json& manifest, const std::string& header)
        : out_(path) {
        if (!out_) throw std::runtime_error("cannot open output file: " + path);
        out_ << "# " << manifest.dump() << "\n" << header << "\n";
    }
    void row(const std::vector<double>& values) {
        for (std::size_t i = 0; i < values.size(); ++i)
            out_ << (i ? "," : "") << fmt(values[i]);
        out_ << "\n";
    }
  private:
    std::ofstream out_;
};

void merge_defaults(json& target, const json& defaults) {
    for (auto it = defaults.begin(); it != defaults.end(); ++it) {
        if (!target.contains(it.key()))
            target[it.key()] = it.value();
        else if (it.value().is_object() && target[it.key()].is_object())
            merge_defaults(target[it.key()], it.value());
    }
}

DeviceCalibration calibration_from(const json& p) {
    const json& c = p.at("calibration");
    return {c.at("v_minus").get<double>(), c.at("v_plus").get<double>(),
            c.at("eta_plus").get<double>(), c.at("t_a_sigma").get<double>()};
}

ProcessorParams processor_from(const json& p) {
    const json& c = p.at("processor");
    ProcessorParams out;
    out.alpha = c.at("alpha").get<double>();
    out.kappa = c.at("kappa").get<double>();
    out.alpha_di = c.at("alpha_di").get<double>();
    out.beta = c.at("beta").get<double>();
    out.theta = c.at("theta").get<double>();
    out.omega0 = c.at("omega0").get<double>();
    out.aperture.t_a = c.at("t_a").get<double>();
    out.internal_samples = c.at("internal_samples").get<std::size_t>();
    out.collection_halfwidth = c.at("collection_halfwidth").get<double>();
    return out;
}

TwoSourceSpec source_from(const json& p) {
    const json& c = p.at("source");
    TwoSourceSpec out;
    out.epsilon = c.at("epsilon").get<double>();
    out.phi = c.at("phi").get<double>();
    out.gaussian.sigma = c.at("sigma").get<double>();
    out.gaussian.omega0 = c.at("omega0").get<double>();
    out.mean_photons = c.at("mean_photons").get<double>();
    return out;
}

SampledField grid_from(const json& p) {
    const json& c = p.at("grid");
    return make_field(Domain::time, c.at("n").get<std::size_t>(), c.at("half").get<double>());
}

std::vector<double> scan_epsilons(const json& p) {
    const json& c = p.at("scan");
    const double lo = c.at("eps_min").get<double>(), hi = c.at("eps_max").get<double>();
    const std::size_t n = c.at("n_points").get<std::size_t>();
    if (n < 2 || !(hi > lo)) throw std::invalid_argument("scan range needs eps_max > eps_min, n_points >= 2");
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return out;
}

json run_manifest(const RunConfig& config) {
    json m;
    m["version"] = kVersion;
    m["mode"] = config.mode;
    m["seed"] = config.seed;
    m["out"] = config.output_path;
    m["verbose_stages"] = config.verbose_stages;
    m["params"] = config.params;
    return m;
}

void mode_synthesize(const RunConfig& cfg, const json& manifest) {
    SampledField grid = grid_from(cfg.params);
    SampledField s = synthesize_two_source(source_from(cfg.params), grid);
    CsvWriter csv(cfg.output_path + ".csv", manifest, "t,re,im,intensity");
    for (std::size_t i = 0; i < s.size(); ++i)
        csv.row({s.coord(i), s.samples[i].real(), s.samples[i].imag(), std::norm(s.samples[i])});
}

void mode_probabilities(const RunConfig& cfg, const json& manifest) {
    const DeviceCalibration cal = calibration_from(cfg.params);
    CsvWriter csv(cfg.output_path + ".csv", manifest,
                  "epsilon,p_minus,p_plus,p_cross,dp_minus,dp_plus");
    for (double e : scan_epsilons(cfg.params)) {
        const PortProbabilities p = port_probabilities(e, cal);
        const PortProbabilities d = port_probabilities_deps(e, cal);
        csv.row({e, p.p_minus, p.p_plus, p.p_cross, d.p_minus, d.p_plus});
    }
}

void mode_fisher(const RunConfig& cfg, const json& manifest) {
    const DeviceCalibration cal = calibration_from(cfg.params);
    CsvWriter csv(cfg.output_path + ".csv", manifest, "epsilon,f_pudtai,f_di,f_sliver_ideal,f_q");
    for (double e : scan_epsilons(cfg.params))
        csv.row({e, f_pudtai(e, cal), f_di(e), f_sliver(e), qfi()});
}

void mode_pipeline(const RunConfig& cfg, const json& manifest) {
    const TwoSourceSpec src = source_from(cfg.params);
    const ProcessorParams proc = processor_from(cfg.params);
    const std::size_t n_phi = cfg.params.at("pipeline").at("n_phi").get<std::size_t>();
    if (n_phi < 1) throw std::invalid_argument("need at least one interference phase");
    SampledField grid = grid_from(cfg.params);

    StageSink sink;
    if (cfg.verbose_stages)
        sink = [](const std::string& name, const SampledField& f) {
            std::cout << "stage " << name << ": n=" << f.size() << " power=" << fmt(f.norm2())
                      << "\n";
        };

    double am = 0.0, ap = 0.0, ar = 0.0, ain = 0.0;
    for (std::size_t i = 0; i < n_phi; ++i) {
        TwoSourceSpec s = src;
        s.phi = 2.0 * 3.14159265358979323846 * static_cast<double>(i) / static_cast<double>(n_phi);
        SampledField sig = synthesize_two_source(s, grid);
        PipelineResult r = pudtai_pipeline(sig, proc, i == 0 ? sink : StageSink{});
        am += r.minus_power;
        ap += r.plus_power;
        ar += r.remainder_power;
        ain += r.input_power;
    }
    const double k = static_cast<double>(n_phi);
    am /= k; ap /= k; ar /= k; ain /= k;

    const auto [cm, cp] = band_capture_fractions(src.epsilon, proc.aperture, proc);
    const DeviceCalibration ideal{1.0, 1.0, 1.0, proc.aperture.t_a};
    const PortProbabilities model = port_probabilities(src.epsilon, ideal);
    CsvWriter csv(cfg.output_path + ".csv", manifest,
                  "epsilon,n_phi,minus_power,plus_power,remainder_power,input_power,"
                  "p_minus_est,p_plus_est,model_p_minus,model_p_plus");
    csv.row({src.epsilon, k, am, ap, ar, ain, am / (collection_factor * cm),
             ap / (collection_factor * cp), model.p_minus, model.p_plus});
}

void mode_estimate(const RunConfig& cfg, const json& manifest) {
    const DeviceCalibration cal = calibration_from(cfg.params);
    const double eps = source_from(cfg.params).epsilon;
    const std::uint64_t n = cfg.params.at("estimate").at("n_photons").get<std::uint64_t>();
    const CountRecord rec = sample_counts(eps, cal, n, cfg.seed);
    bool clamped = false;
    const double hat = mle_pudtai(rec, cal, &clamped);
    CsvWriter csv(cfg.output_path + ".csv", manifest,
                  "epsilon_true,n_minus,n_plus,n_total,eps_hat,clamped");
    csv.row({eps, static_cast<double>(rec.n_minus), static_cast<double>(rec.n_plus),
             static_cast<double>(rec.n_total), hat, clamped ? 1.0 : 0.0});
}

void mode_bootstrap(const RunConfig& cfg, const json& manifest) {
    const DeviceCalibration cal = calibration_from(cfg.params);
    const json& b = cfg.params.at("bootstrap");
    const std::uint64_t per_set = b.at("photons_per_set").get<std::uint64_t>();
    const std::size_t n_boot = b.at("n_boot").get<std::size_t>();
    const double shot_mean = b.at("shot_mean").get<double>();
    std::vector<double> eps_list = b.at("eps_list").get<std::vector<double>>();
    if (eps_list.empty()) throw std::invalid_argument("bootstrap needs a nonempty eps_list");

    std::size_t workers = 1;
    if (const char* env = std::getenv("PUDTAI_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) workers = static_cast<std::size_t>(v);
    }
    std::vector<EstimatorReport> reports(eps_list.size());
    std::size_t next = 0;
    auto work = [&](std::size_t i) {
        // stream family is indexed by the position in the sweep, so the split
        // across workers cannot change any draw
        reports[i] = bootstrap(eps_list[i], cal, per_set, n_boot,
                               cfg.seed + 0x10000ULL * i, shot_mean);
    };
    if (workers <= 1 || eps_list.size() <= 1) {
        for (std::size_t i = 0; i < eps_list.size(); ++i) work(i);
    } else {
        std::vector<std::thread> pool;
        std::mutex m;
        for (std::size_t w = 0; w < std::min(workers, eps_list.size()); ++w)
            pool.emplace_back([&] {
                for (;;) {
                    std::size_t i;
                    {
                        std::lock_guard<std::mutex> lock(m);
                        if (next >= eps_list.size()) return;
                        i = next++;
                    }
                    work(i);
                }
            });
        for (auto& t : pool) t.join();
    }

    CsvWriter csv(cfg.output_path + ".csv", manifest,
                  "epsilon_true,eps_hat_mean,variance_per_10_photons,bias,crb_pudtai,crb_qmti");
    for (const EstimatorReport& r : reports)
        csv.row({r.eps_true, r.eps_hat_mean, r.variance_per_10, r.bias, r.crb_pudtai, r.crb_qmti});
}

void mode_sweep(const RunConfig& cfg, const json& manifest) {
    const DeviceCalibration cal = calibration_from(cfg.params);
    CsvWriter csv(cfg.output_path + ".csv", manifest, "epsilon,f_pudtai,f_di,improvement_ratio");
    for (double e : scan_epsilons(cfg.params))
        csv.row({e, f_pudtai(e, cal), f_di(e), improvement_ratio(e, cal)});
}

void mode_compare(const RunConfig& cfg, const json& manifest) {
    const DeviceCalibration cal = calibration_from(cfg.params);
    CsvWriter csv(cfg.output_path + ".csv", manifest, "epsilon,f_pudtai,f_sliver_ideal,f_di,f_q");
    for (double e : scan_epsilons(cfg.params))
        csv.row({e, f_pudtai(e, cal), f_sliver(e), f_di(e), qfi()});

    // instrument comparison: grating spectrometer factor against the source
    // linewidth, next to this device's closed-form factor
    const json& sp = cfg.params.at("spectrometer");
    SpectrometerSpec spec;
    spec.sigma_rl = sp.at("sigma_rl").get<double>();
    spec.bandwidth = sp.at("bandwidth").get<double>();
    const double lo = sp.at("sigma_min").get<double>(), hi = sp.at("sigma_max").get<double>();
    const std::size_t n = sp.at("n_points").get<std::size_t>();
    const double s_dev = cal.v_minus < 1.0 ? s_pudtai_closed_form(cal)
                                           : std::numeric_limits<double>::infinity();
    CsvWriter inst(cfg.output_path + "_instrument.csv", manifest, "sigma,s_spectrometer,s_device");
    for (std::size_t i = 0; i < n; ++i) {
        spec.sigma = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        inst.row({spec.sigma, di_spectrometer_s(spec), s_dev});
    }
}

}  // namespace

json default_params() {
    json p;
    p["source"] = {{"epsilon", 0.5}, {"phi", 0.0}, {"sigma", 1.0}, {"omega0", 0.0},
                   {"mean_photons", 1.0}};
    p["grid"] = {{"n", 4096}, {"half", 8.0}};
    p["calibration"] = {{"v_minus", 0.9751}, {"v_plus", 0.764}, {"eta_plus", 0.719},
                        {"t_a_sigma", 0.564}};
    p["processor"] = {{"alpha", 700.0},          {"kappa", 1.0 / 700.0},
                      {"alpha_di", 1.0},         {"beta", 1.0},
                      {"theta", 0.0},            {"omega0", 0.0},
                      {"t_a", 0.564},            {"internal_samples", 16384},
                      {"collection_halfwidth", 19.2}};
    p["scan"] = {{"eps_min", 0.02}, {"eps_max", 2.0}, {"n_points", 50}};
    p["pipeline"] = {{"n_phi", 16}};
    p["estimate"] = {{"n_photons", 150000}};
    p["bootstrap"] = {{"photons_per_set", 20000}, {"n_boot", 200}, {"shot_mean", 0.0},
                      {"eps_list", json::array({0.1, 0.3, 0.5})}};
    p["spectrometer"] = {{"sigma_rl", 7.2}, {"bandwidth", 300.0}, {"sigma_min", 5.0},
                         {"sigma_max", 120.0}, {"n_points", 40}};
    return p;
}

RunConfig parse_config(const nlohmann::json& doc) {
    static const std::set<std::string> known = {"mode", "seed", "out", "verbose_stages", "params"};
    for (auto it = doc.begin(); it != doc.end(); ++it)
        if (!known.count(it.key()))
            throw std::invalid_argument("unknown config key: " + it.key());
    RunConfig cfg;
    if (doc.contains("mode")) cfg.mode = doc.at("mode").get<std::string>();
    if (doc.contains("seed")) cfg.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("out")) cfg.output_path = doc.at("out").get<std::string>();
    if (doc.contains("verbose_stages")) cfg.verbose_stages = doc.at("verbose_stages").get<bool>();
    cfg.params = doc.contains("params") ? doc.at("params") : json::object();
    merge_defaults(cfg.params, default_params());
    return cfg;
}

nlohmann::json config_json(const RunConfig& config) {
    json doc;
    doc["mode"] = config.mode;
    doc["seed"] = config.seed;
    doc["out"] = config.output_path;
    doc["verbose_stages"] = config.verbose_stages;
    doc["params"] = config.params;
    return doc;
}

void apply_override(RunConfig& config, const std::string& key_path, const std::string& value) {
    json parsed;
    try {
        parsed = json::parse(value);
    } catch (const json::parse_error&) {
        parsed = value;
    }
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (pos <= key_path.size()) {
        const std::size_t dot = key_path.find('.', pos);
        parts.push_back(key_path.substr(pos, dot == std::string::npos ? dot : dot - pos));
        if (dot == std::string::npos) break;
        pos = dot + 1;
    }
    if (parts.empty() || parts.front().empty())
        throw std::invalid_argument("empty override key");
    if (parts.size() == 1) {
        if (parts[0] == "mode") { config.mode = parsed.is_string() ? parsed.get<std::string>() : value; return; }
        if (parts[0] == "seed") { config.seed = parsed.get<std::uint64_t>(); return; }
        if (parts[0] == "out") { config.output_path = parsed.is_string() ? parsed.get<std::string>() : value; return; }
        if (parts[0] == "verbose_stages") { config.verbose_stages = parsed.get<bool>(); return; }
    }
    json* node = &config.params;
    if (parts.front() == "params") parts.erase(parts.begin());
    if (parts.empty()) throw std::invalid_argument("override must name a leaf");
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) node = &((*node)[parts[i]]);
    (*node)[parts.back()] = parsed;
}

int run(const RunConfig& config) {
    try {
        const json manifest = run_manifest(config);
        if (config.mode == "synthesize") mode_synthesize(config, manifest);
        else if (config.mode == "pipeline") mode_pipeline(config, manifest);
        else if (config.mode == "probabilities") mode_probabilities(config, manifest);
        else if (config.mode == "fisher") mode_fisher(config, manifest);
        else if (config.mode == "estimate") mode_estimate(config, manifest);
        else if (config.mode == "bootstrap") mode_bootstrap(config, manifest);
        else if (config.mode == "sweep") mode_sweep(config, manifest);
        else if (config.mode == "compare") mode_compare(config, manifest);
        else throw std::invalid_argument("unknown mode: " + config.mode);

        std::ofstream mf(config.output_path + ".manifest.json");
        if (!mf) throw std::runtime_error("cannot write manifest");
        mf << run_manifest(config).dump(2) << "\n";
        return 0;
    } catch (const std::exception& e) {
        json err;
        err["error"] = e.what();
        err["mode"] = config.mode;
        std::cerr << err.dump() << std::endl;
        return 2;
    }
}

}  // namespace pudtai
