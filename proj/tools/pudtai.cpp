#include <cstring>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "pudtai/runner.hpp"

namespace {

constexpr const char* kUsage = R"(pudtai - two-line superresolution simulator

usage: pudtai [--config FILE] [--mode MODE] [--seed N] [--out PATH]
              [--verbose-stages] [--KEY.PATH=VALUE ...]

modes: synthesize pipeline probabilities fisher estimate bootstrap sweep compare

The config file is a JSON document {mode, seed, out, verbose_stages, params}.
Any --KEY.PATH=VALUE flag overrides one entry of the parameter tree, e.g.
--processor.alpha=640 or --bootstrap.n_boot=500. Outputs are a CSV file and a
JSON manifest holding the fully resolved configuration.
)";

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    nlohmann::json doc = nlohmann::json::object();
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) {
                std::cerr << R"({"error":"--config needs a file path"})" << std::endl;
                return 2;
            }
            std::ifstream in(args[i + 1]);
            if (!in) {
                std::cerr << R"({"error":"cannot read config file"})" << std::endl;
                return 2;
            }
            try {
                in >> doc;
            } catch (const std::exception& e) {
                std::cerr << nlohmann::json{{"error", e.what()}}.dump() << std::endl;
                return 2;
            }
        }
    }

    pudtai::RunConfig cfg;
    try {
        cfg = pudtai::parse_config(doc);
        for (std::size_t i = 0; i < args.size(); ++i) {
            const std::string& a = args[i];
            if (a == "--help" || a == "-h") {
                std::cout << kUsage;
                return 0;
            }
            if (a == "--config") {
                ++i;  // already consumed
                continue;
            }
            if (a == "--verbose-stages") {
                cfg.verbose_stages = true;
                continue;
            }
            auto take = [&](const char* name, std::string& into) {
                if (a != name) return false;
                if (i + 1 >= args.size()) throw std::invalid_argument(std::string(name) + " needs a value");
                into = args[++i];
                return true;
            };
            std::string v;
            if (take("--mode", v)) { cfg.mode = v; continue; }
            if (take("--seed", v)) { cfg.seed = std::stoull(v); continue; }
            if (take("--out", v)) { cfg.output_path = v; continue; }
            if (a.rfind("--", 0) == 0) {
                const std::size_t eq = a.find('=');
                if (eq == std::string::npos)
                    throw std::invalid_argument("unrecognized flag: " + a);
                pudtai::apply_override(cfg, a.substr(2, eq - 2), a.substr(eq + 1));
                continue;
            }
            throw std::invalid_argument("unrecognized argument: " + a);
        }
    } catch (const std::exception& e) {
        std::cerr << nlohmann::json{{"error", e.what()}}.dump() << std::endl;
        return 2;
    }
    return pudtai::run(cfg);
}
