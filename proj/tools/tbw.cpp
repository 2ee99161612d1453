// Command-line front end: tbw spectrum|modes|respond|sweep|verify --config <path>.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tbw/io/commands.hpp"

namespace {

std::vector<int> parse_mode_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto dash = item.find('-');
        try {
            if (dash != std::string::npos && dash > 0) {
                const int a = std::stoi(item.substr(0, dash)), b = std::stoi(item.substr(dash + 1));
                if (a > b) throw std::invalid_argument(item);
                for (int k = a; k <= b; ++k) out.push_back(k);
            } else {
                out.push_back(std::stoi(item));
            }
        } catch (const std::exception&) {
            throw tbw::ConfigError("--modes", "cannot parse '" + item + "'");
        }
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Free-free Timoshenko beam on a Winkler foundation: spectrum, modes and ground-wave response"};
    app.require_subcommand(1, 1);
    std::string config, out, modes;
    bool no_oracle = false;
    for (const char* name : {"spectrum", "modes", "respond", "sweep", "verify"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config, "YAML run configuration")->required();
        sub->add_option("--out", out, "output directory (overrides TBW_OUT_DIR and output.dir)");
        sub->add_option("--modes", modes, "mode indices, e.g. 1,2,5-8");
        sub->add_flag("--no-oracle", no_oracle, "skip the finite-element cross-check");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : tbw::io::kUsage;
    }
    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        tbw::io::RunConfig rc = tbw::io::load_config(config);
        std::string dir = rc.output.dir;
        if (const char* env = std::getenv("TBW_OUT_DIR"); env && *env) dir = env;
        if (!out.empty()) dir = out;
        rc.output.dir = dir;
        if (no_oracle) rc.analysis.oracle = false;
        if (cmd == "spectrum") return tbw::io::cmd_spectrum(rc, dir, std::cout);
        if (cmd == "modes") return tbw::io::cmd_modes(rc, dir, parse_mode_list(modes), std::cout);
        if (cmd == "respond") return tbw::io::cmd_respond(rc, dir, rc.analysis.oracle, std::cout);
        if (cmd == "sweep") return tbw::io::cmd_sweep(rc, dir, std::cout);
        if (no_oracle) {
            std::cerr << "verify: the oracle cannot be disabled for verification\n";
            return tbw::io::kUsage;
        }
        return tbw::io::cmd_verify(rc, dir, std::cout);
    } catch (const tbw::ConfigError& e) {
        std::cerr << e.what() << '\n';
        return tbw::io::kUsage;
    } catch (const tbw::InvalidInput& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return tbw::io::kUsage;
    } catch (const tbw::UnsupportedRegime& e) {
        std::cerr << "unsupported parameters: " << e.what() << '\n';
        return tbw::io::kNumerical;
    } catch (const tbw::NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return tbw::io::kNumerical;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "output error: " << e.what() << '\n';
        return tbw::io::kUsage;
    } catch (const tbw::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return tbw::io::kNumerical;
    }
}
