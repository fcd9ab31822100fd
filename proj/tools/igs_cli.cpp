// Command-line front end: trace rate-region boundaries, compare against the
// grid oracle, or evaluate the rates of an explicit signaling.
//
// Exit codes: 0 success, 2 configuration problem, 3 solver non-convergence,
// 4 output I/O failure.

#include <CLI11.hpp>

#include <iostream>
#include <numbers>

#include "igs/experiment.hpp"

namespace {

int finish_run(const igs::ExperimentConfig& cfg, const igs::RunResult& result) {
    igs::write_output(cfg, result);
    for (const auto& e : result.errors)
        std::cerr << "solver failure: " << e << "\n";
    return result.errors.empty() ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Pareto boundary of the two-user Gaussian interference channel "
        "rate region under improper Gaussian signaling"};
    app.require_subcommand(1);

    std::string config_path;
    const auto add_config = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config file")
            ->required();
    };

    CLI::App* region = app.add_subcommand(
        "region", "Boundary sweep for proper and improper signaling");
    add_config(region);

    CLI::App* compare = app.add_subcommand(
        "compare",
        "Boundary sweep plus grid-oracle reference and improvement summary");
    add_config(compare);

    CLI::App* rate = app.add_subcommand(
        "rate", "User rates achieved by an explicit signaling");
    add_config(rate);
    double c1 = 0.0;
    double c2 = 0.0;
    std::vector<double> ct1{0.0, 0.0};
    std::vector<double> ct2{0.0, 0.0};
    rate->add_option("--c1", c1, "covariance of user 1")->required();
    rate->add_option("--c2", c2, "covariance of user 2")->required();
    rate->add_option("--ct1", ct1, "pseudo-covariance of user 1 as re im")
        ->expected(2);
    rate->add_option("--ct2", ct2, "pseudo-covariance of user 2 as re im")
        ->expected(2);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;  // bad usage is a configuration problem
    }

    try {
        const igs::ExperimentConfig cfg = igs::load_config(config_path);
        if (region->parsed())
            return finish_run(cfg, igs::run_region(cfg));
        if (compare->parsed())
            return finish_run(cfg, igs::run_compare(cfg));
        const igs::Signaling sig{c1, c2, {ct1[0], ct1[1]}, {ct2[0], ct2[1]}};
        const igs::RatePair rates = igs::run_rate(cfg, sig);
        const double s = cfg.output.units == igs::RateUnits::bits
                             ? std::numbers::log2e
                             : 1.0;
        std::cout << "R1 " << igs::format_double(s * rates.r1) << "\n"
                  << "R2 " << igs::format_double(s * rates.r2) << "\n";
        return 0;
    } catch (const igs::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const igs::ValidationError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const igs::NonConvergence& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return 3;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "output error: " << e.what() << "\n";
        return 4;
    }
}
