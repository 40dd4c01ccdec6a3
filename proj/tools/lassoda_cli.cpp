// Command-line surface: synthetic data generation, chain runs, certificate
// reports, quadrature oracles, and chain diagnostics.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "lassoda/bounds.hpp"
#include "lassoda/diagnostics.hpp"
#include "lassoda/io.hpp"
#include "lassoda/oracle.hpp"
#include "lassoda/sampler.hpp"
#include "lassoda/synthetic.hpp"

namespace {

struct GenerateArgs {
    std::string kind = "probit";
    int n = 50;
    int p = 1;
    double lambda_true = 1.0;
    double sparsity = 0.0;
    std::uint64_t seed = 0;
    std::string out = "dataset";
};

struct SampleArgs {
    std::string data;
    std::string config;
    std::string out = "samples.csv";
};

struct BoundsArgs {
    std::string data;
    double c1 = 1.0;
    double eps_bar = 0.01;
    std::string out = "bounds.json";
};

struct OracleArgs {
    std::string data;
    int resolution = 400;
    std::string out = "oracle.json";
};

struct DiagnoseArgs {
    std::string samples;
    std::string data;
    int bins = 20;
    std::string out = "diagnostics.json";
};

int run_generate(const GenerateArgs& args) {
    lassoda::SyntheticData synth = lassoda::generate_synthetic(
        lassoda::kind_from_name(args.kind), args.n, args.p, args.lambda_true, args.sparsity,
        args.seed);
    lassoda::write_dataset(synth.data, args.out + ".csv", args.out + ".json");
    std::printf("wrote %s.csv and %s.json (n=%d, p=%d, kind=%s)\n", args.out.c_str(),
                args.out.c_str(), args.n, args.p, args.kind.c_str());
    return 0;
}

int run_sample(const SampleArgs& args) {
    lassoda::Dataset data = lassoda::read_dataset(args.data + ".csv", args.data + ".json");
    lassoda::SamplerConfig config = lassoda::read_sampler_config(args.config);
    lassoda::RunResult result =
        lassoda::run(data, config, lassoda::warm_start_initializer(data));
    lassoda::write_samples(result.samples, args.out);
    bool any_ok = false;
    for (const auto& chain : result.chains) {
        if (chain.aborted) {
            std::printf("chain %d: aborted at iteration %lld (%s), %lld draws kept, %.3f s\n",
                        chain.chain, static_cast<long long>(chain.aborted_at),
                        chain.message.c_str(), static_cast<long long>(chain.draws),
                        chain.seconds);
        } else {
            any_ok = true;
            std::printf("chain %d: %lld draws, %.3f s\n", chain.chain,
                        static_cast<long long>(chain.draws), chain.seconds);
        }
    }
    std::printf("wrote %s\n", args.out.c_str());
    if (!any_ok) {
        std::fprintf(stderr, "error: every chain aborted with a numeric failure\n");
        return 2;
    }
    return 0;
}

int run_bounds(const BoundsArgs& args) {
    lassoda::Dataset data = lassoda::read_dataset(args.data + ".csv", args.data + ".json");
    lassoda::BoundReport report = lassoda::full_report(data, args.c1, args.eps_bar);
    lassoda::write_bound_report(report, args.out);
    std::printf("wrote %s (rho=%.12g, t_mix=%lld, conditional on c1=%g)\n", args.out.c_str(),
                report.rho, static_cast<long long>(report.t_mix), report.c1);
    return 0;
}

int run_oracle(const OracleArgs& args) {
    lassoda::Dataset data = lassoda::read_dataset(args.data + ".csv", args.data + ".json");
    lassoda::OracleGrid grid = lassoda::quadrature_oracle(data, args.resolution);
    lassoda::write_oracle_summary(grid, args.out);
    std::printf("wrote %s (grid [%g, %g] x [%g, %g] at %d^2)\n", args.out.c_str(), grid.alpha_lo,
                grid.alpha_hi, grid.beta_lo, grid.beta_hi, grid.resolution);
    return 0;
}

int run_diagnose(const DiagnoseArgs& args) {
    lassoda::Dataset data = lassoda::read_dataset(args.data + ".csv", args.data + ".json");
    lassoda::SampleStore samples = lassoda::read_samples(args.samples);
    lassoda::OracleGrid grid = lassoda::quadrature_oracle(data);
    lassoda::DiagnosticsReport report = lassoda::diagnostics_report(samples, grid, args.bins);
    lassoda::write_diagnostics_report(report, args.out);
    std::printf("wrote %s (alpha TV %.4f, beta TV %.4f)\n", args.out.c_str(),
                report.tv_to_oracle[0], report.tv_to_oracle[1]);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Data-augmentation Gibbs sampler with convergence certificates for lasso posteriors"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Generate a synthetic dataset");
    generate->add_option("--kind", gen.kind, "probit, logistic, or hetero_gaussian");
    generate->add_option("--n", gen.n, "observations")->check(CLI::PositiveNumber);
    generate->add_option("--p", gen.p, "covariates")->check(CLI::PositiveNumber);
    generate->add_option("--lambda-true", gen.lambda_true, "penalty hyperparameter to record");
    generate->add_option("--sparsity", gen.sparsity, "fraction of zeroed coefficients");
    generate->add_option("--seed", gen.seed, "RNG seed");
    generate->add_option("--out", gen.out, "output base path (writes <out>.csv and <out>.json)");

    SampleArgs smp;
    auto* sample = app.add_subcommand("sample", "Run the Gibbs sampler");
    sample->add_option("--data", smp.data, "dataset base path (expects <data>.csv and <data>.json)")
        ->required();
    sample->add_option("--config", smp.config, "sampler config JSON")->required();
    sample->add_option("--out", smp.out, "samples CSV path");

    BoundsArgs bnd;
    auto* bounds = app.add_subcommand("bounds", "Compute the convergence-certificate report");
    bounds->add_option("--data", bnd.data, "dataset base path")->required();
    bounds->add_option("--c1", bnd.c1, "universal constant the certificates are conditional on");
    bounds->add_option("--eps-bar", bnd.eps_bar, "target TV accuracy for the mixing budget");
    bounds->add_option("--out", bnd.out, "report JSON path");

    OracleArgs orc;
    auto* oracle = app.add_subcommand("oracle", "Build the quadrature oracle (p = 1 only)");
    oracle->add_option("--data", orc.data, "dataset base path")->required();
    oracle->add_option("--resolution", orc.resolution, "grid points per axis");
    oracle->add_option("--out", orc.out, "oracle summary JSON path");

    DiagnoseArgs dia;
    auto* diagnose = app.add_subcommand("diagnose", "Compare stored samples against the oracle");
    diagnose->add_option("--samples", dia.samples, "samples CSV path")->required();
    diagnose->add_option("--data", dia.data, "dataset base path")->required();
    diagnose->add_option("--bins", dia.bins, "histogram bins for TV");
    diagnose->add_option("--out", dia.out, "diagnostics JSON path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (generate->parsed()) return run_generate(gen);
        if (sample->parsed()) return run_sample(smp);
        if (bounds->parsed()) return run_bounds(bnd);
        if (oracle->parsed()) return run_oracle(orc);
        if (diagnose->parsed()) return run_diagnose(dia);
    } catch (const lassoda::NumericError& e) {
        std::fprintf(stderr, "numeric failure: %s (detail %.17g)\n", e.what(), e.detail());
        return 2;
    } catch (const lassoda::ParameterError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
