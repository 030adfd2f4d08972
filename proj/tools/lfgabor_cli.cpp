// Command-line front end: certificate computation, oracle verification,
// property sweeps, transforms and benchmarks, all emitting deterministic
// machine-readable reports.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "lfgabor/lfgabor.hpp"

namespace {

using namespace lfgabor;

constexpr int kExitOk = 0;
constexpr int kExitOracleViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

void writeOutput(const std::string& text, const std::string& outPath) {
    if (outPath.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(outPath, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file " + outPath);
    out << text;
}

/// Renders the configured window and returns (g, gHat) on the grid.
std::pair<SampledFunction, SampledFunction> windowPair(const RunConfig& cfg) {
    if (!cfg.window) throw std::invalid_argument("config: missing field 'window'");
    const SampledFunction rendered = render_window(*cfg.window, cfg.grid);
    if (rendered.domain == Domain::time)
        return {rendered, fourier_fast(rendered)};
    return {inverse_fourier(rendered), rendered};
}

CertificateReport makeCertificate(const RunConfig& cfg, const SampledFunction& gHat) {
    const FrameQuantities fq = compute_frame_quantities(gHat, cfg.lattice);
    return gate(fq, cfg.grid, cfg.lattice);
}

int cmdCertify(const RunConfig& cfg, const std::string& outPath) {
    const auto [g, gHat] = windowPair(cfg);
    const CertificateReport rep = makeCertificate(cfg, gHat);
    writeOutput(dumpFixed(certificateToJson(rep, cfg.grid, cfg.lattice, *cfg.window, nullptr, nullptr)),
                outPath);
    return kExitOk;
}

int cmdOracle(const RunConfig& cfg, const std::string& outPath, const std::string& spectrumPath,
              unsigned workers) {
    const auto [g, gHat] = windowPair(cfg);
    const CertificateReport rep = makeCertificate(cfg, gHat);
    const GaborSystem sys(g, cfg.lattice);
    const HermitianMatrix S = frame_operator(sys, workers);
    const auto ev = jacobi_eigenvalues(S);
    OracleResult res;
    res.Amin = ev.front();
    res.Bmax = ev.back();
    res.dim = cfg.grid.size();
    res.isFrame = res.Amin > 1e-9 * res.Bmax;
    const CertificateVerdict verdict = check_certificate(rep, res);
    if (!spectrumPath.empty()) {
        std::string csv = "index,eigenvalue\n";
        char buf[64];
        for (std::size_t i = 0; i < ev.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%zu,%.17g\n", i, ev[i]);
            csv += buf;
        }
        writeOutput(csv, spectrumPath);
    }
    writeOutput(dumpFixed(certificateToJson(rep, cfg.grid, cfg.lattice, *cfg.window, &res, &verdict)),
                outPath);
    return (verdict.anyApplicable && !verdict.bracketed) ? kExitOracleViolation : kExitOk;
}

int cmdChainCheck(const RunConfig& cfg, std::uint64_t count, std::uint64_t seed,
                  const std::string& outPath) {
    std::mt19937_64 rng(seed);
    std::uint64_t violations = 0, gatesPassed = 0;
    Json failures = Json::array();
    for (std::uint64_t i = 0; i < count; ++i) {
        const WindowSpec spec = random_window(rng, cfg.grid);
        SampledFunction gHat = (spec.domain == Domain::frequency)
                                   ? render_window(spec, cfg.grid)
                                   : fourier_fast(render_window(spec, cfg.grid));
        const FrameQuantities fq = compute_frame_quantities(gHat, cfg.lattice);
        const CertificateReport rep = gate(fq, cfg.grid, cfg.lattice);
        bool bad = false;
        if (!(fq.sigma <= fq.mu + 1e-12)) bad = true;
        if (!(fq.mu <= fq.beta + 1e-12)) bad = true;
        if (rep.t21.applicable && rep.t22.applicable &&
            !(rep.t21.C <= rep.t22.C + 1e-12 && rep.t22.D <= rep.t21.D + 1e-12))
            bad = true;
        if (rep.t22.applicable && rep.t23.applicable &&
            !(rep.t22.C <= rep.t23.C + 1e-12 && rep.t23.D <= rep.t22.D + 1e-12))
            bad = true;
        if (rep.t21.applicable || rep.t22.applicable || rep.t23.applicable) ++gatesPassed;
        if (bad) {
            ++violations;
            failures.push_back(Json{{"index", i}, {"window", windowToJson(cfg.grid.field(), spec)}});
        }
    }
    Json summary{{"schemaVersion", kSchemaVersion},
                 {"count", count},
                 {"seed", seed},
                 {"gatesPassed", gatesPassed},
                 {"violations", violations},
                 {"failures", failures}};
    writeOutput(dumpFixed(summary), outPath);
    return violations == 0 ? kExitOk : kExitOracleViolation;
}

int cmdTransform(const std::string& inPath, const std::string& outPath, bool naive) {
    std::ifstream in(inPath);
    if (!in) throw std::invalid_argument("cannot open input file " + inPath);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::invalid_argument("input: JSON parse error in " + inPath + ": " + e.what());
    }
    const SampledFunction f = sampledFromJson(j);
    SampledFunction out = (f.domain == Domain::time)
                              ? (naive ? fourier_naive(f) : fourier_fast(f))
                              : (naive ? inverse_naive(f) : inverse_fourier(f));
    if (outPath.size() > 4 && outPath.substr(outPath.size() - 4) == ".csv")
        writeOutput(sampledToCsv(out), outPath);
    else
        writeOutput(dumpFixed(sampledToJson(out)), outPath);
    return kExitOk;
}

int cmdBench(const RunConfig& cfg, const std::string& sizes, const std::string& outPath) {
    const int q = cfg.field.q();
    std::string csv = "D,naive_seconds,fast_seconds,speedup\n";
    std::stringstream ss(sizes);
    std::string tok;
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    while (std::getline(ss, tok, ',')) {
        const std::uint64_t D = std::stoull(tok);
        int L = 0;
        std::uint64_t v = 1;
        while (v < D) { v *= static_cast<std::uint64_t>(q); ++L; }
        if (v != D) throw std::invalid_argument("bench: size " + tok + " is not a power of q");
        GridSpec grid(cfg.field, L / 2, L - L / 2);
        SampledFunction f = SampledFunction::zeros(grid, Domain::time);
        for (auto& x : f.values) x = {dist(rng), dist(rng)};
        const auto t0 = std::chrono::steady_clock::now();
        const SampledFunction a = fourier_naive(f);
        const auto t1 = std::chrono::steady_clock::now();
        const SampledFunction b = fourier_fast(f);
        const auto t2 = std::chrono::steady_clock::now();
        double err = 0.0;
        for (std::uint64_t i = 0; i < D; ++i) err = std::max(err, std::abs(a.values[i] - b.values[i]));
        if (err > 1e-10) throw std::runtime_error("bench: fast transform deviates from naive");
        const double naiveSec = std::chrono::duration<double>(t1 - t0).count();
        const double fastSec = std::chrono::duration<double>(t2 - t1).count();
        char buf[128];
        std::snprintf(buf, sizeof buf, "%llu,%.6g,%.6g,%.6g\n",
                      static_cast<unsigned long long>(D), naiveSec, fastSec, naiveSec / fastSec);
        csv += buf;
    }
    writeOutput(csv, outPath);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gabor frame certificates on local fields of positive characteristic"};
    app.require_subcommand(1);

    std::string configPath, outPath, inPath, spectrumPath, sizes = "64,256,1024";
    std::uint64_t count = 100, seedOverride = 0;
    bool naive = false;
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());

    app.add_option("--workers", workers, "worker threads for data-parallel stages")
        ->envname("LFGABOR_WORKERS");

    auto addConfig = [&](CLI::App* cmd) {
        cmd->add_option("--config", configPath, "run configuration JSON file")
            ->required()
            ->envname("LFGABOR_CONFIG");
    };

    CLI::App* certify = app.add_subcommand("certify", "compute frame-bound certificate");
    addConfig(certify);
    certify->add_option("--out", outPath, "output file (default stdout)");

    CLI::App* oracle = app.add_subcommand("oracle", "frame-operator eigenvalue oracle + certificate check");
    addConfig(oracle);
    oracle->add_option("--out", outPath, "output file (default stdout)");
    oracle->add_option("--spectrum", spectrumPath, "dump the full spectrum as CSV");

    CLI::App* chain = app.add_subcommand("chain-check", "sigma <= mu <= beta sweep over random windows");
    addConfig(chain);
    chain->add_option("--count", count, "number of random windows");
    chain->add_option("--seed", seedOverride, "RNG seed override")->envname("LFGABOR_SEED");
    chain->add_option("--out", outPath, "output file (default stdout)");

    CLI::App* transform = app.add_subcommand("transform", "apply the (inverse) Fourier transform to a function file");
    transform->add_option("--in", inPath, "input SampledFunction JSON")->required();
    transform->add_option("--out", outPath, "output file (.csv for CSV, default stdout JSON)");
    transform->add_flag("--naive", naive, "use the reference O(D^2) path");

    CLI::App* bench = app.add_subcommand("bench", "naive vs fast transform timings");
    addConfig(bench);
    bench->add_option("--sizes", sizes, "comma-separated list of D values (powers of q)");
    bench->add_option("--out", outPath, "output CSV file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (transform->parsed()) return cmdTransform(inPath, outPath, naive);
        RunConfig cfg = runConfigFromFile(configPath);
        if (chain->count("--seed")) cfg.seed = seedOverride;
        if (certify->parsed()) return cmdCertify(cfg, outPath);
        if (oracle->parsed()) return cmdOracle(cfg, outPath, spectrumPath, workers);
        if (chain->parsed()) return cmdChainCheck(cfg, count, cfg.seed, outPath);
        if (bench->parsed()) return cmdBench(cfg, sizes, outPath);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitUsage;
}
