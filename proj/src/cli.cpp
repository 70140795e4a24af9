#include "pcakit/cli.hpp"

#include "pcakit/datagen.hpp"
#include "pcakit/error.hpp"
#include "pcakit/io.hpp"
#include "pcakit/pca.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>

namespace pcakit::cli {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

CsvOrientation parse_orientation(const std::string& rows) {
    return rows == "measurements" ? CsvOrientation::measurements_as_rows
                                  : CsvOrientation::samples_as_rows;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot write '" + path.string() + "'");
    }
    return out;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
    std::string scenario;
    std::optional<std::uint64_t> seed;
    std::string out;
    double amplitude = 1.0;
    double frequency = 0.5;
    double rate = 120.0;
    double duration = 600.0;
    double noise = 0.0;
    double snr = 100.0;
    double rho = 0.8;
    std::size_t n = 1000;
    double radius = 1.0;
    double angle1 = 0.0;
    double angle2 = 45.0;
    double weight = 0.5;
};

void run_simulate(const SimulateArgs& a, const CLI::App& cmd, std::ostream& err) {
    static const std::map<std::string, std::set<std::string>> allowed = {
        {"spring", {"--amplitude", "--frequency", "--rate", "--duration", "--noise", "--snr"}},
        {"pair", {"--rho", "--n"}},
        {"ferris", {"--radius", "--n", "--noise"}},
        {"nonortho", {"--angle1", "--angle2", "--weight", "--n", "--noise"}},
    };
    static const std::set<std::string> common = {"--seed", "--out", "--help"};

    const auto it = allowed.find(a.scenario);
    if (it == allowed.end()) {
        throw UsageError("unknown scenario '" + a.scenario + "' (spring, pair, ferris, nonortho)");
    }
    for (const CLI::Option* opt : cmd.get_options()) {
        if (opt->count() == 0 || opt->get_positional()) {
            continue;
        }
        const std::string lname = "--" + opt->get_lnames().front();
        if (!common.contains(lname) && !it->second.contains(lname)) {
            throw UsageError(lname + " does not apply to scenario '" + a.scenario + "'");
        }
    }
    if (!a.seed) {
        throw UsageError("simulate requires --seed");
    }

    std::optional<Dataset> data;
    if (a.scenario == "spring") {
        SpringConfig cfg;
        cfg.amplitude = a.amplitude;
        cfg.frequency = a.frequency;
        cfg.sample_rate = a.rate;
        cfg.duration = a.duration;
        cfg.seed = *a.seed;
        cfg.noise_sigma = cmd.count("--noise") > 0 ? a.noise : spring_noise_sigma_for_snr(cfg, a.snr);
        data = generate_spring(cfg);
        err << "noise sigma: " << format_number(cfg.noise_sigma) << '\n';
        err << "motion axis (world): " << format_number(cfg.motion_axis[0]) << ' '
            << format_number(cfg.motion_axis[1]) << ' ' << format_number(cfg.motion_axis[2])
            << '\n';
        err << "motion direction (measurement space):";
        for (double v : spring_signal_direction(cfg)) {
            err << ' ' << format_number(v);
        }
        err << '\n';
    } else if (a.scenario == "pair") {
        data = generate_correlated_pair(a.rho, a.n, *a.seed);
    } else {
        FailureConfig cfg;
        cfg.kind = a.scenario == "ferris" ? FailureKind::ferris_wheel : FailureKind::non_orthogonal;
        cfg.radius = a.radius;
        cfg.axis1_deg = a.angle1;
        cfg.axis2_deg = a.angle2;
        cfg.weight1 = a.weight;
        cfg.n = a.n;
        cfg.noise_sigma = a.noise;
        cfg.seed = *a.seed;
        data = generate_failure(cfg);
    }

    write_dataset_csv(a.out, *data);
    err << "wrote " << a.out << ": m = " << data->m() << ", n = " << data->n() << '\n';
}

// ----------------------------------------------------------------- analyze

struct AnalyzeArgs {
    std::string in;
    std::string route = "eigen";
    std::string norm = "n";
    std::string out;
    std::string model_out;
    std::string rows = "samples";
};

struct Agreement {
    double max_variance_delta = 0.0;
    double max_component_delta = 0.0;
    std::size_t rows_compared = 0;
};

// Variance gaps below this (relative to the largest variance) make a
// component non-unique, so it is left out of the vector comparison.
constexpr double kDegenerateGap = 1e-6;

Agreement compare_routes(const PcaModel& a, const PcaModel& b) {
    Agreement out;
    const std::size_t m = a.m();
    const double top = std::max(a.variances[0], 1e-300);
    for (std::size_t i = 0; i < m; ++i) {
        out.max_variance_delta =
            std::max(out.max_variance_delta, std::abs(a.variances[i] - b.variances[i]) / top);
    }
    for (std::size_t i = 0; i < m; ++i) {
        const bool separated_above =
            i == 0 || a.variances[i - 1] - a.variances[i] > kDegenerateGap * top;
        const bool separated_below =
            i + 1 == m || a.variances[i] - a.variances[i + 1] > kDegenerateGap * top;
        if (!separated_above || !separated_below) {
            continue;
        }
        const Vector p = a.components.row(i);
        const Vector q = b.components.row(i);
        const double s = dot(p, q) >= 0.0 ? 1.0 : -1.0;
        for (std::size_t j = 0; j < m; ++j) {
            out.max_component_delta = std::max(out.max_component_delta, std::abs(p[j] - s * q[j]));
        }
        ++out.rows_compared;
    }
    return out;
}

nlohmann::json diagnostics(const PcaModel& model, const Dataset& d) {
    const Centered centered = center(d);
    const Matrix c = covariance_matrix(centered.data, model.normalization);
    const Matrix cy = multiply(multiply(model.components, c), transpose(model.components));
    double off2 = 0.0;
    double off_max = 0.0;
    for (std::size_t i = 0; i < cy.rows(); ++i) {
        for (std::size_t j = 0; j < cy.cols(); ++j) {
            if (i != j) {
                off2 += cy(i, j) * cy(i, j);
                off_max = std::max(off_max, std::abs(cy(i, j)));
            }
        }
    }
    return {{"covariance_offdiag_norm", std::sqrt(off2)},
            {"covariance_offdiag_max", off_max},
            {"covariance_trace", trace(cy)}};
}

void run_analyze(const AnalyzeArgs& a, std::ostream& err) {
    const auto start = std::chrono::steady_clock::now();
    const Dataset d = read_dataset_csv(a.in, parse_orientation(a.rows));
    const Normalization norm = parse_normalization(a.norm);

    nlohmann::json report;
    report["version"] = kModelVersion;
    report["dataset"] = {{"m", d.m()}, {"n", d.n()}, {"names", d.names()}};

    std::optional<PcaModel> primary;
    nlohmann::json agreement;
    if (a.route == "both") {
        const PcaModel e = fit_eigen(d, norm);
        const PcaModel s = fit_svd(d, norm);
        const Agreement ag = compare_routes(e, s);
        report["models"] = {{"eigen", model_to_json(e)}, {"svd", model_to_json(s)}};
        agreement = {{"max_variance_delta", ag.max_variance_delta},
                     {"max_component_delta", ag.max_component_delta},
                     {"rows_compared", ag.rows_compared}};
        err << "route agreement: variance delta " << format_number(ag.max_variance_delta)
            << ", component delta " << format_number(ag.max_component_delta) << '\n';
        primary = e;
    } else {
        primary = fit(d, parse_route(a.route), norm);
    }

    const Vector ratios = explained_variance_ratio(*primary);
    report["model"] = model_to_json(*primary);
    report["explained_variance_ratio"] = ratios;
    report["diagnostics"] = diagnostics(*primary, d);
    if (!agreement.is_null()) {
        report["diagnostics"]["route_agreement"] = agreement;
    }
    const auto elapsed = std::chrono::steady_clock::now() - start;
    report["timing_ms"] = std::chrono::duration<double, std::milli>(elapsed).count();

    write_json(a.out, report);
    if (!a.model_out.empty()) {
        write_json(a.model_out, model_to_json(*primary));
    }
    err << "analyzed m = " << d.m() << ", n = " << d.n() << ", route " << a.route
        << ", PC1 explains " << format_number(ratios[0]) << " of the variance\n";
}

// ----------------------------------------------------- project/reconstruct

struct ProjectArgs {
    std::string in;
    std::string model;
    std::optional<std::size_t> k;
    std::string out;
    bool reconstruct = false;
    std::string rows = "samples";
};

void require_matching(const PcaModel& model, const Dataset& d) {
    if (model.m() != d.m()) {
        throw DimensionError("model has m = " + std::to_string(model.m()) + " measurements, data has m = " +
                             std::to_string(d.m()));
    }
}

std::vector<std::string> component_names(std::size_t k) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < k; ++i) {
        names.push_back("pc" + std::to_string(i + 1));
    }
    return names;
}

void run_project(const ProjectArgs& a, std::ostream& err) {
    const PcaModel model = read_model(a.model);
    const Dataset d = read_dataset_csv(a.in, parse_orientation(a.rows));
    require_matching(model, d);
    const std::size_t k = a.k.value_or(model.m());
    if (k > model.m()) {
        throw UsageError("--k " + std::to_string(k) + " exceeds m = " + std::to_string(model.m()));
    }
    const Matrix y = project(model, d);
    auto out = open_output(a.out);
    if (a.reconstruct) {
        write_csv(out, model.names, reconstruct(model, y, k));
        err << "wrote rank-" << k << " reconstruction of " << d.n() << " samples to " << a.out << '\n';
        return;
    }
    if (k == 0) {
        throw UsageError("--k 0 leaves nothing to write without --reconstruct");
    }
    std::vector<double> first(y.entries().begin(),
                              y.entries().begin() + static_cast<std::ptrdiff_t>(k * y.cols()));
    write_csv(out, component_names(k), Matrix(k, y.cols(), std::move(first)));
    err << "wrote " << k << " components of " << d.n() << " samples to " << a.out << '\n';
}

struct ReconstructArgs {
    std::string in;
    std::string model;
    std::string out;
};

void run_reconstruct(const ReconstructArgs& a, std::ostream& err) {
    const PcaModel model = read_model(a.model);
    // Projected files carry pc1..pck headers; parse them as a dataset.
    const Dataset y = read_dataset_csv(a.in);
    const std::size_t k = y.m();
    if (k > model.m()) {
        throw DimensionError("projection has " + std::to_string(k) + " components, model has m = " +
                             std::to_string(model.m()));
    }
    auto out = open_output(a.out);
    write_csv(out, model.names, reconstruct(model, y.data(), k));
    err << "wrote rank-" << k << " reconstruction of " << y.n() << " samples to " << a.out << '\n';
}

// ---------------------------------------------------------------- plotdata

struct PlotArgs {
    std::string in;
    std::string model;
    std::string out;
    std::string rows = "samples";
};

void run_plotdata(const PlotArgs& a, std::ostream& err) {
    const PcaModel model = read_model(a.model);
    const Dataset d = read_dataset_csv(a.in, parse_orientation(a.rows));
    require_matching(model, d);
    const std::size_t m = d.m();
    std::vector<std::string> written;

    // Consecutive measurement pairs are one camera's image coordinates.
    for (std::size_t c = 0; c * 2 < m; ++c) {
        const std::size_t first = 2 * c;
        const bool pair = first + 1 < m;
        const std::string path = a.out + "_scatter" + std::to_string(c + 1) + ".dat";
        auto out = open_output(path);
        out << "# " << d.names()[first];
        if (pair) {
            out << ' ' << d.names()[first + 1];
        }
        out << '\n';
        for (std::size_t j = 0; j < d.n(); ++j) {
            out << format_number(d.data()(first, j));
            if (pair) {
                out << ' ' << format_number(d.data()(first + 1, j));
            }
            out << '\n';
        }
        written.push_back(path);
    }

    {
        const Vector ratios = explained_variance_ratio(model);
        const std::string path = a.out + "_scree.dat";
        auto out = open_output(path);
        out << "# component variance ratio cumulative\n";
        double cumulative = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            cumulative += ratios[i];
            out << i + 1 << ' ' << format_number(model.variances[i]) << ' '
                << format_number(ratios[i]) << ' ' << format_number(cumulative) << '\n';
        }
        written.push_back(path);
    }

    {
        const std::string path = a.out + "_pcs.dat";
        auto out = open_output(path);
        out << "# mean";
        for (double v : model.mean) {
            out << ' ' << format_number(v);
        }
        out << "\n# component stddev";
        for (const auto& name : model.names) {
            out << ' ' << name;
        }
        out << '\n';
        for (std::size_t i = 0; i < m; ++i) {
            out << i + 1 << ' ' << format_number(std::sqrt(model.variances[i]));
            for (std::size_t j = 0; j < m; ++j) {
                out << ' ' << format_number(model.components(i, j));
            }
            out << '\n';
        }
        written.push_back(path);
    }

    for (const auto& path : written) {
        err << "wrote " << path << '\n';
    }
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"PCA toolkit: simulate datasets, fit principal components, project and "
                 "reconstruct"};
    app.name("pcakit");
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Write a synthetic dataset as CSV");
    simulate->add_option("scenario", sim.scenario, "spring | pair | ferris | nonortho")->required();
    simulate->add_option("--seed", sim.seed, "Random seed (required)");
    simulate->add_option("--out", sim.out, "Output CSV")->required();
    simulate->add_option("--amplitude", sim.amplitude, "spring: oscillation amplitude");
    simulate->add_option("--frequency", sim.frequency, "spring: oscillation frequency [Hz]");
    simulate->add_option("--rate", sim.rate, "spring: camera frame rate [Hz]");
    simulate->add_option("--duration", sim.duration, "spring: recording length [s]");
    auto* noise = simulate->add_option("--noise", sim.noise, "Gaussian noise std per coordinate");
    simulate->add_option("--snr", sim.snr, "spring: target SNR when --noise is absent")
        ->excludes(noise);
    simulate->add_option("--rho", sim.rho, "pair: correlation");
    simulate->add_option("--n", sim.n, "pair/ferris/nonortho: sample count");
    simulate->add_option("--radius", sim.radius, "ferris: wheel radius");
    simulate->add_option("--angle1", sim.angle1, "nonortho: first axis angle [deg]");
    simulate->add_option("--angle2", sim.angle2, "nonortho: second axis angle [deg]");
    simulate->add_option("--weight", sim.weight, "nonortho: share of samples on the first axis");

    AnalyzeArgs an;
    auto* analyze = app.add_subcommand("analyze", "Fit PCA to a CSV dataset and write a report");
    analyze->add_option("--in", an.in, "Input CSV")->required();
    analyze->add_option("--route", an.route, "eigen | svd | both")
        ->check(CLI::IsMember({"eigen", "svd", "both"}));
    analyze->add_option("--norm", an.norm, "n (population) | n-1 (sample)")
        ->check(CLI::IsMember({"n", "n-1"}));
    analyze->add_option("--out", an.out, "Report JSON")->required();
    analyze->add_option("--model-out", an.model_out, "Also write the bare model JSON here");
    analyze->add_option("--rows", an.rows, "samples | measurements")
        ->check(CLI::IsMember({"samples", "measurements"}));

    ProjectArgs pr;
    auto* projectc = app.add_subcommand("project", "Project a dataset onto a fitted model");
    projectc->add_option("--in", pr.in, "Input CSV")->required();
    projectc->add_option("--model", pr.model, "Model or report JSON")->required();
    projectc->add_option("--k", pr.k, "Number of components (default m)");
    projectc->add_option("--out", pr.out, "Output CSV")->required();
    projectc->add_flag("--reconstruct", pr.reconstruct, "Write the rank-k reconstruction instead");
    projectc->add_option("--rows", pr.rows, "samples | measurements")
        ->check(CLI::IsMember({"samples", "measurements"}));

    ReconstructArgs re;
    auto* reconstructc =
        app.add_subcommand("reconstruct", "Map projected coordinates back to measurements");
    reconstructc->add_option("--in", re.in, "Projected CSV (pc1..pck columns)")->required();
    reconstructc->add_option("--model", re.model, "Model or report JSON")->required();
    reconstructc->add_option("--out", re.out, "Output CSV")->required();

    PlotArgs pl;
    auto* plotdata = app.add_subcommand("plotdata", "Write plot-ready scatter, scree and PC files");
    plotdata->add_option("--in", pl.in, "Input CSV")->required();
    plotdata->add_option("--model", pl.model, "Model or report JSON")->required();
    plotdata->add_option("--out", pl.out, "Output path prefix")->required();
    plotdata->add_option("--rows", pl.rows, "samples | measurements")
        ->check(CLI::IsMember({"samples", "measurements"}));

    std::vector<const char*> argv{"pcakit"};
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kSuccess;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (*simulate) {
            run_simulate(sim, *simulate, err);
        } else if (*analyze) {
            run_analyze(an, err);
        } else if (*projectc) {
            run_project(pr, err);
        } else if (*reconstructc) {
            run_reconstruct(re, err);
        } else if (*plotdata) {
            run_plotdata(pl, err);
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kNumericalFailure;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    }
    return kSuccess;
}

} // namespace pcakit::cli
