#include "lw/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "lw/bandwidth.hpp"
#include "lw/diagnostics.hpp"
#include "lw/mc.hpp"
#include "lw/series.hpp"
#include "lw/simulate.hpp"

namespace lw::cli {

namespace {

using nlohmann::json;

struct InputOptions {
    std::string path = "-";
    std::string column;
    bool no_header = false;
    bool take_log = false;
    bool take_diff = false;
};

void add_input_options(CLI::App* cmd, InputOptions* opt) {
    cmd->add_option("--input", opt->path, "CSV file path, or - for standard input");
    cmd->add_option("--column", opt->column, "column name or 1-based index");
    cmd->add_flag("--no-header", opt->no_header, "treat the first row as data");
    cmd->add_flag("--log", opt->take_log, "apply natural log before estimation");
    cmd->add_flag("--diff", opt->take_diff, "apply first differences before estimation");
}

TimeSeries read_input(const InputOptions& opt, std::istream& in) {
    const HasHeader header = opt.no_header ? HasHeader::no : HasHeader::detect;
    TimeSeries x = (opt.path == "-") ? load_csv(in, opt.column, header, "<stdin>")
                                     : load_csv(opt.path, opt.column, header);
    if (opt.take_log) x = transform(x, TransformKind::log);
    if (opt.take_diff) x = transform(x, TransformKind::diff);
    return x;
}

struct BandwidthOptions {
    std::size_t m = 0;        // 0 = unset
    double alpha = 0.65;
    bool alpha_set = false;
    bool boot = false;
    std::size_t boot_B = 200;
    std::size_t boot_kn = 0;
};

void add_bandwidth_options(CLI::App* cmd, BandwidthOptions* opt) {
    cmd->add_option("--m", opt->m, "fixed bandwidth (number of frequencies)");
    cmd->add_option("--alpha", opt->alpha, "power rule m = floor(n^alpha); default 0.65")
        ->check(CLI::Range(0.01, 0.99))
        ->each([opt](const std::string&) { opt->alpha_set = true; });
    cmd->add_flag("--boot", opt->boot, "pick m by bootstrap MSE minimization");
    cmd->add_option("--boot-B", opt->boot_B, "bootstrap replications (default 200)");
    cmd->add_option("--boot-kn", opt->boot_kn, "bootstrap resampling width (default n/33)");
}

std::size_t resolve_bandwidth(const BandwidthOptions& opt, const TimeSeries& x,
                              std::uint64_t seed, std::vector<std::string>* notes) {
    int picked = (opt.m > 0) + opt.alpha_set + opt.boot;
    if (picked > 1)
        throw CLI::ValidationError("--m, --alpha, and --boot are mutually exclusive");
    if (opt.m > 0) return resolve(BandwidthRule::fixed(opt.m), x.size(), notes);
    if (opt.boot)
        return resolve(BandwidthRule::bootstrap(opt.boot_B, opt.boot_kn), x, seed, notes);
    return resolve(BandwidthRule::power_floor(opt.alpha), x.size(), notes);
}

std::pair<double, double> parse_bounds(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw CLI::ValidationError("--bounds expects LO,HI");
    try {
        return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
    } catch (const std::exception&) {
        throw CLI::ValidationError("--bounds expects numeric LO,HI");
    }
}

MeanCorrection parse_demean(const std::string& text) {
    if (text == "none") return MeanCorrection::none;
    if (text == "sample") return MeanCorrection::sample;
    if (text == "first") return MeanCorrection::first;
    throw CLI::ValidationError("--demean must be none, sample, or first");
}

TrendSpec parse_trend(const std::string& text) {
    TrendSpec t;
    if (text == "none" || text == "adaptive") return t;
    try {
        std::size_t pos = 0;
        const int k = std::stoi(text, &pos);
        if (pos != text.size() || k < 0) throw std::invalid_argument("");
        t.detrend = true;
        t.degree = k;
        return t;
    } catch (const std::exception&) {
        throw CLI::ValidationError("--trend must be none, adaptive, or a polynomial degree");
    }
}

json result_to_json(const EstimateResult& r) {
    json j;
    j["method"] = r.method;
    j["d_hat"] = r.d_hat;
    j["se"] = r.se;
    j["m"] = r.m;
    j["n"] = r.n;
    j["objective_at_min"] = r.objective_at_min;
    j["converged"] = r.converged;
    if (r.first_step_d) j["first_step_d"] = *r.first_step_d;
    if (r.mean_estimate) j["mean_estimate"] = *r.mean_estimate;
    j["notes"] = r.notes;
    return j;
}

void print_result_table(std::ostream& out, const std::vector<EstimateResult>& results) {
    out << std::left << std::setw(22) << "method" << std::right << std::setw(10) << "d_hat"
        << std::setw(10) << "se" << std::setw(7) << "m" << std::setw(8) << "n" << "  notes\n";
    for (const auto& r : results) {
        out << std::left << std::setw(22) << r.method << std::right << std::fixed
            << std::setprecision(4) << std::setw(10) << r.d_hat << std::setw(10) << r.se
            << std::setw(7) << r.m << std::setw(8) << r.n << "  ";
        for (std::size_t i = 0; i < r.notes.size(); ++i)
            out << (i ? "; " : "") << r.notes[i];
        out << "\n";
    }
    out.unsetf(std::ios::fixed);
}

void print_result_csv(std::ostream& out, const std::vector<EstimateResult>& results) {
    out << "method,d_hat,se,m,n,objective,converged,notes\n" << std::setprecision(17);
    for (const auto& r : results) {
        std::string notes;
        for (std::size_t i = 0; i < r.notes.size(); ++i) notes += (i ? "; " : "") + r.notes[i];
        out << r.method << ',' << r.d_hat << ',' << r.se << ',' << r.m << ',' << r.n << ','
            << r.objective_at_min << ',' << (r.converged ? 1 : 0) << ",\"" << notes << "\"\n";
    }
}

EstimatorSpec build_spec(const std::string& method_text, const std::string& taper_text,
                         const std::optional<std::string>& bounds_text,
                         const std::string& demean_text, const std::string& trend_text,
                         const std::string& first_step_text) {
    EstimatorSpec spec = make_spec(method_from_name(method_text), 2);
    spec.taper = taper_from_name(taper_text);
    if (spec.taper == TaperKind::hurvich_chen || spec.taper == TaperKind::none)
        throw CLI::ValidationError("--taper must be bartlett, cosine, or kolmogorov");
    if (bounds_text) {
        auto [lo, hi] = parse_bounds(*bounds_text);
        spec.lower = lo;
        spec.upper = hi;
        if (!(lo < hi)) throw CLI::ValidationError("--bounds must satisfy LO < HI");
        if ((spec.method == Method::elw || spec.method == Method::two_step_elw) &&
            hi - lo >= 4.5)
            throw CLI::ValidationError(
                "--bounds: the exact local Whittle search interval must be narrower than 4.5");
    }
    spec.mean_correction = parse_demean(demean_text);
    spec.trend = parse_trend(trend_text);
    spec.first_step = (first_step_text == "velasco") ? Method::velasco : Method::hc;
    if (first_step_text != "hc" && first_step_text != "velasco")
        throw CLI::ValidationError("--first-step must be hc or velasco");
    spec.first_step_taper = spec.taper;
    return spec;
}

int cmd_estimate(const InputOptions& in_opt, const BandwidthOptions& bw_opt,
                 const std::string& method_text, const std::string& taper_text,
                 const std::optional<std::string>& bounds_text, const std::string& demean_text,
                 const std::string& trend_text, const std::string& first_step_text,
                 std::uint64_t seed, const std::string& format, std::istream& in,
                 std::ostream& out) {
    // Validate every flag combination before touching the input.
    std::vector<EstimatorSpec> specs;
    if (method_text == "all") {
        for (Method method :
             {Method::lw, Method::velasco, Method::hc, Method::elw, Method::two_step_elw})
            specs.push_back(build_spec(method_name(method), taper_text, bounds_text, demean_text,
                                       trend_text, first_step_text));
    } else {
        specs.push_back(build_spec(method_text, taper_text, bounds_text, demean_text, trend_text,
                                   first_step_text));
    }
    if (format != "table" && format != "json" && format != "csv")
        throw CLI::ValidationError("--format must be table, json, or csv");

    const TimeSeries x = read_input(in_opt, in);
    std::vector<std::string> bw_notes;
    const std::size_t m = resolve_bandwidth(bw_opt, x, seed, &bw_notes);

    std::vector<EstimateResult> results;
    for (EstimatorSpec& spec : specs) {
        spec.m = m;
        results.push_back(estimate(x, spec));
    }
    for (auto& r : results)
        r.notes.insert(r.notes.end(), bw_notes.begin(), bw_notes.end());
    const auto note = disagreement_note(results);

    if (format == "json") {
        json j;
        j["input"] = {{"n", x.size()}, {"name", x.name}, {"origin", x.origin}};
        j["results"] = json::array();
        for (const auto& r : results) j["results"].push_back(result_to_json(r));
        if (note) j["disagreement_note"] = *note;
        out << j.dump(2) << "\n";
    } else if (format == "csv") {
        print_result_csv(out, results);
    } else {
        print_result_table(out, results);
        if (note) out << *note << "\n";
    }
    return 0;
}

int cmd_profile(const InputOptions& in_opt, const BandwidthOptions& bw_opt,
                const std::string& method_text, const std::string& taper_text,
                const std::optional<std::string>& bounds_text, const std::string& demean_text,
                const std::string& trend_text, const std::string& first_step_text,
                const std::string& grid_text, std::uint64_t seed, std::istream& in,
                std::ostream& out) {
    EstimatorSpec spec = build_spec(method_text, taper_text, bounds_text, demean_text,
                                    trend_text, first_step_text);
    double lo, hi, step = 0.01;
    {
        std::istringstream ss(grid_text);
        char c1 = 0, c2 = 0;
        if (!(ss >> lo >> c1 >> hi >> c2 >> step) || c1 != ',' || c2 != ',')
            throw CLI::ValidationError("--grid expects LO,HI,STEP");
    }
    const TimeSeries x = read_input(in_opt, in);
    spec.m = resolve_bandwidth(bw_opt, x, seed, nullptr);
    const ObjectiveProfile prof = profile(x, spec, lo, hi, step);

    out << "d,objective,is_local_min\n" << std::setprecision(17);
    for (std::size_t i = 0; i < prof.grid.size(); ++i) {
        const bool is_min =
            std::find(prof.minima.begin(), prof.minima.end(), i) != prof.minima.end();
        out << prof.grid[i].first << ',' << prof.grid[i].second << ',' << (is_min ? 1 : 0)
            << "\n";
    }
    return 0;
}

int cmd_simulate(const SimSpec& spec, std::ostream& out) {
    const TimeSeries x = arfima(spec);
    TimeSeries named = x;
    named.name = "value";
    save_csv(named, out);
    return 0;
}

int cmd_scan(const InputOptions& in_opt, const std::string& method_text,
             const std::string& taper_text, const std::optional<std::string>& bounds_text,
             const std::string& demean_text, const std::string& trend_text,
             const std::string& first_step_text, const std::string& range_text, std::istream& in,
             std::ostream& out) {
    EstimatorSpec spec = build_spec(method_text, taper_text, bounds_text, demean_text,
                                    trend_text, first_step_text);
    std::size_t lo, hi, step = 1;
    {
        std::istringstream ss(range_text);
        char c1 = 0, c2 = 0;
        if (!(ss >> lo >> c1 >> hi >> c2 >> step) || c1 != ',' || c2 != ',')
            throw CLI::ValidationError("--m-range expects LO,HI,STEP");
    }
    const TimeSeries x = read_input(in_opt, in);
    const auto rows = scan(x, spec, lo, hi, step);
    out << "m,d_hat,se,error\n" << std::setprecision(17);
    for (const auto& row : rows) {
        out << row.m << ',';
        if (row.result)
            out << row.result->d_hat << ',' << row.result->se << ",";
        else
            out << ",,\"" << row.error << "\"";
        out << "\n";
    }
    return 0;
}

int cmd_boot(const InputOptions& in_opt, std::size_t B, std::size_t k_n,
             const std::string& grid_text, std::uint64_t seed, std::istream& in,
             std::ostream& out) {
    const TimeSeries x = read_input(in_opt, in);
    std::vector<std::size_t> grid;
    if (!grid_text.empty()) {
        std::istringstream ss(grid_text);
        std::string tok;
        while (std::getline(ss, tok, ',')) grid.push_back(std::stoul(tok));
    } else {
        grid = default_bootstrap_grid(x.size());
    }
    if (k_n == 0) k_n = default_bootstrap_width(x.size());
    const BootstrapMseCurve curve = bootstrap_select(x, B, k_n, grid, seed);
    out << "m,mse\n" << std::setprecision(17);
    for (std::size_t i = 0; i < curve.candidates.size(); ++i)
        out << curve.candidates[i] << ',' << curve.mse[i] << "\n";
    out << "# m_star = " << curve.m_star << "\n";
    out << "# pilot_d = " << curve.pilot_d << " (m0 = " << curve.pilot_m << ")\n";
    return 0;
}

BandwidthRule bandwidth_rule_from_json(const json& j) {
    if (j.contains("m")) return BandwidthRule::fixed(j.at("m").get<std::size_t>());
    const double alpha = j.value("alpha", 0.65);
    if (j.value("rule", "floor") == "round") return BandwidthRule::power_round(alpha);
    return BandwidthRule::power_floor(alpha);
}

MCEstimator estimator_from_json(const json& j) {
    MCEstimator est;
    est.spec = make_spec(method_from_name(j.at("method").get<std::string>()), 2);
    est.label = j.value("label", "");
    if (j.contains("taper")) est.spec.taper = taper_from_name(j.at("taper").get<std::string>());
    if (j.contains("bounds")) {
        est.spec.lower = j.at("bounds").at(0).get<double>();
        est.spec.upper = j.at("bounds").at(1).get<double>();
    }
    if (j.contains("demean")) est.spec.mean_correction = parse_demean(j.at("demean"));
    if (j.contains("trend")) {
        const auto& t = j.at("trend");
        if (t.is_number_integer()) {
            est.spec.trend.detrend = true;
            est.spec.trend.degree = t.get<int>();
        } else {
            est.spec.trend = parse_trend(t.get<std::string>());
        }
    }
    if (j.contains("first_step"))
        est.spec.first_step = method_from_name(j.at("first_step").get<std::string>());
    if (j.contains("first_step_taper"))
        est.spec.first_step_taper = taper_from_name(j.at("first_step_taper").get<std::string>());
    est.bandwidth = bandwidth_rule_from_json(j);
    return est;
}

int cmd_mc(const std::string& config_path, const std::string& format, unsigned workers,
           std::istream& in, std::ostream& out) {
    json j;
    if (config_path == "-") {
        in >> j;
    } else {
        std::ifstream f(config_path);
        if (!f) throw std::invalid_argument("mc: cannot open config '" + config_path + "'");
        f >> j;
    }
    MCConfig config;
    config.n = j.at("n").get<std::size_t>();
    config.reps = j.at("reps").get<std::size_t>();
    config.seed = j.value("seed", 0ULL);
    config.sigma = j.value("sigma", 1.0);
    config.d_values = j.value("d_values", std::vector<double>{0.0});
    config.rho_values = j.value("rho_values", std::vector<double>{0.0});
    config.mu_values = j.value("mu_values", std::vector<double>{0.0});
    config.beta_values = j.value("beta_values", std::vector<double>{0.0});
    for (const auto& e : j.at("estimators")) config.estimators.push_back(estimator_from_json(e));
    config.workers = workers ? workers : j.value("workers", 0U);

    const MCSummary summary = run(config);
    if (format == "csv")
        out << render_csv(summary);
    else
        out << render_table(summary);
    return 0;
}

int cmd_breaks(const InputOptions& in_opt, std::size_t max_breaks, double min_len_frac,
               const std::string& method_text, const std::string& taper_text,
               const BandwidthOptions& bw_opt, const std::string& format, std::istream& in,
               std::ostream& out) {
    const TimeSeries x = read_input(in_opt, in);
    const BreakModel model = detect_mean_breaks(x, max_breaks, min_len_frac);

    EstimatorSpec spec = build_spec(method_text, taper_text, std::nullopt, "none", "none", "hc");
    BandwidthRule rule = bw_opt.m > 0 ? BandwidthRule::fixed(bw_opt.m)
                                      : BandwidthRule::power_floor(bw_opt.alpha);
    const auto rows = subsample_estimates(x, model, spec, rule);

    if (format == "json") {
        json j;
        j["break_indices"] = model.break_indices;
        j["segment_means"] = model.segment_means;
        j["ssr"] = model.ssr;
        j["bic"] = model.criterion;
        j["segments"] = json::array();
        for (const auto& row : rows) {
            json r;
            r["label"] = row.label;
            r["start"] = row.start;
            r["end"] = row.end;
            r["n"] = row.n;
            r["m"] = row.m;
            r["mean"] = row.mean;
            if (row.result) r["estimate"] = result_to_json(*row.result);
            if (!row.error.empty()) r["error"] = row.error;
            j["segments"].push_back(r);
        }
        out << j.dump(2) << "\n";
        return 0;
    }

    out << "segment,start,end,n,mean\n" << std::setprecision(17);
    out << "full,1," << x.size() << ',' << x.size() << ',' << rows[0].mean << "\n";
    for (std::size_t i = 1; i < rows.size(); ++i)
        out << i << ',' << rows[i].start << ',' << rows[i].end << ',' << rows[i].n << ','
            << rows[i].mean << "\n";
    out << "\n";
    out << std::left << std::setw(12) << "segment" << std::right << std::setw(7) << "n"
        << std::setw(6) << "m" << std::setw(10) << "d_hat" << std::setw(10) << "se"
        << "  error\n";
    for (const auto& row : rows) {
        out << std::left << std::setw(12) << row.label << std::right << std::setw(7) << row.n
            << std::setw(6) << row.m;
        if (row.result)
            out << std::fixed << std::setprecision(4) << std::setw(10) << row.result->d_hat
                << std::setw(10) << row.result->se << "  ";
        else
            out << std::setw(10) << "-" << std::setw(10) << "-" << "  " << row.error;
        out << "\n";
        out.unsetf(std::ios::fixed);
    }
    return 0;
}

int cmd_qu(const InputOptions& in_opt, const BandwidthOptions& bw_opt, double epsilon,
           std::optional<double> critical, std::uint64_t seed, const std::string& format,
           std::istream& in, std::ostream& out) {
    const TimeSeries x = read_input(in_opt, in);
    const std::size_t m = resolve_bandwidth(bw_opt, x, seed, nullptr);
    const QuResult r = qu_test(x, m, epsilon, critical);
    if (format == "json") {
        json j;
        j["W"] = r.W;
        j["epsilon"] = r.epsilon;
        j["critical_10pct"] = r.critical_10pct;
        j["reject_10pct"] = r.reject_10pct;
        j["d_hat"] = r.d_hat;
        j["m"] = r.m;
        out << j.dump(2) << "\n";
    } else {
        out << std::fixed << std::setprecision(3);
        out << "W = " << r.W << "  (10% critical value " << r.critical_10pct << ", epsilon "
            << r.epsilon << ", m = " << r.m << ", d_hat = " << r.d_hat << ")\n";
        out << (r.reject_10pct ? "reject" : "fail to reject")
            << " the null of true fractional integration at the 10% level\n";
        out.unsetf(std::ios::fixed);
    }
    return 0;
}

}  // namespace

std::optional<std::string> disagreement_note(const std::vector<EstimateResult>& results) {
    if (results.size() < 2) return std::nullopt;
    double lo = results[0].d_hat, hi = results[0].d_hat, max_se = results[0].se;
    for (const auto& r : results) {
        lo = std::min(lo, r.d_hat);
        hi = std::max(hi, r.d_hat);
        max_se = std::max(max_se, r.se);
    }
    if (hi - lo <= 2.0 * max_se) return std::nullopt;
    std::ostringstream note;
    note << std::fixed << std::setprecision(3);
    note << "note: estimates span [" << lo << ", " << hi << "], more than twice the largest "
         << "standard error (" << max_se << "); consider mean/trend contamination, structural "
         << "breaks, or a bandwidth sensitivity scan";
    return note.str();
}

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"local Whittle estimation of the long-memory parameter d"};
    app.require_subcommand(1);

    // ---- estimate ----
    InputOptions est_in;
    BandwidthOptions est_bw;
    std::string est_method = "lw", est_taper = "kolmogorov", est_demean = "none",
                est_trend = "adaptive", est_first = "hc", est_format = "table";
    std::optional<std::string> est_bounds;
    std::uint64_t est_seed = 0;
    auto* est = app.add_subcommand("estimate", "estimate d from a series");
    add_input_options(est, &est_in);
    add_bandwidth_options(est, &est_bw);
    est->add_option("--method", est_method, "lw|velasco|hc|elw|2elw|all");
    est->add_option("--taper", est_taper, "velasco taper: bartlett|cosine|kolmogorov");
    est->add_option("--bounds", est_bounds, "optimization bounds LO,HI");
    est->add_option("--demean", est_demean, "elw mean correction: none|sample|first");
    est->add_option("--trend", est_trend, "2elw trend handling: none|adaptive|degree K");
    est->add_option("--first-step", est_first, "2elw first step: hc|velasco");
    est->add_option("--seed", est_seed, "seed for --boot bandwidth selection");
    est->add_option("--format", est_format, "table|json|csv");

    // ---- profile ----
    InputOptions prof_in;
    BandwidthOptions prof_bw;
    std::string prof_method = "lw", prof_taper = "kolmogorov", prof_demean = "none",
                prof_trend = "adaptive", prof_first = "hc", prof_grid = "-1,2,0.01";
    std::optional<std::string> prof_bounds;
    std::uint64_t prof_seed = 0;
    auto* prof = app.add_subcommand("profile", "objective profile over a d grid (CSV)");
    add_input_options(prof, &prof_in);
    add_bandwidth_options(prof, &prof_bw);
    prof->add_option("--method", prof_method, "lw|velasco|hc|elw|2elw");
    prof->add_option("--taper", prof_taper, "velasco taper");
    prof->add_option("--bounds", prof_bounds, "spec bounds LO,HI");
    prof->add_option("--demean", prof_demean, "elw mean correction");
    prof->add_option("--trend", prof_trend, "2elw trend handling");
    prof->add_option("--first-step", prof_first, "2elw first step");
    prof->add_option("--grid", prof_grid, "profile grid LO,HI,STEP");
    prof->add_option("--seed", prof_seed, "seed for --boot bandwidth selection");

    // ---- simulate ----
    SimSpec sim;
    auto* simc = app.add_subcommand("simulate", "ARFIMA(1,d,0) sample path (CSV)");
    simc->add_option("--n", sim.n, "length");
    simc->add_option("--d", sim.d, "memory parameter");
    simc->add_option("--rho", sim.rho, "AR(1) coefficient");
    simc->add_option("--mu", sim.mu, "level shift");
    simc->add_option("--beta", sim.beta, "linear trend slope");
    simc->add_option("--sigma", sim.sigma, "innovation standard deviation");
    simc->add_option("--seed", sim.seed, "RNG seed");

    // ---- scan-m ----
    InputOptions scan_in;
    std::string scan_method = "lw", scan_taper = "kolmogorov", scan_demean = "none",
                scan_trend = "adaptive", scan_first = "hc", scan_range;
    std::optional<std::string> scan_bounds;
    auto* scanc = app.add_subcommand("scan-m", "bandwidth sensitivity scan (CSV)");
    add_input_options(scanc, &scan_in);
    scanc->add_option("--method", scan_method, "lw|velasco|hc|elw|2elw");
    scanc->add_option("--taper", scan_taper, "velasco taper");
    scanc->add_option("--bounds", scan_bounds, "spec bounds LO,HI");
    scanc->add_option("--demean", scan_demean, "elw mean correction");
    scanc->add_option("--trend", scan_trend, "2elw trend handling");
    scanc->add_option("--first-step", scan_first, "2elw first step");
    scanc->add_option("--m-range", scan_range, "bandwidth range LO,HI,STEP")->required();

    // ---- boot-m ----
    InputOptions boot_in;
    std::size_t boot_B = 200, boot_kn = 0;
    std::string boot_grid;
    std::uint64_t boot_seed = 0;
    auto* bootc = app.add_subcommand("boot-m", "bootstrap MSE bandwidth selection (CSV)");
    add_input_options(bootc, &boot_in);
    bootc->add_option("--B", boot_B, "bootstrap replications");
    bootc->add_option("--kn", boot_kn, "resampling window width (odd)");
    bootc->add_option("--grid", boot_grid, "comma-separated candidate bandwidths");
    bootc->add_option("--seed", boot_seed, "RNG seed");

    // ---- mc ----
    std::string mc_config, mc_format = "table";
    unsigned mc_workers = 0;
    auto* mcc = app.add_subcommand("mc", "Monte Carlo experiment grid from a JSON config");
    mcc->add_option("--config", mc_config, "JSON config path, or - for standard input")
        ->required();
    mcc->add_option("--format", mc_format, "table|csv");
    mcc->add_option("--workers", mc_workers, "worker threads (0 = hardware)");

    // ---- breaks ----
    InputOptions brk_in;
    std::size_t brk_max = 3;
    double brk_frac = 0.15;
    std::string brk_method = "lw", brk_taper = "kolmogorov", brk_format = "table";
    BandwidthOptions brk_bw;
    auto* brk = app.add_subcommand("breaks", "mean-shift break detection + subsample estimates");
    add_input_options(brk, &brk_in);
    brk->add_option("--max-breaks", brk_max, "maximum number of breaks (<= 5)");
    brk->add_option("--min-len-frac", brk_frac, "minimum segment length fraction");
    brk->add_option("--method", brk_method, "estimator for subsample analysis");
    brk->add_option("--taper", brk_taper, "velasco taper");
    brk->add_option("--m", brk_bw.m, "fixed per-segment bandwidth");
    brk->add_option("--alpha", brk_bw.alpha, "per-segment power rule exponent");
    brk->add_option("--format", brk_format, "table|json");

    // ---- qu ----
    InputOptions qu_in;
    BandwidthOptions qu_bw;
    double qu_eps = 0.02;
    std::optional<double> qu_critical;
    std::uint64_t qu_seed = 0;
    std::string qu_format = "table";
    auto* quc = app.add_subcommand("qu", "Qu test of true long memory vs spurious memory");
    add_input_options(quc, &qu_in);
    add_bandwidth_options(quc, &qu_bw);
    quc->add_option("--epsilon", qu_eps, "trimming fraction (default 0.02)");
    quc->add_option("--critical", qu_critical,
                    "critical value (default 1.022, the 10% value for epsilon 0.02)");
    quc->add_option("--seed", qu_seed, "seed for --boot bandwidth selection");
    quc->add_option("--format", qu_format, "table|json");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (est->parsed())
            return cmd_estimate(est_in, est_bw, est_method, est_taper, est_bounds, est_demean,
                                est_trend, est_first, est_seed, est_format, in, out);
        if (prof->parsed())
            return cmd_profile(prof_in, prof_bw, prof_method, prof_taper, prof_bounds,
                               prof_demean, prof_trend, prof_first, prof_grid, prof_seed, in,
                               out);
        if (simc->parsed()) return cmd_simulate(sim, out);
        if (scanc->parsed())
            return cmd_scan(scan_in, scan_method, scan_taper, scan_bounds, scan_demean,
                            scan_trend, scan_first, scan_range, in, out);
        if (bootc->parsed()) return cmd_boot(boot_in, boot_B, boot_kn, boot_grid, boot_seed, in, out);
        if (mcc->parsed()) return cmd_mc(mc_config, mc_format, mc_workers, in, out);
        if (brk->parsed())
            return cmd_breaks(brk_in, brk_max, brk_frac, brk_method, brk_taper, brk_bw,
                              brk_format, in, out);
        if (quc->parsed())
            return cmd_qu(qu_in, qu_bw, qu_eps, qu_critical, qu_seed, qu_format, in, out);
        err << "no subcommand\n";
        return 2;
    } catch (const CLI::ValidationError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace lw::cli
