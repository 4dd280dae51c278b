#include "lw/mc.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "lw/rng.hpp"
#include "lw/simulate.hpp"

namespace lw {

void validate(const MCConfig& config) {
    if (config.reps < 1) throw std::invalid_argument("mc config: reps must be >= 1");
    if (config.d_values.empty() || config.rho_values.empty() || config.mu_values.empty() ||
        config.beta_values.empty())
        throw std::invalid_argument("mc config: parameter grids must be nonempty");
    if (config.estimators.empty()) throw std::invalid_argument("mc config: no estimators");
    if (!(config.sigma > 0.0)) throw std::invalid_argument("mc config: sigma must be > 0");
    for (const auto& est : config.estimators) {
        if (est.bandwidth.kind == BandwidthRule::Kind::bootstrap)
            throw std::invalid_argument(
                "mc config: bootstrap bandwidth selection is not supported inside the Monte "
                "Carlo harness; resolve it on real data instead");
        EstimatorSpec spec = est.spec;
        spec.m = resolve(est.bandwidth, config.n);
        validate(spec, config.n);
    }
    SimSpec sim;
    sim.n = config.n;
    sim.sigma = config.sigma;
    for (double rho : config.rho_values) {
        sim.rho = rho;
        validate(sim);
    }
}

namespace {

std::vector<MCCell> build_cells(const MCConfig& c) {
    std::vector<MCCell> cells;
    for (double d : c.d_values)
        for (double rho : c.rho_values)
            for (double mu : c.mu_values)
                for (double beta : c.beta_values) cells.push_back({d, rho, mu, beta});
    return cells;
}

}  // namespace

MCSummary run(const MCConfig& config) {
    validate(config);
    const std::vector<MCCell> cells = build_cells(config);
    const std::size_t E = config.estimators.size();
    const std::size_t R = config.reps;

    std::vector<EstimatorSpec> specs;
    specs.reserve(E);
    for (const auto& est : config.estimators) {
        EstimatorSpec spec = est.spec;
        spec.m = resolve(est.bandwidth, config.n);
        specs.push_back(spec);
    }

    unsigned workers = config.workers ? config.workers : std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, R));

    MCSummary summary;
    summary.reps = R;

    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> draws(R * E);  // d_hat per (rep, estimator); NaN = failure

    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        const MCCell cell = cells[ci];
        std::fill(draws.begin(), draws.end(), nan);

        // Replications are independent given their keyed seeds, so threads
        // fill disjoint slices and the reduction below stays sequential;
        // the summary is bit-identical for any worker count.
        auto worker = [&](std::size_t first, std::size_t last) {
            SimSpec sim;
            sim.n = config.n;
            sim.d = cell.d;
            sim.rho = cell.rho;
            sim.mu = cell.mu;
            sim.beta = cell.beta;
            sim.sigma = config.sigma;
            for (std::size_t r = first; r < last; ++r) {
                sim.seed = mix_keys(config.seed, ci, r);
                const TimeSeries x = arfima(sim);
                for (std::size_t e = 0; e < E; ++e) {
                    try {
                        draws[r * E + e] = estimate(x, specs[e]).d_hat;
                    } catch (const std::exception&) {
                        // failure recorded as NaN and counted below
                    }
                }
            }
        };

        if (workers <= 1) {
            worker(0, R);
        } else {
            std::vector<std::thread> pool;
            const std::size_t chunk = (R + workers - 1) / workers;
            for (unsigned w = 0; w < workers; ++w) {
                const std::size_t first = static_cast<std::size_t>(w) * chunk;
                if (first >= R) break;
                pool.emplace_back(worker, first, std::min(R, first + chunk));
            }
            for (auto& t : pool) t.join();
        }

        for (std::size_t e = 0; e < E; ++e) {
            double sum = 0.0, sumsq = 0.0;
            std::size_t used = 0;
            for (std::size_t r = 0; r < R; ++r) {
                const double v = draws[r * E + e];
                if (std::isnan(v)) continue;
                const double dev = v - cell.d;
                sum += dev;
                sumsq += dev * dev;
                ++used;
            }
            MCRow row;
            row.cell = cell;
            row.estimator = config.estimators[e].label.empty()
                                ? method_name(specs[e].method)
                                : config.estimators[e].label;
            row.reps_used = used;
            row.failures = R - used;
            if (used > 0) {
                row.bias = sum / static_cast<double>(used);
                row.mse = sumsq / static_cast<double>(used);
                row.sd = std::sqrt(std::max(0.0, row.mse - row.bias * row.bias));
            }
            summary.rows.push_back(std::move(row));
        }
    }
    return summary;
}

std::string render_table(const MCSummary& summary, double shade_threshold) {
    if (summary.rows.empty()) throw std::invalid_argument("render_table: no estimators");
    std::ostringstream out;
    out << std::setw(7) << "d" << std::setw(7) << "rho" << std::setw(7) << "mu" << std::setw(7)
        << "beta" << "  " << std::left << std::setw(18) << "estimator" << std::right
        << std::setw(10) << "bias" << std::setw(10) << "sd" << std::setw(11) << "mse"
        << std::setw(7) << "fail" << "\n";
    std::vector<std::string> flagged;
    for (const auto& row : summary.rows) {
        out << std::fixed << std::setprecision(2) << std::setw(7) << row.cell.d << std::setw(7)
            << row.cell.rho << std::setw(7) << row.cell.mu << std::setw(7) << row.cell.beta
            << "  " << std::left << std::setw(18) << row.estimator << std::right
            << std::setprecision(4) << std::setw(10) << row.bias << std::setw(10) << row.sd
            << std::setw(10) << row.mse << (row.mse > shade_threshold ? "*" : " ")
            << std::setw(6) << row.failures << "\n";
        if (summary.reps > 0 &&
            static_cast<double>(row.failures) > 0.01 * static_cast<double>(summary.reps)) {
            std::ostringstream tag;
            tag << row.estimator << " at d=" << std::fixed << std::setprecision(2) << row.cell.d;
            flagged.push_back(tag.str());
        }
    }
    out << "* marks MSE > " << std::setprecision(2) << shade_threshold << "\n";
    if (!flagged.empty()) {
        out << "warning: >1% failed replications for:";
        for (const auto& f : flagged) out << " [" << f << "]";
        out << "\n";
    }
    return out.str();
}

std::string render_csv(const MCSummary& summary) {
    std::ostringstream out;
    out << "d,rho,mu,beta,estimator,bias,sd,mse,reps_used,failures\n";
    out << std::setprecision(17);
    for (const auto& row : summary.rows)
        out << row.cell.d << ',' << row.cell.rho << ',' << row.cell.mu << ',' << row.cell.beta
            << ',' << row.estimator << ',' << row.bias << ',' << row.sd << ',' << row.mse << ','
            << row.reps_used << ',' << row.failures << "\n";
    return out.str();
}

}  // namespace lw
