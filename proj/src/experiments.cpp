#include "qnm/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <mutex>
#include <numbers>
#include <thread>

#include "qnm/csv.hpp"
#include "qnm/decoupling.hpp"
#include "qnm/dirac.hpp"
#include "qnm/error_map.hpp"
#include "qnm/errors.hpp"
#include "qnm/fault_map.hpp"
#include "qnm/minimal.hpp"
#include "qnm/operators.hpp"
#include "qnm/oracle.hpp"

namespace qnm {

namespace {

struct LinFit {
    double slope = 0.0, intercept = 0.0;
};

LinFit linfit(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    LinFit f;
    f.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    f.intercept = (sy - f.slope * sx) / n;
    return f;
}

// Ordered parallel map: result[i] = fn(i); deterministic for any worker count.
template <class T>
std::vector<T> parallel_map(std::size_t n, int workers, const std::function<T(std::size_t)>& fn) {
    std::vector<T> out(n);
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const int count = std::min<std::size_t>(workers, n);
    std::exception_ptr err;
    std::mutex err_mu;
    for (int w = 0; w < count; ++w)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    out[i] = fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(err_mu);
                    if (!err) err = std::current_exception();
                    return;
                }
            }
        });
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
    return out;
}

nlohmann::json run_markovian_limit(const Config& c, const std::filesystem::path& out, int workers);
nlohmann::json run_locality_sweep(const Config& c, const std::filesystem::path& out, int workers);
nlohmann::json run_kicked_memory(const Config& c, const std::filesystem::path& out, int workers);
nlohmann::json run_minimal_scaling(const Config& c, const std::filesystem::path& out, int workers);
nlohmann::json run_decoupling_verdict(const Config& c, const std::filesystem::path& out, int workers);
nlohmann::json run_oracle_check(const Config& c, const std::filesystem::path& out, int workers);

struct Registered {
    ExperimentInfo info;
    std::vector<std::string> required;
    nlohmann::json (*run)(const Config&, const std::filesystem::path&, int);
};

const std::vector<Registered>& registry() {
    static const std::vector<Registered> reg = {
        {{"markovian_limit",
          "static two-level atom: error map vs Markovian transition map over tau"},
         {"reservoir", "system.omega0", "sweep.values"},
         run_markovian_limit},
        {{"locality_sweep",
          "fault-generator locality profile vs memory window under a kicked gate history"},
         {"reservoir", "sweep.values"},
         run_locality_sweep},
        {{"kicked_memory",
          "kicked-dynamics r_jk coefficients: interference contrast and memory tails"},
         {"reservoir", "steps", "sweep.values"},
         run_kicked_memory},
        {{"minimal_scaling",
          "vacuum-only gate errors: delta(t1), additivity, optimizer n^{3/2} scaling"},
         {"R0", "n_values"},
         run_minimal_scaling},
        {{"decoupling_verdict",
          "bang-bang sideband spectra integrated against reservoir densities"},
         {"omega0", "omega_values"},
         run_decoupling_verdict},
        {{"oracle_check",
          "exact few-mode oracle vs second-order map: lambda^4 law and golden rule"},
         {"reservoir", "lambda_values"},
         run_oracle_check},
    };
    return reg;
}

const Registered& lookup(const std::string& name) {
    for (const Registered& r : registry())
        if (r.info.name == name) return r;
    throw config_error("unknown experiment '" + name + "'");
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
    std::ofstream f(path);
    if (!f) throw io_error("cannot write " + path.string());
    f << j.dump(2) << "\n";
}

}  // namespace

const std::vector<ExperimentInfo>& experiment_list() {
    static const std::vector<ExperimentInfo> list = [] {
        std::vector<ExperimentInfo> v;
        for (const Registered& r : registry()) v.push_back(r.info);
        return v;
    }();
    return list;
}

void validate_experiment_config(const Config& c) {
    const std::string name = c.str("experiment");
    const Registered& r = lookup(name);
    for (const std::string& key : r.required) {
        if (!c.has(key)) throw config_error("config: missing key '" + key + "'");
        if (key.ends_with("values")) {
            const auto vals = c.numbers(key);  // also checks non-empty
            (void)vals;
        }
    }
}

int worker_count_from_env() {
    if (const char* env = std::getenv("QNMSIM_WORKERS")) {
        const int v = std::atoi(env);
        if (v >= 1) return std::min(v, 16);
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return std::clamp<int>(static_cast<int>(hc ? hc : 1), 1, 8);
}

void run_experiment(const Config& c, const std::filesystem::path& outdir, int workers) {
    validate_experiment_config(c);
    const Registered& r = lookup(c.str("experiment"));
    std::error_code ec;
    std::filesystem::create_directories(outdir, ec);
    {  // probe writability early
        std::ofstream probe(outdir / "manifest.json");
        if (!probe) throw io_error("output directory not writable: " + outdir.string());
    }
    const auto tic = std::chrono::steady_clock::now();
    nlohmann::json summary = r.run(c, outdir, workers);
    const auto toc = std::chrono::steady_clock::now();

    nlohmann::json manifest;
    manifest["experiment"] = r.info.name;
    manifest["version"] = kVersion;
    manifest["config"] = c.root();
    manifest["workers"] = workers;
    manifest["wall_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(toc - tic).count();
    write_json(outdir / "manifest.json", manifest);
    write_json(outdir / "summary.json", summary);
}

// ---------------------------------------------------------------------------
// markovian_limit
// ---------------------------------------------------------------------------

namespace {

nlohmann::json run_markovian_limit(const Config& c, const std::filesystem::path& out,
                                   int workers) {
    const double omega0 = c.num("system.omega0");
    const double lambda = c.num_or("lambda", 0.1);
    const ReservoirModel bath = reservoir_from_config(c, "reservoir");
    const std::vector<double> taus = c.numbers("sweep.values");

    const CMat h = cplx(0.5 * omega0) * sigma_z();
    const Couplings cp = Couplings::single(sigma_x(), bath, lambda);

    struct Row {
        double tau, w_markov, w_emap, reldiff;
    };
    const CVec jm = (sigma_minus().transpose()).vec();
    auto item = [&](std::size_t i) -> Row {
        const double tau = taus[i];
        const SecondOrderMap markov = markovian_map(h, cp, tau);
        const Propagator p(Schedule::constant(h, -0.5 * tau, 0.5 * tau), 0.0, false);
        const SecondOrderMap emap = error_map(cp, p, -0.5 * tau, 0.5 * tau);
        double wm = 0.0;
        for (const MarkovChannel& ch : markov.channels())
            if (std::abs(ch.omega_k - omega0) < 1e-9) wm = ch.weight;
        // sigma_minus channel weight read off the Choi form.
        CVec tmp(jm.size());
        for (std::size_t r2 = 0; r2 < jm.size(); ++r2)
            tmp[r2] = kernels::cdotu(emap.choi().row(r2), jm.data(), jm.size());
        const double we = inner(jm, tmp).real();
        const double rel = (markov.choi() - emap.choi()).fro_norm() /
                           std::max(markov.choi().fro_norm(), 1e-300);
        return {tau, wm, we, rel};
    };
    const auto rows = parallel_map<Row>(taus.size(), workers, item);

    CsvWriter csv(out / "markovian_limit.csv",
                  {"tau", "markov_weight", "errormap_weight", "choi_reldiff"});
    PlotWriter plot(out / "reldiff_vs_tau.dat", "tau reldiff");
    for (const Row& r : rows) {
        csv.row({r.tau, r.w_markov, r.w_emap, r.reldiff});
        plot.row({r.tau, r.reldiff});
    }

    {  // Choi export of the longest-window Markovian map
        std::ofstream f(out / "choi_markovian.txt");
        markovian_map(h, cp, taus.back()).save_choi(f);
    }

    // Monotone decay of the difference beyond 10/gap.
    bool monotone = true;
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].tau > 10.0 / omega0 && rows[i - 1].tau > 10.0 / omega0 &&
            rows[i].reldiff > rows[i - 1].reldiff * 1.05)
            monotone = false;
    nlohmann::json s;
    s["rw_monotone_beyond_10_over_gap"] = monotone;
    s["final_reldiff"] = rows.back().reldiff;
    s["final_weight_ratio"] = rows.back().w_emap / std::max(rows.back().w_markov, 1e-300);
    return s;
}

// ---------------------------------------------------------------------------
// locality_sweep
// ---------------------------------------------------------------------------

nlohmann::json run_locality_sweep(const Config& c, const std::filesystem::path& out, int workers) {
    const ReservoirModel bath = reservoir_from_config(c, "reservoir");
    const std::vector<double> times = c.numbers("sweep.values");
    const double eps = c.num_or("eps", 1e-2);
    const double kick_strength = c.num_or("kick_strength", 0.25 * std::numbers::pi);
    const double step_tau = c.num_or("step_tau", 1.0);

    // Entangling kicked history on two qubits; faults attack qubit 0.
    const double horizon = *std::max_element(times.begin(), times.end()) + step_tau;
    std::vector<Kick> kicks;
    const CMat zx = cplx(kick_strength) * pauli("ZX").mat;
    for (double tk = step_tau; tk < horizon; tk += step_tau) kicks.push_back({tk, zx});
    const Schedule sched = Schedule::kicked(std::move(kicks), 1.0, 0.0, horizon);
    const Propagator prop(sched, step_tau / 4.0, false);

    const Couplings mem = Couplings::single(pauli("XI").mat, bath, 1.0);
    const Couplings delta = Couplings::single(pauli("XI").mat, ReservoirModel::white(1.0), 1.0);

    struct Row {
        double t, w1m, w2m, w1d, w2d;
    };
    auto item = [&](std::size_t i) -> Row {
        const double t = times[i];
        const FaultGenerator gm = fault_generator(mem, prop, 0.0, t, eps);
        const FaultGenerator gd = fault_generator(delta, prop, 0.0, t, eps);
        const LocalityProfile pm = locality_profile(gm, 2);
        const LocalityProfile pd = locality_profile(gd, 2);
        return {t, pm.weight[1], pm.weight[2], pd.weight[1], pd.weight[2]};
    };
    const auto rows = parallel_map<Row>(times.size(), workers, item);

    CsvWriter csv(out / "locality_sweep.csv",
                  {"t", "weight1_memory", "weight2_memory", "weight1_delta", "weight2_delta"});
    PlotWriter plot(out / "weight2_vs_t.dat", "t weight2_memory");
    for (const Row& r : rows) {
        csv.row({r.t, r.w1m, r.w2m, r.w1d, r.w2d});
        plot.row({r.t, r.w2m});
    }
    {  // profile export at the final window
        const FaultGenerator g = fault_generator(mem, prop, 0.0, times.back(), eps);
        std::ofstream f(out / "locality_profile.csv");
        save_locality_profile(locality_profile(g, 2), f);
    }

    bool monotone = true;
    double max_w2_delta = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i > 0 && rows[i].w2m < rows[i - 1].w2m * (1.0 - 1e-9)) monotone = false;
        max_w2_delta = std::max(max_w2_delta, rows[i].w2d);
    }
    nlohmann::json s;
    s["weight2_monotone"] = monotone;
    s["max_weight2_delta_kernel"] = max_w2_delta;
    s["final_weight2_memory"] = rows.back().w2m;
    s["regulator_eps"] = eps;
    return s;
}

// ---------------------------------------------------------------------------
// kicked_memory
// ---------------------------------------------------------------------------

nlohmann::json run_kicked_memory(const Config& c, const std::filesystem::path& out, int workers) {
    const ReservoirModel bath = reservoir_from_config(c, "reservoir");
    const int steps = static_cast<int>(c.integer("steps"));
    const std::vector<double> tau_values = c.numbers("sweep.values");
    const double eps = c.num_or("eps", 1e-3);

    const CMat gen = cplx(0.25 * std::numbers::pi) * sigma_x();
    const std::vector<CMat> gens(steps, gen);
    const std::vector<CMat> coup{sigma_z()};

    struct Row {
        double tau, contrast, min_eig_rel;
    };
    auto item = [&](std::size_t i) -> Row {
        const KickedErrorMap m =
            kicked_error_map(gens, coup, bath, tau_values[i], steps, eps);
        return {tau_values[i], interference_contrast(m), m.min_r_eig_rel()};
    };
    const auto rows = parallel_map<Row>(tau_values.size(), workers, item);

    CsvWriter csv(out / "kicked_memory.csv", {"tau", "contrast", "min_r_eig_rel"});
    PlotWriter plot(out / "contrast_vs_tau.dat", "tau contrast");
    for (const Row& r : rows) {
        csv.row({r.tau, r.contrast, r.min_eig_rel});
        plot.row({r.tau, r.contrast});
    }
    bool decreasing = true;
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].contrast > rows[i - 1].contrast + 1e-12) decreasing = false;

    nlohmann::json s;
    s["contrast_decreasing_in_tau"] = decreasing;

    // Vacuum-memory tail: |r_jk| ~ |j-k|^{-4}.
    if (c.has("tail")) {
        const int n_tail = static_cast<int>(c.integer_or("tail.steps", 20));
        const double tau = c.num_or("tail.tau", 1.0);
        const double teps = c.num_or("tail.eps", 1e-3);
        const KickedErrorMap m =
            kicked_error_map(std::vector<CMat>(n_tail, gen), coup,
                             ReservoirModel::vacuum_cubic(c.num_or("tail.R0", 1.0)), tau,
                             n_tail, teps);
        {
            std::ofstream f(out / "r_matrix.csv");
            save_r_matrix(m, 0, f);
        }
        std::vector<double> lx, ly;
        CsvWriter tail_csv(out / "r_tail.csv", {"separation", "mean_abs_r"});
        for (int sep = 4; sep <= 16 && sep < n_tail; ++sep) {
            double acc = 0.0;
            int cnt = 0;
            for (int j = 0; j + sep < n_tail; ++j) {
                acc += std::abs(m.r[0](j, j + sep));
                ++cnt;
            }
            const double mean = acc / cnt;
            tail_csv.row({static_cast<double>(sep), mean});
            lx.push_back(std::log(static_cast<double>(sep)));
            ly.push_back(std::log(mean));
        }
        s["tail_slope"] = linfit(lx, ly).slope;
    }
    (void)workers;
    return s;
}

// ---------------------------------------------------------------------------
// minimal_scaling
// ---------------------------------------------------------------------------

nlohmann::json run_minimal_scaling(const Config& c, const std::filesystem::path& out,
                                   int workers) {
    const double r0 = c.num("R0");
    const double alpha = c.num_or("alpha", 0.5 * std::numbers::pi);
    const double m_sep = c.num_or("m", 10.0);
    const std::vector<double> n_values = c.numbers("n_values");
    const double epsilon = c.num_or("epsilon", 1e-3);
    const std::vector<double> eps_values =
        c.has("epsilon_values") ? c.numbers("epsilon_values") : std::vector<double>{epsilon};

    const CMat axis = cplx(0.5) * sigma_z();
    auto bath = [&] { return ReservoirModel::vacuum_cubic(r0); };
    auto coup = [&] { return Couplings::single(sigma_x(), bath(), 1.0); };

    nlohmann::json s;

    // (a) delta1 vs t1 (log-log slope -2)
    const std::vector<double> t1s =
        c.has("t1_values") ? c.numbers("t1_values")
                           : std::vector<double>{0.5, 0.75, 1.0, 1.5, 2.2, 3.3, 5.0};
    auto d_of_t1 = [&](std::size_t i) -> double {
        PulseGate g{alpha, t1s[i], 0.0, axis};
        return gate_error(g, std::nullopt, coup());
    };
    const auto deltas_t1 = parallel_map<double>(t1s.size(), workers, d_of_t1);
    {
        CsvWriter csv(out / "delta_vs_t1.csv", {"t1", "delta1"});
        PlotWriter plot(out / "delta_vs_t1.dat", "t1 delta1");
        std::vector<double> lx, ly;
        for (std::size_t i = 0; i < t1s.size(); ++i) {
            csv.row({t1s[i], deltas_t1[i]});
            plot.row({t1s[i], deltas_t1[i]});
            lx.push_back(std::log(t1s[i]));
            ly.push_back(std::log(deltas_t1[i]));
        }
        s["slope_log_delta_log_t1"] = linfit(lx, ly).slope;
    }

    // (b) delta1 vs alpha (log-log slope +2)
    const std::vector<double> alphas =
        c.has("alpha_values")
            ? c.numbers("alpha_values")
            : std::vector<double>{std::numbers::pi / 8, std::numbers::pi / 5.33,
                                  std::numbers::pi / 4, std::numbers::pi / 2.67,
                                  std::numbers::pi / 2};
    auto d_of_alpha = [&](std::size_t i) -> double {
        PulseGate g{alphas[i], 1.0, 0.0, axis};
        return gate_error(g, std::nullopt, coup());
    };
    const auto deltas_a = parallel_map<double>(alphas.size(), workers, d_of_alpha);
    {
        CsvWriter csv(out / "delta_vs_alpha.csv", {"alpha", "delta1"});
        std::vector<double> lx, ly;
        for (std::size_t i = 0; i < alphas.size(); ++i) {
            csv.row({alphas[i], deltas_a[i]});
            lx.push_back(std::log(alphas[i]));
            ly.push_back(std::log(deltas_a[i]));
        }
        s["slope_log_delta_log_alpha"] = linfit(lx, ly).slope;
    }

    // (c) additivity: delta_4 vs 4 delta_1 at separation m.
    {
        PulseGate g{alpha, 1.0, 0.0, axis};
        const double d1 = gate_error(g, std::nullopt, coup());
        GateSequence seq;
        for (int j = 0; j < 4; ++j)
            seq.pulses.push_back({alpha, 1.0, j * (m_sep + 1.0), axis});
        const double d4 = sequence_error(seq, std::nullopt, coup());
        s["additivity_ratio"] = d4 / (4.0 * d1);
        s["delta1"] = d1;
        s["delta4"] = d4;
    }

    // (d) optimizer sweep; CSV columns per the external interface.
    const double cal = calibrate_delta1_constant();
    s["calibration_constant"] = cal;
    {
        CsvWriter csv(out / "optimizer.csv", {"n", "epsilon", "t1", "tC", "delta_n"});
        PlotWriter plot(out / "tc_vs_n.dat", "n tC");
        std::vector<double> lx, ly;
        for (double nv : n_values) {
            for (double ev : eps_values) {
                const OptimizeResult r =
                    optimize_schedule(static_cast<int>(nv), ev, m_sep, r0, 1, alpha, 0.0, cal);
                csv.row({nv, ev, r.t1, r.t_c, r.delta_n});
                if (ev == eps_values.front()) {
                    plot.row({nv, r.t_c});
                    lx.push_back(std::log(nv));
                    ly.push_back(std::log(r.t_c));
                }
            }
        }
        s["tc_exponent_vs_n"] = linfit(lx, ly).slope;
    }
    if (eps_values.size() > 1) {
        std::vector<double> lx, ly;
        for (double ev : eps_values) {
            const OptimizeResult r = optimize_schedule(static_cast<int>(n_values.front()), ev,
                                                       m_sep, r0, 1, alpha, 0.0, cal);
            lx.push_back(std::log(1.0 / ev));
            ly.push_back(std::log(r.t_c));
        }
        s["tc_exponent_vs_inv_eps"] = linfit(lx, ly).slope;
    }
    return s;
}

// ---------------------------------------------------------------------------
// decoupling_verdict
// ---------------------------------------------------------------------------

nlohmann::json run_decoupling_verdict(const Config& c, const std::filesystem::path& out,
                                      int workers) {
    const double omega0 = c.num("omega0");
    const std::vector<double> omegas = c.numbers("omega_values");
    const double cycles = c.num_or("window_cycles", 40.0);

    const CMat h = cplx(0.5 * omega0) * sigma_z();
    const CMat s_op = sigma_x();

    struct BathCase {
        std::string label;
        ReservoirModel bath;
    };
    std::vector<BathCase> cases;
    const double wmax = *std::max_element(omegas.begin(), omegas.end());
    if (c.has("reservoirs.lorentzian"))
        cases.push_back({"lorentzian", reservoir_from_config(c, "reservoirs.lorentzian")});
    else
        cases.push_back({"lorentzian", ReservoirModel::lorentzian(1.0, 1.0)});
    if (c.has("reservoirs.vacuum"))
        cases.push_back({"vacuum_cubic", reservoir_from_config(c, "reservoirs.vacuum")});
    else
        cases.push_back({"vacuum_cubic", ReservoirModel::vacuum_cubic(1.0)});
    if (c.has("reservoirs.bell")) {
        cases.push_back({"bell", reservoir_from_config(c, "reservoirs.bell")});
    } else {
        Config synth = Config::parse(
            R"({"bell": {"variant":"bell","center":)" + format_g17(omega0) +
            R"(,"sigma":)" + format_g17(0.15 * omega0) + R"(,"grid_max":)" +
            format_g17(2.5 * wmax + 10.0 * omega0) + "}}");
        cases.push_back({"bell", reservoir_from_config(synth, "bell")});
    }

    const auto spectra = parallel_map<SidebandSpectrum>(
        omegas.size(), workers, [&](std::size_t i) -> SidebandSpectrum {
            const double om = omegas[i];
            const double window = cycles * 2.0 * std::numbers::pi / om;
            return bangbang_spectrum(h, s_op, om, window);
        });

    nlohmann::json s;
    CsvWriter csv(out / "decoupling_verdict.csv",
                  {"reservoir", "omega_drive", "suppressed", "residual", "verdict"});
    for (const BathCase& bc : cases) {
        std::vector<double> residuals;
        bool all_ineffective = true;
        double carrier_bound_margin = 1e300;
        for (std::size_t i = 0; i < omegas.size(); ++i) {
            const DecouplingVerdict v = decoupling_verdict(spectra[i], bc.bath);
            csv.row({bc.label, omegas[i], v.suppressed_rate, v.residual_rate,
                     std::string(v.effective ? "effective" : "ineffective")});
            residuals.push_back(v.residual_rate);
            if (v.effective) all_ineffective = false;
            if (bc.label == "lorentzian") {
                const double floor = spectra[i].carrier_weight * bc.bath.spectral_density(0.0);
                carrier_bound_margin =
                    std::min(carrier_bound_margin, v.residual_rate / std::max(floor, 1e-300));
            }
        }
        if (bc.label == "lorentzian") {
            s["lorentzian_all_ineffective"] = all_ineffective;
            s["lorentzian_residual_over_carrier_floor"] = carrier_bound_margin;
        }
        if (bc.label == "vacuum_cubic") {
            bool nondecreasing = true;
            for (std::size_t i = 1; i < residuals.size(); ++i)
                if (residuals[i] < residuals[i - 1] * (1.0 - 1e-9)) nondecreasing = false;
            s["vacuum_residual_nondecreasing"] = nondecreasing;
        }
        if (bc.label == "bell") {
            // Effective once Omega clears the bell support.
            double best = 1e300;
            for (std::size_t i = 0; i < omegas.size(); ++i) {
                const DecouplingVerdict v = decoupling_verdict(spectra[i], bc.bath);
                best = std::min(best, v.residual_rate / std::max(v.unmodulated_rate, 1e-300));
            }
            s["bell_best_residual_fraction"] = best;
        }
    }
    return s;
}

// ---------------------------------------------------------------------------
// oracle_check
// ---------------------------------------------------------------------------

nlohmann::json run_oracle_check(const Config& c, const std::filesystem::path& out, int workers) {
    const ReservoirModel bath = reservoir_from_config(c, "reservoir");
    const double omega0 = c.num_or("system.omega0", 1.0);
    const std::vector<double> lambdas = c.numbers("lambda_values");
    const double band_lo = c.num_or("band_lo", 0.2 * omega0);
    const double band_hi = c.num_or("band_hi", 1.8 * omega0);
    const int modes = static_cast<int>(c.integer_or("modes", 6));
    const double t_final = c.num_or("t_final", 6.0);

    const CMat h = cplx(0.5 * omega0) * sigma_z();
    const CMat s_op = sigma_x();
    DiscreteReservoir disc = discretize(bath, band_lo, band_hi, modes, {omega0});
    disc.nmax = static_cast<int>(c.integer_or("nmax", 4));
    disc.total_cap = static_cast<int>(c.integer_or("total_cap", 3));

    const Schedule sched = Schedule::constant(h, 0.0, t_final);
    const Propagator prop(sched, 0.0, false);
    const CVec psi0 = {std::sqrt(0.7), std::sqrt(0.3)};

    auto dist_for = [&](std::size_t i) -> double {
        const double lam = lambdas[i];
        const OracleResult ex = exact_reduced_dynamics(sched, s_op, disc, lam, psi0, t_final);
        const SecondOrderMap map = error_map_discrete(s_op, disc, lam, prop, 0.0, t_final);
        const State pert = evolve_second_order(map, prop, State::from_pure(psi0));
        return trace_distance(ex.reduced.rho, pert.rho);
    };
    const auto dists = parallel_map<double>(lambdas.size(), workers, dist_for);

    nlohmann::json s;
    {
        CsvWriter csv(out / "lambda4.csv", {"lambda", "trace_distance", "ratio_to_prev"});
        PlotWriter plot(out / "lambda4.dat", "lambda trace_distance");
        for (std::size_t i = 0; i < lambdas.size(); ++i) {
            const double ratio = i ? dists[i - 1] / dists[i] : 0.0;
            csv.row({lambdas[i], dists[i], ratio});
            plot.row({lambdas[i], dists[i]});
        }
        std::vector<double> ratios;
        for (std::size_t i = 1; i < lambdas.size(); ++i) ratios.push_back(dists[i - 1] / dists[i]);
        if (!ratios.empty()) {
            s["lambda4_ratio_min"] = *std::min_element(ratios.begin(), ratios.end());
            s["lambda4_ratio_max"] = *std::max_element(ratios.begin(), ratios.end());
        }
    }

    // Golden rule: loss slope over the Markovian stage vs 2 pi lambda^2 R(omega0).
    if (c.has("golden")) {
        const double lam = c.num_or("golden.lambda", 0.01);
        const int gmodes = static_cast<int>(c.integer_or("golden.modes", 32));
        const double glo = c.num_or("golden.band_lo", 0.2 * omega0);
        const double ghi = c.num_or("golden.band_hi", 1.8 * omega0);
        DiscreteReservoir gd = discretize(bath, glo, ghi, gmodes, {omega0});
        gd.nmax = 3;
        gd.total_cap = 2;
        const double tau_lo = c.num_or("golden.tau_lo", 10.0) / omega0;
        const double tau_hi = c.num_or("golden.tau_hi", 50.0) / omega0;
        const int samples = static_cast<int>(c.integer_or("golden.samples", 9));
        OracleOptions opts;
        for (int k = 0; k < samples; ++k)
            opts.sample_times.push_back(tau_lo + (tau_hi - tau_lo) * k / (samples - 1));
        const Schedule gsched = Schedule::constant(h, 0.0, tau_hi);
        const OracleResult ex =
            exact_reduced_dynamics(gsched, s_op, gd, lam, {1.0, 0.0}, tau_hi, opts);
        const double rate_theory =
            2.0 * std::numbers::pi * lam * lam * bath.spectral_density(omega0);
        CsvWriter csv(out / "golden_rule.csv",
                      {"tau", "oracle_loss", "markov_weight", "pointwise_ratio"});
        std::vector<double> xs, ys;
        for (std::size_t i = 0; i < ex.samples.size(); ++i) {
            const double loss = 1.0 - ex.samples[i].rho(0, 0).real();
            const double w = rate_theory * ex.sample_times[i];
            csv.row({ex.sample_times[i], loss, w, loss / std::max(w, 1e-300)});
            xs.push_back(ex.sample_times[i]);
            ys.push_back(loss);
        }
        const LinFit fit = linfit(xs, ys);
        s["golden_rate_fit"] = fit.slope;
        s["golden_rate_theory"] = rate_theory;
        s["golden_rate_rel_err"] = std::abs(fit.slope - rate_theory) / rate_theory;
        s["golden_leakage"] = ex.leakage;
    }
    (void)workers;
    return s;
}

}  // namespace

}  // namespace qnm
