#include "ddm/sim.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <fstream>
#include <functional>
#include <mutex>
#include <ostream>
#include <random>
#include <set>
#include <thread>

#include "ddm/mseq.hpp"
#include "ddm/modem.hpp"
#include "ddm/pilot.hpp"

namespace ddm::sim {

namespace {

using json = nlohmann::json;

// stream tags keep per-purpose RNG sequences apart
constexpr std::uint64_t kStreamPapr = 0x7061707200000000ull;
constexpr std::uint64_t kStreamNmse = 0x6e6d736500000000ull;
constexpr std::uint64_t kStreamProp1 = 0x7072317000000000ull;
constexpr std::uint64_t kStreamDemo = 0x64656d6f00000000ull;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::string fmt(const char* format, ...) {
    char buf[256];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

/// Trials are independent jobs; results land in per-trial slots, so any
/// scheduling produces identical output.
void for_each_trial(int total, int workers, const std::function<void(int)>& body) {
    if (workers <= 1 || total <= 1) {
        for (int t = 0; t < total; ++t) {
            body(t);
        }
        return;
    }
    std::atomic<int> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;
    auto run = [&] {
        for (int t = next.fetch_add(1); t < total; t = next.fetch_add(1)) {
            try {
                body(t);
            } catch (...) {
                std::scoped_lock lock(err_mutex);
                if (!first_error) {
                    first_error = std::current_exception();
                }
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const int thread_count = std::min(workers, total);
    pool.reserve(static_cast<std::size_t>(thread_count));
    for (int i = 0; i < thread_count; ++i) {
        pool.emplace_back(run);
    }
    for (std::thread& th : pool) {
        th.join();
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }
}

double sigma_sq_for_snr(double snr_db, double data_symbol_energy) {
    return data_symbol_energy * std::pow(10.0, -snr_db / 10.0);
}

Eigen::VectorXd ccdf_thresholds(const ExperimentConfig& config) {
    const int count =
        static_cast<int>(std::floor((config.ccdf_max_db - config.ccdf_min_db) /
                                    config.ccdf_step_db + 0.5)) + 1;
    Eigen::VectorXd thresholds(count);
    for (int i = 0; i < count; ++i) {
        thresholds(i) = config.ccdf_min_db + config.ccdf_step_db * i;
    }
    return thresholds;
}

double mean_of(const std::vector<double>& values) {
    double acc = 0.0;
    for (double v : values) {
        acc += v;
    }
    return acc / static_cast<double>(values.size());
}

ChannelRealization reference_three_path_channel() {
    ChannelRealization ch;
    ch.paths = {{Complex(0.8, 0.0), 1, 1}, {Complex(0.6, 0.0), 3, 14},
                {Complex(0.5, 0.0), 5, 7}};
    return ch;
}

}  // namespace

std::string to_string(Experiment e) {
    switch (e) {
        case Experiment::papr: return "papr";
        case Experiment::nmse: return "nmse";
        case Experiment::prop1: return "prop1";
        case Experiment::detect_demo: return "detect-demo";
    }
    return "?";
}

std::string to_string(Scheme s) {
    switch (s) {
        case Scheme::sequence: return "sequence";
        case Scheme::pulse: return "pulse";
        case Scheme::data_only: return "data-only";
    }
    return "?";
}

void ExperimentConfig::validate() const {
    frame.validate();
    if (trials < 1) {
        throw ConfigError("trials must be >= 1");
    }
    if (workers < 1) {
        throw ConfigError("workers must be >= 1");
    }
    if (eta < 0.0 || pulse_beta_power_factor < 0.0) {
        throw ConfigError("thresholds must be non-negative");
    }
    if (sidelobe_rejection < 0.0 || sidelobe_rejection >= 1.0) {
        throw ConfigError("sidelobe_rejection must lie in [0, 1)");
    }
    if (ccdf_step_db <= 0.0 || ccdf_max_db <= ccdf_min_db) {
        throw ConfigError("bad CCDF threshold grid");
    }
    switch (experiment) {
        case Experiment::papr:
            if (schemes.empty()) {
                throw ConfigError("papr needs at least one scheme");
            }
            break;
        case Experiment::nmse:
            if (schemes.empty()) {
                throw ConfigError("nmse needs at least one scheme");
            }
            if (snr_list_db.empty()) {
                throw ConfigError("nmse needs a non-empty snr_list_db");
            }
            for (Scheme s : schemes) {
                if (s == Scheme::data_only) {
                    throw ConfigError("data-only scheme has no estimator");
                }
            }
            channel.validate(frame.n_doppler, frame.m_delay);
            break;
        case Experiment::prop1:
            if (prop1_p_list.empty()) {
                throw ConfigError("prop1 needs a non-empty p_list");
            }
            if (prop1_sigma_sq < 0.0) {
                throw ConfigError("prop1 sigma_sq must be non-negative");
            }
            break;
        case Experiment::detect_demo:
            break;
    }
}

ExperimentConfig default_config(Experiment experiment) {
    ExperimentConfig config;
    config.experiment = experiment;
    switch (experiment) {
        case Experiment::papr:
            config.trials = 10000;
            config.schemes = {Scheme::sequence, Scheme::pulse, Scheme::data_only};
            break;
        case Experiment::nmse:
            config.trials = 1000;
            config.schemes = {Scheme::sequence, Scheme::pulse};
            break;
        case Experiment::prop1:
            config.trials = 100000;
            break;
        case Experiment::detect_demo:
            config.trials = 1;
            // the reference channel reaches Doppler offset 14
            config.frame.guard_half_width = 14;
            config.frame.doppler_search_max = 14;
            break;
    }
    return config;
}

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t trial) {
    return splitmix64(splitmix64(master ^ splitmix64(stream)) ^ trial);
}

PaprResult run_papr(const ExperimentConfig& config) {
    config.validate();
    if (config.schemes.empty()) {
        throw ConfigError("papr needs at least one scheme");
    }
    const FrameConfig& fc = config.frame;
    const BipolarSequence seq = generate_mseq(fc.sequence_spec);
    const Eigen::VectorXd thresholds = ccdf_thresholds(config);

    PaprResult result;
    for (std::size_t s = 0; s < config.schemes.size(); ++s) {
        const Scheme scheme = config.schemes[s];
        std::vector<double> values(static_cast<std::size_t>(config.trials));
        for_each_trial(config.trials, config.workers, [&](int t) {
            std::mt19937_64 rng(trial_seed(config.seed, kStreamPapr + s, t));
            const Eigen::VectorXcd data =
                generate_qpsk_data(fc.data_cell_count(), fc.data_symbol_energy, rng);
            DDGrid grid;
            switch (scheme) {
                case Scheme::sequence:
                    grid = build_sequence_pilot_frame(fc, seq, data).grid;
                    break;
                case Scheme::pulse:
                    grid = build_pulse_pilot_frame(fc, data).grid;
                    break;
                case Scheme::data_only:
                    grid = build_data_only_frame(fc, data);
                    break;
            }
            values[static_cast<std::size_t>(t)] = papr_db(dd_to_time(grid));
        });
        result.curves.emplace(scheme, ccdf(values, thresholds));
        result.papr_values_db.emplace(scheme, std::move(values));
    }
    return result;
}

std::vector<NmsePoint> run_nmse(const ExperimentConfig& config) {
    config.validate();
    if (config.snr_list_db.empty()) {
        throw ConfigError("nmse needs a non-empty snr_list_db");
    }
    const FrameConfig& fc = config.frame;
    config.channel.validate(fc.n_doppler, fc.m_delay);
    const BipolarSequence seq = generate_mseq(fc.sequence_spec);

    std::vector<NmsePoint> points;
    for (std::size_t s = 0; s < config.schemes.size(); ++s) {
        const Scheme scheme = config.schemes[s];
        if (scheme == Scheme::data_only) {
            throw ConfigError("data-only scheme has no estimator");
        }
        for (std::size_t q = 0; q < config.snr_list_db.size(); ++q) {
            const double snr_db = config.snr_list_db[q];
            const NoiseSpec noise{sigma_sq_for_snr(snr_db, fc.data_symbol_energy)};
            std::vector<double> values(static_cast<std::size_t>(config.trials));
            for_each_trial(config.trials, config.workers, [&](int t) {
                std::mt19937_64 rng(
                    trial_seed(config.seed, kStreamNmse + (s << 16) + q, t));
                const ChannelRealization ch = draw_channel(config.channel, rng);
                const Eigen::VectorXcd data =
                    generate_qpsk_data(fc.data_cell_count(), fc.data_symbol_energy, rng);
                EstimationReport report;
                if (scheme == Scheme::sequence) {
                    const FrameBundle bundle = build_sequence_pilot_frame(fc, seq, data);
                    const DDGrid received =
                        add_awgn(apply_channel(bundle.grid, ch), noise, rng);
                    report = estimate_sequence_frame(
                        received, fc, bundle.pilot_reference, noise,
                        {config.eta, config.sidelobe_rejection});
                } else {
                    const FrameBundle bundle = build_pulse_pilot_frame(fc, data);
                    const DDGrid received =
                        add_awgn(apply_channel(bundle.grid, ch), noise, rng);
                    report = estimate_pulse_frame(
                        received, fc, bundle.pilot_reference(bundle.layout.pulse_delay),
                        bundle.layout.pulse_delay,
                        config.pulse_beta_power_factor * noise.sigma_sq);
                }
                values[static_cast<std::size_t>(t)] =
                    nmse(ch, report.estimates, fc.n_doppler, fc.m_delay);
            });
            points.push_back({scheme, snr_db, mean_of(values), config.trials});
        }
    }
    return points;
}

std::vector<Prop1Row> run_prop1(const ExperimentConfig& config) {
    config.validate();
    const BipolarSequence seq = generate_mseq(config.frame.sequence_spec);
    const Eigen::Index m = seq.size();
    const Eigen::VectorXcd pilot = seq.cast<Complex>();
    const double sigma_sq = config.prop1_sigma_sq;

    std::vector<Prop1Row> rows;
    for (std::size_t pi = 0; pi < config.prop1_p_list.size(); ++pi) {
        const int p = config.prop1_p_list[pi];
        if (p < 1 || p > m) {
            throw ConfigError("prop1 p_list entry outside [1, M]");
        }

        // fixed random distinct shifts per pair; the error model is
        // shift-invariant for an M-sequence
        std::mt19937_64 shift_rng(trial_seed(config.seed, kStreamProp1 + pi, 0));
        std::vector<int> all_shifts(static_cast<std::size_t>(m));
        for (Eigen::Index i = 0; i < m; ++i) {
            all_shifts[static_cast<std::size_t>(i)] = static_cast<int>(i);
        }
        std::shuffle(all_shifts.begin(), all_shifts.end(), shift_rng);
        const std::vector<int> shifts(all_shifts.begin(), all_shifts.begin() + p);

        Eigen::MatrixXcd x(m, p);
        for (int j = 0; j < p; ++j) {
            x.col(j) = cyclic_shift(pilot, shifts[static_cast<std::size_t>(j)]);
        }
        Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(x);
        if (qr.rank() < p) {
            throw SingularSystemError("prop1 shift system is rank deficient");
        }
        const Eigen::MatrixXcd pinv = qr.solve(Eigen::MatrixXcd::Identity(m, m));

        std::vector<double> values(static_cast<std::size_t>(config.trials));
        const double comp_sigma = std::sqrt(sigma_sq / 2.0);
        for_each_trial(config.trials, config.workers, [&](int t) {
            std::mt19937_64 rng(trial_seed(config.seed, kStreamProp1 + pi, t + 1));
            std::normal_distribution<double> gauss(0.0, comp_sigma);
            Eigen::VectorXcd w(m);
            for (Eigen::Index i = 0; i < m; ++i) {
                w(i) = Complex(gauss(rng), gauss(rng));
            }
            const Eigen::VectorXcd err = pinv * w;
            values[static_cast<std::size_t>(t)] = err.squaredNorm() / p;
        });

        const ErrorModelInputs inputs{static_cast<int>(m), p, sigma_sq};
        Prop1Row row;
        row.m_len = static_cast<int>(m);
        row.p_paths = p;
        row.sigma_sq = sigma_sq;
        row.eq_closed_form = prop1_epsilon_sq(inputs);
        row.exact_value = exact_epsilon_sq(inputs);
        row.monte_carlo = mean_of(values);
        row.rel_err = std::abs(row.eq_closed_form - row.exact_value) / row.exact_value;
        rows.push_back(row);
    }
    return rows;
}

DetectDemoResult run_detect_demo(const ExperimentConfig& config, std::ostream& out) {
    config.validate();
    const FrameConfig& fc = config.frame;

    DetectDemoResult result;
    result.truth = reference_three_path_channel();
    result.truth.validate(fc.n_doppler, fc.m_delay);

    const NoiseSpec noise{config.demo_snr_db
                              ? sigma_sq_for_snr(*config.demo_snr_db, fc.data_symbol_energy)
                              : 0.0};

    std::mt19937_64 rng(trial_seed(config.seed, kStreamDemo, 0));
    const BipolarSequence seq = generate_mseq(fc.sequence_spec);
    const Eigen::VectorXcd data =
        generate_qpsk_data(fc.data_cell_count(), fc.data_symbol_energy, rng);
    const FrameBundle bundle = build_sequence_pilot_frame(fc, seq, data);
    const DDGrid received = add_awgn(apply_channel(bundle.grid, result.truth), noise, rng);
    result.report = estimate_sequence_frame(received, fc, bundle.pilot_reference, noise,
                                            {config.eta, config.sidelobe_rejection});
    result.nmse_value = nmse(result.truth, result.report.estimates, fc.n_doppler, fc.m_delay);

    for (const Path& p : result.truth.paths) {
        if (p.doppler_tap > fc.doppler_search_max) {
            result.out_of_search_range.push_back(p);
        }
    }
    std::set<std::pair<int, int>> want;
    std::set<std::pair<int, int>> got;
    for (const Path& p : result.truth.paths) {
        want.emplace(p.delay_tap, p.doppler_tap);
    }
    for (const PathEstimate& e : result.report.estimates) {
        got.emplace(e.delay_tap, e.doppler_tap);
    }
    result.detected_exact_set = want == got;

    out << "frame: N=" << fc.n_doppler << " M=" << fc.m_delay << " pilot row "
        << fc.pilot_doppler << " guard +/-" << fc.guard_half_width << " scan 0.."
        << fc.doppler_search_max << "\n";
    out << fmt("pilot boost: %.2f dB per entry, noise sigma^2 = %g\n",
               10.0 * std::log10((2.0 * fc.guard_half_width + 1.0)), noise.sigma_sq);
    out << fmt("tx power %.6g, rx power %.6g\n", total_power(bundle.grid),
               total_power(received));
    out << "true paths (gain, delay, Doppler):\n";
    for (const Path& p : result.truth.paths) {
        out << fmt("  <%g%+gj, %d, %d>\n", p.gain.real(), p.gain.imag(), p.delay_tap,
                   p.doppler_tap);
    }
    out << fmt("detection threshold |v| > %.6g\n", result.report.threshold_used);
    out << "estimates (delay, Doppler, gain, score):\n";
    for (const PathEstimate& e : result.report.estimates) {
        out << fmt("  (%d, %d)  %.6g%+.6gj  score %.6g\n", e.delay_tap, e.doppler_tap,
                   e.gain_hat.real(), e.gain_hat.imag(), e.correlation_score);
    }
    for (const Path& p : result.out_of_search_range) {
        out << fmt("warning: path (delay %d, Doppler %d) lies beyond doppler_search_max=%d "
                   "and cannot be detected\n",
                   p.delay_tap, p.doppler_tap, fc.doppler_search_max);
    }
    out << fmt("nmse: %.6g\n", result.nmse_value);
    out << (result.detected_exact_set ? "detected set matches the true path set\n"
                                      : "detected set differs from the true path set\n");
    return result;
}

void write_ccdf_csv(std::ostream& os, const PaprResult& result) {
    os << "scheme,threshold_db,exceed_prob\n";
    for (const auto& [scheme, curve] : result.curves) {
        const std::string name = to_string(scheme);
        for (Eigen::Index i = 0; i < curve.thresholds_db.size(); ++i) {
            os << fmt("%s,%.2f,%.12g\n", name.c_str(), curve.thresholds_db(i),
                      curve.exceed_prob(i));
        }
    }
}

void write_nmse_csv(std::ostream& os, const std::vector<NmsePoint>& points) {
    os << "scheme,snr_db,nmse_mean,trials\n";
    for (const NmsePoint& p : points) {
        os << fmt("%s,%g,%.12g,%d\n", to_string(p.scheme).c_str(), p.snr_db, p.nmse_mean,
                  p.trials);
    }
}

void write_prop1_csv(std::ostream& os, const std::vector<Prop1Row>& rows) {
    os << "M,P,sigma_sq,eq13_value,exact_value,monte_carlo_value,rel_err\n";
    for (const Prop1Row& r : rows) {
        os << fmt("%d,%d,%.12g,%.12g,%.12g,%.12g,%.12g\n", r.m_len, r.p_paths, r.sigma_sq,
                  r.eq_closed_form, r.exact_value, r.monte_carlo, r.rel_err);
    }
}

namespace {

json config_json(const ExperimentConfig& config) {
    json j;
    j["experiment"] = to_string(config.experiment);
    j["seed"] = config.seed;
    j["trials"] = config.trials;
    j["workers"] = config.workers;
    j["output_dir"] = config.output_dir.string();
    json schemes = json::array();
    for (Scheme s : config.schemes) {
        schemes.push_back(to_string(s));
    }
    j["schemes"] = schemes;
    j["snr_list_db"] = config.snr_list_db;
    j["frame"] = {{"n_doppler", config.frame.n_doppler},
                  {"m_delay", config.frame.m_delay},
                  {"pilot_doppler", config.frame.pilot_doppler},
                  {"guard_half_width", config.frame.guard_half_width},
                  {"data_symbol_energy", config.frame.data_symbol_energy},
                  {"doppler_search_max", config.frame.doppler_search_max},
                  {"sequence_degree", config.frame.sequence_spec.degree},
                  {"sequence_taps", config.frame.sequence_spec.taps}};
    j["channel"] = {{"delay_taps", config.channel.delay_taps},
                    {"doppler_taps", config.channel.doppler_taps},
                    {"pairing", config.channel.pairing == ChannelProfile::Pairing::paired
                                    ? "paired"
                                    : "random-doppler"}};
    j["estimator"] = {{"eta", config.eta},
                      {"sidelobe_rejection", config.sidelobe_rejection},
                      {"pulse_beta_power_factor", config.pulse_beta_power_factor}};
    j["prop1"] = {{"p_list", config.prop1_p_list}, {"sigma_sq", config.prop1_sigma_sq}};
    if (config.demo_snr_db) {
        j["snr_db"] = *config.demo_snr_db;
    }
    return j;
}

void write_manifest(const ExperimentConfig& config, const std::vector<std::string>& outputs,
                    double wall_time_s) {
    json j;
    j["config"] = config_json(config);
    j["outputs"] = outputs;
    j["wall_time_s"] = wall_time_s;
    j["versions"] = {{"ddmsim", DDMSIM_VERSION},
                     {"eigen", fmt("%d.%d.%d", EIGEN_WORLD_VERSION, EIGEN_MAJOR_VERSION,
                                   EIGEN_MINOR_VERSION)}};
    std::ofstream os(config.output_dir / "manifest.json");
    os << j.dump(2) << '\n';
}

void echo_frame_layout(const ExperimentConfig& config, std::ostream& out) {
    const FrameConfig& fc = config.frame;
    const int region_rows = 2 * fc.guard_half_width + 1;
    out << fmt("frame layout: %d pilot cells, %d guard cells, %lld data cells, boost %.2f dB\n",
               fc.m_delay, (region_rows - 1) * fc.m_delay,
               static_cast<long long>(fc.data_cell_count()),
               10.0 * std::log10(2.0 * fc.guard_half_width + 1.0));
}

}  // namespace

int run_and_write(const ExperimentConfig& config, std::ostream& out, bool verbose) {
    config.validate();
    std::filesystem::create_directories(config.output_dir);
    if (verbose) {
        echo_frame_layout(config, out);
    }
    const auto start = std::chrono::steady_clock::now();
    std::vector<std::string> outputs;

    switch (config.experiment) {
        case Experiment::papr: {
            const PaprResult result = run_papr(config);
            std::ofstream os(config.output_dir / "ccdf.csv");
            write_ccdf_csv(os, result);
            outputs.push_back("ccdf.csv");
            for (const auto& [scheme, curve] : result.curves) {
                // first threshold where the CCDF drops to 1e-2 or below
                double crossing = curve.thresholds_db(curve.thresholds_db.size() - 1);
                for (Eigen::Index i = 0; i < curve.thresholds_db.size(); ++i) {
                    if (curve.exceed_prob(i) <= 1e-2) {
                        crossing = curve.thresholds_db(i);
                        break;
                    }
                }
                out << fmt("%s: CCDF reaches 1e-2 at %.2f dB\n", to_string(scheme).c_str(),
                           crossing);
            }
            break;
        }
        case Experiment::nmse: {
            const std::vector<NmsePoint> points = run_nmse(config);
            std::ofstream os(config.output_dir / "nmse.csv");
            write_nmse_csv(os, points);
            outputs.push_back("nmse.csv");
            for (const NmsePoint& p : points) {
                out << fmt("%s @ %g dB: mean NMSE %.4g (%d trials)\n",
                           to_string(p.scheme).c_str(), p.snr_db, p.nmse_mean, p.trials);
            }
            break;
        }
        case Experiment::prop1: {
            const std::vector<Prop1Row> rows = run_prop1(config);
            std::ofstream os(config.output_dir / "prop1.csv");
            write_prop1_csv(os, rows);
            outputs.push_back("prop1.csv");
            for (const Prop1Row& r : rows) {
                out << fmt("M=%d P=%d: closed form %.6g, oracle %.6g, monte carlo %.6g\n",
                           r.m_len, r.p_paths, r.eq_closed_form, r.exact_value, r.monte_carlo);
            }
            break;
        }
        case Experiment::detect_demo: {
            // re-run the pipeline pieces to dump every artifact format
            const DetectDemoResult result = run_detect_demo(config, out);
            std::mt19937_64 rng(trial_seed(config.seed, kStreamDemo, 0));
            const BipolarSequence seq = generate_mseq(config.frame.sequence_spec);
            const Eigen::VectorXcd data = generate_qpsk_data(
                config.frame.data_cell_count(), config.frame.data_symbol_energy, rng);
            const FrameBundle bundle = build_sequence_pilot_frame(config.frame, seq, data);
            const NoiseSpec noise{config.demo_snr_db
                                      ? sigma_sq_for_snr(*config.demo_snr_db,
                                                         config.frame.data_symbol_energy)
                                      : 0.0};
            const DDGrid received =
                add_awgn(apply_channel(bundle.grid, result.truth), noise, rng);

            {
                std::ofstream os(config.output_dir / "tx_grid.txt");
                write_grid(os, bundle.grid);
            }
            {
                std::ofstream os(config.output_dir / "rx_grid.txt");
                write_grid(os, received);
            }
            {
                std::ofstream os(config.output_dir / "channel.txt");
                write_channel(os, result.truth);
            }
            {
                std::ofstream os(config.output_dir / "estimates.csv");
                write_estimates_csv(os, result.report);
            }
            {
                std::ofstream os(config.output_dir / "iq.csv");
                write_iq(os, dd_to_time(bundle.grid));
            }
            json j;
            j["config"] = config_json(config);
            json truth = json::array();
            for (const Path& p : result.truth.paths) {
                truth.push_back({{"re", p.gain.real()},
                                 {"im", p.gain.imag()},
                                 {"delay", p.delay_tap},
                                 {"doppler", p.doppler_tap}});
            }
            j["true_paths"] = truth;
            json est = json::array();
            for (const PathEstimate& e : result.report.estimates) {
                est.push_back({{"re", e.gain_hat.real()},
                               {"im", e.gain_hat.imag()},
                               {"delay", e.delay_tap},
                               {"doppler", e.doppler_tap},
                               {"score", e.correlation_score}});
            }
            j["estimates"] = est;
            j["threshold"] = result.report.threshold_used;
            j["nmse"] = result.nmse_value;
            j["detected_exact_set"] = result.detected_exact_set;
            json warnings = json::array();
            for (const Path& p : result.out_of_search_range) {
                warnings.push_back(fmt("path (delay %d, Doppler %d) beyond search range",
                                       p.delay_tap, p.doppler_tap));
            }
            j["warnings"] = warnings;
            std::ofstream os(config.output_dir / "demo.json");
            os << j.dump(2) << '\n';
            outputs.insert(outputs.end(), {"demo.json", "tx_grid.txt", "rx_grid.txt",
                                           "channel.txt", "estimates.csv", "iq.csv"});
            break;
        }
    }

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_manifest(config, outputs, wall);
    out << fmt("wrote %s (%.2f s)\n", (config.output_dir / "manifest.json").string().c_str(),
               wall);
    return 0;
}

}  // namespace ddm::sim
