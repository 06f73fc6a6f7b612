#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ddm/channel.hpp"
#include "ddm/estimator.hpp"
#include "ddm/frame.hpp"
#include "ddm/metrics.hpp"

namespace ddm::sim {

enum class Experiment { papr, nmse, prop1, detect_demo };
enum class Scheme { sequence, pulse, data_only };

std::string to_string(Experiment e);
std::string to_string(Scheme s);

/// Raised on malformed config files, unknown keys, and inconsistent values;
/// the message is a single diagnostic line.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Full description of one experiment run. Defaults reproduce the reference
 * setup: 32 x 64 frame, degree-6 sequence pilot boosted from a 10-row guard,
 * six paired paths on delays/Dopplers 0..5, QPSK data.
 *
 * SNR is per data symbol: sigma^2 = E_d * 10^(-snr_db/10); an infinite SNR
 * entry runs noiseless.
 */
struct ExperimentConfig {
    Experiment experiment = Experiment::papr;
    FrameConfig frame{};
    ChannelProfile channel{};
    std::vector<double> snr_list_db = {0.0, 5.0, 10.0, 15.0, 20.0};
    int trials = 1;
    std::uint64_t seed = 1;
    std::filesystem::path output_dir = "out";
    std::vector<Scheme> schemes = {Scheme::sequence, Scheme::pulse, Scheme::data_only};
    int workers = 1;

    // estimator policy
    double eta = 4.0;
    double sidelobe_rejection = 0.25;
    double pulse_beta_power_factor = 9.0;  // beta_power = factor * sigma^2

    // papr campaign CCDF grid
    double ccdf_min_db = 0.0;
    double ccdf_max_db = 20.0;
    double ccdf_step_db = 0.25;

    // prop1 campaign: sequence length comes from frame.sequence_spec
    std::vector<int> prop1_p_list = {1, 2, 3, 6};
    double prop1_sigma_sq = 1.0;

    // detect-demo: noiseless unless an SNR is given
    std::optional<double> demo_snr_db;

    void validate() const;
};

/// Per-experiment defaults. The demo widens the guard to 14 rows so the
/// full reference three-path channel (Doppler offsets up to 14) is
/// scannable; campaigns keep the 10-row guard.
ExperimentConfig default_config(Experiment experiment);

/// Parse a flat key-value config file ("[section]" headers, "key = value"
/// lines, '#' comments) over the experiment's defaults. Unknown sections or
/// keys are ConfigErrors.
ExperimentConfig parse_config_file(const std::filesystem::path& path, Experiment experiment);

/// Pure sub-seed derivation: one independent engine seed per (master seed,
/// stream, trial), so results are identical for any worker count.
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t trial);

struct PaprResult {
    std::map<Scheme, std::vector<double>> papr_values_db;
    std::map<Scheme, CcdfCurve> curves;
};

/// PAPR campaign: per trial and scheme, draw QPSK data, build the frame,
/// transform to time samples, record the frame PAPR; aggregate CCDFs on the
/// configured threshold grid.
PaprResult run_papr(const ExperimentConfig& config);

struct NmsePoint {
    Scheme scheme;
    double snr_db = 0.0;
    double nmse_mean = 0.0;
    int trials = 0;
};

/// NMSE campaign: per trial, draw channel and data, build the frame, couple
/// it through the channel, add noise at the configured SNR, run the scheme's
/// estimator and accumulate the grid NMSE.
std::vector<NmsePoint> run_nmse(const ExperimentConfig& config);

struct Prop1Row {
    int m_len = 0;
    int p_paths = 0;
    double sigma_sq = 0.0;
    double eq_closed_form = 0.0;  // closed-form model value
    double exact_value = 0.0;     // trace oracle
    double monte_carlo = 0.0;
    double rel_err = 0.0;  // |closed form - oracle| / oracle
};

/// Error-model verification: for each P, fix P random distinct shifts of the
/// unit-entry sequence, then Monte Carlo the least-squares error e = X^+ w
/// and compare the mean per-coefficient error power against both closed
/// forms.
std::vector<Prop1Row> run_prop1(const ExperimentConfig& config);

struct DetectDemoResult {
    ChannelRealization truth;
    EstimationReport report;
    double nmse_value = 0.0;
    std::vector<Path> out_of_search_range;  // true paths the scan cannot reach
    bool detected_exact_set = false;
};

/// Single-frame walk-through: the fixed three-path reference channel
/// <0.8,1,1>, <0.6,3,14>, <0.5,5,7> through a sequence-pilot frame, with a
/// human-readable trace on `out`.
DetectDemoResult run_detect_demo(const ExperimentConfig& config, std::ostream& out);

// CSV writers (schemas: ccdf.csv "scheme,threshold_db,exceed_prob";
// nmse.csv "scheme,snr_db,nmse_mean,trials";
// prop1.csv "M,P,sigma_sq,eq13_value,exact_value,monte_carlo_value,rel_err").
void write_ccdf_csv(std::ostream& os, const PaprResult& result);
void write_nmse_csv(std::ostream& os, const std::vector<NmsePoint>& points);
void write_prop1_csv(std::ostream& os, const std::vector<Prop1Row>& rows);

/// Run the configured experiment, write its CSV/JSON outputs and the run
/// manifest into config.output_dir, and echo a short summary. Returns the
/// process exit code.
int run_and_write(const ExperimentConfig& config, std::ostream& out, bool verbose = false);

}  // namespace ddm::sim
