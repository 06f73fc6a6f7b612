#include <cstdint>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "ddm/sim.hpp"

namespace ddm::sim {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) {
        return "";
    }
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> items;
    std::string::size_type pos = 0;
    while (pos <= value.size()) {
        const auto comma = value.find(',', pos);
        const std::string item =
            trim(comma == std::string::npos ? value.substr(pos) : value.substr(pos, comma - pos));
        if (!item.empty()) {
            items.push_back(item);
        }
        if (comma == std::string::npos) {
            break;
        }
        pos = comma + 1;
    }
    return items;
}

[[noreturn]] void fail(int line, const std::string& what) {
    throw ConfigError("config line " + std::to_string(line) + ": " + what);
}

double parse_double(const std::string& value, int line) {
    if (value == "inf") {
        return std::numeric_limits<double>::infinity();
    }
    std::size_t used = 0;
    double out = 0.0;
    try {
        out = std::stod(value, &used);
    } catch (const std::exception&) {
        fail(line, "expected a number, got '" + value + "'");
    }
    if (used != value.size()) {
        fail(line, "trailing characters after number '" + value + "'");
    }
    return out;
}

long long parse_int(const std::string& value, int line) {
    std::size_t used = 0;
    long long out = 0;
    try {
        out = std::stoll(value, &used);
    } catch (const std::exception&) {
        fail(line, "expected an integer, got '" + value + "'");
    }
    if (used != value.size()) {
        fail(line, "trailing characters after integer '" + value + "'");
    }
    return out;
}

std::uint64_t parse_u64(const std::string& value, int line) {
    std::size_t used = 0;
    std::uint64_t out = 0;
    try {
        out = std::stoull(value, &used);
    } catch (const std::exception&) {
        fail(line, "expected an unsigned integer, got '" + value + "'");
    }
    if (used != value.size()) {
        fail(line, "trailing characters after integer '" + value + "'");
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& value, int line) {
    std::vector<double> out;
    for (const std::string& item : split_list(value)) {
        out.push_back(parse_double(item, line));
    }
    return out;
}

std::vector<int> parse_int_list(const std::string& value, int line) {
    std::vector<int> out;
    for (const std::string& item : split_list(value)) {
        out.push_back(static_cast<int>(parse_int(item, line)));
    }
    return out;
}

Scheme parse_scheme(const std::string& value, int line) {
    if (value == "sequence") {
        return Scheme::sequence;
    }
    if (value == "pulse") {
        return Scheme::pulse;
    }
    if (value == "data-only") {
        return Scheme::data_only;
    }
    fail(line, "unknown scheme '" + value + "'");
}

void apply_experiment_key(ExperimentConfig& config, const std::string& key,
                          const std::string& value, int line) {
    if (key == "trials") {
        config.trials = static_cast<int>(parse_int(value, line));
    } else if (key == "seed") {
        config.seed = parse_u64(value, line);
    } else if (key == "workers") {
        config.workers = static_cast<int>(parse_int(value, line));
    } else if (key == "output_dir") {
        config.output_dir = value;
    } else if (key == "schemes") {
        config.schemes.clear();
        for (const std::string& item : split_list(value)) {
            config.schemes.push_back(parse_scheme(item, line));
        }
    } else if (key == "snr_list_db") {
        config.snr_list_db = parse_double_list(value, line);
    } else if (key == "snr_db") {
        config.demo_snr_db = parse_double(value, line);
    } else if (key == "ccdf_min_db") {
        config.ccdf_min_db = parse_double(value, line);
    } else if (key == "ccdf_max_db") {
        config.ccdf_max_db = parse_double(value, line);
    } else if (key == "ccdf_step_db") {
        config.ccdf_step_db = parse_double(value, line);
    } else {
        fail(line, "unknown key '" + key + "' in [experiment]");
    }
}

void apply_frame_key(ExperimentConfig& config, const std::string& key, const std::string& value,
                     int line) {
    FrameConfig& fc = config.frame;
    if (key == "n_doppler") {
        fc.n_doppler = static_cast<int>(parse_int(value, line));
    } else if (key == "m_delay") {
        fc.m_delay = static_cast<int>(parse_int(value, line));
    } else if (key == "pilot_doppler") {
        fc.pilot_doppler = static_cast<int>(parse_int(value, line));
    } else if (key == "guard_half_width") {
        fc.guard_half_width = static_cast<int>(parse_int(value, line));
    } else if (key == "data_symbol_energy") {
        fc.data_symbol_energy = parse_double(value, line);
    } else if (key == "doppler_search_max") {
        fc.doppler_search_max = static_cast<int>(parse_int(value, line));
    } else if (key == "sequence_degree") {
        fc.sequence_spec.degree = static_cast<int>(parse_int(value, line));
    } else if (key == "sequence_taps") {
        fc.sequence_spec.taps = parse_int_list(value, line);
    } else {
        fail(line, "unknown key '" + key + "' in [frame]");
    }
}

void apply_channel_key(ExperimentConfig& config, const std::string& key,
                       const std::string& value, int line) {
    if (key == "delay_taps") {
        config.channel.delay_taps = parse_int_list(value, line);
    } else if (key == "doppler_taps") {
        config.channel.doppler_taps = parse_int_list(value, line);
    } else if (key == "pairing") {
        if (value == "paired") {
            config.channel.pairing = ChannelProfile::Pairing::paired;
        } else if (value == "random-doppler") {
            config.channel.pairing = ChannelProfile::Pairing::random_doppler;
        } else {
            fail(line, "pairing must be 'paired' or 'random-doppler'");
        }
    } else {
        fail(line, "unknown key '" + key + "' in [channel]");
    }
}

void apply_estimator_key(ExperimentConfig& config, const std::string& key,
                         const std::string& value, int line) {
    if (key == "eta") {
        config.eta = parse_double(value, line);
    } else if (key == "sidelobe_rejection") {
        config.sidelobe_rejection = parse_double(value, line);
    } else if (key == "pulse_beta_power_factor") {
        config.pulse_beta_power_factor = parse_double(value, line);
    } else {
        fail(line, "unknown key '" + key + "' in [estimator]");
    }
}

void apply_prop1_key(ExperimentConfig& config, const std::string& key, const std::string& value,
                     int line) {
    if (key == "p_list") {
        config.prop1_p_list = parse_int_list(value, line);
    } else if (key == "sigma_sq") {
        config.prop1_sigma_sq = parse_double(value, line);
    } else {
        fail(line, "unknown key '" + key + "' in [prop1]");
    }
}

}  // namespace

ExperimentConfig parse_config_file(const std::filesystem::path& path, Experiment experiment) {
    std::ifstream is(path);
    if (!is) {
        throw ConfigError("cannot open config file '" + path.string() + "'");
    }
    ExperimentConfig config = default_config(experiment);

    std::string section;
    std::string raw;
    int line = 0;
    while (std::getline(is, raw)) {
        ++line;
        const auto hash = raw.find('#');
        std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (text.empty()) {
            continue;
        }
        if (text.front() == '[') {
            if (text.back() != ']') {
                fail(line, "malformed section header");
            }
            section = trim(text.substr(1, text.size() - 2));
            if (section != "experiment" && section != "frame" && section != "channel" &&
                section != "estimator" && section != "prop1") {
                fail(line, "unknown section [" + section + "]");
            }
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            fail(line, "expected 'key = value'");
        }
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (key.empty()) {
            fail(line, "empty key");
        }
        if (section.empty()) {
            fail(line, "key '" + key + "' outside any section");
        }
        if (section == "experiment") {
            apply_experiment_key(config, key, value, line);
        } else if (section == "frame") {
            apply_frame_key(config, key, value, line);
        } else if (section == "channel") {
            apply_channel_key(config, key, value, line);
        } else if (section == "estimator") {
            apply_estimator_key(config, key, value, line);
        } else {
            apply_prop1_key(config, key, value, line);
        }
    }
    return config;
}

}  // namespace ddm::sim
