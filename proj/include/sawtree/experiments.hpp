#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace sawtree {

inline constexpr char kVersion[] = "0.1.0";

// Flat key=value configuration of one named experiment. The key set is fixed
// per experiment by its defaults; the canonical form (sorted lines) is what
// gets hashed and embedded in every output, so a rerun from an emitted
// config.txt reproduces the outputs byte for byte.
class ExperimentConfig {
public:
    static std::vector<std::string> known_ids();
    static ExperimentConfig defaults(const std::string& id);

    // Parses "key=value" lines ('#' comments allowed), starting from the
    // defaults of the file's "experiment" entry.
    static ExperimentConfig parse(const std::string& text);
    static ExperimentConfig from_file(const std::string& path);

    const std::string& id() const { return id_; }

    // Overrides an existing key; unknown keys are rejected.
    void set(const std::string& key, const std::string& value);

    const std::string& get(const std::string& key) const;
    double get_double(const std::string& key) const;
    std::int64_t get_int(const std::string& key) const;
    bool get_bool(const std::string& key) const;

    std::string canonical() const;  // "experiment=<id>" plus sorted params
    std::string hash_hex() const;

    const std::vector<std::pair<std::string, std::string>>& params() const { return params_; }

private:
    std::string id_;
    std::vector<std::pair<std::string, std::string>> params_;  // sorted by key
};

struct ExperimentResult {
    std::vector<std::string> files;  // paths written, config.txt first
};

// Runs the experiment into out_dir (created if missing). Every output is a
// pure function of the config: no timestamps, no machine identifiers.
ExperimentResult run_experiment(const ExperimentConfig& cfg, const std::string& out_dir);

}  // namespace sawtree
