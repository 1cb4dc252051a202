#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "tcm/model.hpp"
#include "tcm/stepper.hpp"

namespace tcm::cli {

/// Raised on malformed or out-of-range configuration input; carries the
/// offending line when known (0 when not tied to a line).
class ConfigError : public std::runtime_error {
  public:
    ConfigError(int line, const std::string& msg)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg
                                      : msg),
          line_(line) {}
    int line() const { return line_; }

  private:
    int line_;
};

/// A full run description, parseable from the plain `key = value` config
/// grammar (# starts a comment). See the README for the key list.
struct RunConfig {
    int n1 = 32, n2 = 32, n3 = 32;
    double l1 = Grid::two_pi(), l2 = Grid::two_pi(), l3 = Grid::two_pi();
    ModelParams model;
    StepperConfig step;
    std::string ic_kind = "taylor_green";
    double ic_amplitude = 1.0;
    std::uint64_t ic_seed = 1;
    std::string ic_path;
    std::string out_dir = "out";
    int checkpoint_every = 0; // steps; 0 disables checkpoints

    bool operator==(const RunConfig& other) const;
    void validate() const; // throws ConfigError on bad ranges

    GridPtr make_run_grid() const;
    IcSpec ic_spec() const;
};

/// Key/value pairs with their line numbers, the shared substrate of run
/// and sweep files.
struct ParsedFile {
    std::map<std::string, std::pair<std::string, int>> entries;
    bool has(const std::string& key) const { return entries.count(key) > 0; }
};

ParsedFile parse_key_value_text(const std::string& text);

/// Applies recognized run keys from the parsed file onto cfg; unknown keys
/// throw unless listed in extra_allowed (used by the sweep grammar).
void apply_run_keys(const ParsedFile& file, RunConfig& cfg,
                    const std::vector<std::string>& extra_allowed = {});

RunConfig parse_run_config_text(const std::string& text);
RunConfig load_run_config(const std::string& path);

/// Serialized form; re-parsing yields an equal RunConfig.
std::string emit_run_config(const RunConfig& cfg);

} // namespace tcm::cli
