#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace flrwlab {

using json = nlohmann::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInvalidConfig = 2;
inline constexpr int kExitRuntimeFailure = 3;

inline constexpr const char* kOutDirEnv = "FLRWLAB_OUT_DIR";

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

enum class Kind { real, integer, flag, text, real_list };

struct Param {
    std::string key;
    Kind kind = Kind::real;
    json def;
    std::string help;
};

/// Collects the files of one invocation. Writes are sequential and byte-exact.
class Output {
public:
    explicit Output(std::optional<std::filesystem::path> dir);

    bool enabled() const { return dir_.has_value(); }
    void write(const std::string& name, const std::string& content);
    const std::vector<std::string>& files() const { return files_; }

private:
    std::optional<std::filesystem::path> dir_;
    std::vector<std::string> files_;
};

struct Outcome {
    json summary = json::object();
    int exit_code = kExitOk;
};

struct Command {
    std::vector<std::string> path;  // e.g. {"kato", "sequences"}
    std::string description;
    std::vector<Param> params;
    bool writes_files = false;
    std::function<json(const std::string& preset)> preset_values;  // empty: no presets
    std::function<Outcome(const json& cfg, Output& out)> run;
};

const std::vector<Command>& commands();

/// Finite doubles as numbers, otherwise the strings "inf", "-inf", "nan".
json num(double v);

/// Parses a flag value for the given kind; throws ConfigError.
json parse_value(const Param& p, const std::string& text);

/// Checks a config-file value against the kind; throws ConfigError.
json check_value(const Param& p, const json& v);

/// Defaults, then preset values, then the config file, then flags.
json resolve(const Command& cmd, const json& file_cfg, const json& flag_cfg);

std::string config_digest(const std::string& command, const json& resolved);

std::string command_name(const Command& cmd);

}  // namespace flrwlab
