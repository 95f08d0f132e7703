#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include "flrw/format.hpp"

namespace flrwlab {

Output::Output(std::optional<std::filesystem::path> dir) : dir_(std::move(dir)) {
    if (dir_) {
        std::error_code ec;
        std::filesystem::create_directories(*dir_, ec);
        if (ec) {
            throw ConfigError("cannot create output directory '" + dir_->string() +
                              "': " + ec.message());
        }
    }
}

void Output::write(const std::string& name, const std::string& content) {
    if (!dir_) {
        return;
    }
    const auto path = *dir_ / name;
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) {
        throw std::runtime_error("failed to write " + path.string());
    }
    files_.push_back(name);
}

json num(double v) {
    if (std::isfinite(v)) {
        return v;
    }
    return flrw::format_double(v);
}

namespace {

double parse_real(const std::string& key, std::string_view s) {
    double v = 0.0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end) {
        throw ConfigError("--" + key + ": expected a number, got '" + std::string(s) + "'");
    }
    return v;
}

}  // namespace

json parse_value(const Param& p, const std::string& text) {
    switch (p.kind) {
        case Kind::real:
            return parse_real(p.key, text);
        case Kind::integer: {
            long v = 0;
            const auto* end = text.data() + text.size();
            auto [ptr, ec] = std::from_chars(text.data(), end, v);
            if (ec != std::errc() || ptr != end) {
                throw ConfigError("--" + p.key + ": expected an integer, got '" + text + "'");
            }
            return v;
        }
        case Kind::flag:
            return true;
        case Kind::text:
            return text;
        case Kind::real_list: {
            json arr = json::array();
            std::string_view rest = text;
            while (!rest.empty()) {
                const auto comma = rest.find(',');
                arr.push_back(parse_real(p.key, rest.substr(0, comma)));
                if (comma == std::string_view::npos) {
                    break;
                }
                rest.remove_prefix(comma + 1);
            }
            return arr;
        }
    }
    return nullptr;
}

json check_value(const Param& p, const json& v) {
    const std::string where = "config key '" + p.key + "'";
    switch (p.kind) {
        case Kind::real:
            if (!v.is_number()) throw ConfigError(where + " must be a number");
            return v.get<double>();
        case Kind::integer:
            if (!v.is_number_integer()) throw ConfigError(where + " must be an integer");
            return v;
        case Kind::flag:
            if (!v.is_boolean()) throw ConfigError(where + " must be a boolean");
            return v;
        case Kind::text:
            if (!v.is_string()) throw ConfigError(where + " must be a string");
            return v;
        case Kind::real_list: {
            if (!v.is_array()) throw ConfigError(where + " must be an array of numbers");
            json arr = json::array();
            for (const auto& e : v) {
                if (!e.is_number()) throw ConfigError(where + " must be an array of numbers");
                arr.push_back(e.get<double>());
            }
            return arr;
        }
    }
    return nullptr;
}

json resolve(const Command& cmd, const json& file_cfg, const json& flag_cfg) {
    json cfg = json::object();
    for (const auto& p : cmd.params) {
        cfg[p.key] = p.def;
    }
    for (const auto& [k, v] : file_cfg.items()) {
        const bool known = std::any_of(cmd.params.begin(), cmd.params.end(),
                                       [&](const Param& p) { return p.key == k; });
        if (!known) {
            throw ConfigError("unknown config key '" + k + "' for '" + command_name(cmd) + "'");
        }
    }
    if (cmd.preset_values) {
        std::string preset = cfg.value("preset", "");
        if (file_cfg.contains("preset")) preset = file_cfg["preset"].get<std::string>();
        if (flag_cfg.contains("preset")) preset = flag_cfg["preset"].get<std::string>();
        if (!preset.empty()) {
            const json values = cmd.preset_values(preset);
            for (const auto& [k, v] : values.items()) {
                cfg[k] = v;
            }
        }
    }
    for (const auto& [k, v] : file_cfg.items()) {
        cfg[k] = v;
    }
    for (const auto& [k, v] : flag_cfg.items()) {
        cfg[k] = v;
    }
    return cfg;
}

std::string config_digest(const std::string& command, const json& resolved) {
    return flrw::fnv1a_hex(command + "\n" + resolved.dump());
}

std::string command_name(const Command& cmd) {
    std::string out;
    for (const auto& part : cmd.path) {
        out += (out.empty() ? "" : " ") + part;
    }
    return out;
}

}  // namespace flrwlab
