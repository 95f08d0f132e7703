#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>

#include "CLI11.hpp"
#include "config.hpp"
#include "flrw/errors.hpp"

#ifndef FLRWLAB_VERSION
#define FLRWLAB_VERSION "0.0.0"
#endif

namespace flrwlab {

namespace {

struct Leaf {
    const Command* cmd = nullptr;
    CLI::App* app = nullptr;
    std::string config_path;
    std::string out_dir;
    std::map<std::string, std::string> text;
    std::map<std::string, bool> flags;
    std::map<std::string, CLI::Option*> options;
};

json read_config_file(const std::string& path, const Command& cmd) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    json doc;
    try {
        doc = json::parse(f);
    } catch (const json::parse_error& e) {
        throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("config file '" + path + "' must hold a JSON object");
    }
    json checked = json::object();
    for (const auto& [k, v] : doc.items()) {
        if (k == "out_dir") {
            if (!v.is_string()) throw ConfigError("config key 'out_dir' must be a string");
            checked[k] = v;
            continue;
        }
        const Param* p = nullptr;
        for (const auto& cand : cmd.params) {
            if (cand.key == k) p = &cand;
        }
        if (!p) {
            throw ConfigError("unknown config key '" + k + "' for '" + command_name(cmd) + "'");
        }
        checked[k] = check_value(*p, v);
    }
    return checked;
}

int execute(Leaf& leaf, std::ostream& out) {
    const Command& cmd = *leaf.cmd;
    json file_cfg = json::object();
    if (!leaf.config_path.empty()) {
        file_cfg = read_config_file(leaf.config_path, cmd);
    }
    std::string out_dir;
    if (file_cfg.contains("out_dir")) {
        out_dir = file_cfg["out_dir"].get<std::string>();
        file_cfg.erase("out_dir");
    }
    if (const char* env = std::getenv(kOutDirEnv); env && *env) {
        out_dir = env;
    }
    if (!leaf.out_dir.empty()) {
        out_dir = leaf.out_dir;
    }
    if (out_dir.empty() && cmd.writes_files) {
        out_dir = "flrwlab-out";
    }

    json flag_cfg = json::object();
    for (const auto& p : cmd.params) {
        if (p.kind == Kind::flag) {
            if (leaf.options.at(p.key)->count() > 0) flag_cfg[p.key] = leaf.flags.at(p.key);
        } else if (leaf.options.at(p.key)->count() > 0) {
            flag_cfg[p.key] = parse_value(p, leaf.text.at(p.key));
        }
    }

    const json resolved = resolve(cmd, file_cfg, flag_cfg);
    const std::string name = command_name(cmd);
    Output output(out_dir.empty() ? std::nullopt
                                  : std::optional<std::filesystem::path>(out_dir));
    Outcome outcome = cmd.run(resolved, output);

    if (output.enabled()) {
        output.write("summary.json", outcome.summary.dump(2) + "\n");
    }
    json manifest = {{"command", name},
                     {"config", resolved},
                     {"config_digest", config_digest(name, resolved)},
                     {"version", FLRWLAB_VERSION},
                     {"outputs", output.files()}};
    output.write("manifest.json", manifest.dump(2) + "\n");

    json doc = outcome.summary;
    doc["manifest"] = manifest;
    out << doc.dump(2) << '\n';
    return outcome.exit_code;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Numerical lab for semilinear wave equations in FLRW spacetimes", "flrwlab"};
    app.set_version_flag("--version", FLRWLAB_VERSION);
    app.require_subcommand(1);

    std::vector<std::unique_ptr<Leaf>> leaves;
    std::map<std::string, CLI::App*> groups;
    for (const auto& cmd : commands()) {
        CLI::App* parent = &app;
        for (std::size_t i = 0; i + 1 < cmd.path.size(); ++i) {
            auto& g = groups[cmd.path[i]];
            if (!g) {
                g = parent->add_subcommand(cmd.path[i], cmd.path[i] + " subcommands");
                g->require_subcommand(1);
            }
            parent = g;
        }
        auto leaf = std::make_unique<Leaf>();
        leaf->cmd = &cmd;
        leaf->app = parent->add_subcommand(cmd.path.back(), cmd.description);
        leaf->app->add_option("--config", leaf->config_path, "JSON config file");
        leaf->app->add_option("--out", leaf->out_dir,
                              std::string("output directory (overrides $") + kOutDirEnv + ")");
        for (const auto& p : cmd.params) {
            const std::string opt = "--" + p.key;
            if (p.kind == Kind::flag) {
                leaf->flags[p.key] = false;
                leaf->options[p.key] = leaf->app->add_flag(opt, leaf->flags[p.key], p.help);
            } else {
                leaf->text[p.key];
                leaf->options[p.key] = leaf->app->add_option(opt, leaf->text[p.key], p.help);
            }
        }
        leaves.push_back(std::move(leaf));
    }

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInvalidConfig;
    }

    for (auto& leaf : leaves) {
        if (!leaf->app->parsed()) {
            continue;
        }
        try {
            return execute(*leaf, out);
        } catch (const ConfigError& e) {
            err << "flrwlab: invalid config: " << e.what() << '\n';
            return kExitInvalidConfig;
        } catch (const flrw::DomainError& e) {
            err << "flrwlab: invalid config: " << e.what() << '\n';
            return kExitInvalidConfig;
        } catch (const std::invalid_argument& e) {
            err << "flrwlab: invalid config: " << e.what() << '\n';
            return kExitInvalidConfig;
        } catch (const flrw::RunFailure& e) {
            err << "flrwlab: run failed: " << e.what() << '\n';
            return kExitRuntimeFailure;
        } catch (const std::exception& e) {
            err << "flrwlab: internal error: " << e.what() << '\n';
            return kExitInternal;
        }
    }
    err << "flrwlab: no command given\n";
    return kExitInvalidConfig;
}

}  // namespace flrwlab
