#pragma once

// Command-line front end: JSON run configuration, subcommands and exit codes.
//
// Exit codes: 0 success, 1 internal error, 2 configuration error,
// 3 resource budget exceeded, 4 an assumption check failed.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rwre/conductance.hpp"
#include "rwre/environment.hpp"
#include "rwre/error.hpp"
#include "rwre/group_words.hpp"
#include "rwre/network.hpp"
#include "rwre/report_io.hpp"
#include "rwre/speed.hpp"
#include "rwre/walk.hpp"

namespace rwre::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitAssumption = 4;

inline constexpr int kSchemaVersion = 1;

class ConfigError : public Error {
public:
    using Error::Error;
};

struct WalkBlock {
    std::uint64_t steps = 10'000;
    std::size_t n_env = 10;
    std::size_t n_traj = 100;
    bool record_distances = false;
};

struct FlowBlock {
    std::optional<double> delta;
    std::vector<std::size_t> levels{50, 100, 200};
    std::size_t samples = 2000;
};

struct NetworkBlock {
    std::size_t depth = 12;
    std::uint64_t budget = kDefaultVertexBudget;
};

struct SpeedBlock {
    std::uint64_t steps = 100'000;
    std::size_t n_env = 10;
    std::size_t n_traj = 10;
};

struct ChecksBlock {
    std::size_t samples = 100'000;
    bool require_a2 = true;
    bool require_a3 = false;
};

struct RunConfig {
    explicit RunConfig(EnvSpec spec) : env(std::move(spec)) {}

    EnvSpec env;
    std::uint64_t env_seed = 0;
    std::uint64_t traj_seed = 0;
    WalkBlock walk;
    FlowBlock flow;
    NetworkBlock network;
    SpeedBlock speed;
    ChecksBlock checks;

    const Presentation& presentation() const { return env.presentation(); }
};

namespace detail {

using nlohmann::json;

inline void reject_unknown(const json& obj, const std::string& where,
                           std::initializer_list<const char*> allowed)
{
    if (!obj.is_object()) {
        throw ConfigError("config: '" + where + "' must be an object");
    }
    const std::set<std::string> keys(allowed.begin(), allowed.end());
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!keys.contains(it.key())) {
            throw ConfigError("config: unknown key '" + (where.empty() ? "" : where + ".") + it.key()
                              + "'");
        }
    }
}

inline bool non_negative_integer(const json& v)
{
    return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

template <class T>
T get_as(const json& obj, const std::string& key, const std::string& path)
{
    try {
        const json& v = obj.at(key);
        if constexpr (std::is_unsigned_v<T> && !std::is_same_v<T, bool>) {
            if (!non_negative_integer(v)) {
                throw ConfigError("");
            }
        } else if constexpr (std::is_same_v<T, bool>) {
            if (!v.is_boolean()) {
                throw ConfigError("");
            }
        } else if constexpr (std::is_integral_v<T>) {
            if (!v.is_number_integer()) {
                throw ConfigError("");
            }
        } else if constexpr (std::is_floating_point_v<T>) {
            if (!v.is_number()) {
                throw ConfigError("");
            }
        }
        return v.get<T>();
    } catch (const ConfigError&) {
        throw ConfigError("config: key '" + path + "' has the wrong type");
    } catch (const json::exception&) {
        throw ConfigError("config: key '" + path + "' has the wrong type");
    }
}

template <class T>
void read_opt(const json& obj, const std::string& key, const std::string& where, T& into)
{
    if (obj.contains(key)) {
        into = get_as<T>(obj, key, where + "." + key);
    }
}

inline std::vector<double> number_list(const json& v, const std::string& path)
{
    if (!v.is_array()) {
        throw ConfigError("config: key '" + path + "' must be an array of numbers");
    }
    std::vector<double> out;
    for (const json& x : v) {
        if (!x.is_number()) {
            throw ConfigError("config: key '" + path + "' must be an array of numbers");
        }
        out.push_back(x.get<double>());
    }
    return out;
}

inline Family parse_family(const json& env, const Presentation& p)
{
    const std::string name = get_as<std::string>(env, "family", "env.family");
    auto alpha = [&] {
        if (!env.contains("alpha")) {
            throw ConfigError("config: key 'env.alpha' is required for family '" + name + "'");
        }
        return number_list(env.at("alpha"), "env.alpha");
    };
    if (name == "simple_symmetric") {
        reject_unknown(env, "env", {"family", "seed"});
        return family::SimpleSymmetric{};
    }
    if (name == "dirichlet") {
        reject_unknown(env, "env", {"family", "alpha", "seed"});
        return family::Dirichlet{alpha()};
    }
    if (name == "elliptic_floor") {
        reject_unknown(env, "env", {"family", "alpha", "epsilon", "seed"});
        if (!env.contains("epsilon")) {
            throw ConfigError("config: key 'env.epsilon' is required for family 'elliptic_floor'");
        }
        return family::EllipticFloor{family::Dirichlet{alpha()},
                                     get_as<double>(env, "epsilon", "env.epsilon")};
    }
    if (name == "finite_points") {
        reject_unknown(env, "env", {"family", "points", "weights", "seed"});
        if (!env.contains("points") || !env.at("points").is_array()) {
            throw ConfigError("config: key 'env.points' must be an array of vectors");
        }
        if (!env.contains("weights")) {
            throw ConfigError("config: key 'env.weights' is required for family 'finite_points'");
        }
        family::FinitePoints fp;
        for (std::size_t i = 0; i < env.at("points").size(); ++i) {
            const std::string path = "env.points[" + std::to_string(i) + "]";
            auto v = number_list(env.at("points")[i], path);
            if (v.size() != static_cast<std::size_t>(p.degree())) {
                throw ConfigError("config: key '" + path + "' needs d = " + std::to_string(p.degree())
                                  + " entries");
            }
            try {
                fp.points.emplace_back(std::move(v));
            } catch (const InvalidParameter& e) {
                throw ConfigError("config: key '" + path + "': " + e.what());
            }
        }
        fp.weights = number_list(env.at("weights"), "env.weights");
        return fp;
    }
    throw ConfigError("config: key 'env.family' must be one of simple_symmetric, dirichlet, "
                      "finite_points, elliptic_floor (got '" + name + "')");
}

inline std::vector<std::size_t> size_list(const json& v, const std::string& path)
{
    if (!v.is_array() || v.empty()) {
        throw ConfigError("config: key '" + path + "' must be a nonempty array of positive integers");
    }
    std::vector<std::size_t> out;
    for (const json& x : v) {
        if (!non_negative_integer(x) || x.get<std::uint64_t>() == 0) {
            throw ConfigError("config: key '" + path + "' must be a nonempty array of positive integers");
        }
        out.push_back(x.get<std::size_t>());
    }
    return out;
}

} // namespace detail

/// Parses and validates a configuration document.
inline RunConfig parse_config(const nlohmann::json& doc)
{
    using detail::get_as;
    using detail::read_opt;
    detail::reject_unknown(doc, "",
                           {"schema_version", "presentation", "env", "seeds", "walk", "flow",
                            "network", "speed", "checks"});
    if (!doc.contains("schema_version")) {
        throw ConfigError("config: key 'schema_version' is required");
    }
    if (get_as<int>(doc, "schema_version", "schema_version") != kSchemaVersion) {
        throw ConfigError("config: key 'schema_version' must be " + std::to_string(kSchemaVersion));
    }
    for (const char* required : {"presentation", "env"}) {
        if (!doc.contains(required)) {
            throw ConfigError(std::string("config: key '") + required + "' is required");
        }
    }

    const auto& pres = doc.at("presentation");
    detail::reject_unknown(pres, "presentation", {"k", "r"});
    if (!pres.contains("k") || !pres.contains("r")) {
        throw ConfigError("config: keys 'presentation.k' and 'presentation.r' are required");
    }
    const int k = get_as<int>(pres, "k", "presentation.k");
    const int r = get_as<int>(pres, "r", "presentation.r");
    std::optional<Presentation> presentation;
    try {
        presentation.emplace(k, r);
    } catch (const InvalidParameter& e) {
        throw ConfigError(std::string("config: key 'presentation': ") + e.what());
    }

    const auto& env = doc.at("env");
    if (!env.is_object() || !env.contains("family")) {
        throw ConfigError("config: key 'env.family' is required");
    }
    std::optional<EnvSpec> spec;
    try {
        spec.emplace(*presentation, detail::parse_family(env, *presentation));
    } catch (const InvalidParameter& e) {
        throw ConfigError(std::string("config: key 'env': ") + e.what());
    }

    RunConfig cfg(*spec);
    std::optional<std::uint64_t> env_seed;
    if (env.contains("seed")) {
        env_seed = get_as<std::uint64_t>(env, "seed", "env.seed");
    }
    if (doc.contains("seeds")) {
        const auto& seeds = doc.at("seeds");
        detail::reject_unknown(seeds, "seeds", {"environment", "trajectory"});
        if (seeds.contains("environment")) {
            const auto s = get_as<std::uint64_t>(seeds, "environment", "seeds.environment");
            if (env_seed && *env_seed != s) {
                throw ConfigError("config: key 'seeds.environment' disagrees with 'env.seed'");
            }
            env_seed = s;
        }
        read_opt(seeds, "trajectory", "seeds", cfg.traj_seed);
    }
    cfg.env_seed = env_seed.value_or(0);

    if (doc.contains("walk")) {
        const auto& b = doc.at("walk");
        detail::reject_unknown(b, "walk", {"steps", "n_env", "n_traj", "record_distances"});
        read_opt(b, "steps", "walk", cfg.walk.steps);
        read_opt(b, "n_env", "walk", cfg.walk.n_env);
        read_opt(b, "n_traj", "walk", cfg.walk.n_traj);
        read_opt(b, "record_distances", "walk", cfg.walk.record_distances);
    }
    if (doc.contains("flow")) {
        const auto& b = doc.at("flow");
        detail::reject_unknown(b, "flow", {"delta", "levels", "samples"});
        if (b.contains("delta")) {
            cfg.flow.delta = get_as<double>(b, "delta", "flow.delta");
        }
        if (b.contains("levels")) {
            cfg.flow.levels = detail::size_list(b.at("levels"), "flow.levels");
        }
        read_opt(b, "samples", "flow", cfg.flow.samples);
    }
    if (doc.contains("network")) {
        const auto& b = doc.at("network");
        detail::reject_unknown(b, "network", {"depth", "budget"});
        read_opt(b, "depth", "network", cfg.network.depth);
        read_opt(b, "budget", "network", cfg.network.budget);
    }
    if (doc.contains("speed")) {
        const auto& b = doc.at("speed");
        detail::reject_unknown(b, "speed", {"steps", "n_env", "n_traj"});
        read_opt(b, "steps", "speed", cfg.speed.steps);
        read_opt(b, "n_env", "speed", cfg.speed.n_env);
        read_opt(b, "n_traj", "speed", cfg.speed.n_traj);
    }
    if (doc.contains("checks")) {
        const auto& b = doc.at("checks");
        detail::reject_unknown(b, "checks", {"samples", "require_a2", "require_a3"});
        read_opt(b, "samples", "checks", cfg.checks.samples);
        read_opt(b, "require_a2", "checks", cfg.checks.require_a2);
        read_opt(b, "require_a3", "checks", cfg.checks.require_a3);
    }

    auto positive = [](std::uint64_t v, const char* key) {
        if (v == 0) {
            throw ConfigError(std::string("config: key '") + key + "' must be >= 1");
        }
    };
    positive(cfg.walk.steps, "walk.steps");
    positive(cfg.walk.n_env, "walk.n_env");
    positive(cfg.walk.n_traj, "walk.n_traj");
    positive(cfg.network.depth, "network.depth");
    positive(cfg.speed.steps, "speed.steps");
    positive(cfg.speed.n_env, "speed.n_env");
    positive(cfg.speed.n_traj, "speed.n_traj");
    positive(cfg.checks.samples, "checks.samples");
    return cfg;
}

inline RunConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config: cannot open '" + path.string() + "'");
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config: '" + path.string() + "' is not valid JSON: " + e.what());
    }
    return parse_config(doc);
}

/// Command-line values that override the configuration file.
struct Overrides {
    std::optional<std::uint64_t> seed_env;
    std::optional<std::uint64_t> seed_traj;
    std::optional<std::uint64_t> steps;
    std::optional<std::size_t> depth;
    std::optional<double> delta;
    std::optional<std::size_t> samples;
};

inline void apply_overrides(RunConfig& cfg, const Overrides& o)
{
    if (o.seed_env) cfg.env_seed = *o.seed_env;
    if (o.seed_traj) cfg.traj_seed = *o.seed_traj;
    if (o.steps) {
        if (*o.steps == 0) throw ConfigError("--steps must be >= 1");
        cfg.walk.steps = *o.steps;
        cfg.speed.steps = *o.steps;
    }
    if (o.depth) {
        if (*o.depth == 0) throw ConfigError("--depth must be >= 1");
        cfg.network.depth = *o.depth;
    }
    if (o.delta) cfg.flow.delta = *o.delta;
    if (o.samples) {
        cfg.flow.samples = *o.samples;
        cfg.checks.samples = *o.samples;
    }
}

struct Invocation {
    std::string command;
    std::filesystem::path config;
    std::filesystem::path out_dir = ".";
    std::size_t threads = 1;
    bool timing = false;
    Overrides overrides;
};

namespace detail {

inline nlohmann::json header_json(const std::string& command, const RunConfig& cfg)
{
    return {{"command", command},
            {"schema_version", kSchemaVersion},
            {"presentation", {{"k", cfg.presentation().k()}, {"r", cfg.presentation().r()},
                              {"d", cfg.presentation().degree()}}},
            {"family", cfg.env.family_name()},
            {"seeds", {{"environment", cfg.env_seed}, {"trajectory", cfg.traj_seed}}}};
}

inline void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write '" + path.string() + "'");
    }
    out << text;
}

inline void write_outputs(const Invocation& inv, const std::string& csv, const nlohmann::json& summary)
{
    std::filesystem::create_directories(inv.out_dir);
    write_text(inv.out_dir / (inv.command + ".csv"), csv);
    write_text(inv.out_dir / (inv.command + ".summary.json"), summary.dump(2) + "\n");
}

inline int cmd_simulate(const Invocation& inv, const RunConfig& cfg, std::ostream& out)
{
    WalkConfig walk;
    walk.steps = cfg.walk.steps;
    walk.trajectory_seed = cfg.traj_seed;
    walk.record_distances = cfg.walk.record_distances;
    const EnsembleReport rep =
        annealed_ensemble(cfg.env, cfg.walk.n_env, cfg.walk.n_traj, cfg.env_seed, walk, inv.threads);
    std::ostringstream csv;
    write_walk_csv(csv, rep);
    nlohmann::json summary = header_json(inv.command, cfg);
    summary["result"] = to_json(rep);
    const bool consistent = rep.early_last_return_fraction > 0.5;
    summary["verdict"] = consistent ? "consistent with transience" : "inconclusive";
    write_outputs(inv, csv.str(), summary);
    out << "transience: " << format_double(rep.early_last_return_fraction)
        << " of trajectories made their last return before step " << cfg.walk.steps / 2
        << " (never returned: " << format_double(rep.never_returned_fraction) << ") -> "
        << (consistent ? "consistent with transience" : "inconclusive") << '\n';
    return kExitOk;
}

inline int cmd_flow(const Invocation& inv, const RunConfig& cfg, std::ostream& out)
{
    const int d = cfg.presentation().degree();
    const double delta = cfg.flow.delta.value_or(default_delta(d));
    try {
        validate_delta(delta, d);
    } catch (const InvalidParameter& e) {
        throw ConfigError(e.what());
    }
    const Environment env(cfg.env, cfg.env_seed);
    const FlowReport rep = lln_report(env, delta, cfg.flow.levels, cfg.flow.samples, cfg.traj_seed,
                                      inv.threads);
    std::ostringstream csv;
    write_flow_csv(csv, rep);
    nlohmann::json summary = header_json(inv.command, cfg);
    summary["result"] = to_json(rep);
    const bool certified = rep.empirical_threshold.has_value();
    summary["verdict"] = certified ? "flow certificate holds at tested levels" : "not certified";
    write_outputs(inv, csv.str(), summary);
    out << "flow criterion: ";
    if (certified) {
        out << "Phi(eta_n) < Delta^(-n/2) for more than half the sphere at every tested n >= "
            << *rep.empirical_threshold << "; bound grows by " << format_double((d - 1) * delta)
            << " per level -> certified\n";
    } else {
        out << "the last tested level does not exceed the 1/2 fraction -> not certified\n";
    }
    return kExitOk;
}

inline int cmd_resistance(const Invocation& inv, const RunConfig& cfg, std::ostream& out)
{
    const Environment env(cfg.env, cfg.env_seed);
    truncated_tree_size(cfg.presentation(), cfg.network.depth, cfg.network.budget);
    std::vector<NetworkRow> rows;
    for (std::size_t depth = 1; depth <= cfg.network.depth; ++depth) {
        const auto t0 = std::chrono::steady_clock::now();
        NetworkRow row{effective_conductance(env, depth, cfg.network.budget, inv.threads), std::nullopt};
        if (inv.timing) {
            row.wall_time_ms = std::chrono::duration<double, std::milli>(
                                   std::chrono::steady_clock::now() - t0)
                                   .count();
        }
        rows.push_back(row);
    }
    std::ostringstream csv;
    write_network_csv(csv, rows);
    nlohmann::json summary = header_json(inv.command, cfg);
    nlohmann::json escape = nlohmann::json::array();
    for (const NetworkRow& r : rows) {
        escape.push_back(r.result.escape_probability);
    }
    const double last = rows.back().result.escape_probability;
    summary["result"] = {{"depth", cfg.network.depth},
                         {"escape_probability", escape},
                         {"final_escape_probability", last}};
    write_outputs(inv, csv.str(), summary);
    out << "finite-volume transience: escape probability to depth " << cfg.network.depth << " = "
        << format_double(last) << '\n';
    return kExitOk;
}

inline int cmd_speed(const Invocation& inv, const RunConfig& cfg, std::ostream& out)
{
    const SpeedEnsemble ens = speed_ensemble(cfg.env, cfg.speed.n_env, cfg.speed.n_traj,
                                             cfg.speed.steps, cfg.env_seed, cfg.traj_seed, inv.threads);
    std::ostringstream csv;
    write_speed_csv(csv, ens);
    nlohmann::json summary = header_json(inv.command, cfg);
    summary["result"] = to_json(ens);
    write_outputs(inv, csv.str(), summary);
    out << "positive speed: mean " << format_double(ens.mean_speed) << ", min "
        << format_double(ens.min_speed);
    if (ens.floor) {
        out << "; derived drift floor " << format_double(*ens.floor) << ' '
            << (*ens.floor_satisfied ? "satisfied on every run" : "VIOLATED") << '\n';
    } else {
        out << "; " << ens.warning << '\n';
    }
    return kExitOk;
}

inline int cmd_check(const Invocation& inv, const RunConfig& cfg, std::ostream& out)
{
    const A2Report a2 = check_a2(cfg.env, cfg.checks.samples, cfg.env_seed);
    const auto a3 = check_a3(cfg.env);
    const auto floor = speed_floor_for(cfg.env);
    std::ostringstream csv;
    write_assumptions_csv(csv, cfg.presentation(), a2);
    nlohmann::json summary = header_json(inv.command, cfg);
    summary["result"] = to_json(a2, a3);
    summary["result"]["speed_floor_applicable"] = floor.has_value();
    summary["result"]["speed_floor"] = floor ? nlohmann::json(*floor) : nlohmann::json(nullptr);
    write_outputs(inv, csv.str(), summary);

    out << "A2 (log-integrability): " << (a2.holds ? "finite" : "violated") << '\n';
    out << "A3 (uniform ellipticity): "
        << (a3 ? "eps = " + format_double(*a3) : std::string("no eps certifiable")) << '\n';
    const bool failed = (cfg.checks.require_a2 && !a2.holds) || (cfg.checks.require_a3 && !a3);
    return failed ? kExitAssumption : kExitOk;
}

} // namespace detail

/// Runs one invocation; errors are reported on `err` and mapped to exit codes.
inline int execute(const Invocation& inv, std::ostream& out, std::ostream& err)
{
    try {
        RunConfig cfg = load_config(inv.config);
        apply_overrides(cfg, inv.overrides);
        if (inv.command == "simulate") return detail::cmd_simulate(inv, cfg, out);
        if (inv.command == "flow") return detail::cmd_flow(inv, cfg, out);
        if (inv.command == "resistance") return detail::cmd_resistance(inv, cfg, out);
        if (inv.command == "speed") return detail::cmd_speed(inv, cfg, out);
        if (inv.command == "check-assumptions") return detail::cmd_check(inv, cfg, out);
        err << "unknown command '" << inv.command << "'\n";
        return kExitConfig;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const InvalidParameter& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const ResourceBudget& e) {
        err << "error: " << e.what() << '\n';
        return kExitBudget;
    } catch (const AssumptionViolated& e) {
        err << "error: " << e.what() << '\n';
        return kExitAssumption;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInternal;
    }
}

/// Parses argv-style arguments (without the program name) and runs.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout,
               std::ostream& err = std::cerr)
{
    CLI::App app{"Random walks in i.i.d. random environments on Cayley trees", "rwre"};
    app.require_subcommand(1);
    Invocation inv;
    std::uint64_t seed_env = 0, seed_traj = 0, steps = 0;
    std::size_t depth = 0, samples = 0;
    double delta = 0.0;

    const std::vector<std::pair<const char*, const char*>> commands = {
        {"simulate", "quenched/annealed walk ensemble and transience statistics"},
        {"flow", "occupation/log-Phi limits and the flow-sum certificate"},
        {"resistance", "effective conductance sweep over truncation depth"},
        {"speed", "martingale decomposition and speed ensemble"},
        {"check-assumptions", "log-integrability and uniform ellipticity report"}};
    std::vector<CLI::App*> subs;
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", inv.config, "JSON run configuration")->required();
        sub->add_option("--out", inv.out_dir, "output directory");
        sub->add_option("--threads", inv.threads, "worker threads (results do not depend on it)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--seed-env", seed_env, "environment seed");
        sub->add_option("--seed-traj", seed_traj, "trajectory seed");
        sub->add_option("--steps", steps, "walk/speed steps");
        sub->add_option("--depth", depth, "maximum truncation depth");
        sub->add_option("--delta", delta, "Delta in (1/(d-1), 1)");
        sub->add_option("--samples", samples, "Monte Carlo samples");
        sub->add_flag("--timing", inv.timing, "fill the wall_time_ms column");
        subs.push_back(sub);
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }

    for (CLI::App* sub : subs) {
        if (sub->parsed()) {
            inv.command = sub->get_name();
            if (sub->count("--seed-env")) inv.overrides.seed_env = seed_env;
            if (sub->count("--seed-traj")) inv.overrides.seed_traj = seed_traj;
            if (sub->count("--steps")) inv.overrides.steps = steps;
            if (sub->count("--depth")) inv.overrides.depth = depth;
            if (sub->count("--delta")) inv.overrides.delta = delta;
            if (sub->count("--samples")) inv.overrides.samples = samples;
        }
    }
    return execute(inv, out, err);
}

} // namespace rwre::cli
