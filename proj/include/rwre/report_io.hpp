#pragma once

// CSV and JSON renderings of the result records. Numbers are written with 17
// significant digits so identical runs give byte-identical files.

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>

#include <json.hpp>

#include "rwre/conductance.hpp"
#include "rwre/environment.hpp"
#include "rwre/network.hpp"
#include "rwre/speed.hpp"
#include "rwre/walk.hpp"

namespace rwre {

inline std::string format_double(double v)
{
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

template <class T>
std::string format_optional(const std::optional<T>& v)
{
    if (!v) {
        return "";
    }
    if constexpr (std::is_same_v<T, double>) {
        return format_double(*v);
    } else if constexpr (std::is_same_v<T, bool>) {
        return *v ? "true" : "false";
    } else {
        return std::to_string(*v);
    }
}

inline constexpr const char* kWalkCsvHeader =
    "env_seed,traj_seed,steps,final_distance,max_distance,returns_to_root,last_return_time";
inline constexpr const char* kFlowCsvHeader =
    "n,samples,mean_log_phi_over_n,stderr,fraction_below,flow_lower_bound";
inline constexpr const char* kNetworkCsvHeader =
    "L,effective_conductance,escape_probability,vertices_visited,wall_time_ms";
inline constexpr const char* kSpeedCsvHeader =
    "env_seed,traj_seed,steps,speed,martingale_over_n,drift_over_n,floor,floor_ok";
inline constexpr const char* kAssumptionsCsvHeader =
    "letter,generator,a2_finite,mean_abs_log,stderr,analytic";

inline void write_walk_csv(std::ostream& os, const EnsembleReport& rep)
{
    os << kWalkCsvHeader << '\n';
    for (const TrajectoryRecord& r : rep.rows) {
        const WalkSummary& s = r.summary;
        os << r.env_seed << ',' << r.traj_seed << ',' << s.steps << ',' << s.final_distance << ','
           << s.max_distance << ',' << s.returns_to_root << ',' << format_optional(s.last_return_time)
           << '\n';
    }
}

inline void write_flow_csv(std::ostream& os, const FlowReport& rep)
{
    os << kFlowCsvHeader << '\n';
    for (const FlowRow& r : rep.rows) {
        os << r.n << ',' << r.samples << ',' << format_double(r.mean_log_phi_over_n) << ','
           << format_double(r.std_error) << ',' << format_double(r.fraction_below) << ','
           << format_optional(r.flow_lower_bound) << '\n';
    }
}

/// One sweep row; wall time is left empty unless measured.
struct NetworkRow {
    NetworkResult result;
    std::optional<double> wall_time_ms;
};

inline void write_network_csv(std::ostream& os, const std::vector<NetworkRow>& rows)
{
    os << kNetworkCsvHeader << '\n';
    for (const NetworkRow& r : rows) {
        os << r.result.depth << ',' << format_double(r.result.effective_conductance) << ','
           << format_double(r.result.escape_probability) << ',' << r.result.vertices_visited << ','
           << format_optional(r.wall_time_ms) << '\n';
    }
}

inline void write_speed_csv(std::ostream& os, const SpeedEnsemble& ens)
{
    os << kSpeedCsvHeader << '\n';
    for (const SpeedRecord& r : ens.rows) {
        os << r.env_seed << ',' << r.traj_seed << ',' << r.report.n << ','
           << format_double(r.report.speed_estimate) << ','
           << format_double(r.report.martingale_term) << ',' << format_double(r.report.drift_term)
           << ',' << format_optional(ens.floor) << ',' << format_optional(r.floor_ok) << '\n';
    }
}

inline void write_assumptions_csv(std::ostream& os, const Presentation& p, const A2Report& rep)
{
    os << kAssumptionsCsvHeader << '\n';
    for (std::size_t s = 0; s < rep.finite.size(); ++s) {
        os << s << ',' << p.name(Letter(static_cast<std::uint8_t>(s))) << ','
           << (rep.finite[s] ? "true" : "false") << ',' << format_double(rep.mean_abs_log[s]) << ','
           << format_double(rep.std_error[s]) << ',' << format_optional(rep.analytic[s]) << '\n';
    }
}

namespace detail {

template <class T>
nlohmann::json optional_json(const std::optional<T>& v)
{
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

inline nlohmann::json finite_or_null(double v)
{
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

} // namespace detail

inline nlohmann::json to_json(const FlowReport& rep)
{
    nlohmann::json rows = nlohmann::json::array();
    for (const FlowRow& r : rep.rows) {
        rows.push_back({{"n", r.n},
                        {"samples", r.samples},
                        {"mean_log_phi_over_n", r.mean_log_phi_over_n},
                        {"stderr", r.std_error},
                        {"fraction_below", r.fraction_below},
                        {"flow_lower_bound", detail::optional_json(r.flow_lower_bound)},
                        {"log_flow_lower_bound", r.log_flow_lower_bound}});
    }
    return {{"delta", rep.delta},
            {"d", rep.degree},
            {"growth_factor_per_level", (rep.degree - 1) * rep.delta},
            {"empirical_threshold", detail::optional_json(rep.empirical_threshold)},
            {"rows", rows}};
}

inline nlohmann::json to_json(const EnsembleReport& rep)
{
    return {{"n_env", rep.n_env},
            {"n_traj", rep.n_traj},
            {"steps", rep.steps},
            {"mean_speed", rep.mean_speed},
            {"speed_stderr", rep.speed_std_error},
            {"mean_max_distance", rep.mean_max_distance},
            {"never_returned_fraction", rep.never_returned_fraction},
            {"early_last_return_fraction", rep.early_last_return_fraction},
            {"last_return_log2_histogram", rep.last_return_histogram},
            {"per_env_mean_speed", rep.per_env_mean_speed}};
}

inline nlohmann::json to_json(const SpeedEnsemble& ens)
{
    return {{"steps", ens.steps},
            {"runs", ens.rows.size()},
            {"mean_speed", ens.mean_speed},
            {"min_speed", ens.min_speed},
            {"min_drift", ens.min_drift},
            {"max_abs_martingale_over_n", ens.max_abs_martingale},
            {"floor", detail::optional_json(ens.floor)},
            {"floor_kind", "derived: 2(d-1)eps - 1"},
            {"floor_satisfied", detail::optional_json(ens.floor_satisfied)},
            {"warning", ens.warning}};
}

inline nlohmann::json to_json(const A2Report& rep, const std::optional<double>& a3)
{
    nlohmann::json mean = nlohmann::json::array();
    nlohmann::json err = nlohmann::json::array();
    nlohmann::json exact = nlohmann::json::array();
    for (std::size_t s = 0; s < rep.finite.size(); ++s) {
        mean.push_back(detail::finite_or_null(rep.mean_abs_log[s]));
        err.push_back(detail::finite_or_null(rep.std_error[s]));
        exact.push_back(detail::optional_json(rep.analytic[s]));
    }
    return {{"a2_holds", rep.holds},
            {"a2_finite", rep.finite},
            {"mean_abs_log", mean},
            {"stderr", err},
            {"analytic", exact},
            {"samples", rep.samples},
            {"a3_epsilon", detail::optional_json(a3)}};
}

} // namespace rwre
