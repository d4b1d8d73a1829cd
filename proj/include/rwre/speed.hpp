#pragma once

// Positive-speed machinery. With D_n = |X_n|, each step changes D by +1 except
// a step to the parent, so
//
//   E[D_i - D_{i-1} | X_0..X_{i-1}] = 1 - 2 * 1(X_{i-1} != e) * omega(X_{i-1}, parent)
//
// and D_n = M_n + sum of those compensators, M_n a martingale with increments
// bounded by 2. Under uniform ellipticity eps > 1/(2(d-1)) every compensator is
// at least 2(d-1)eps - 1 > 0.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "rwre/environment.hpp"
#include "rwre/error.hpp"
#include "rwre/parallel.hpp"
#include "rwre/walk.hpp"

namespace rwre {

/// Slack granted to the floor comparison, for the boundary case where the
/// drift equals the floor exactly.
inline constexpr double kFloorTolerance = 1e-9;

struct SpeedReport {
    std::uint64_t n = 0;
    double speed_estimate = 0.0;    ///< (|X_n| - |X_0|) / n
    double liminf_proxy = 0.0;      ///< min |X_m| / m over the last 10% of the run
    double martingale_term = 0.0;   ///< M_n / n
    double drift_term = 0.0;        ///< compensator sum / n
    double min_compensator = 0.0;
    double max_compensator = 0.0;
    std::optional<double> theoretical_floor;
};

/// 2(d-1)eps - 1; ConditionNotMet unless eps > 1/(2(d-1)).
inline double theoretical_speed_floor(double epsilon, int d)
{
    if (d < 3) {
        throw InvalidParameter("theoretical_speed_floor: d must be >= 3");
    }
    if (!(epsilon > 1.0 / (2.0 * (d - 1)))) {
        throw ConditionNotMet("ellipticity eps = " + std::to_string(epsilon)
                              + " does not exceed 1/(2(d-1)) = "
                              + std::to_string(1.0 / (2.0 * (d - 1))));
    }
    return 2.0 * (d - 1) * epsilon - 1.0;
}

/// The floor for an environment law, when it certifies an admissible eps.
inline std::optional<double> speed_floor_for(const EnvSpec& spec)
{
    const auto eps = check_a3(spec);
    if (!eps) {
        return std::nullopt;
    }
    try {
        return theoretical_speed_floor(*eps, spec.degree());
    } catch (const ConditionNotMet&) {
        return std::nullopt;
    }
}

/// Runs one quenched trajectory, splitting |X_n| into martingale and drift.
inline SpeedReport martingale_decompose(const Environment& env, const WalkConfig& cfg)
{
    if (cfg.steps < 1) {
        throw InvalidParameter("martingale_decompose: steps must be >= 1");
    }
    const Presentation& p = env.presentation();
    SplitMix64 rng(cfg.trajectory_seed);
    PathCursor cursor(env, cfg.start);

    const std::uint64_t n = cfg.steps;
    const std::uint64_t window_start = std::max<std::uint64_t>(1, n - n / 10);
    const auto start_distance = static_cast<std::int64_t>(cursor.depth());

    double compensator_sum = 0.0;
    double martingale_sum = 0.0;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    double liminf = std::numeric_limits<double>::infinity();

    for (std::uint64_t i = 1; i <= n; ++i) {
        const auto omega = cursor.probs();
        double compensator = 1.0;
        if (cursor.depth() != 0) {
            compensator -= 2.0 * omega[p.inverse(cursor.word().leading()).code];
        }
        const auto before = static_cast<std::int64_t>(cursor.depth());
        cursor.move(draw_letter(omega, rng));
        const double increment = static_cast<double>(static_cast<std::int64_t>(cursor.depth()) - before);

        compensator_sum += compensator;
        martingale_sum += increment - compensator;
        lo = std::min(lo, compensator);
        hi = std::max(hi, compensator);
        if (i >= window_start) {
            liminf = std::min(liminf, static_cast<double>(cursor.depth()) / static_cast<double>(i));
        }
    }

    SpeedReport rep;
    rep.n = n;
    const auto nn = static_cast<double>(n);
    rep.speed_estimate =
        static_cast<double>(static_cast<std::int64_t>(cursor.depth()) - start_distance) / nn;
    rep.liminf_proxy = liminf;
    rep.martingale_term = martingale_sum / nn;
    rep.drift_term = compensator_sum / nn;
    rep.min_compensator = lo;
    rep.max_compensator = hi;
    rep.theoretical_floor = speed_floor_for(env.spec());
    return rep;
}

struct SpeedRecord {
    std::uint64_t env_seed = 0;
    std::uint64_t traj_seed = 0;
    SpeedReport report;
    std::optional<bool> floor_ok;
};

struct SpeedEnsemble {
    std::uint64_t steps = 0;
    double mean_speed = 0.0;
    double min_speed = 0.0;
    double min_drift = 0.0;
    double max_abs_martingale = 0.0;
    std::optional<double> floor;
    std::optional<bool> floor_satisfied;   ///< absent when the floor check is skipped
    std::string warning;
    std::vector<SpeedRecord> rows;
};

/// Same seeding as annealed_ensemble: environment i has seed env_seed + i and
/// trajectory j of it runs on stream i * n_traj + j of trajectory_seed.
inline SpeedEnsemble speed_ensemble(const EnvSpec& spec, std::size_t n_env, std::size_t n_traj,
                                    std::uint64_t steps, std::uint64_t env_seed,
                                    std::uint64_t trajectory_seed, std::size_t threads = 1)
{
    if (n_env < 1 || n_traj < 1) {
        throw InvalidParameter("speed_ensemble: n_env and n_traj must be >= 1");
    }
    SpeedEnsemble out;
    out.steps = steps;
    out.floor = speed_floor_for(spec);
    if (!out.floor) {
        out.warning = "floor check skipped: no ellipticity constant eps > 1/(2(d-1)) is certified "
                      "for this environment";
    }

    const std::size_t total = n_env * n_traj;
    out.rows.resize(total);
    parallel_for(total, threads, [&](std::size_t index) {
        const Environment env(spec, env_seed + index / n_traj);
        WalkConfig cfg;
        cfg.steps = steps;
        cfg.trajectory_seed = stream_seed(trajectory_seed, index);
        SpeedRecord rec{env.seed(), cfg.trajectory_seed, martingale_decompose(env, cfg), std::nullopt};
        if (out.floor) {
            rec.floor_ok = rec.report.drift_term > *out.floor - kFloorTolerance;
        }
        out.rows[index] = std::move(rec);
    });

    out.min_speed = std::numeric_limits<double>::infinity();
    out.min_drift = std::numeric_limits<double>::infinity();
    double sum = 0.0;
    bool all_ok = true;
    for (const SpeedRecord& r : out.rows) {
        sum += r.report.speed_estimate;
        out.min_speed = std::min(out.min_speed, r.report.speed_estimate);
        out.min_drift = std::min(out.min_drift, r.report.drift_term);
        out.max_abs_martingale = std::max(out.max_abs_martingale, std::abs(r.report.martingale_term));
        if (r.floor_ok && !*r.floor_ok) {
            all_ok = false;
        }
    }
    out.mean_speed = sum / static_cast<double>(total);
    if (out.floor) {
        out.floor_satisfied = all_ok;
    }
    return out;
}

} // namespace rwre
