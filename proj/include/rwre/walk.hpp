#pragma once

// Quenched and annealed simulation of the walk X_n with
// P(X_{n+1} = s x | X_n = x) = omega(x, s x).

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rwre/environment.hpp"
#include "rwre/error.hpp"
#include "rwre/group_words.hpp"
#include "rwre/parallel.hpp"
#include "rwre/random.hpp"

namespace rwre {

struct WalkConfig {
    std::uint64_t steps = 1;
    Word start;
    /// Seed of the trajectory engine. Ensembles derive one per trajectory with
    /// stream_seed(base, stream_index).
    std::uint64_t trajectory_seed = 0;
    bool record_distances = false;
};

struct WalkSummary {
    std::uint64_t steps = 0;
    std::uint64_t final_distance = 0;
    std::uint64_t max_distance = 0;
    std::uint64_t returns_to_root = 0;          ///< #{1 <= n <= steps : X_n = e}
    std::optional<std::uint64_t> last_return_time;
    std::vector<std::uint64_t> distance_trace;  ///< |X_0|, ..., |X_n| when recorded

    friend bool operator==(const WalkSummary&, const WalkSummary&) = default;
};

/// Inverse-CDF draw of a letter from omega(x, .).
template <class Engine>
Letter draw_letter(std::span<const double> probs, Engine& rng)
{
    const double u = uniform01(rng);
    double cumulative = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] > 0.0) {
            last_positive = i;
        }
        cumulative += probs[i];
        if (u < cumulative) {
            return Letter(static_cast<std::uint8_t>(i));
        }
    }
    // u landed in the rounding gap above the cumulative sum
    return Letter(static_cast<std::uint8_t>(last_positive));
}

/// One transition from x.
template <class Engine>
Word step(const Environment& env, const Word& x, Engine& rng)
{
    const TransitionVector omega = env.transition_at(x);
    return env.presentation().apply(x, draw_letter(omega.probs(), rng));
}

inline WalkSummary simulate_quenched(const Environment& env, const WalkConfig& cfg)
{
    if (cfg.steps < 1) {
        throw InvalidParameter("walk: steps must be >= 1");
    }
    if (!env.presentation().is_reduced(cfg.start)) {
        throw InvalidParameter("walk: start word is not reduced");
    }
    SplitMix64 rng(cfg.trajectory_seed);
    PathCursor cursor(env, cfg.start);
    WalkSummary out;
    out.steps = cfg.steps;
    out.max_distance = cursor.depth();
    if (cfg.record_distances) {
        out.distance_trace.reserve(cfg.steps + 1);
        out.distance_trace.push_back(cursor.depth());
    }
    for (std::uint64_t n = 1; n <= cfg.steps; ++n) {
        cursor.move(draw_letter(cursor.probs(), rng));
        const std::uint64_t dist = cursor.depth();
        if (dist == 0) {
            ++out.returns_to_root;
            out.last_return_time = n;
        }
        out.max_distance = std::max(out.max_distance, dist);
        if (cfg.record_distances) {
            out.distance_trace.push_back(dist);
        }
    }
    out.final_distance = cursor.depth();
    return out;
}

struct TrajectoryRecord {
    std::uint64_t env_seed = 0;
    std::uint64_t traj_seed = 0;
    WalkSummary summary;
};

struct EnsembleReport {
    std::size_t n_env = 0;
    std::size_t n_traj = 0;
    std::uint64_t steps = 0;
    double mean_speed = 0.0;           ///< mean of final_distance / steps
    double speed_std_error = 0.0;
    double mean_max_distance = 0.0;
    double never_returned_fraction = 0.0;
    /// Fraction whose last return (if any) happened before steps / 2.
    double early_last_return_fraction = 0.0;
    /// Bucket b counts last returns in [2^b, 2^(b+1)); never-returned not counted.
    std::vector<std::uint64_t> last_return_histogram;
    std::vector<double> per_env_mean_speed;
    std::vector<TrajectoryRecord> rows;
};

/// Environment i uses seed env_seed + i; trajectory j of environment i runs on
/// stream i * n_traj + j of cfg.trajectory_seed.
inline EnsembleReport annealed_ensemble(const EnvSpec& spec, std::size_t n_env, std::size_t n_traj,
                                        std::uint64_t env_seed, const WalkConfig& cfg,
                                        std::size_t threads = 1)
{
    if (n_env < 1 || n_traj < 1) {
        throw InvalidParameter("ensemble: n_env and n_traj must be >= 1");
    }
    const std::size_t total = n_env * n_traj;
    std::vector<TrajectoryRecord> rows(total);
    parallel_for(total, threads, [&](std::size_t index) {
        const std::size_t i = index / n_traj;
        const Environment env(spec, env_seed + i);
        WalkConfig local = cfg;
        local.trajectory_seed = stream_seed(cfg.trajectory_seed, index);
        rows[index] = {env.seed(), local.trajectory_seed, simulate_quenched(env, local)};
    });

    EnsembleReport rep;
    rep.n_env = n_env;
    rep.n_traj = n_traj;
    rep.steps = cfg.steps;
    rep.per_env_mean_speed.assign(n_env, 0.0);
    const auto steps = static_cast<double>(cfg.steps);
    RunningStats speed;
    double sum_max = 0.0;
    std::size_t never = 0;
    std::size_t early = 0;
    for (std::size_t index = 0; index < total; ++index) {
        const WalkSummary& s = rows[index].summary;
        const double v = static_cast<double>(s.final_distance) / steps;
        speed.add(v);
        sum_max += static_cast<double>(s.max_distance);
        rep.per_env_mean_speed[index / n_traj] += v / static_cast<double>(n_traj);
        if (!s.last_return_time) {
            ++never;
            ++early;
            continue;
        }
        if (2 * *s.last_return_time < cfg.steps) {
            ++early;
        }
        std::size_t bucket = 0;
        while ((*s.last_return_time >> (bucket + 1)) != 0) {
            ++bucket;
        }
        if (rep.last_return_histogram.size() <= bucket) {
            rep.last_return_histogram.resize(bucket + 1, 0);
        }
        ++rep.last_return_histogram[bucket];
    }
    const auto n = static_cast<double>(total);
    rep.mean_speed = speed.mean();
    rep.speed_std_error = speed.std_error();
    rep.mean_max_distance = sum_max / n;
    rep.never_returned_fraction = static_cast<double>(never) / n;
    rep.early_last_return_fraction = static_cast<double>(early) / n;
    rep.rows = std::move(rows);
    return rep;
}

struct EscapeEstimate {
    double probability = 0.0;
    double std_error = 0.0;
    std::size_t trajectories = 0;
    std::size_t escaped = 0;
};

/// Monte Carlo estimate of P_omega^e(reach level `depth` before returning to e),
/// one trajectory per stream of `trajectory_seed`.
inline EscapeEstimate escape_before_return(const Environment& env, std::size_t depth,
                                           std::size_t trajectories, std::uint64_t trajectory_seed,
                                           std::size_t threads = 1)
{
    if (depth < 1 || trajectories < 1) {
        throw InvalidParameter("escape_before_return: depth and trajectories must be >= 1");
    }
    std::vector<char> hit(trajectories, 0);
    parallel_for(trajectories, threads, [&](std::size_t j) {
        SplitMix64 rng(stream_seed(trajectory_seed, j));
        PathCursor cursor(env);
        do {
            cursor.move(draw_letter(cursor.probs(), rng));
        } while (cursor.depth() != 0 && cursor.depth() < depth);
        hit[j] = cursor.depth() == depth;
    });
    EscapeEstimate est;
    est.trajectories = trajectories;
    for (char h : hit) {
        est.escaped += static_cast<std::size_t>(h);
    }
    const auto n = static_cast<double>(trajectories);
    est.probability = static_cast<double>(est.escaped) / n;
    est.std_error = std::sqrt(est.probability * (1.0 - est.probability) / n);
    return est;
}

} // namespace rwre
