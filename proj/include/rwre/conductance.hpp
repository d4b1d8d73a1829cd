#pragma once

// Electrical description of the walk. For sigma = alpha_n ... alpha_1 with
// geodesic e = x_0, x_1, ..., x_n = sigma (x_k = alpha_k x_{k-1}) the parent
// edge of sigma carries
//
//   C(sigma, parent) = omega(e, x_1) prod_{k=1}^{n-1} omega(x_k, x_{k+1}) / omega(x_k, x_{k-1})
//
// and Phi(sigma) = 1 / C(sigma, parent). These weights make the walk reversible:
// C(x, y) / sum_z C(x, z) = omega(x, y). Phi is exponential in n, so it is
// carried as ln Phi throughout.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <vector>

#include "rwre/environment.hpp"
#include "rwre/error.hpp"
#include "rwre/group_words.hpp"
#include "rwre/parallel.hpp"
#include "rwre/random.hpp"

namespace rwre {

/// The geodesic from e to a vertex sigma, read off the reduced word of sigma.
class PathToVertex {
public:
    PathToVertex() = default;
    explicit PathToVertex(Word target) : target_(std::move(target)) {}

    std::size_t length() const noexcept { return target_.length(); }
    const Word& target() const noexcept { return target_; }

    /// alpha_k, 1 <= k <= n.
    Letter letter(std::size_t k) const { return target_.letter_from_root(k); }

    /// x_k = alpha_k ... alpha_1, 0 <= k <= n.
    Word vertex(std::size_t k) const
    {
        return Word::from_root_first(target_.root_first().first(k));
    }

private:
    Word target_;
};

namespace detail {

inline double checked_log(double p)
{
    if (!(p > 0.0)) {
        throw AssumptionViolated(
            "zero transition probability on the path: the environment violates log-integrability");
    }
    return std::log(p);
}

} // namespace detail

/// ln Phi(sigma) = -ln omega_0(alpha_1)
///                 + sum_{k=1}^{n-1} [ln omega_k(alpha_k^-1) - ln omega_k(alpha_{k+1})],
/// with omega_k(s) = omega(x_k, s x_k).
inline double log_phi(const Environment& env, const PathToVertex& path)
{
    const std::size_t n = path.length();
    if (n == 0) {
        throw InvalidParameter("log_phi: the root has no parent edge");
    }
    const Presentation& p = env.presentation();
    PathCursor cursor(env);
    double acc = -detail::checked_log(cursor.probs()[path.letter(1).code]);
    for (std::size_t k = 1; k < n; ++k) {
        cursor.move(path.letter(k));
        const auto omega = cursor.probs();
        acc += detail::checked_log(omega[p.inverse(path.letter(k)).code])
            - detail::checked_log(omega[path.letter(k + 1).code]);
    }
    return acc;
}

/// C(sigma, parent) = exp(-ln Phi(sigma)).
inline double conductance_edge(const Environment& env, const PathToVertex& path)
{
    return std::exp(-log_phi(env, path));
}

/// The generator chain Y_n on S: Y_1 uniform on S, then Y_{m+1} uniform on
/// S minus {Y_m^-1}. Partial products Y_n ... Y_1 are uniform on the n-sphere.
class SphereSampler {
public:
    SphereSampler(Presentation presentation, std::uint64_t seed)
        : presentation_(presentation), rng_(seed)
    {
    }

    const Presentation& presentation() const noexcept { return presentation_; }
    std::optional<Letter> current() const noexcept { return current_; }

    void restart() noexcept { current_.reset(); }

    Letter next()
    {
        const auto d = static_cast<std::uint64_t>(presentation_.degree());
        if (!current_) {
            current_ = Letter(static_cast<std::uint8_t>(uniform_index(rng_, d)));
            return *current_;
        }
        const std::uint8_t excluded = presentation_.inverse(*current_).code;
        auto pick = static_cast<std::uint8_t>(uniform_index(rng_, d - 1));
        if (pick >= excluded) {
            ++pick;
        }
        current_ = Letter(pick);
        return *current_;
    }

    /// Law of Y_1.
    double initial_probability(Letter) const
    {
        return 1.0 / static_cast<double>(presentation_.degree());
    }

    /// mu(Y_{m+1} = next | Y_m = prev).
    double transition_probability(Letter prev, Letter next) const
    {
        if (next == presentation_.inverse(prev)) {
            return 0.0;
        }
        return 1.0 / static_cast<double>(presentation_.degree() - 1);
    }

private:
    Presentation presentation_;
    SplitMix64 rng_;
    std::optional<Letter> current_;
};

/// Runs a fresh chain for n steps and returns the geodesic of eta_n = Y_n ... Y_1.
inline PathToVertex sample_eta(SphereSampler& sampler, std::size_t n)
{
    if (n < 1) {
        throw InvalidParameter("sample_eta: n must be >= 1");
    }
    sampler.restart();
    std::vector<Letter> root_first;
    root_first.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        root_first.push_back(sampler.next());
    }
    return PathToVertex(Word::from_root_first(root_first));
}

/// N_n(s) / n from a fresh chain run of length n.
inline std::vector<double> occupation_frequencies(SphereSampler& sampler, std::size_t n)
{
    if (n < 1) {
        throw InvalidParameter("occupation_frequencies: n must be >= 1");
    }
    sampler.restart();
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(sampler.presentation().degree()), 0);
    for (std::size_t k = 0; k < n; ++k) {
        ++counts[sampler.next().code];
    }
    std::vector<double> freq(counts.size());
    for (std::size_t s = 0; s < counts.size(); ++s) {
        freq[s] = static_cast<double>(counts[s]) / static_cast<double>(n);
    }
    return freq;
}

/// Midpoint of the admissible interval (1/(d-1), 1).
inline double default_delta(int d) { return 0.5 * (1.0 / (d - 1) + 1.0); }

inline void validate_delta(double delta, int d)
{
    const double lo = 1.0 / (d - 1);
    if (!(delta > lo && delta < 1.0)) {
        std::ostringstream msg;
        msg << "Delta = " << delta << " must lie in the open interval (1/(d-1), 1) = (" << lo
            << ", 1) for d = " << d;
        throw InvalidParameter(msg.str());
    }
}

/// ln of (1/2) d (d-1)^(n-1) Delta^n, the flow-sum lower bound at level n.
inline double log_flow_lower_bound(int d, double delta, std::size_t n)
{
    const auto nn = static_cast<double>(n);
    return std::log(0.5) + std::log(static_cast<double>(d)) + (nn - 1.0) * std::log(d - 1.0)
        + nn * std::log(delta);
}

struct FlowRow {
    std::size_t n = 0;
    std::size_t samples = 0;
    double mean_log_phi_over_n = 0.0;
    double std_error = 0.0;
    double fraction_below = 0.0;                 ///< share with Phi(eta_n) < Delta^(-n/2)
    std::optional<double> flow_lower_bound;      ///< present when fraction_below > 1/2
    double log_flow_lower_bound = 0.0;
};

struct FlowReport {
    double delta = 0.0;
    int degree = 0;
    std::vector<FlowRow> rows;
    /// Smallest tested n from which every tested fraction exceeds 1/2.
    std::optional<std::size_t> empirical_threshold;
};

/// Monte Carlo over eta_n for each requested n, in one fixed environment.
/// Sample i of the j-th level (ascending n) uses stream j * samples + i of `seed`.
inline FlowReport lln_report(const Environment& env, double delta, std::vector<std::size_t> n_list,
                             std::size_t samples, std::uint64_t seed, std::size_t threads = 1)
{
    const int d = env.degree();
    validate_delta(delta, d);
    if (samples < 100) {
        throw InvalidParameter("lln_report: samples must be >= 100");
    }
    if (n_list.empty()) {
        throw InvalidParameter("lln_report: no levels requested");
    }
    std::sort(n_list.begin(), n_list.end());
    n_list.erase(std::unique(n_list.begin(), n_list.end()), n_list.end());
    if (n_list.front() < 1) {
        throw InvalidParameter("lln_report: levels must be >= 1");
    }

    FlowReport rep;
    rep.delta = delta;
    rep.degree = d;
    const double log_inv_delta = -std::log(delta);
    for (std::size_t j = 0; j < n_list.size(); ++j) {
        const std::size_t n = n_list[j];
        std::vector<double> values(samples);
        parallel_for(samples, threads, [&](std::size_t i) {
            SphereSampler sampler(env.presentation(), stream_seed(seed, j * samples + i));
            values[i] = log_phi(env, sample_eta(sampler, n));
        });
        const auto nn = static_cast<double>(n);
        const double threshold = 0.5 * nn * log_inv_delta;
        double sum = 0.0;
        std::size_t below = 0;
        for (double lp : values) {
            sum += lp / nn;
            below += lp < threshold ? 1 : 0;
        }
        const auto m = static_cast<double>(samples);
        FlowRow row;
        row.n = n;
        row.samples = samples;
        row.mean_log_phi_over_n = sum / m;
        double sq = 0.0;
        for (double lp : values) {
            const double dev = lp / nn - row.mean_log_phi_over_n;
            sq += dev * dev;
        }
        row.std_error = std::sqrt(sq / (m - 1) / m);
        row.fraction_below = static_cast<double>(below) / m;
        row.log_flow_lower_bound = log_flow_lower_bound(d, delta, n);
        if (row.fraction_below > 0.5) {
            row.flow_lower_bound = std::exp(row.log_flow_lower_bound);
        }
        rep.rows.push_back(row);
    }
    for (std::size_t j = rep.rows.size(); j-- > 0;) {
        if (rep.rows[j].fraction_below > 0.5) {
            rep.empirical_threshold = rep.rows[j].n;
        } else {
            break;
        }
    }
    return rep;
}

} // namespace rwre
