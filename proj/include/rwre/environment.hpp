#pragma once

// The i.i.d. random environment: a virtual field that recomputes the transition
// vector of any vertex from (family, seed, vertex word). Nothing is stored, so
// an environment on the infinite tree costs O(1) memory and queries may arrive
// in any order from any thread.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "rwre/error.hpp"
#include "rwre/group_words.hpp"
#include "rwre/random.hpp"

namespace rwre {

/// Probability vector over the d neighbours, indexed by letter code:
/// entry s is omega(x, s x).
class TransitionVector {
public:
    TransitionVector() = default;

    /// Validates nonnegativity and renormalizes to sum one.
    explicit TransitionVector(std::vector<double> probs) : probs_(std::move(probs))
    {
        double total = 0.0;
        for (double p : probs_) {
            if (!(p >= 0.0) || !std::isfinite(p)) {
                throw InvalidParameter("transition vector entries must be finite and >= 0");
            }
            total += p;
        }
        if (!(total > 0.0)) {
            throw InvalidParameter("transition vector must have positive mass");
        }
        for (double& p : probs_) {
            p /= total;
        }
    }

    static TransitionVector adopt_normalized(std::vector<double> probs)
    {
        TransitionVector v;
        v.probs_ = std::move(probs);
        return v;
    }

    std::size_t size() const noexcept { return probs_.size(); }
    double operator[](Letter s) const { return probs_[s.code]; }
    double operator[](std::size_t i) const { return probs_[i]; }
    std::span<const double> probs() const noexcept { return probs_; }
    double min() const { return *std::min_element(probs_.begin(), probs_.end()); }

    friend bool operator==(const TransitionVector&, const TransitionVector&) = default;

private:
    std::vector<double> probs_;
};

namespace family {

/// omega(x, .) = (1/d, ..., 1/d) at every vertex.
struct SimpleSymmetric {};

struct Dirichlet {
    std::vector<double> alpha;
};

/// Finitely supported law on transition vectors.
struct FinitePoints {
    std::vector<TransitionVector> points;
    std::vector<double> weights;
};

/// eps + (1 - eps d) * Dirichlet(alpha), coordinatewise.
struct EllipticFloor {
    Dirichlet base;
    double epsilon = 0.0;
};

} // namespace family

using Family = std::variant<family::SimpleSymmetric, family::Dirichlet, family::FinitePoints,
                            family::EllipticFloor>;

/// The marginal law P of omega(e, .), with the presentation it lives on.
class EnvSpec {
public:
    EnvSpec(Presentation presentation, Family fam)
        : presentation_(presentation), family_(std::move(fam))
    {
        validate();
    }

    const Presentation& presentation() const noexcept { return presentation_; }
    const Family& family() const noexcept { return family_; }
    int degree() const noexcept { return presentation_.degree(); }

    std::string family_name() const
    {
        return std::visit(
            [](const auto& f) -> std::string {
                using F = std::decay_t<decltype(f)>;
                if constexpr (std::is_same_v<F, family::SimpleSymmetric>) {
                    return "simple_symmetric";
                } else if constexpr (std::is_same_v<F, family::Dirichlet>) {
                    return "dirichlet";
                } else if constexpr (std::is_same_v<F, family::FinitePoints>) {
                    return "finite_points";
                } else {
                    return "elliptic_floor";
                }
            },
            family_);
    }

private:
    void validate_alpha(const std::vector<double>& alpha) const
    {
        if (alpha.size() != static_cast<std::size_t>(degree())) {
            throw InvalidParameter("alpha must have d = " + std::to_string(degree()) + " entries");
        }
        for (double a : alpha) {
            if (!(a > 0.0) || !std::isfinite(a)) {
                throw InvalidParameter("alpha entries must be finite and > 0");
            }
        }
    }

    void validate()
    {
        const auto d = static_cast<std::size_t>(degree());
        if (auto* dir = std::get_if<family::Dirichlet>(&family_)) {
            validate_alpha(dir->alpha);
        } else if (auto* fp = std::get_if<family::FinitePoints>(&family_)) {
            if (fp->points.empty() || fp->points.size() != fp->weights.size()) {
                throw InvalidParameter("points and weights must be nonempty and of equal length");
            }
            double total = 0.0;
            for (std::size_t i = 0; i < fp->points.size(); ++i) {
                if (fp->points[i].size() != d) {
                    throw InvalidParameter("every point needs d = " + std::to_string(d)
                                           + " entries");
                }
                if (!(fp->weights[i] >= 0.0)) {
                    throw InvalidParameter("weights must be nonnegative");
                }
                total += fp->weights[i];
            }
            if (std::abs(total - 1.0) > 1e-9) {
                throw InvalidParameter("weights must sum to 1");
            }
        } else if (auto* ef = std::get_if<family::EllipticFloor>(&family_)) {
            validate_alpha(ef->base.alpha);
            if (!(ef->epsilon > 0.0) || !(ef->epsilon * static_cast<double>(d) < 1.0)) {
                throw InvalidParameter("elliptic floor needs 0 < epsilon and epsilon * d < 1");
            }
        }
    }

    Presentation presentation_;
    Family family_;
};

namespace detail {

template <class Engine>
void sample_dirichlet(Engine& rng, std::span<const double> alpha, std::span<double> out)
{
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        out[i] = log_gamma_variate(rng, alpha[i]);
        top = std::max(top, out[i]);
    }
    double total = 0.0;
    for (double& v : out) {
        v = std::exp(v - top);
        total += v;
    }
    for (double& v : out) {
        v /= total;
    }
}

} // namespace detail

/// Draws one vector of the family's law from an engine seeded with `key`.
inline void sample_transition(const EnvSpec& spec, std::uint64_t key, std::span<double> out)
{
    SplitMix64 rng(key);
    const auto d = static_cast<std::size_t>(spec.degree());
    std::visit(
        [&](const auto& f) {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, family::SimpleSymmetric>) {
                std::fill(out.begin(), out.end(), 1.0 / static_cast<double>(d));
            } else if constexpr (std::is_same_v<F, family::Dirichlet>) {
                detail::sample_dirichlet(rng, f.alpha, out);
            } else if constexpr (std::is_same_v<F, family::FinitePoints>) {
                const double u = uniform01(rng);
                double cumulative = 0.0;
                std::size_t pick = f.points.size() - 1;
                for (std::size_t i = 0; i < f.points.size(); ++i) {
                    cumulative += f.weights[i];
                    if (u < cumulative) {
                        pick = i;
                        break;
                    }
                }
                auto p = f.points[pick].probs();
                std::copy(p.begin(), p.end(), out.begin());
            } else {
                detail::sample_dirichlet(rng, f.base.alpha, out);
                const double scale = 1.0 - f.epsilon * static_cast<double>(d);
                for (double& v : out) {
                    v = f.epsilon + scale * v;
                }
            }
        },
        spec.family());
}

/// One fold step of the vertex key: absorbs the letter one level further out.
constexpr std::uint64_t fold_key(std::uint64_t state, Letter s) noexcept
{
    return splitmix64(state ^ (static_cast<std::uint64_t>(s.code) + kGolden));
}

/// Finalizes a fold state into the vertex key.
constexpr std::uint64_t finish_key(std::uint64_t state) noexcept { return splitmix64(state); }

/// Per-vertex key: state <- seed; for each letter alpha_1, ..., alpha_n
/// (root outward) state <- splitmix64(state ^ (code + golden));
/// key = splitmix64(state). Root-first order lets a walker extend the key of
/// its parent in O(1).
inline std::uint64_t derive_vertex_key(std::uint64_t seed, const Word& w)
{
    std::uint64_t state = seed;
    for (Letter s : w.root_first()) {
        state = fold_key(state, s);
    }
    return finish_key(state);
}

/// One realization omega of the environment, identified by its seed.
class Environment {
public:
    Environment(EnvSpec spec, std::uint64_t seed) : spec_(std::move(spec)), seed_(seed) {}

    const EnvSpec& spec() const noexcept { return spec_; }
    const Presentation& presentation() const noexcept { return spec_.presentation(); }
    std::uint64_t seed() const noexcept { return seed_; }
    int degree() const noexcept { return spec_.degree(); }

    TransitionVector transition_at(const Word& w) const
    {
        std::vector<double> probs(static_cast<std::size_t>(degree()));
        fill_at_key(derive_vertex_key(seed_, w), probs);
        return TransitionVector::adopt_normalized(std::move(probs));
    }

    void fill_at_key(std::uint64_t key, std::span<double> out) const
    {
        sample_transition(spec_, key, out);
    }

private:
    EnvSpec spec_;
    std::uint64_t seed_;
};

/// A position in the tree that carries the key fold and the transition vector
/// of every vertex on its geodesic from the root. Moving to a neighbour costs
/// one vector evaluation when stepping outward and nothing when stepping back.
class PathCursor {
public:
    explicit PathCursor(const Environment& env, const Word& start = Word())
        : env_(&env), d_(static_cast<std::size_t>(env.degree()))
    {
        folds_.push_back(env.seed());
        probs_.resize(d_);
        env.fill_at_key(finish_key(folds_.back()), std::span<double>(probs_).first(d_));
        for (Letter s : start.root_first()) {
            descend(s);
        }
    }

    const Word& word() const noexcept { return word_; }
    std::size_t depth() const noexcept { return word_.length(); }
    std::uint64_t key() const noexcept { return finish_key(folds_.back()); }

    /// omega(x, .) at the current vertex x.
    std::span<const double> probs() const noexcept
    {
        return std::span<const double>(probs_).subspan(depth() * d_, d_);
    }

    /// omega at the ancestor at depth k (0 <= k <= depth()).
    std::span<const double> probs_at_depth(std::size_t k) const noexcept
    {
        return std::span<const double>(probs_).subspan(k * d_, d_);
    }

    /// Moves to s * x.
    void move(Letter s)
    {
        const Presentation& p = env_->presentation();
        if (!p.valid(s)) {
            throw InvalidLetter("letter code " + std::to_string(s.code) + " outside [0, "
                                + std::to_string(p.degree()) + ")");
        }
        if (!word_.is_root() && word_.leading() == p.inverse(s)) {
            ascend();
        } else {
            descend(s);
        }
    }

    void ascend()
    {
        word_.pop_leading();
        folds_.pop_back();
        probs_.resize((depth() + 1) * d_);
    }

private:
    void descend(Letter s)
    {
        word_.push_leading(s);
        folds_.push_back(fold_key(folds_.back(), s));
        const std::size_t offset = probs_.size();
        probs_.resize(offset + d_);
        env_->fill_at_key(finish_key(folds_.back()), std::span<double>(probs_).subspan(offset, d_));
    }

    const Environment* env_;
    std::size_t d_;
    Word word_;
    std::vector<std::uint64_t> folds_;
    std::vector<double> probs_;
};

/// Log-integrability check, E |log omega(e, s)| per generator.
struct A2Report {
    bool holds = true;
    std::vector<bool> finite;
    std::vector<double> mean_abs_log;   ///< Monte Carlo estimate; +inf where not finite
    std::vector<double> std_error;
    std::vector<std::optional<double>> analytic;
    std::size_t samples = 0;
};

inline A2Report check_a2(const EnvSpec& spec, std::size_t samples, std::uint64_t seed = 0)
{
    if (samples < 1) {
        throw InvalidParameter("check_a2: samples must be >= 1");
    }
    const auto d = static_cast<std::size_t>(spec.degree());
    A2Report rep;
    rep.samples = samples;
    rep.finite.assign(d, true);
    rep.analytic.assign(d, std::nullopt);

    if (std::holds_alternative<family::SimpleSymmetric>(spec.family())) {
        rep.analytic.assign(d, std::log(static_cast<double>(d)));
    } else if (auto* dir = std::get_if<family::Dirichlet>(&spec.family())) {
        // omega(e, s) ~ Beta(alpha_s, A - alpha_s), so -E log = psi(A) - psi(alpha_s).
        const double total = std::accumulate(dir->alpha.begin(), dir->alpha.end(), 0.0);
        for (std::size_t s = 0; s < d; ++s) {
            rep.analytic[s] = digamma(total) - digamma(dir->alpha[s]);
        }
    } else if (auto* fp = std::get_if<family::FinitePoints>(&spec.family())) {
        std::vector<double> exact(d, 0.0);
        for (std::size_t i = 0; i < fp->points.size(); ++i) {
            if (fp->weights[i] <= 0.0) {
                continue;
            }
            for (std::size_t s = 0; s < d; ++s) {
                const double p = fp->points[i][s];
                if (p <= 0.0) {
                    rep.finite[s] = false;
                } else {
                    exact[s] += fp->weights[i] * std::abs(std::log(p));
                }
            }
        }
        for (std::size_t s = 0; s < d; ++s) {
            if (rep.finite[s]) {
                rep.analytic[s] = exact[s];
            }
        }
    }

    std::vector<RunningStats> stats(d);
    std::vector<double> probs(d);
    for (std::size_t i = 0; i < samples; ++i) {
        sample_transition(spec, stream_seed(seed, i), probs);
        for (std::size_t s = 0; s < d; ++s) {
            if (!rep.finite[s]) {
                continue;
            }
            stats[s].add(std::abs(std::log(probs[s])));
        }
    }
    rep.mean_abs_log.resize(d);
    rep.std_error.resize(d);
    for (std::size_t s = 0; s < d; ++s) {
        if (!rep.finite[s]) {
            rep.holds = false;
            rep.mean_abs_log[s] = std::numeric_limits<double>::infinity();
            rep.std_error[s] = std::numeric_limits<double>::quiet_NaN();
            continue;
        }
        rep.mean_abs_log[s] = stats[s].mean();
        rep.std_error[s] = stats[s].std_error();
    }
    return rep;
}

/// Largest eps certifiable from the family's definition, if any.
inline std::optional<double> check_a3(const EnvSpec& spec)
{
    return std::visit(
        [&](const auto& f) -> std::optional<double> {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, family::SimpleSymmetric>) {
                return 1.0 / static_cast<double>(spec.degree());
            } else if constexpr (std::is_same_v<F, family::Dirichlet>) {
                return std::nullopt;
            } else if constexpr (std::is_same_v<F, family::FinitePoints>) {
                double lo = std::numeric_limits<double>::infinity();
                for (std::size_t i = 0; i < f.points.size(); ++i) {
                    if (f.weights[i] > 0.0) {
                        lo = std::min(lo, f.points[i].min());
                    }
                }
                if (lo > 0.0) {
                    return lo;
                }
                return std::nullopt;
            } else {
                return f.epsilon;
            }
        },
        spec.family());
}

} // namespace rwre
