#pragma once

// Effective conductance between the root and the depth-L sphere of the tree,
// with the edge conductances of conductance.hpp.
//
// Series-parallel reduction: a vertex v below its parent edge c_p, with child
// subtrees of effective conductance g_1, ..., g_{d-1}, presents
// c_p G / (c_p + G), G = sum g_i. Every conductance in the subtree of v is c_p
// times a product of omega ratios, so the recursion runs on the scale-free
// quantity h_v = g_v / c_p:
//
//   h_v = H / (1 + H),   H = sum_{children c} rho_c h_c,
//   rho_c = omega(v, c) / omega(v, parent),   h = 1 on the boundary,
//
// and the root returns sum_s omega(e, s) h_{s e}. h_v lies in (0, 1] (it is the
// probability of reaching the boundary from v before the parent), so nothing
// overflows however extreme the conductances get.

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rwre/environment.hpp"
#include "rwre/error.hpp"
#include "rwre/group_words.hpp"
#include "rwre/parallel.hpp"

namespace rwre {

inline constexpr std::uint64_t kDefaultVertexBudget = 10'000'000;

struct NetworkResult {
    std::size_t depth = 0;
    double effective_conductance = 0.0;
    double escape_probability = 0.0;   ///< equal to the conductance: pi(e) = 1
    std::uint64_t vertices_visited = 0;
};

/// Vertices of the depth-L truncation, or ResourceBudget when above `budget`.
inline std::uint64_t truncated_tree_size(const Presentation& p, std::size_t depth,
                                         std::uint64_t budget)
{
    std::uint64_t count = 0;
    try {
        count = p.ball_size(depth);
    } catch (const Overflow&) {
        throw ResourceBudget("depth " + std::to_string(depth) + " overflows the vertex count");
    }
    if (count > budget) {
        throw ResourceBudget("depth " + std::to_string(depth) + " needs " + std::to_string(count)
                             + " vertices, over the budget of " + std::to_string(budget));
    }
    return count;
}

/// Largest L whose truncation fits in `budget` vertices.
inline std::size_t max_depth_within_budget(const Presentation& p, std::uint64_t budget)
{
    std::size_t depth = 0;
    for (;;) {
        try {
            truncated_tree_size(p, depth + 1, budget);
        } catch (const ResourceBudget&) {
            return depth;
        }
        ++depth;
    }
}

namespace detail {

inline double ratio_or_throw(double num, double den)
{
    if (!(num > 0.0) || !(den > 0.0)) {
        throw AssumptionViolated("zero conductance in the network: the environment violates "
                                 "log-integrability");
    }
    return num / den;
}

inline double absorb(double big_h) { return 1.0 / (1.0 + 1.0 / big_h); }

/// h of the depth-1 vertex s e; `visited` counts every vertex of the subtree.
inline double subtree_ratio(const Environment& env, Letter first, std::size_t depth,
                            std::uint64_t& visited)
{
    visited = 1;
    if (depth == 1) {
        return 1.0;
    }
    const Presentation& p = env.presentation();
    const auto d = static_cast<std::uint8_t>(p.degree());

    struct Frame {
        std::uint8_t next = 0;
        double big_h = 0.0;
    };
    PathCursor cursor(env);
    cursor.move(first);
    std::vector<Frame> stack(1);
    stack.reserve(depth);

    for (;;) {
        Frame& frame = stack.back();
        const std::uint8_t up = p.inverse(cursor.word().leading()).code;
        if (frame.next == up) {
            ++frame.next;
        }
        if (frame.next < d) {
            const auto omega = cursor.probs();
            const std::uint8_t c = frame.next++;
            const double rho = ratio_or_throw(omega[c], omega[up]);
            ++visited;
            if (cursor.depth() + 1 == depth) {
                frame.big_h += rho;
            } else {
                cursor.move(Letter(c));
                stack.emplace_back();
            }
            continue;
        }
        const double h = absorb(frame.big_h);
        stack.pop_back();
        if (stack.empty()) {
            return h;
        }
        const Letter child = cursor.word().leading();
        cursor.ascend();
        const auto omega = cursor.probs();
        const std::uint8_t parent_up = p.inverse(cursor.word().leading()).code;
        stack.back().big_h += ratio_or_throw(omega[child.code], omega[parent_up]) * h;
    }
}

} // namespace detail

/// Effective conductance from e to the sphere of radius `depth`. The d root
/// subtrees may run in parallel; they are summed in generator order.
inline NetworkResult effective_conductance(const Environment& env, std::size_t depth,
                                           std::uint64_t budget = kDefaultVertexBudget,
                                           std::size_t threads = 1)
{
    if (depth < 1) {
        throw InvalidParameter("effective_conductance: depth must be >= 1");
    }
    const Presentation& p = env.presentation();
    truncated_tree_size(p, depth, budget);
    const auto d = static_cast<std::size_t>(p.degree());
    const TransitionVector root = env.transition_at(Word());

    std::vector<double> h(d);
    std::vector<std::uint64_t> visited(d);
    parallel_for(d, threads, [&](std::size_t s) {
        h[s] = detail::subtree_ratio(env, Letter(static_cast<std::uint8_t>(s)), depth, visited[s]);
    });

    NetworkResult out;
    out.depth = depth;
    out.vertices_visited = 1;
    for (std::size_t s = 0; s < d; ++s) {
        if (!(root[s] > 0.0)) {
            throw AssumptionViolated("zero conductance at the root edge");
        }
        out.effective_conductance += root[s] * h[s];
        out.vertices_visited += visited[s];
    }
    out.escape_probability = out.effective_conductance;
    return out;
}

/// P_omega^e(hit the depth-L sphere before returning to e).
inline double escape_probability(const Environment& env, std::size_t depth,
                                 std::uint64_t budget = kDefaultVertexBudget,
                                 std::size_t threads = 1)
{
    return effective_conductance(env, depth, budget, threads).escape_probability;
}

} // namespace rwre
