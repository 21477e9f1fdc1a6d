#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

namespace pacsim {

/// One forward branch out of a tree node. `tree_bit` is the branch label in
/// the search tree (the precoder input bit for PAC, the message bit for the
/// convolutional tree); `engine_bit` is whatever the model needs to advance
/// its likelihood state.
struct BranchCand {
    double gamma = 0.0;
    std::uint8_t tree_bit = 0;
    std::uint8_t engine_bit = 0;
};

/// Forward branches of a node, already ordered best-first.
struct BranchSet {
    BranchCand cand[2];
    int count = 0;
};

struct FanoParams {
    double delta = 2.0;
    std::optional<std::uint64_t> z_max;
};

struct FanoResult {
    bool completed = false;        // false => aborted on z_max
    std::uint64_t visits = 0;      // forward moves, repeats included
    std::uint64_t back_moves = 0;
    double final_metric = 0.0;     // path metric at the point of return
};

struct FanoObserverNone {
    void forward(std::size_t /*depth*/, double /*gamma_path*/, double /*t*/,
                 bool /*first_visit*/) {}
    void tightened(double /*t*/, double /*gamma_path*/) {}
    void backward(std::size_t /*depth*/, double /*t*/) {}
    void lowered(double /*t*/) {}
};

/// Fano sequential search over a binary code tree, following the classic
/// flowchart: try the best (or, after a back move, the next-ranked) branch
/// against the running threshold T; on success move forward and, on a first
/// visit, tighten T to the largest multiple of delta not exceeding the path
/// metric; otherwise move back when the predecessor satisfies T, else lower
/// T by delta. The threshold is kept as an integer multiple of delta.
///
/// Tree requirements:
///   std::size_t levels() const;
///   BranchSet branches(std::size_t depth) const;  // at current engine depth
///   void push(std::size_t depth, const BranchCand&);
///   void pop(std::size_t depth);
template <class Tree, class Observer>
FanoResult fano_search(Tree& tree, const FanoParams& params, Observer&& obs) {
    const std::size_t n_levels = tree.levels();
    const double delta = params.delta;

    std::vector<double> gamma_path(n_levels + 1, 0.0);
    std::vector<std::uint8_t> rank_taken(n_levels, 0);

    std::int64_t t_steps = 0;  // T = t_steps * delta
    std::uint64_t visits = 0;
    std::uint64_t back_moves = 0;
    std::size_t depth = 0;
    int rank = 0;

    for (;;) {
        const double threshold = static_cast<double>(t_steps) * delta;
        bool moved = false;
        const BranchSet branches = tree.branches(depth);
        if (rank < branches.count) {
            const BranchCand& cand = branches.cand[rank];
            const double metric_fwd = gamma_path[depth] + cand.gamma;
            if (metric_fwd >= threshold) {
                const bool first_visit = gamma_path[depth] < threshold + delta;
                tree.push(depth, cand);
                rank_taken[depth] = static_cast<std::uint8_t>(rank);
                ++depth;
                gamma_path[depth] = metric_fwd;
                ++visits;
                obs.forward(depth, metric_fwd, threshold, first_visit);
                if (params.z_max && visits > *params.z_max)
                    return {false, visits, back_moves, metric_fwd};
                if (depth == n_levels)
                    return {true, visits, back_moves, metric_fwd};
                if (first_visit) {
                    t_steps = static_cast<std::int64_t>(std::floor(metric_fwd / delta));
                    obs.tightened(static_cast<double>(t_steps) * delta, metric_fwd);
                }
                rank = 0;
                moved = true;
            }
        }
        if (!moved) {
            if (depth > 0 && gamma_path[depth - 1] >= threshold) {
                --depth;
                tree.pop(depth);
                ++back_moves;
                rank = rank_taken[depth] + 1;
                obs.backward(depth, threshold);
            } else {
                --t_steps;
                rank = 0;
                obs.lowered(static_cast<double>(t_steps) * delta);
            }
        }
    }
}

template <class Tree>
FanoResult fano_search(Tree& tree, const FanoParams& params) {
    FanoObserverNone obs;
    return fano_search(tree, params, obs);
}

}  // namespace pacsim
