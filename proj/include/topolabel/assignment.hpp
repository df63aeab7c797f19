#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace topolabel {

/// Maximum bipartite matching (Hopcroft-Karp). Left/right vertex counts
/// are fixed at construction; edges are added explicitly.
class BipartiteMatcher {
public:
    BipartiteMatcher(std::size_t n_left, std::size_t n_right);

    void add_edge(std::size_t left, std::size_t right);
    void clear_edges();

    /// Returns the matching size; pairing readable via match_of_left.
    std::size_t solve();

    static constexpr int kUnmatched = -1;
    const std::vector<int>& match_of_left() const { return match_left_; }

private:
    bool bfs_layers();
    bool dfs_augment(int u);

    std::size_t n_left_, n_right_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> match_left_, match_right_;
    std::vector<int> layer_;
};

/// Exact min-cost perfect assignment on a dense square cost matrix
/// (Hungarian algorithm with potentials, O(n^3)). Returns total cost;
/// assignment[i] = column assigned to row i.
double solve_assignment(const std::vector<std::vector<double>>& cost,
                        std::vector<int>& assignment);

} // namespace topolabel
