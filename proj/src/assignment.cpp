#include "topolabel/assignment.hpp"

#include <limits>
#include <queue>

namespace topolabel {

BipartiteMatcher::BipartiteMatcher(std::size_t n_left, std::size_t n_right)
    : n_left_(n_left), n_right_(n_right), adj_(n_left) {}

void BipartiteMatcher::add_edge(std::size_t left, std::size_t right) {
    adj_[left].push_back(static_cast<int>(right));
}

void BipartiteMatcher::clear_edges() {
    for (auto& a : adj_) a.clear();
}

bool BipartiteMatcher::bfs_layers() {
    std::queue<int> q;
    layer_.assign(n_left_, -1);
    for (std::size_t u = 0; u < n_left_; ++u)
        if (match_left_[u] == kUnmatched) {
            layer_[u] = 0;
            q.push(static_cast<int>(u));
        }
    bool reachable_free = false;
    while (!q.empty()) {
        const int u = q.front();
        q.pop();
        for (int v : adj_[u]) {
            const int w = match_right_[v];
            if (w == kUnmatched)
                reachable_free = true;
            else if (layer_[w] == -1) {
                layer_[w] = layer_[u] + 1;
                q.push(w);
            }
        }
    }
    return reachable_free;
}

bool BipartiteMatcher::dfs_augment(int u) {
    for (int v : adj_[u]) {
        const int w = match_right_[v];
        if (w == kUnmatched || (layer_[w] == layer_[u] + 1 && dfs_augment(w))) {
            match_left_[u] = v;
            match_right_[v] = u;
            return true;
        }
    }
    layer_[u] = -1; // dead end for this phase
    return false;
}

std::size_t BipartiteMatcher::solve() {
    match_left_.assign(n_left_, kUnmatched);
    match_right_.assign(n_right_, kUnmatched);
    std::size_t matched = 0;
    while (bfs_layers())
        for (std::size_t u = 0; u < n_left_; ++u)
            if (match_left_[u] == kUnmatched && dfs_augment(static_cast<int>(u))) ++matched;
    return matched;
}

// Row-potential Hungarian method. Potentials keep reduced costs
// nonnegative, so the greedy shortest augmenting path is optimal.
double solve_assignment(const std::vector<std::vector<double>>& cost, std::vector<int>& assignment) {
    const int n = static_cast<int>(cost.size());
    constexpr double inf = std::numeric_limits<double>::infinity();

    // 1-based with a virtual row/column 0.
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);

    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            double delta = inf;
            int j1 = 0;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    assignment.assign(n, -1);
    double total = 0.0;
    for (int j = 1; j <= n; ++j) {
        if (p[j] == 0) continue;
        assignment[p[j] - 1] = j - 1;
        total += cost[p[j] - 1][j - 1];
    }
    return total;
}

} // namespace topolabel
