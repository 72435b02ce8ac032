#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <type_traits>
#include <vector>

#include "robustcut/errors.hpp"

namespace robustcut {

/// Dinic max-flow on an explicit arc list. Arcs are scanned in insertion
/// order, so results (including residual reachability) are deterministic.
/// For floating capacities, residuals at or below `tolerance` count as
/// saturated.
template <class Cap>
class MaxFlow {
public:
    static_assert(std::is_arithmetic_v<Cap>);

    explicit MaxFlow(std::size_t nodes = 0, Cap tolerance = Cap{})
        : adj_(nodes), tolerance_(tolerance) {}

    std::size_t add_node() {
        adj_.emplace_back();
        return adj_.size() - 1;
    }
    std::size_t node_count() const noexcept { return adj_.size(); }
    std::size_t arc_count() const noexcept { return arcs_.size() / 2; }
    void reserve_arcs(std::size_t n) { arcs_.reserve(2 * n); }

    /// Returns the arc id.
    std::size_t add_arc(std::size_t from, std::size_t to, Cap capacity) {
        if (capacity < Cap{}) throw InputError("negative arc capacity");
        const std::size_t id = arcs_.size();
        arcs_.push_back({to, capacity, capacity});
        arcs_.push_back({from, Cap{}, Cap{}});
        adj_[from].push_back(id);
        adj_[to].push_back(id + 1);
        return id / 2;
    }

    Cap flow_on(std::size_t arc) const { return arcs_[2 * arc].initial - arcs_[2 * arc].residual; }
    Cap residual(std::size_t arc) const { return arcs_[2 * arc].residual; }

    Cap solve(std::size_t source, std::size_t sink) {
        source_ = source;
        sink_ = sink;
        Cap total{};
        level_.assign(adj_.size(), -1);
        next_.assign(adj_.size(), 0);
        while (build_levels()) {
            std::fill(next_.begin(), next_.end(), 0);
            for (;;) {
                const Cap pushed = push_path();
                if (!(pushed > tolerance_)) break;
                total += pushed;
            }
        }
        return total;
    }

    /// Nodes reachable from the source through residual arcs.
    std::vector<std::uint8_t> source_reachable() const {
        std::vector<std::uint8_t> seen(adj_.size(), 0);
        std::vector<std::size_t> stack{source_};
        seen[source_] = 1;
        while (!stack.empty()) {
            const std::size_t v = stack.back();
            stack.pop_back();
            for (std::size_t e : adj_[v]) {
                const std::size_t w = arcs_[e].to;
                if (!seen[w] && arcs_[e].residual > tolerance_) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
            }
        }
        return seen;
    }

    /// Nodes from which the sink is reachable through residual arcs.
    std::vector<std::uint8_t> reaches_sink() const {
        std::vector<std::uint8_t> seen(adj_.size(), 0);
        std::vector<std::size_t> stack{sink_};
        seen[sink_] = 1;
        while (!stack.empty()) {
            const std::size_t v = stack.back();
            stack.pop_back();
            for (std::size_t e : adj_[v]) {
                const std::size_t u = arcs_[e].to;  // e^1 is the arc u -> v
                if (!seen[u] && arcs_[e ^ 1].residual > tolerance_) {
                    seen[u] = 1;
                    stack.push_back(u);
                }
            }
        }
        return seen;
    }

private:
    struct Arc {
        std::size_t to;
        Cap residual;
        Cap initial;
    };

    bool build_levels() {
        std::fill(level_.begin(), level_.end(), -1);
        std::vector<std::size_t> queue{source_};
        level_[source_] = 0;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const std::size_t v = queue[head];
            for (std::size_t e : adj_[v]) {
                const std::size_t w = arcs_[e].to;
                if (level_[w] < 0 && arcs_[e].residual > tolerance_) {
                    level_[w] = level_[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        return level_[sink_] >= 0;
    }

    // One augmenting path in the level graph, found iteratively.
    Cap push_path() {
        path_.clear();
        std::size_t v = source_;
        for (;;) {
            if (v == sink_) {
                Cap bottleneck = std::numeric_limits<Cap>::max();
                for (std::size_t e : path_) bottleneck = std::min(bottleneck, arcs_[e].residual);
                for (std::size_t e : path_) {
                    arcs_[e].residual -= bottleneck;
                    arcs_[e ^ 1].residual += bottleneck;
                }
                return bottleneck;
            }
            bool advanced = false;
            for (; next_[v] < adj_[v].size(); ++next_[v]) {
                const std::size_t e = adj_[v][next_[v]];
                const std::size_t w = arcs_[e].to;
                if (arcs_[e].residual > tolerance_ && level_[w] == level_[v] + 1) {
                    path_.push_back(e);
                    v = w;
                    advanced = true;
                    break;
                }
            }
            if (advanced) continue;
            level_[v] = -1;  // dead end for this phase
            if (path_.empty()) return Cap{};
            const std::size_t back = path_.back();
            path_.pop_back();
            v = arcs_[back ^ 1].to;
            ++next_[v];
        }
    }

    std::vector<std::vector<std::size_t>> adj_;
    std::vector<Arc> arcs_;
    Cap tolerance_;
    std::size_t source_ = 0;
    std::size_t sink_ = 0;
    std::vector<int> level_;
    std::vector<std::size_t> next_;
    std::vector<std::size_t> path_;
};

}  // namespace robustcut
