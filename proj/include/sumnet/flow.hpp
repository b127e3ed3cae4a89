#pragma once

// Integral max-flow (Edmonds-Karp). Arcs are scanned in insertion order, so
// the flow found is a deterministic function of the order arcs were added.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace sumnet {

class FlowNetwork {
 public:
    explicit FlowNetwork(std::size_t num_nodes);

    /// Returns the arc id, usable with flow_on().
    std::size_t add_arc(std::size_t from, std::size_t to, std::int64_t capacity);

    std::int64_t max_flow(std::size_t source, std::size_t sink);
    std::int64_t flow_on(std::size_t arc) const;

    std::size_t num_nodes() const noexcept { return adjacency_.size(); }

 private:
    struct Arc {
        std::size_t to;
        std::int64_t residual;
    };
    std::vector<Arc> arcs_;  // arc 2k is forward, 2k+1 its reverse
    std::vector<std::int64_t> capacity_;
    std::vector<std::vector<std::size_t>> adjacency_;
};

}  // namespace sumnet
