#include "sumnet/flow.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>

namespace sumnet {

FlowNetwork::FlowNetwork(std::size_t num_nodes) : adjacency_(num_nodes) {}

std::size_t FlowNetwork::add_arc(std::size_t from, std::size_t to, std::int64_t capacity) {
    if (from >= adjacency_.size() || to >= adjacency_.size()) throw std::out_of_range("flow arc endpoint out of range");
    if (capacity < 0) throw std::invalid_argument("negative arc capacity");
    const std::size_t id = arcs_.size();
    arcs_.push_back({to, capacity});
    arcs_.push_back({from, 0});
    capacity_.push_back(capacity);
    adjacency_[from].push_back(id);
    adjacency_[to].push_back(id + 1);
    return id / 2;
}

std::int64_t FlowNetwork::max_flow(std::size_t source, std::size_t sink) {
    if (source >= adjacency_.size() || sink >= adjacency_.size()) throw std::out_of_range("flow terminal out of range");
    if (source == sink) return 0;
    std::int64_t total = 0;
    constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> via(adjacency_.size());
    while (true) {
        std::fill(via.begin(), via.end(), none);
        std::deque<std::size_t> queue{source};
        via[source] = none - 1;
        while (!queue.empty() && via[sink] == none) {
            const std::size_t u = queue.front();
            queue.pop_front();
            for (std::size_t a : adjacency_[u]) {
                const Arc& arc = arcs_[a];
                if (arc.residual > 0 && via[arc.to] == none) {
                    via[arc.to] = a;
                    queue.push_back(arc.to);
                }
            }
        }
        if (via[sink] == none) return total;
        std::int64_t push = std::numeric_limits<std::int64_t>::max();
        for (std::size_t v = sink; v != source; v = arcs_[via[v] ^ 1u].to) push = std::min(push, arcs_[via[v]].residual);
        for (std::size_t v = sink; v != source; v = arcs_[via[v] ^ 1u].to) {
            arcs_[via[v]].residual -= push;
            arcs_[via[v] ^ 1u].residual += push;
        }
        total += push;
    }
}

std::int64_t FlowNetwork::flow_on(std::size_t arc) const {
    return capacity_.at(arc) - arcs_.at(2 * arc).residual;
}

}  // namespace sumnet
