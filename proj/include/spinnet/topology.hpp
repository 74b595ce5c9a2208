// topology.hpp — branched spin-chain trees: the star family and
// multiple-bifurcation structures, with column indices and leaf weights.
#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace spinnet {

using NodeId = std::size_t;

// Recursive description of a branch: a run of `segment_length` spins that
// either terminates (no children) or splits into two or more child branches.
// A single child is rejected rather than silently merged into the segment.
struct BranchSpec {
    std::size_t segment_length = 1;
    std::vector<BranchSpec> children;
};

struct Edge {
    NodeId parent = 0;
    NodeId child = 0;
    std::optional<double> coupling;  // set by assign_couplings
};

// A rooted tree of spins. Node 0 is the input; node ids follow breadth-first
// order from the input with children visited in spec order, so ids increase
// column by column. Immutable after construction.
class SpinNetwork {
public:
    SpinNetwork(std::size_t node_count, std::vector<Edge> edges,
                std::vector<double> onsite_energy = {})
        : node_count_(node_count),
          edges_(std::move(edges)),
          onsite_energy_(std::move(onsite_energy)) {
        if (node_count_ == 0)
            throw std::invalid_argument("SpinNetwork: node count must be positive");
        if (edges_.size() + 1 != node_count_)
            throw std::invalid_argument("SpinNetwork: a tree on " +
                                        std::to_string(node_count_) + " nodes needs exactly " +
                                        std::to_string(node_count_ - 1) + " edges");
        if (onsite_energy_.empty()) onsite_energy_.assign(node_count_, 0.0);
        if (onsite_energy_.size() != node_count_)
            throw std::invalid_argument("SpinNetwork: onsite energy list does not match node count");

        children_.assign(node_count_, {});
        parent_.assign(node_count_, 0);
        std::vector<bool> has_parent(node_count_, false);
        for (const Edge& e : edges_) {
            if (e.parent >= node_count_ || e.child >= node_count_)
                throw std::invalid_argument("SpinNetwork: edge endpoint out of range");
            if (e.child == 0)
                throw std::invalid_argument("SpinNetwork: input node cannot have a parent");
            if (has_parent[e.child])
                throw std::invalid_argument("SpinNetwork: node " + std::to_string(e.child) +
                                            " has more than one parent");
            has_parent[e.child] = true;
            parent_[e.child] = e.parent;
            children_[e.parent].push_back(e.child);
        }

        // Columns are breadth-first distances from the input; the traversal
        // doubles as the connectivity check.
        column_.assign(node_count_, 0);
        std::vector<bool> reached(node_count_, false);
        std::queue<NodeId> queue;
        queue.push(0);
        reached[0] = true;
        std::size_t visited = 0;
        while (!queue.empty()) {
            NodeId u = queue.front();
            queue.pop();
            ++visited;
            for (NodeId c : children_[u]) {
                if (reached[c])
                    throw std::invalid_argument("SpinNetwork: edges contain a cycle");
                reached[c] = true;
                column_[c] = column_[u] + 1;
                queue.push(c);
            }
        }
        if (visited != node_count_)
            throw std::invalid_argument("SpinNetwork: not all nodes reachable from the input");

        depth_ = 0;
        for (NodeId k = 0; k < node_count_; ++k) {
            if (children_[k].empty()) leaves_.push_back(k);
            depth_ = std::max(depth_, column_[k]);
        }
        equal_depth_ = true;
        for (NodeId leaf : leaves_)
            if (column_[leaf] != depth_) equal_depth_ = false;

        for (const Edge& e : edges_) {
            if (e.coupling && *e.coupling <= 0.0)
                throw std::invalid_argument("SpinNetwork: couplings must be strictly positive");
        }
    }

    std::size_t node_count() const { return node_count_; }
    NodeId input() const { return 0; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t column(NodeId k) const { return column_.at(k); }
    const std::vector<std::size_t>& columns() const { return column_; }

    // Largest column; for equal-depth networks this is the leaf column D,
    // and the equivalent 1D chain has D+1 sites.
    std::size_t depth() const { return depth_; }
    bool equal_depth() const { return equal_depth_; }
    std::size_t equivalent_chain_length() const { return depth_ + 1; }

    const std::vector<NodeId>& leaves() const { return leaves_; }
    const std::vector<NodeId>& children(NodeId k) const { return children_.at(k); }
    std::size_t child_count(NodeId k) const { return children_.at(k).size(); }
    NodeId parent(NodeId k) const {
        if (k == 0 || k >= node_count_)
            throw std::invalid_argument("SpinNetwork: node has no parent");
        return parent_[k];
    }

    double onsite_energy(NodeId k) const { return onsite_energy_.at(k); }

    bool couplings_assigned() const {
        for (const Edge& e : edges_)
            if (!e.coupling) return false;
        return true;
    }

    std::vector<double> couplings() const {
        std::vector<double> values;
        values.reserve(edges_.size());
        for (const Edge& e : edges_) {
            if (!e.coupling)
                throw std::invalid_argument("SpinNetwork: couplings not assigned");
            values.push_back(*e.coupling);
        }
        return values;
    }

    SpinNetwork with_couplings(const std::vector<double>& per_edge) const {
        if (per_edge.size() != edges_.size())
            throw std::invalid_argument("with_couplings: one value per edge required");
        std::vector<Edge> edges = edges_;
        for (std::size_t i = 0; i < edges.size(); ++i) edges[i].coupling = per_edge[i];
        return SpinNetwork(node_count_, std::move(edges), onsite_energy_);
    }

    SpinNetwork with_onsite_energy(std::vector<double> energies) const {
        return SpinNetwork(node_count_, edges_, std::move(energies));
    }

private:
    std::size_t node_count_;
    std::vector<Edge> edges_;
    std::vector<double> onsite_energy_;
    std::vector<std::size_t> column_;
    std::vector<std::vector<NodeId>> children_;
    std::vector<NodeId> parent_;
    std::vector<NodeId> leaves_;
    std::size_t depth_ = 0;
    bool equal_depth_ = true;
};

namespace detail {

inline void validate_branch_spec(const BranchSpec& spec) {
    if (spec.segment_length < 1)
        throw std::invalid_argument("BranchSpec: segment length must be >= 1");
    if (spec.children.size() == 1)
        throw std::invalid_argument(
            "BranchSpec: a branch with exactly one child is ambiguous; "
            "extend the segment instead");
    for (const BranchSpec& child : spec.children) validate_branch_spec(child);
}

inline void collect_path_lengths(const BranchSpec& spec, std::size_t prefix,
                                 std::vector<std::size_t>& out) {
    const std::size_t total = prefix + spec.segment_length;
    if (spec.children.empty()) {
        out.push_back(total);
        return;
    }
    for (const BranchSpec& child : spec.children) collect_path_lengths(child, total, out);
}

inline std::size_t count_spec_nodes(const BranchSpec& spec) {
    std::size_t n = spec.segment_length;
    for (const BranchSpec& child : spec.children) n += count_spec_nodes(child);
    return n;
}

}  // namespace detail

// Build the tree described by `spec`, numbering nodes breadth-first from the
// input with children taken in spec order. All input→leaf paths must contain
// the same number of spins (simultaneous arrival); pass
// allow_unequal_depth = true to build exploratory unequal-depth trees, which
// every protocol operation will refuse.
inline SpinNetwork build_tree(const BranchSpec& spec, bool allow_unequal_depth = false) {
    detail::validate_branch_spec(spec);

    std::vector<std::size_t> path_lengths;
    detail::collect_path_lengths(spec, 0, path_lengths);
    for (std::size_t len : path_lengths) {
        if (len != path_lengths.front() && !allow_unequal_depth)
            throw std::invalid_argument(
                "build_tree: depth mismatch; all input-to-leaf paths must have the "
                "same number of spins");
    }

    const std::size_t node_count = detail::count_spec_nodes(spec);

    struct Pending {
        const BranchSpec* spec;
        std::size_t position;  // within the segment
        std::optional<NodeId> parent;
    };
    std::vector<Edge> edges;
    edges.reserve(node_count - 1);
    std::queue<Pending> queue;
    queue.push({&spec, 0, std::nullopt});
    NodeId next_id = 0;
    while (!queue.empty()) {
        Pending item = queue.front();
        queue.pop();
        const NodeId id = next_id++;
        if (item.parent) edges.push_back({*item.parent, id, std::nullopt});
        if (item.position + 1 < item.spec->segment_length) {
            queue.push({item.spec, item.position + 1, id});
        } else {
            for (const BranchSpec& child : item.spec->children) queue.push({&child, 0, id});
        }
    }
    return SpinNetwork(node_count, std::move(edges));
}

// Star family member (m, l, l, ..., l): an input branch of m spins whose last
// spin is the hub, followed by p output branches of l spins each.
inline SpinNetwork build_star(std::size_t m, std::size_t p, std::size_t l) {
    if (p < 2)
        throw std::invalid_argument("build_star: branching factor p must be >= 2");
    if (m < 1 || l < 1)
        throw std::invalid_argument("build_star: branch sizes m and l must be >= 1");
    BranchSpec spec;
    spec.segment_length = m;
    spec.children.assign(p, BranchSpec{l, {}});
    return build_tree(spec);
}

// Per-node amplitude weight of the symmetric (column) subspace: the product
// of 1/sqrt(child_count) over all hubs strictly between the input and the
// node. Input-segment nodes carry weight 1.
inline std::vector<double> node_path_weights(const SpinNetwork& network) {
    std::vector<double> weights(network.node_count(), 1.0);
    for (NodeId k = 0; k < network.node_count(); ++k) {
        const double divisor =
            network.child_count(k) > 1 ? std::sqrt(static_cast<double>(network.child_count(k)))
                                       : 1.0;
        for (NodeId c : network.children(k)) weights[c] = weights[k] / divisor;
    }
    return weights;
}

// Leaf amplitudes of the dynamically created distributed state, in leaf
// order. Squares sum to 1.
inline std::vector<double> leaf_weights(const SpinNetwork& network) {
    if (!network.equal_depth())
        throw std::invalid_argument("leaf_weights: network must have equal-depth leaves");
    const std::vector<double> weights = node_path_weights(network);
    std::vector<double> out;
    out.reserve(network.leaves().size());
    for (NodeId leaf : network.leaves()) out.push_back(weights[leaf]);
    return out;
}

}  // namespace spinnet
