#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "tate/padic.hpp"

namespace tate {

/// The quotient of the Bruhat-Tits tree by the Schottky group q^Z, cut at a depth:
/// an m-cycle c0..c{m-1}, p-1 branches hanging off each cycle vertex and p
/// children below every interior branch node.
struct TreeQuotient {
    std::int64_t p;
    int m;
    int depth;
    std::vector<std::string> nodes;
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // undirected, loops allowed

    /// Degree of every node, loops counted twice, in node order.
    std::vector<std::size_t> degrees() const;
    /// Degrees sorted descending.
    std::vector<std::size_t> degree_sequence() const;
};

/// Cap on m * p^depth for build_tree_quotient.
inline constexpr std::size_t max_tree_nodes = 100000;

TreeQuotient build_tree_quotient(const PrimeParams& ctx, int depth, std::size_t max_nodes = max_tree_nodes);

/// Undirected Graphviz text.
void write_dot(std::ostream& os, const TreeQuotient& tree);

}  // namespace tate
