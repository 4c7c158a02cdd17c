#include "tate/tree.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <stdexcept>

namespace tate {

std::vector<std::size_t> TreeQuotient::degrees() const {
    std::vector<std::size_t> deg(nodes.size(), 0);
    for (const auto& [a, b] : edges) {
        ++deg[a];
        ++deg[b];
    }
    return deg;
}

std::vector<std::size_t> TreeQuotient::degree_sequence() const {
    auto deg = degrees();
    std::sort(deg.begin(), deg.end(), std::greater<>());
    return deg;
}

TreeQuotient build_tree_quotient(const PrimeParams& ctx, int depth, std::size_t max_nodes) {
    if (depth < 0) throw std::invalid_argument("tree depth must be >= 0");
    const double total = ctx.m() * std::pow(static_cast<double>(ctx.p()), depth);
    if (total > static_cast<double>(max_nodes)) {
        throw std::length_error("tree would have more than " + std::to_string(max_nodes) + " nodes");
    }
    TreeQuotient t{ctx.p(), ctx.m(), depth, {}, {}};
    t.nodes.reserve(static_cast<std::size_t>(total));
    const auto m = static_cast<std::size_t>(ctx.m());
    for (std::size_t i = 0; i < m; ++i) t.nodes.push_back("c" + std::to_string(i));
    for (std::size_t i = 0; i < m; ++i) t.edges.emplace_back(i, (i + 1) % m);

    // breadth first, so names and order are fixed
    std::vector<std::size_t> frontier(m);
    for (std::size_t i = 0; i < m; ++i) frontier[i] = i;
    for (int level = 1; level <= depth; ++level) {
        const std::int64_t branching = level == 1 ? ctx.p() - 1 : ctx.p();
        std::vector<std::size_t> next;
        next.reserve(frontier.size() * static_cast<std::size_t>(branching));
        for (std::size_t parent : frontier) {
            for (std::int64_t j = 0; j < branching; ++j) {
                t.nodes.push_back(t.nodes[parent] + "_" + std::to_string(j));
                t.edges.emplace_back(parent, t.nodes.size() - 1);
                next.push_back(t.nodes.size() - 1);
            }
        }
        frontier = std::move(next);
    }
    return t;
}

void write_dot(std::ostream& os, const TreeQuotient& tree) {
    os << "graph tate_quotient_p" << tree.p << "_m" << tree.m << "_d" << tree.depth << " {\n";
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
        os << "  " << tree.nodes[i];
        if (i < static_cast<std::size_t>(tree.m)) os << " [shape=doublecircle]";
        os << ";\n";
    }
    for (const auto& [a, b] : tree.edges) os << "  " << tree.nodes[a] << " -- " << tree.nodes[b] << ";\n";
    os << "}\n";
}

}  // namespace tate
