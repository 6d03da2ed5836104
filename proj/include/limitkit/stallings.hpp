#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "limitkit/word.hpp"

namespace limitkit {

/// Folded core graph of a finitely generated subgroup of F(rank).
///
/// Vertices are numbered breadth-first from the base (vertex 0), exploring
/// letters in letter_rank order, so equal subgroups give identical graphs.
class CoreGraph {
 public:
  struct Edge {
    std::size_t source;
    std::size_t target;
    std::size_t label;  // generator index; the edge reads label^-1 backwards
    bool operator==(const Edge&) const = default;
  };

  CoreGraph() = default;

  std::size_t rank() const { return rank_; }
  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t base() const { return 0; }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Rank of the subgroup: E - V + 1.
  std::size_t subgroup_rank() const { return edges_.size() + 1 - vertex_count_; }

  /// Vertex reached from v by reading `l`, if any.
  std::optional<std::size_t> follow(std::size_t v, Letter l) const;
  /// Edge index crossed when reading `l` at v.
  std::optional<std::size_t> edge_at(std::size_t v, Letter l) const;

  bool operator==(const CoreGraph& o) const {
    return rank_ == o.rank_ && vertex_count_ == o.vertex_count_ && edges_ == o.edges_;
  }

  // Canonicalizing constructor used by the folding routine: prunes nothing,
  // only renumbers. Callers must pass a folded, connected, core graph.
  static CoreGraph from_folded(std::size_t rank, std::size_t vertex_count, std::size_t base,
                               const std::vector<Edge>& edges);

 private:
  std::size_t rank_ = 0;
  std::size_t vertex_count_ = 1;
  std::vector<Edge> edges_;
  // out_[v * rank + g], in_[v * rank + g]: edge index or npos.
  std::vector<std::size_t> out_, in_;
};

CoreGraph fold_core_graph(const std::vector<Word>& generators, std::size_t rank);

/// Same result as fold_core_graph but performs fold steps in an order drawn
/// from `seed`. Exposed for confluence testing.
CoreGraph fold_core_graph_shuffled(const std::vector<Word>& generators, std::size_t rank,
                                   std::uint64_t seed);

struct SubgroupBasis {
  std::vector<Word> generators;          // sorted shortlex
  std::vector<std::size_t> basis_edges;  // non-tree edge producing each generator
  std::vector<std::size_t> tree_edges;   // breadth-first spanning tree
};

SubgroupBasis subgroup_basis(const CoreGraph& g);

/// Expression of w in the subgroup_basis generators (generator i of the
/// result is basis element i), or nullopt when w is not in the subgroup.
std::optional<Word> member_and_rewrite(const CoreGraph& g, const Word& w);
std::optional<Word> member_and_rewrite(const CoreGraph& g, const SubgroupBasis& basis,
                                       const Word& w);

inline bool is_member(const CoreGraph& g, const Word& w) {
  return member_and_rewrite(g, w).has_value();
}

/// Index of the subgroup, or nullopt for infinite index.
std::optional<std::size_t> subgroup_index(const CoreGraph& g);

/// Injectivity of a homomorphism between free groups: the images span a
/// subgroup of rank equal to the domain rank.
bool hom_injectivity(const FreeMap& m);

}  // namespace limitkit
