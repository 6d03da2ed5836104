#include "limitkit/stallings.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <random>
#include <tuple>

namespace limitkit {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  // Keeps the smaller representative so the base stays its own root.
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent[b] = a;
  }
};

using RawEdge = CoreGraph::Edge;

CoreGraph fold_impl(const std::vector<Word>& generators, std::size_t rank, std::mt19937_64* rng) {
  std::size_t n_vertices = 1;
  std::vector<RawEdge> edges;
  for (const auto& w : generators) {
    if (w.span_rank() > rank) throw InputError("subgroup generator outside the alphabet");
    if (w.empty()) continue;
    std::size_t u = 0;
    for (std::size_t i = 0; i < w.length(); ++i) {
      std::size_t v = (i + 1 == w.length()) ? 0 : n_vertices++;
      Letter l = w[i];
      if (l > 0)
        edges.push_back({u, v, letter_gen(l)});
      else
        edges.push_back({v, u, letter_gen(l)});
      u = v;
    }
  }

  UnionFind uf(n_vertices);
  while (true) {
    // Normalize endpoints and drop edges made identical by earlier merges.
    for (auto& e : edges) {
      e.source = uf.find(e.source);
      e.target = uf.find(e.target);
    }
    std::sort(edges.begin(), edges.end(), [](const RawEdge& a, const RawEdge& b) {
      return std::tie(a.source, a.label, a.target) < std::tie(b.source, b.label, b.target);
    });
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::vector<std::pair<std::size_t, std::size_t>> merges;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> out_seen, in_seen;
    for (const auto& e : edges) {
      auto [it, fresh] = out_seen.emplace(std::make_pair(e.source, e.label), e.target);
      if (!fresh && it->second != e.target) merges.emplace_back(it->second, e.target);
      auto [jt, fresh_in] = in_seen.emplace(std::make_pair(e.target, e.label), e.source);
      if (!fresh_in && jt->second != e.source) merges.emplace_back(jt->second, e.source);
    }
    if (merges.empty()) break;
    if (rng) {
      std::uniform_int_distribution<std::size_t> pick(0, merges.size() - 1);
      auto m = merges[pick(*rng)];
      uf.unite(m.first, m.second);
    } else {
      for (auto [a, b] : merges) uf.unite(a, b);
    }
  }

  // Prune hanging trees: repeatedly delete non-base vertices of degree <= 1.
  std::vector<std::size_t> degree(n_vertices, 0);
  std::vector<bool> alive_edge(edges.size(), true);
  for (const auto& e : edges) {
    ++degree[e.source];
    ++degree[e.target];
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (!alive_edge[i]) continue;
      const auto& e = edges[i];
      bool hanging = (e.source != 0 && degree[e.source] == 1) || (e.target != 0 && degree[e.target] == 1);
      if (hanging) {
        alive_edge[i] = false;
        --degree[e.source];
        --degree[e.target];
        changed = true;
      }
    }
  }
  std::vector<RawEdge> kept;
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (alive_edge[i]) kept.push_back(edges[i]);
  return CoreGraph::from_folded(rank, n_vertices, uf.find(0), kept);
}

}  // namespace

CoreGraph CoreGraph::from_folded(std::size_t rank, std::size_t vertex_count, std::size_t base,
                                 const std::vector<Edge>& edges) {
  // Adjacency over the old numbering.
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> out, in;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    out[{edges[i].source, edges[i].label}] = i;
    in[{edges[i].target, edges[i].label}] = i;
  }
  std::vector<std::size_t> renumber(vertex_count, kNone);
  std::deque<std::size_t> queue{base};
  renumber[base] = 0;
  std::size_t next = 1;
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    for (std::uint32_t r = 0; r < 2 * rank; ++r) {
      Letter l = letter_from_rank(r);
      std::size_t g = letter_gen(l);
      std::size_t w = kNone;
      if (l > 0) {
        if (auto it = out.find({v, g}); it != out.end()) w = edges[it->second].target;
      } else {
        if (auto it = in.find({v, g}); it != in.end()) w = edges[it->second].source;
      }
      if (w != kNone && renumber[w] == kNone) {
        renumber[w] = next++;
        queue.push_back(w);
      }
    }
  }

  CoreGraph g;
  g.rank_ = rank;
  g.vertex_count_ = next;
  for (const auto& e : edges) g.edges_.push_back({renumber[e.source], renumber[e.target], e.label});
  std::sort(g.edges_.begin(), g.edges_.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.source, a.label, a.target) < std::tie(b.source, b.label, b.target);
  });
  g.out_.assign(g.vertex_count_ * rank, kNone);
  g.in_.assign(g.vertex_count_ * rank, kNone);
  for (std::size_t i = 0; i < g.edges_.size(); ++i) {
    g.out_[g.edges_[i].source * rank + g.edges_[i].label] = i;
    g.in_[g.edges_[i].target * rank + g.edges_[i].label] = i;
  }
  return g;
}

std::optional<std::size_t> CoreGraph::edge_at(std::size_t v, Letter l) const {
  std::size_t g = letter_gen(l);
  if (g >= rank_ || v >= vertex_count_) return std::nullopt;
  std::size_t e = l > 0 ? out_[v * rank_ + g] : in_[v * rank_ + g];
  if (e == kNone) return std::nullopt;
  return e;
}

std::optional<std::size_t> CoreGraph::follow(std::size_t v, Letter l) const {
  auto e = edge_at(v, l);
  if (!e) return std::nullopt;
  return l > 0 ? edges_[*e].target : edges_[*e].source;
}

CoreGraph fold_core_graph(const std::vector<Word>& generators, std::size_t rank) {
  return fold_impl(generators, rank, nullptr);
}

CoreGraph fold_core_graph_shuffled(const std::vector<Word>& generators, std::size_t rank,
                                   std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return fold_impl(generators, rank, &rng);
}

SubgroupBasis subgroup_basis(const CoreGraph& g) {
  const std::size_t V = g.vertex_count();
  std::vector<Word> prefix(V);
  std::vector<bool> seen(V, false), tree(g.edges().size(), false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    for (std::uint32_t r = 0; r < 2 * g.rank(); ++r) {
      Letter l = letter_from_rank(r);
      auto e = g.edge_at(v, l);
      if (!e) continue;
      std::size_t w = *g.follow(v, l);
      if (seen[w]) continue;
      seen[w] = true;
      tree[*e] = true;
      prefix[w] = prefix[v] * Word({l});
      queue.push_back(w);
    }
  }

  SubgroupBasis basis;
  std::vector<std::pair<Word, std::size_t>> gens;
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    if (tree[i]) {
      basis.tree_edges.push_back(i);
      continue;
    }
    const auto& e = g.edges()[i];
    gens.emplace_back(prefix[e.source] * Word::generator(e.label) * prefix[e.target].inverse(), i);
  }
  std::sort(gens.begin(), gens.end(),
            [](const auto& a, const auto& b) { return shortlex_less(a.first, b.first); });
  for (auto& [w, e] : gens) {
    basis.generators.push_back(std::move(w));
    basis.basis_edges.push_back(e);
  }
  return basis;
}

std::optional<Word> member_and_rewrite(const CoreGraph& g, const SubgroupBasis& basis,
                                       const Word& w) {
  if (w.span_rank() > g.rank()) throw InputError("word uses a generator outside the alphabet");
  std::vector<std::size_t> basis_of_edge(g.edges().size(), kNone);
  for (std::size_t i = 0; i < basis.basis_edges.size(); ++i) basis_of_edge[basis.basis_edges[i]] = i;

  std::vector<Letter> out;
  std::size_t v = 0;
  for (Letter l : w.letters()) {
    auto e = g.edge_at(v, l);
    if (!e) return std::nullopt;
    if (basis_of_edge[*e] != kNone) out.push_back(make_letter(basis_of_edge[*e], letter_sign(l)));
    v = *g.follow(v, l);
  }
  if (v != 0) return std::nullopt;
  return Word(std::move(out));
}

std::optional<Word> member_and_rewrite(const CoreGraph& g, const Word& w) {
  return member_and_rewrite(g, subgroup_basis(g), w);
}

std::optional<std::size_t> subgroup_index(const CoreGraph& g) {
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    for (std::size_t x = 0; x < g.rank(); ++x) {
      if (!g.edge_at(v, make_letter(x, 1)) || !g.edge_at(v, make_letter(x, -1))) return std::nullopt;
    }
  }
  return g.vertex_count();
}

bool hom_injectivity(const FreeMap& m) {
  return fold_core_graph(m.images(), m.target_rank()).subgroup_rank() == m.domain_rank();
}

}  // namespace limitkit
