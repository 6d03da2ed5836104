#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "limitkit/parallel.hpp"
#include "limitkit/presentation.hpp"
#include "limitkit/splitting.hpp"

namespace limitkit {

/// Quotient edge of an MR diagram. The map parent -> child kills `added` and
/// is given by `images` (one child word per parent generator), so the child
/// may be any presentation of the quotient.
struct MrEdge {
  std::size_t parent = 0;
  std::size_t child = 0;
  std::vector<Word> added;
  std::vector<Word> images;
  std::string label;
};

struct MrDiagram {
  std::vector<Presentation> nodes;
  std::size_t root = 0;
  std::vector<MrEdge> edges;
  // When false the root is declared not to be a limit group and the root
  // automorphism must be the identity.
  bool root_is_limit = true;

  bool is_leaf(std::size_t node) const;
  const MrEdge* edge_between(std::size_t parent, std::size_t child) const;
};

/// Tree shape, arities and free leaves. Throws InputError.
void validate_mr_diagram(const MrDiagram& d);

/// Root-to-leaf branch with an automorphism on every non-leaf node of the
/// path and the terminal hom from the leaf to the free target.
struct BranchWitness {
  std::vector<std::size_t> path;
  std::vector<std::vector<Word>> automorphisms;
  std::vector<Word> terminal;
};

struct MrStageReport {
  std::string stage;  // "alpha0", "q0", "alpha1", ..., "terminal"
  std::size_t node = 0;
  bool ok = true;
  std::string detail;
};

struct MrReport {
  bool ok = true;
  std::vector<MrStageReport> stages;
  std::vector<Word> composite;                     // f' q α ... evaluated on root generators
  std::vector<std::size_t> mismatched_generators;  // where composite differs from f
};

/// Checks f = f' q_{m-1} α_{m-1} ⋯ q α generator by generator. Throws
/// InputError on arity mismatches and PreconditionError when f is not
/// verified or a stage hom cannot be decided.
MrReport verify_mr_factoring(const GroupHom& f, const MrDiagram& d, const BranchWitness& w);

struct MrPipeline {
  MrDiagram diagram;
  BranchWitness witness;
};

/// Two-node diagram for f: Z^n -> F with commuting images. The root Z^n maps
/// onto the free leaf ⟨e_1⟩ by killing e_2..e_n; α inverts the matrix from
/// abelian_factorization and f' sends e_1 to root^d.
MrPipeline abelian_mr_pipeline(const GroupHom& f);

enum class ProperStatus { verified, asserted, failed };
std::string to_string(ProperStatus s);

/// Properness evidence: a domain word killed by the map and nontrivial in
/// the domain.
struct ProperCertificate {
  std::optional<Word> witness;
  ProperStatus status = ProperStatus::asserted;
};

struct FactorSet {
  Presentation domain;
  std::vector<QuotientMap> maps;
  std::vector<ProperCertificate> properness;
  std::optional<std::size_t> abelianization;  // index into maps
};

/// One quotient per kernel word, plus the torsion-free abelianization unless
/// disabled. Throws InputError on an empty kernel word.
FactorSet assemble_factor_set(const Presentation& domain, const std::vector<Word>& kernel_words,
                              bool include_abelianization = true);

/// A word over the modular generators: (generator index, ±1) pairs, read
/// left to right as α = m_1 ∘ m_2 ∘ ⋯ ∘ m_k.
using TwistSequence = std::vector<std::pair<std::size_t, int>>;

std::string format_sequence(const TwistSequence& s, std::span<const TwistAutomorphism> modgens);

/// Image table of the composition (identity for the empty sequence).
std::vector<Word> compose_sequence(const TwistSequence& s, std::span<const TwistAutomorphism> modgens,
                                   std::size_t rank);

/// Number of sequences of length `depth` with no adjacent inverse pair, and
/// the i-th of them in lexicographic order over the letters
/// m_1, m_1^-1, m_2, m_2^-1, ...
std::size_t sequence_count(std::size_t generators, std::size_t depth);
TwistSequence sequence_at(std::size_t generators, std::size_t depth, std::size_t index);

struct ModularWitness {
  TwistSequence sequence;
  std::vector<Word> alpha;
  std::vector<Word> f_alpha;
  std::size_t factor = 0;
  GroupHom factored;  // on the factor's codomain
};

struct ModularSearchResult {
  std::optional<ModularWitness> witness;
  std::size_t depth_bound = 0;
  std::size_t candidates = 0;  // sequences examined
};

/// Shortlex-first α over the modular generators (depth ≤ bound) such that
/// f∘α factors through one of `factors`, trying the factors in order.
ModularSearchResult search_modular_factorization(const GroupHom& f, std::span<const QuotientMap> factors,
                                                 std::span<const TwistAutomorphism> modgens,
                                                 std::size_t depth, Exec exec = Exec::parallel);

/// Recomputes α and the factorization independently of the search.
bool verify_modular_witness(const GroupHom& f, std::span<const QuotientMap> factors,
                            std::span<const TwistAutomorphism> modgens, const ModularWitness& w);

struct ShortenResult {
  bool shortened = false;
  GroupHom hom;
  TwistSequence sequence;
  Word conjugator;
  std::size_t input_length = 0;
  std::size_t output_length = 0;
  std::size_t conjugator_bound = 0;
  std::size_t depth_bound = 0;
};

/// First hom i_c ∘ f ∘ α with |·| < |f|, sequences in shortlex order then
/// conjugators in shortlex order with |c| ≤ min(2|f|, conjugator_cap).
ShortenResult shorten_hom(const GroupHom& f, std::span<const TwistAutomorphism> modgens, std::size_t depth,
                          std::size_t conjugator_cap = 6, Exec exec = Exec::parallel);

}  // namespace limitkit
