#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "limitkit/clg.hpp"
#include "limitkit/diagram.hpp"
#include "limitkit/intlinalg.hpp"
#include "limitkit/presentation.hpp"
#include "limitkit/search.hpp"
#include "limitkit/splitting.hpp"
#include "limitkit/stallings.hpp"
#include "limitkit/whitehead.hpp"

namespace limitkit {

using Json = nlohmann::ordered_json;

// Words are token strings over an explicit alphabet everywhere in JSON.
// Every from_json throws InputError on a schema violation. Layouts are
// documented in schemas/.

Json read_json_file(const std::filesystem::path& path);  // "-" reads stdin

Json integer_to_json(const Integer& x);  // number when it fits, else decimal string
Integer integer_from_json(const Json& j);
Json vector_to_json(const IntVector& v);
IntVector vector_from_json(const Json& j);
Json matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const Json& j);
Json lattice_to_json(const Lattice& l);
Lattice lattice_from_json(const Json& j);
Json smith_to_json(const SmithForm& s);

Json alphabet_to_json(const Alphabet& a);
Alphabet alphabet_from_json(const Json& j);
Json words_to_json(const std::vector<Word>& ws, const Alphabet& a);
std::vector<Word> words_from_json(const Json& j, const Alphabet& a);
/// Generator image table: an object keyed by domain generator name or an
/// array in generator order.
Json images_to_json(const std::vector<Word>& images, const Alphabet& domain, const Alphabet& target);
std::vector<Word> images_from_json(const Json& j, const Alphabet& domain, const Alphabet& target);

Json core_graph_to_json(const CoreGraph& g, const Alphabet& a);

Json presentation_to_json(const Presentation& p);
Presentation presentation_from_json(const Json& j);

/// {"domain"?, "target", "images", "status"?}. A target given as an array of
/// names is the free group on them. A missing domain takes `domain`.
Json hom_to_json(const GroupHom& f, bool with_domain = true);
GroupHom hom_from_json(const Json& j, const Presentation* domain = nullptr);
/// Parses and validates; throws PreconditionError unless every relator is
/// checked to map to the identity.
GroupHom verified_hom_from_json(const Json& j, const Presentation* domain = nullptr);

Json gad_to_json(const Gad& g);
Gad gad_from_json(const Json& j, const Presentation* group = nullptr);
Json splitting_to_json(const OneEdgeSplitting& s);
OneEdgeSplitting splitting_from_json(const Json& j);

/// Explicit {"images", "inverse_images"} tables, or {"splitting", "z"} for a
/// Dehn twist, or {"inner": word} for conjugation.
Json twist_to_json(const TwistAutomorphism& t);
TwistAutomorphism twist_from_json(const Json& j, const Presentation* group = nullptr);

Json mr_diagram_to_json(const MrDiagram& d);
MrDiagram mr_diagram_from_json(const Json& j);
Json branch_witness_to_json(const BranchWitness& w, const MrDiagram& d, const Alphabet& target);
BranchWitness branch_witness_from_json(const Json& j, const MrDiagram& d, const Alphabet& target);
Json mr_report_to_json(const MrReport& r, const Presentation& root, const Alphabet& target);

Json quotient_to_json(const QuotientMap& q);
QuotientMap quotient_from_json(const Json& j, const Presentation& domain);
Json factor_set_to_json(const FactorSet& f);
FactorSet factor_set_from_json(const Json& j);

Json sequence_to_json(const TwistSequence& s, std::span<const TwistAutomorphism> modgens);
Json modular_search_to_json(const ModularSearchResult& r, const GroupHom& f,
                            std::span<const QuotientMap> factors, std::span<const TwistAutomorphism> modgens);
Json shorten_to_json(const ShortenResult& r, std::span<const TwistAutomorphism> modgens);

Json clg_certificate_to_json(const ClgCertificate& c);
ClgCertificate clg_certificate_from_json(const Json& j);
Json clg_report_to_json(const ClgReport& r);

Json hom_search_to_json(const HomSearchResult& r, const SearchBudget& b);
Json stable_probe_to_json(const StableProbe& p, const TwistFamily& fam);

}  // namespace limitkit
