#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "limitkit/presentation.hpp"
#include "limitkit/splitting.hpp"

namespace limitkit {

/// Ordered from weakest to strongest.
enum class ClgStatus { failed, unverifiable, sampled, verified };
std::string to_string(ClgStatus s);
inline ClgStatus weakest(ClgStatus a, ClgStatus b) { return a < b ? a : b; }
inline ClgStatus strongest(ClgStatus a, ClgStatus b) { return a < b ? b : a; }

/// Recursive certificate. Free: `group` is a free presentation. FreeProduct:
/// two children whose generators and relators concatenate to `group`.
/// Step: ρ from `group` to the single child's group together with a GAD of
/// `group`; `verification_homs` map a non-free child group to free groups.
struct ClgCertificate {
  enum class Kind { free, free_product, step };

  Kind kind = Kind::free;
  Presentation group;
  std::vector<ClgCertificate> children;
  std::vector<Word> rho;
  Gad gad;
  std::vector<GroupHom> verification_homs;
  std::size_t radius = 4;
  std::optional<int> level;

  static ClgCertificate free(const Alphabet& generators);
  static ClgCertificate free_product(ClgCertificate left, ClgCertificate right);
  static ClgCertificate step(Gad gad, std::vector<Word> rho, ClgCertificate lower);
};

std::string to_string(ClgCertificate::Kind k);

struct ClgItem {
  std::string subject;
  ClgStatus status = ClgStatus::verified;
  std::string detail;
};

struct ClgCondition {
  std::string name;  // rho, peripheral, edges, qh, envelope
  ClgStatus status = ClgStatus::verified;
  std::size_t radius = 0;  // ball radius when some item was sampled
  std::vector<ClgItem> items;
};

struct ClgReport {
  ClgCertificate::Kind kind = ClgCertificate::Kind::free;
  int level = 0;
  ClgStatus status = ClgStatus::verified;
  std::vector<ClgCondition> conditions;  // step nodes only
  std::vector<ClgReport> children;

  const ClgCondition* condition(const std::string& name) const;
};

/// Checks children first, then the step conditions. Throws InputError on a
/// malformed certificate, including declared levels that do not decrease.
ClgReport check_clg(const ClgCertificate& cert);

/// 0 verified, 1 failed, 3 sampled or unverifiable.
int exit_code(ClgStatus s);

}  // namespace limitkit
