#pragma once

// Internal tables behind run_check / run_search, plus sampling helpers the
// two tables share.

#include "qop/harness.hpp"

#include <span>
#include <vector>

namespace qop::detail {

struct CheckDef {
  const char* id;
  const char* summary;
  /// Deviation of one random instance.
  double (*trial)(Generator&, const GeneratorConfig&);
  /// False when the Kraus multiplicity does not affect the instance.
  bool uses_instruments;
};

struct SearchDef {
  const char* id;
  const char* summary;
  bool conjecture;
  /// Draws an instance as a self-contained JSON document.
  Json (*sample)(Generator&, const GeneratorConfig&);
  /// Deviation of a stored instance; replay calls this directly.
  double (*evaluate)(const Json&);
};

std::span<const CheckDef> check_table();
std::span<const SearchDef> search_table();

/// Number of terms in a random convex family: 2 or 3.
std::size_t family_size(Generator& g);

/// `count` label sets of size `size` drawn from a pool of size+1 labels, so
/// neighbouring sets usually overlap.
std::vector<LabelList> overlapping_label_sets(Generator& g, std::size_t count, std::size_t size,
                                              std::string_view prefix);

/// Pairwise disjoint label sets, set i using prefix "<prefix><i>_".
std::vector<LabelList> disjoint_label_sets(std::size_t count, std::size_t size, std::string_view prefix);

double max_abs_diff(std::span<const double> a, std::span<const double> b);

}  // namespace qop::detail
