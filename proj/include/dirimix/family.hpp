#pragma once

#include <string_view>

namespace dirimix {

enum class Family {
  Dirichlet,
  InvertedDirichlet,
  GeneralizedDirichlet,
  BetaLiouville,
  InvertedBetaLiouville,
  DirichletMultinomial,
  LdaMarginal,
};

/// JSON tag: "dirichlet", "inverted_dirichlet", "generalized_dirichlet", ...
std::string_view to_string(Family family);
/// Accepts the JSON tags plus the short forms gd, bl, ibl, dm, lda.
Family parse_family(std::string_view text);

/// Families whose kernels are indexed by a single positive vector alpha and
/// therefore admit mixing measures over alpha.
constexpr bool is_alpha_indexed(Family f) {
  return f == Family::Dirichlet || f == Family::InvertedDirichlet || f == Family::DirichletMultinomial ||
         f == Family::LdaMarginal;
}

}  // namespace dirimix
