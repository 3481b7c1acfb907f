#pragma once

#include <cstdint>
#include <vector>

#include "minex/group.hpp"
#include "minex/minor.hpp"

namespace minex {

struct ProjectionOptions {
  // Also count vertex-disjoint host paths between every pair of branch sets.
  bool menger_check = false;
};

struct ProjectionResult {
  std::uint8_t side = 0;  // 0: left factor, 1: right factor
  Element coset_tail;     // the host coset is factor * coset_tail
  GroupSpec factor_spec;  // factor with the single-syllable generators of that side
  CayleyBall factor_ball;
  BranchDecomposition decomposition;  // over factor_ball
  MinorVerdict verdict;
  // Pairwise disjoint-path counts (capped at 2), row-major; empty unless requested.
  std::vector<std::size_t> menger_counts;
};

// Finds a factor coset G*t (or H*t) meeting every branch set, translates it
// by t^-1 on the right, and keeps the factor part of each set.
// host_ball must be a Cayley ball of spec, whose term is a free product.
ProjectionResult project_free_product_minor(const GroupSpec& spec, const CayleyBall& host_ball,
                                            const BranchDecomposition& bd,
                                            const ProjectionOptions& options = {});

// The tail t with e in factor(side) * t: e with its leading syllable removed
// when that syllable lies in the given factor.
Element coset_tail(const GroupTerm& free_product, const Element& e, std::uint8_t side);

}  // namespace minex
