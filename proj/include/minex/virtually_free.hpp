#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "minex/group.hpp"
#include "minex/minor.hpp"

namespace minex {

// Reduced word in a free basis: +i is the i-th basis element (1-based), -i its
// inverse, leftmost letter first.
using FreeWord = std::vector<std::int64_t>;

bool is_reduced(const FreeWord& w);
// Reduced words of exactly the given length over n letters, in lexicographic
// order of the letter sequence +1 < -1 < +2 < -2 < ...
std::vector<FreeWord> reduced_words(int n, std::size_t length);

// Writes group elements as g_i * phi(w) for coset representatives g_i and a
// free word w over the images of a free basis. The table grows by word length
// on demand; a repeated element proves the representation is not unique.
class CosetFactorizer {
 public:
  struct Factor {
    std::size_t rep = 0;
    FreeWord word;
  };

  CosetFactorizer(GroupTerm g, std::vector<Element> basis, std::vector<Element> reps,
                  std::size_t max_word_length = 32, std::size_t max_table = 4'000'000);

  const Factor& factor(const Element& x);
  Element evaluate(const FreeWord& w) const;

  const GroupTerm& term() const { return g_; }
  std::size_t rank() const { return basis_.size(); }
  std::size_t num_reps() const { return reps_.size(); }
  const std::vector<Element>& reps() const { return reps_; }

 private:
  void grow();

  GroupTerm g_;
  std::vector<Element> basis_;
  std::vector<Element> reps_;
  std::size_t max_word_length_;
  std::size_t max_table_;
  std::size_t built_length_ = 0;
  std::vector<std::pair<FreeWord, Element>> frontier_;  // words of length built_length_
  std::unordered_map<Element, Factor, ElementHash> table_;
};

// Tree edge p -> q of Cay(F_n, basis) with q = x p for a single letter x, no
// cancellation. B(e) holds the words with suffix q; A(e) the rest.
struct TreeEdge {
  FreeWord q;
  FreeWord p() const { return FreeWord(q.begin() + 1, q.end()); }
};

bool in_far_side(const FreeWord& w, const TreeEdge& e);

struct VirtuallyFreeBound {
  std::size_t n = 0;  // free rank
  std::size_t k = 0;  // number of cosets
  std::size_t M = 0;
  // f(i, s): s g_i = g_j f(i, s); rows by representative, columns by generator.
  std::vector<std::vector<CosetFactorizer::Factor>> f;
  std::size_t D_emp = 0;
  TreeEdge worst_edge;
  std::size_t edges_probed = 0;
  std::size_t m_threshold = 0;  // max{6 n D_emp, 3k} + 1
};

// reps[0] must be the identity. Every element of the probe ball is factored
// once to check uniqueness.
VirtuallyFreeBound virtually_free_bound(const GroupSpec& spec, const std::vector<Element>& basis,
                                        const std::vector<Element>& reps, int probe_radius);

struct CrossingAudit {
  std::size_t R_e = 0;  // branch sets meeting both sides
  std::size_t kA = 0;
  std::size_t kB = 0;
  std::size_t crossing_edges = 0;
  // Pattern edges between a set wholly on A and a set wholly on B; kA * kB for K_m.
  std::size_t required_cross_pairs = 0;
  bool consistent() const { return crossing_edges >= R_e + required_cross_pairs; }
};

CrossingAudit crossing_audit(CosetFactorizer& factorizer, const CayleyBall& ball,
                             const TreeEdge& e, const BranchDecomposition& bd);

// All tree edges with 1 <= |q| <= radius.
std::vector<TreeEdge> tree_edges(int n, int radius);

}  // namespace minex
