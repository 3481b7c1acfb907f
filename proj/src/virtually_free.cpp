#include "minex/virtually_free.hpp"

#include <algorithm>

#include "minex/error.hpp"

namespace minex {

bool is_reduced(const FreeWord& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 0) return false;
    if (i > 0 && w[i] == -w[i - 1]) return false;
  }
  return true;
}

namespace {

std::vector<std::int64_t> letters(int n) {
  std::vector<std::int64_t> out;
  for (int i = 1; i <= n; ++i) {
    out.push_back(i);
    out.push_back(-i);
  }
  return out;
}

}  // namespace

std::vector<FreeWord> reduced_words(int n, std::size_t length) {
  std::vector<FreeWord> level{FreeWord{}};
  const auto alphabet = letters(n);
  for (std::size_t step = 0; step < length; ++step) {
    std::vector<FreeWord> next;
    for (const FreeWord& w : level) {
      for (std::int64_t x : alphabet) {
        if (!w.empty() && w.back() == -x) continue;
        FreeWord longer = w;
        longer.push_back(x);
        next.push_back(std::move(longer));
      }
    }
    level = std::move(next);
  }
  return level;
}

CosetFactorizer::CosetFactorizer(GroupTerm g, std::vector<Element> basis, std::vector<Element> reps,
                                 std::size_t max_word_length, std::size_t max_table)
    : g_(std::move(g)),
      basis_(std::move(basis)),
      reps_(std::move(reps)),
      max_word_length_(max_word_length),
      max_table_(max_table) {
  require(!reps_.empty() && is_identity(g_, reps_.front()),
          "the first coset representative must be the identity");
  for (const Element& b : basis_) validate_element(g_, b);
  for (const Element& r : reps_) validate_element(g_, r);
  frontier_.emplace_back(FreeWord{}, identity(g_));
  for (std::size_t i = 0; i < reps_.size(); ++i) {
    require(table_.emplace(reps_[i], Factor{i, {}}).second,
            "coset representatives are not distinct");
  }
}

Element CosetFactorizer::evaluate(const FreeWord& w) const {
  Element out = identity(g_);
  for (std::int64_t x : w) {
    const Element& b = basis_[static_cast<std::size_t>(std::abs(x)) - 1];
    out = multiply(g_, out, x > 0 ? b : inverse(g_, b));
  }
  return out;
}

void CosetFactorizer::grow() {
  if (built_length_ >= max_word_length_ || table_.size() >= max_table_) {
    throw Error(ErrorKind::kCapacity, "coset factorization table exhausted at word length " +
                                          std::to_string(built_length_));
  }
  std::vector<std::pair<FreeWord, Element>> next;
  const auto alphabet = letters(static_cast<int>(basis_.size()));
  for (const auto& [w, value] : frontier_) {
    for (std::int64_t x : alphabet) {
      if (!w.empty() && w.front() == -x) continue;
      // Prepend: phi(x w) = phi(x) phi(w).
      FreeWord longer{x};
      longer.insert(longer.end(), w.begin(), w.end());
      const Element& b = basis_[static_cast<std::size_t>(std::abs(x)) - 1];
      Element image = multiply(g_, x > 0 ? b : inverse(g_, b), value);
      for (std::size_t i = 0; i < reps_.size(); ++i) {
        const Element key = multiply(g_, reps_[i], image);
        require(table_.emplace(key, Factor{i, longer}).second,
                "coset representatives fail unique factorization: " + format_element(g_, key) +
                    " has two representations");
      }
      next.emplace_back(std::move(longer), std::move(image));
    }
  }
  frontier_ = std::move(next);
  ++built_length_;
}

const CosetFactorizer::Factor& CosetFactorizer::factor(const Element& x) {
  for (;;) {
    auto it = table_.find(x);
    if (it != table_.end()) return it->second;
    grow();
  }
}

bool in_far_side(const FreeWord& w, const TreeEdge& e) {
  return w.size() >= e.q.size() && std::equal(e.q.begin(), e.q.end(), w.end() - e.q.size());
}

std::vector<TreeEdge> tree_edges(int n, int radius) {
  std::vector<TreeEdge> out;
  for (int len = 1; len <= radius; ++len) {
    for (FreeWord& q : reduced_words(n, len)) out.push_back(TreeEdge{std::move(q)});
  }
  return out;
}

VirtuallyFreeBound virtually_free_bound(const GroupSpec& spec, const std::vector<Element>& basis,
                                        const std::vector<Element>& reps, int probe_radius) {
  require(probe_radius >= 0, "probe radius must be nonnegative");
  const GroupTerm& g = spec.term;
  CosetFactorizer fz(g, basis, reps);
  const CayleyBall ball = cayley_ball(spec, probe_radius);
  for (const Element& x : ball.elements) fz.factor(x);

  VirtuallyFreeBound out;
  out.n = basis.size();
  out.k = reps.size();
  out.f.resize(reps.size());
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (const Element& s : spec.gens) {
      const auto& fac = fz.factor(multiply(g, s, reps[i]));
      out.M = std::max(out.M, fac.word.size());
      out.f[i].push_back(fac);
    }
  }

  // Only words within M of the cut can cross it.
  std::vector<FreeWord> near;
  for (std::size_t len = 0; len + 1 <= out.M; ++len) {
    for (FreeWord& w : reduced_words(static_cast<int>(out.n), len)) near.push_back(std::move(w));
  }
  for (const TreeEdge& e : tree_edges(static_cast<int>(out.n), probe_radius)) {
    std::size_t crossings = 0;
    for (const FreeWord& prefix : near) {
      if (!prefix.empty() && prefix.back() == -e.q.front()) continue;
      FreeWord w = prefix;
      w.insert(w.end(), e.q.begin(), e.q.end());
      const Element fw = fz.evaluate(w);
      for (const Element& rep : reps) {
        const Element v = multiply(g, rep, fw);
        for (const Element& s : spec.gens) {
          if (!in_far_side(fz.factor(multiply(g, s, v)).word, e)) ++crossings;
        }
      }
    }
    if (out.edges_probed == 0 || crossings > out.D_emp) {
      out.D_emp = crossings;
      out.worst_edge = e;
    }
    ++out.edges_probed;
  }
  out.m_threshold = std::max(6 * out.n * out.D_emp, 3 * out.k) + 1;
  return out;
}

CrossingAudit crossing_audit(CosetFactorizer& factorizer, const CayleyBall& ball,
                             const TreeEdge& e, const BranchDecomposition& bd) {
  require(!e.q.empty() && is_reduced(e.q), "not a tree edge: q must be a nonempty reduced word");
  for (std::int64_t x : e.q) {
    require(std::abs(x) >= 1 && static_cast<std::size_t>(std::abs(x)) <= factorizer.rank(),
            "not a tree edge: letter outside the free basis");
  }
  std::vector<char> far(ball.elements.size());
  for (std::size_t v = 0; v < ball.elements.size(); ++v) {
    far[v] = in_far_side(factorizer.factor(ball.elements[v]).word, e);
  }

  CrossingAudit audit;
  for (const Edge& edge : ball.graph.edges()) {
    if (far[edge.u] != far[edge.v]) ++audit.crossing_edges;
  }
  enum Side { kMixed, kA, kB };
  std::vector<Side> side;
  for (const VertexSet& s : bd.sets) {
    bool any_a = false, any_b = false;
    for (Vertex v : s) (far[v] ? any_b : any_a) = true;
    side.push_back(any_a && any_b ? kMixed : any_b ? kB : kA);
    if (side.back() == kMixed) ++audit.R_e;
    if (side.back() == kA) ++audit.kA;
    if (side.back() == kB) ++audit.kB;
  }
  for (const Edge& pe : bd.pattern.edges()) {
    if ((side[pe.u] == kA && side[pe.v] == kB) || (side[pe.u] == kB && side[pe.v] == kA)) {
      ++audit.required_cross_pairs;
    }
  }
  return audit;
}

}  // namespace minex
