#include "minex/free_product.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "minex/error.hpp"

namespace minex {

Element coset_tail(const GroupTerm& free_product, const Element& e, std::uint8_t side) {
  require(free_product.kind() == GroupKind::kFreeProduct, "coset_tail needs a free product");
  if (e.parts.empty() || e.sides.front() != side) return e;
  return Element{{}, {e.parts.begin() + 1, e.parts.end()}, {e.sides.begin() + 1, e.sides.end()}};
}

namespace {

GroupSpec factor_spec(const GroupSpec& spec, std::uint8_t side) {
  const GroupTerm& f = side == 0 ? spec.term.left() : spec.term.right();
  GroupSpec out{f, {}};
  for (const Element& s : spec.gens) {
    if (s.parts.size() == 1 && s.sides.front() == side) out.gens.push_back(s.parts.front());
  }
  require(!out.gens.empty(), "generating set has no single-syllable element in the factor");
  return out;
}

}  // namespace

ProjectionResult project_free_product_minor(const GroupSpec& spec, const CayleyBall& host_ball,
                                            const BranchDecomposition& bd,
                                            const ProjectionOptions& options) {
  const GroupTerm& g = spec.term;
  require(g.kind() == GroupKind::kFreeProduct, "projection needs a free product group");
  require(!has_cut_vertex(bd.pattern), "pattern has a cut-vertex; projection does not apply");
  require(verify_minor(host_ball.graph, bd).passed(), "decomposition does not verify on the host");

  // Every (side, tail) key with the sets it meets.
  std::map<std::pair<std::uint8_t, Element>, std::vector<char>> hits;
  for (std::size_t i = 0; i < bd.sets.size(); ++i) {
    for (Vertex v : bd.sets[i]) {
      for (std::uint8_t side : {std::uint8_t{0}, std::uint8_t{1}}) {
        auto& row = hits[{side, coset_tail(g, host_ball.elements[v], side)}];
        row.resize(bd.sets.size(), 0);
        row[i] = 1;
      }
    }
  }
  std::vector<std::pair<std::uint8_t, Element>> candidates;
  for (const auto& [key, row] : hits) {
    if (std::all_of(row.begin(), row.end(), [](char c) { return c != 0; })) candidates.push_back(key);
  }
  std::stable_sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
    return a.second.parts.size() < b.second.parts.size();
  });

  std::optional<ProjectionResult> per_side[2];
  for (const auto& [side, tail] : candidates) {
    if (!per_side[side]) {
      ProjectionResult base;
      base.side = side;
      base.factor_spec = factor_spec(spec, side);
      base.factor_ball = cayley_ball(base.factor_spec, host_ball.radius);
      per_side[side] = std::move(base);
    }
    const ProjectionResult& base = *per_side[side];
    const Element untail = inverse(g, tail);
    BranchDecomposition out{bd.pattern, {}};
    bool inside = true;
    for (const VertexSet& set : bd.sets) {
      std::vector<Vertex> members;
      for (Vertex v : set) {
        const Element& e = host_ball.elements[v];
        if (!(coset_tail(g, e, side) == tail)) continue;
        const Element x = multiply(g, e, untail);
        const Element syllable = x.parts.empty() ? identity(base.factor_spec.term) : x.parts.front();
        auto id = base.factor_ball.find(syllable);
        if (!id) {
          inside = false;
          break;
        }
        members.push_back(*id);
      }
      if (!inside) break;
      out.sets.emplace_back(std::move(members));
    }
    if (!inside) continue;
    MinorVerdict verdict = verify_minor(base.factor_ball.graph, out);
    if (!verdict.passed()) continue;

    ProjectionResult result;
    result.side = side;
    result.coset_tail = tail;
    result.factor_spec = base.factor_spec;
    result.factor_ball = base.factor_ball;
    result.decomposition = std::move(out);
    result.verdict = verdict;
    if (options.menger_check) {
      const std::size_t k = bd.sets.size();
      result.menger_counts.assign(k * k, 0);
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
          const auto paths = vertex_disjoint_paths(host_ball.graph, bd.sets[i], bd.sets[j], 2);
          result.menger_counts[i * k + j] = result.menger_counts[j * k + i] = paths.paths.size();
        }
      }
    }
    return result;
  }
  fail("no factor coset yields a valid projected decomposition: the factor intersection "
       "breaks a branch set, which points to a ball boundary effect or a bug");
}

}  // namespace minex
