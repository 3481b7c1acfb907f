#include "minex/constructions.hpp"

#include <algorithm>

#include "minex/error.hpp"

namespace minex {
namespace {

BranchDecomposition place(const CayleyBall& ball, const std::vector<std::vector<Element>>& sets) {
  BranchDecomposition bd{PatternGraph::complete(sets.size()), {}};
  for (const auto& s : sets) {
    std::vector<Vertex> ids;
    for (const Element& e : s) ids.push_back(ball.at(e));
    bd.sets.emplace_back(std::move(ids));
  }
  return bd;
}

}  // namespace

GroupSpec z2_s2_spec() { return parse_group_spec("Z^2 | gens=(1,0),(2,0),(0,1),sym"); }

GroupSpec z2xc_spec(int order) {
  require(order == 0 || order >= 2, "cyclic order must be 0 (infinite) or at least 2");
  return parse_group_spec(order == 0 ? "Z^2 x Z" : "Z^2 x C" + std::to_string(order));
}

MinorInstance construct_z2_s2_minor(int m) {
  require(m >= 1, "m must be at least 1");
  MinorInstance out{z2_s2_spec(), {}, {}, {}};
  auto pt = [](int x, int y) { return Element{{x, y}, {}, {}}; };

  std::vector<Element> v1;
  for (int j = 1; j <= m; ++j) v1.push_back(pt(2 * j, 1));
  out.element_sets.push_back(std::move(v1));
  for (int k = 2; k <= m; ++k) {
    std::vector<Element> vk;
    for (int y = 1; y <= k; ++y) vk.push_back(pt(2 * k - 1, y));
    for (int x = 2 * k; x <= 2 * m; x += 2) vk.push_back(pt(x, k));
    out.element_sets.push_back(std::move(vk));
  }
  out.ball = cayley_ball(out.spec, 3 * m + 2);
  out.decomposition = place(out.ball, out.element_sets);
  return out;
}

MinorInstance construct_z2xc_minor(int m, const GroupSpec& spec, const Element& s1,
                                   const Element& s2, const Element& s3) {
  require(m >= 1, "m must be at least 1");
  const GroupTerm& g = spec.term;
  for (const Element* s : {&s1, &s2, &s3}) validate_element(g, *s);
  auto mul = [&](const Element& a, const Element& b) { return multiply(g, a, b); };
  auto combo = [&](std::int64_t a, std::int64_t b) {
    return mul(power(g, s1, a), power(g, s2, b));
  };

  require(mul(s1, s2) == mul(s2, s1) && mul(s1, s3) == mul(s3, s1) && mul(s2, s3) == mul(s3, s2),
          "s1, s2, s3 must commute pairwise");
  const std::int64_t probe = 2 * m + 2;
  for (std::int64_t a = -probe; a <= probe; ++a) {
    for (std::int64_t b = -probe; b <= probe; ++b) {
      const Element x = combo(a, b);
      require((a == 0 && b == 0) || !is_identity(g, x),
              "s1 and s2 satisfy a relation, so they do not span a copy of Z^2");
      require(!(x == s3), "s3 lies in the subgroup generated by s1 and s2");
    }
  }
  const std::vector<Element> inverse_closed = symmetrize(g, std::vector<Element>{s1, s2, s3});
  for (const Element& s : inverse_closed) {
    require(std::find(spec.gens.begin(), spec.gens.end(), s) != spec.gens.end(),
            "generating set must contain s1, s2, s3 and their inverses");
  }

  MinorInstance out{spec, {}, {}, {}};
  std::vector<Element> v1;
  for (int l = 1; l <= m; ++l) v1.push_back(power(g, s1, l));
  out.element_sets.push_back(std::move(v1));
  for (int k = 2; k <= m; ++k) {
    std::vector<Element> vk;
    for (int j = 0; j < k; ++j) vk.push_back(mul(combo(k, j), s3));
    for (int l = k; l <= m; ++l) vk.push_back(combo(l, k - 1));
    out.element_sets.push_back(std::move(vk));
  }
  out.ball = cayley_ball(spec, 2 * m + 1);
  out.decomposition = place(out.ball, out.element_sets);
  return out;
}

}  // namespace minex
