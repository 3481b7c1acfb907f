#include <bit>
#include <cstdint>
#include <vector>

#include "minex/error.hpp"
#include "minex/minor.hpp"

namespace minex {
namespace {

using Mask = std::uint32_t;

struct OracleState {
  const PatternGraph& pattern;
  std::vector<Mask> connected;  // every nonempty connected vertex subset
  std::vector<Mask> closed_nbhd;
  std::vector<Mask> chosen;

  Mask neighborhood(Mask m) const {
    Mask out = 0;
    for (Mask rest = m; rest != 0; rest &= rest - 1) out |= closed_nbhd[std::countr_zero(rest)];
    return out;
  }

  bool assign(std::size_t index, Mask used) {
    if (index == pattern.size()) return true;
    const bool symmetric = pattern.is_complete();
    for (Mask candidate : connected) {
      if ((candidate & used) != 0) continue;
      // Complete patterns are symmetric: order sets by their lowest vertex.
      if (symmetric && index > 0 &&
          std::countr_zero(candidate) < std::countr_zero(chosen[index - 1])) {
        continue;
      }
      const Mask reach = neighborhood(candidate);
      bool ok = true;
      for (std::size_t j = 0; j < index && ok; ++j) {
        if (pattern.adjacent(index, j) && (reach & chosen[j]) == 0) ok = false;
      }
      if (!ok) continue;
      chosen[index] = candidate;
      if (assign(index + 1, used | candidate)) return true;
    }
    return false;
  }
};

bool mask_connected(Mask m, const std::vector<Mask>& closed_nbhd) {
  Mask seen = m & (~m + 1);
  for (;;) {
    Mask grown = seen;
    for (Mask rest = seen; rest != 0; rest &= rest - 1) grown |= closed_nbhd[std::countr_zero(rest)];
    grown &= m;
    if (grown == seen) return seen == m;
    seen = grown;
  }
}

}  // namespace

bool brute_force_minor_oracle(const Graph& host, const PatternGraph& pattern) {
  const std::size_t n = host.num_vertices();
  require(n <= kOracleMaxVertices, "oracle host has more than 12 vertices");
  if (pattern.size() == 0) return true;
  if (pattern.size() > n) return false;

  OracleState state{pattern, {}, std::vector<Mask>(n), std::vector<Mask>(pattern.size())};
  for (Vertex v = 0; v < n; ++v) {
    state.closed_nbhd[v] = Mask{1} << v;
    for (Vertex w : host.neighbors(v)) state.closed_nbhd[v] |= Mask{1} << w;
  }
  for (Mask m = 1; m < (Mask{1} << n); ++m) {
    if (mask_connected(m, state.closed_nbhd)) state.connected.push_back(m);
  }
  return state.assign(0, 0);
}

}  // namespace minex
