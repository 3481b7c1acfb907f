#include <algorithm>
#include <unordered_set>

#include "minex/error.hpp"
#include "minex/group.hpp"

namespace minex {

GroupTerm::GroupTerm() : node_(std::make_shared<const Node>(Node{GroupKind::kFreeAbelian, 1, {}})) {}

GroupTerm GroupTerm::free_abelian(int rank) {
  require(rank >= 1, "free abelian rank must be at least 1");
  return GroupTerm(std::make_shared<const Node>(Node{GroupKind::kFreeAbelian, rank, {}}));
}

GroupTerm GroupTerm::cyclic(int order) {
  require(order >= 2, "cyclic group order must be at least 2");
  return GroupTerm(std::make_shared<const Node>(Node{GroupKind::kCyclic, order, {}}));
}

GroupTerm GroupTerm::free_group(int rank) {
  require(rank >= 1, "free group rank must be at least 1");
  return GroupTerm(std::make_shared<const Node>(Node{GroupKind::kFree, rank, {}}));
}

GroupTerm GroupTerm::direct_product(GroupTerm left, GroupTerm right) {
  return GroupTerm(std::make_shared<const Node>(
      Node{GroupKind::kDirectProduct, 0, {std::move(left), std::move(right)}}));
}

GroupTerm GroupTerm::free_product(GroupTerm left, GroupTerm right) {
  return GroupTerm(std::make_shared<const Node>(
      Node{GroupKind::kFreeProduct, 0, {std::move(left), std::move(right)}}));
}

bool GroupTerm::is_flat_abelian() const {
  switch (kind()) {
    case GroupKind::kFreeAbelian:
    case GroupKind::kCyclic:
      return true;
    case GroupKind::kDirectProduct:
      return left().is_flat_abelian() && right().is_flat_abelian();
    default:
      return false;
  }
}

std::size_t GroupTerm::flat_arity() const {
  switch (kind()) {
    case GroupKind::kFreeAbelian:
      return static_cast<std::size_t>(rank());
    case GroupKind::kCyclic:
      return 1;
    case GroupKind::kDirectProduct:
      return left().flat_arity() + right().flat_arity();
    default:
      fail("flat_arity of a non-abelian term");
  }
}

bool operator==(const GroupTerm& a, const GroupTerm& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.rank() != b.rank()) return false;
  return a.node_->children == b.node_->children;
}

std::string GroupTerm::to_string() const {
  switch (kind()) {
    case GroupKind::kFreeAbelian:
      return rank() == 1 ? "Z" : "Z^" + std::to_string(rank());
    case GroupKind::kCyclic:
      return "C" + std::to_string(rank());
    case GroupKind::kFree:
      return "F" + std::to_string(rank());
    case GroupKind::kDirectProduct: {
      auto wrap = [](const GroupTerm& t, bool right_side) {
        const bool paren = t.kind() == GroupKind::kFreeProduct ||
                           (right_side && t.kind() == GroupKind::kDirectProduct);
        return paren ? "(" + t.to_string() + ")" : t.to_string();
      };
      return wrap(left(), false) + " x " + wrap(right(), true);
    }
    case GroupKind::kFreeProduct: {
      const std::string r = right().kind() == GroupKind::kFreeProduct
                                ? "(" + right().to_string() + ")"
                                : right().to_string();
      return left().to_string() + " * " + r;
    }
  }
  return {};
}

bool operator==(const Element& a, const Element& b) {
  return a.word == b.word && a.sides == b.sides && a.parts == b.parts;
}

bool operator<(const Element& a, const Element& b) {
  if (a.word != b.word) return a.word < b.word;
  if (a.sides != b.sides) return a.sides < b.sides;
  return std::lexicographical_compare(a.parts.begin(), a.parts.end(), b.parts.begin(),
                                      b.parts.end());
}

std::size_t ElementHash::operator()(const Element& e) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL ^ e.word.size();
  auto mix = [&h](std::size_t x) { h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  for (std::int64_t x : e.word) mix(std::hash<std::int64_t>{}(x));
  for (std::uint8_t s : e.sides) mix(s);
  for (const Element& p : e.parts) mix((*this)(p));
  return h;
}

Element identity(const GroupTerm& g) {
  Element e;
  switch (g.kind()) {
    case GroupKind::kFreeAbelian:
      e.word.assign(static_cast<std::size_t>(g.rank()), 0);
      break;
    case GroupKind::kCyclic:
      e.word = {0};
      break;
    case GroupKind::kFree:
    case GroupKind::kFreeProduct:
      break;
    case GroupKind::kDirectProduct:
      e.parts = {identity(g.left()), identity(g.right())};
      break;
  }
  return e;
}

bool is_identity(const GroupTerm& g, const Element& e) {
  switch (g.kind()) {
    case GroupKind::kFreeAbelian:
    case GroupKind::kCyclic:
      return e.parts.empty() && e.sides.empty() &&
             std::all_of(e.word.begin(), e.word.end(), [](std::int64_t x) { return x == 0; }) &&
             e.word.size() == (g.kind() == GroupKind::kCyclic ? 1u : static_cast<std::size_t>(g.rank()));
    case GroupKind::kFree:
    case GroupKind::kFreeProduct:
      return e.word.empty() && e.parts.empty() && e.sides.empty();
    case GroupKind::kDirectProduct:
      return e.word.empty() && e.sides.empty() && e.parts.size() == 2 && is_identity(g.left(), e.parts[0]) &&
             is_identity(g.right(), e.parts[1]);
  }
  return false;
}

namespace {

std::int64_t mod(std::int64_t a, std::int64_t k) {
  const std::int64_t r = a % k;
  return r < 0 ? r + k : r;
}

const GroupTerm& factor(const GroupTerm& g, std::uint8_t side) {
  return side == 0 ? g.left() : g.right();
}

// Appends syllable (side, x) to a reduced free-product word, merging with the
// last syllable when it lives in the same factor.
void push_syllable(const GroupTerm& g, Element& word, std::uint8_t side, Element x) {
  if (is_identity(factor(g, side), x)) return;
  if (!word.sides.empty() && word.sides.back() == side) {
    Element merged = multiply(factor(g, side), word.parts.back(), x);
    word.parts.pop_back();
    word.sides.pop_back();
    if (!is_identity(factor(g, side), merged)) {
      word.parts.push_back(std::move(merged));
      word.sides.push_back(side);
    }
    return;
  }
  word.parts.push_back(std::move(x));
  word.sides.push_back(side);
}

}  // namespace

Element multiply(const GroupTerm& g, const Element& a, const Element& b) {
  switch (g.kind()) {
    case GroupKind::kFreeAbelian: {
      Element r = a;
      for (std::size_t i = 0; i < r.word.size(); ++i) r.word[i] += b.word[i];
      return r;
    }
    case GroupKind::kCyclic:
      return Element{{mod(a.word[0] + b.word[0], g.rank())}, {}, {}};
    case GroupKind::kFree: {
      Element r = a;
      for (std::int64_t letter : b.word) {
        if (!r.word.empty() && r.word.back() == -letter) {
          r.word.pop_back();
        } else {
          r.word.push_back(letter);
        }
      }
      return r;
    }
    case GroupKind::kDirectProduct:
      return Element{{},
                     {multiply(g.left(), a.parts[0], b.parts[0]),
                      multiply(g.right(), a.parts[1], b.parts[1])},
                     {}};
    case GroupKind::kFreeProduct: {
      Element r;
      r.parts.reserve(a.parts.size() + b.parts.size());
      r.sides.reserve(a.parts.size() + b.parts.size());
      r.parts = a.parts;
      r.sides = a.sides;
      for (std::size_t i = 0; i < b.parts.size(); ++i) push_syllable(g, r, b.sides[i], b.parts[i]);
      return r;
    }
  }
  return {};
}

Element inverse(const GroupTerm& g, const Element& a) {
  switch (g.kind()) {
    case GroupKind::kFreeAbelian: {
      Element r = a;
      for (auto& x : r.word) x = -x;
      return r;
    }
    case GroupKind::kCyclic:
      return Element{{mod(-a.word[0], g.rank())}, {}, {}};
    case GroupKind::kFree: {
      Element r;
      r.word.reserve(a.word.size());
      for (auto it = a.word.rbegin(); it != a.word.rend(); ++it) r.word.push_back(-*it);
      return r;
    }
    case GroupKind::kDirectProduct:
      return Element{{}, {inverse(g.left(), a.parts[0]), inverse(g.right(), a.parts[1])}, {}};
    case GroupKind::kFreeProduct: {
      Element r;
      for (std::size_t i = a.parts.size(); i-- > 0;) {
        r.parts.push_back(inverse(factor(g, a.sides[i]), a.parts[i]));
        r.sides.push_back(a.sides[i]);
      }
      return r;
    }
  }
  return {};
}

Element power(const GroupTerm& g, const Element& a, std::int64_t exponent) {
  Element base = exponent < 0 ? inverse(g, a) : a;
  std::uint64_t n = exponent < 0 ? static_cast<std::uint64_t>(-exponent)
                                 : static_cast<std::uint64_t>(exponent);
  Element result = identity(g);
  while (n > 0) {
    if (n & 1U) result = multiply(g, result, base);
    n >>= 1U;
    if (n > 0) base = multiply(g, base, base);
  }
  return result;
}

void validate_element(const GroupTerm& g, const Element& e) {
  switch (g.kind()) {
    case GroupKind::kFreeAbelian:
      require(e.word.size() == static_cast<std::size_t>(g.rank()) && e.parts.empty() &&
                  e.sides.empty(),
              "malformed free abelian element");
      return;
    case GroupKind::kCyclic:
      require(e.word.size() == 1 && e.parts.empty() && e.sides.empty() && e.word[0] >= 0 &&
                  e.word[0] < g.rank(),
              "malformed cyclic element");
      return;
    case GroupKind::kFree:
      require(e.parts.empty() && e.sides.empty(), "malformed free group element");
      for (std::size_t i = 0; i < e.word.size(); ++i) {
        const std::int64_t x = e.word[i];
        require(x != 0 && x >= -g.rank() && x <= g.rank(), "free group letter out of range");
        require(i == 0 || e.word[i - 1] != -x, "free group word is not reduced");
      }
      return;
    case GroupKind::kDirectProduct:
      require(e.word.empty() && e.sides.empty() && e.parts.size() == 2,
              "malformed direct product element");
      validate_element(g.left(), e.parts[0]);
      validate_element(g.right(), e.parts[1]);
      return;
    case GroupKind::kFreeProduct:
      require(e.word.empty() && e.parts.size() == e.sides.size(),
              "malformed free product element");
      for (std::size_t i = 0; i < e.parts.size(); ++i) {
        require(e.sides[i] <= 1, "free product side tag out of range");
        require(i == 0 || e.sides[i] != e.sides[i - 1],
                "free product syllables do not alternate");
        validate_element(factor(g, e.sides[i]), e.parts[i]);
        require(!is_identity(factor(g, e.sides[i]), e.parts[i]),
                "free product syllable is an identity");
      }
      return;
  }
}

Element embed_left(const GroupTerm& product, const Element& e) {
  if (product.kind() == GroupKind::kDirectProduct) {
    return Element{{}, {e, identity(product.right())}, {}};
  }
  require(product.kind() == GroupKind::kFreeProduct, "embedding into a non-product");
  Element r;
  push_syllable(product, r, 0, e);
  return r;
}

Element embed_right(const GroupTerm& product, const Element& e) {
  if (product.kind() == GroupKind::kDirectProduct) {
    return Element{{}, {identity(product.left()), e}, {}};
  }
  require(product.kind() == GroupKind::kFreeProduct, "embedding into a non-product");
  Element r;
  push_syllable(product, r, 1, e);
  return r;
}

std::vector<Element> standard_generators(const GroupTerm& g) {
  std::vector<Element> gens;
  switch (g.kind()) {
    case GroupKind::kFreeAbelian:
      for (int i = 0; i < g.rank(); ++i) {
        for (int sign : {1, -1}) {
          Element e = identity(g);
          e.word[static_cast<std::size_t>(i)] = sign;
          gens.push_back(std::move(e));
        }
      }
      break;
    case GroupKind::kCyclic:
      gens.push_back(Element{{1}, {}, {}});
      if (g.rank() > 2) gens.push_back(Element{{g.rank() - 1}, {}, {}});
      break;
    case GroupKind::kFree:
      for (int i = 1; i <= g.rank(); ++i) {
        gens.push_back(Element{{i}, {}, {}});
        gens.push_back(Element{{-i}, {}, {}});
      }
      break;
    case GroupKind::kDirectProduct:
    case GroupKind::kFreeProduct:
      for (const Element& s : standard_generators(g.left())) gens.push_back(embed_left(g, s));
      for (const Element& s : standard_generators(g.right())) gens.push_back(embed_right(g, s));
      break;
  }
  return gens;
}

std::vector<Element> symmetrize(const GroupTerm& g, std::span<const Element> gens) {
  std::vector<Element> out;
  std::unordered_set<Element, ElementHash> seen;
  auto add = [&](const Element& e) {
    if (seen.insert(e).second) out.push_back(e);
  };
  for (const Element& s : gens) {
    add(s);
    add(inverse(g, s));
  }
  return out;
}

GroupSpec enlarged_generating_set(const GroupSpec& spec) {
  const GroupTerm& g = spec.term;
  std::vector<Element> out;
  std::unordered_set<Element, ElementHash> seen;
  auto add = [&](Element e) {
    if (is_identity(g, e)) return;
    if (seen.insert(e).second) out.push_back(std::move(e));
  };
  for (const Element& a : spec.gens) add(a);
  for (const Element& a : spec.gens) {
    for (const Element& b : spec.gens) add(multiply(g, a, b));
  }
  for (const Element& a : spec.gens) {
    for (const Element& b : spec.gens) {
      const Element ab = multiply(g, a, b);
      for (const Element& c : spec.gens) add(multiply(g, ab, c));
    }
  }
  return GroupSpec{g, std::move(out)};
}

}  // namespace minex
