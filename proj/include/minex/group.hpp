#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "minex/graph.hpp"

namespace minex {

enum class GroupKind { kFreeAbelian, kCyclic, kFree, kDirectProduct, kFreeProduct };

// Immutable recursive description of a group:
//   FreeAbelian(n) | Cyclic(k >= 2) | Free(n) | DirectProduct(a, b) | FreeProduct(a, b)
class GroupTerm {
 public:
  // Z, so that aggregates holding a term are default-constructible.
  GroupTerm();
  static GroupTerm free_abelian(int rank);
  static GroupTerm cyclic(int order);
  static GroupTerm free_group(int rank);
  static GroupTerm direct_product(GroupTerm left, GroupTerm right);
  static GroupTerm free_product(GroupTerm left, GroupTerm right);

  GroupKind kind() const { return node_->kind; }
  // Rank for FreeAbelian/Free, order for Cyclic.
  int rank() const { return node_->rank; }
  const GroupTerm& left() const { return node_->children[0]; }
  const GroupTerm& right() const { return node_->children[1]; }

  // Abelian terms built from FreeAbelian, Cyclic and DirectProduct print as a
  // single flat coordinate tuple.
  bool is_flat_abelian() const;
  // Coordinate count of a flat abelian term.
  std::size_t flat_arity() const;

  // Round-trips through parse_group_term.
  std::string to_string() const;

  friend bool operator==(const GroupTerm& a, const GroupTerm& b);

 private:
  struct Node {
    GroupKind kind;
    int rank = 0;
    std::vector<GroupTerm> children;
  };
  explicit GroupTerm(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

// Normal-form element of a GroupTerm.
//   FreeAbelian: word = coordinates
//   Cyclic:      word = {residue}
//   Free:        word = reduced letters, +i for x_i and -i for its inverse,
//                leftmost letter first
//   DirectProduct: parts = {left, right}
//   FreeProduct:   parts = syllables leftmost first, sides[i] = 0 for the left
//                  factor, 1 for the right; adjacent sides differ and no
//                  syllable is a factor identity
struct Element {
  std::vector<std::int64_t> word;
  std::vector<Element> parts;
  std::vector<std::uint8_t> sides;

  friend bool operator==(const Element& a, const Element& b);
  friend bool operator<(const Element& a, const Element& b);
};

struct ElementHash {
  std::size_t operator()(const Element& e) const noexcept;
};

Element identity(const GroupTerm& g);
bool is_identity(const GroupTerm& g, const Element& e);
Element multiply(const GroupTerm& g, const Element& a, const Element& b);
Element inverse(const GroupTerm& g, const Element& a);
Element power(const GroupTerm& g, const Element& a, std::int64_t exponent);

// Throws when e is not a normal form for g.
void validate_element(const GroupTerm& g, const Element& e);

// Embedding of a factor element into a DirectProduct or FreeProduct.
Element embed_left(const GroupTerm& product, const Element& e);
Element embed_right(const GroupTerm& product, const Element& e);

// Text form of a normal form; parse_element inverts it.
//   flat abelian:  (1,0,-2)
//   Free:          x1^2.x2^-1, identity "e"
//   DirectProduct (non-abelian parts): [a;b]
//   FreeProduct:   syllables joined by '*', each tagged g: (left) or h:
//                  (right), nested free products wrapped in braces; identity "e"
std::string format_element(const GroupTerm& g, const Element& e);
Element parse_element(const GroupTerm& g, std::string_view text);

// Splits on sep outside (), [] and {}; pieces are trimmed.
std::vector<std::string_view> split_top_level(std::string_view text, char sep);

// Standard symmetric generators of each building block, embedded.
std::vector<Element> standard_generators(const GroupTerm& g);

// A group term together with a finite symmetric generating set that excludes
// the identity.
struct GroupSpec {
  GroupTerm term;
  std::vector<Element> gens;
  // Canonical text, accepted by parse_group_spec.
  std::string to_string() const;
};

// Grammar:  expr '|' 'gens=' ('auto' | 'basis' | element (',' element)* [',sym'])
//   expr := prod ('*' prod)*      free product
//   prod := atom ('x' atom)*      direct product
//   atom := 'Z' ['^' n] | 'C' k | 'F' n | '(' expr ')'
// The '| gens=...' clause may be omitted, meaning auto.
GroupSpec parse_group_spec(std::string_view text);
GroupTerm parse_group_term(std::string_view text);

// Checks symmetry, identity exclusion, and that gens reach every element of the
// radius-2 ball of the standard generators.
void validate_generators(const GroupTerm& g, std::span<const Element> gens);

// gens, closed under inverses, duplicates dropped, order preserved.
std::vector<Element> symmetrize(const GroupTerm& g, std::span<const Element> gens);

// Same group with generating set S0 u S0S0 u S0S0S0, identity and repeated
// normal forms removed.
GroupSpec enlarged_generating_set(const GroupSpec& spec);

inline constexpr std::size_t kDefaultBallCap = 5'000'000;

// Append-only set of normal forms, each packed as a byte string (varint
// coordinates). Ids are dense in insertion order; operator[] decodes a copy.
class ElementStore {
 public:
  class iterator {
   public:
    using value_type = Element;
    using difference_type = std::ptrdiff_t;
    iterator() = default;
    iterator(const ElementStore* store, std::size_t i) : store_(store), i_(i) {}
    Element operator*() const { return (*store_)[i_]; }
    iterator& operator++() {
      ++i_;
      return *this;
    }
    iterator operator++(int) {
      iterator old = *this;
      ++i_;
      return old;
    }
    friend bool operator==(const iterator& a, const iterator& b) { return a.i_ == b.i_; }

   private:
    const ElementStore* store_ = nullptr;
    std::size_t i_ = 0;
  };

  std::size_t size() const { return offsets_.size() - 1; }
  bool empty() const { return size() == 0; }
  Element operator[](std::size_t i) const;
  Element front() const { return (*this)[0]; }
  iterator begin() const { return {this, 0}; }
  iterator end() const { return {this, size()}; }

  std::optional<Vertex> find(const Element& e) const;
  // Id of e, inserting it when absent; the flag reports insertion.
  std::pair<Vertex, bool> insert(const Element& e);

  // The same operations on packed forms.
  static void pack(const Element& e, std::string& out);
  std::string_view bytes(std::size_t i) const;
  std::optional<Vertex> find_packed(std::string_view key) const;
  std::pair<Vertex, bool> insert_packed(std::string_view key);

 private:
  std::optional<Vertex> find_hashed(std::string_view key, std::size_t hash) const;
  void grow();

  std::string pool_;
  std::vector<std::uint64_t> offsets_{0};
  // Open addressing over ids with the high hash bits as a tag; an empty slot
  // holds the maximal id.
  struct Slot {
    Vertex id;
    std::uint32_t tag;
  };
  std::vector<Slot> slots_;
  std::string scratch_;
};

// Finite ball of the right-invariant Cayley graph: u ~ v iff u = s v.
struct CayleyBall {
  Graph graph;                       // unlabeled; see label()
  ElementStore elements;             // by vertex id; vertex 0 is the identity
  std::vector<std::int32_t> length;  // word length with respect to the ball generators
  int radius = 0;
  GroupTerm term;

  std::optional<Vertex> find(const Element& e) const { return elements.find(e); }
  Vertex at(const Element& e) const;  // throws when e is outside the ball
  std::string label(Vertex v) const { return format_element(term, elements[v]); }
};

// Vertices: all elements of word length <= radius, in BFS order over gens.
// Edges: pairs inside the ball differing by left multiplication by a generator.
CayleyBall cayley_ball(const GroupSpec& spec, int radius, std::size_t cap = kDefaultBallCap);

// Ball measured by ball_gens, edges drawn from edge_gens: the subgraph of
// Cay(G, edge_gens) induced on the ball_gens ball.
CayleyBall cayley_ball(const GroupTerm& g, std::span<const Element> ball_gens,
                       std::span<const Element> edge_gens, int radius,
                       std::size_t cap = kDefaultBallCap);

}  // namespace minex
