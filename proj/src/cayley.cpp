#include <algorithm>
#include <functional>
#include <optional>

#include "minex/error.hpp"
#include "minex/group.hpp"

namespace minex {

namespace {

constexpr Vertex kEmptySlot = ~Vertex{0};

void put_varint(std::string& out, std::uint64_t x) {
  while (x >= 0x80) {
    out.push_back(static_cast<char>((x & 0x7f) | 0x80));
    x >>= 7;
  }
  out.push_back(static_cast<char>(x));
}

std::uint64_t get_varint(const char*& p) {
  std::uint64_t x = 0;
  for (int shift = 0;; shift += 7) {
    const auto byte = static_cast<unsigned char>(*p++);
    x |= static_cast<std::uint64_t>(byte & 0x7f) << shift;
    if (byte < 0x80) return x;
  }
}

// Layout: |word| zigzag(word)... |sides| sides... |parts| parts...
void pack_into(const Element& e, std::string& out) {
  put_varint(out, e.word.size());
  for (std::int64_t w : e.word) {
    put_varint(out, (static_cast<std::uint64_t>(w) << 1) ^ static_cast<std::uint64_t>(w >> 63));
  }
  put_varint(out, e.sides.size());
  for (std::uint8_t s : e.sides) out.push_back(static_cast<char>(s));
  put_varint(out, e.parts.size());
  for (const Element& p : e.parts) pack_into(p, out);
}

Element unpack(const char*& p) {
  Element e;
  e.word.resize(get_varint(p));
  for (std::int64_t& w : e.word) {
    const std::uint64_t z = get_varint(p);
    w = static_cast<std::int64_t>(z >> 1) ^ -static_cast<std::int64_t>(z & 1);
  }
  e.sides.resize(get_varint(p));
  for (std::uint8_t& s : e.sides) s = static_cast<std::uint8_t>(*p++);
  e.parts.resize(get_varint(p));
  for (Element& part : e.parts) part = unpack(p);
  return e;
}

void skip_packed(const char*& p) {
  const std::uint64_t words = get_varint(p);
  for (std::uint64_t i = 0; i < words; ++i) get_varint(p);
  p += get_varint(p);
  const std::uint64_t parts = get_varint(p);
  for (std::uint64_t i = 0; i < parts; ++i) skip_packed(p);
}

// Packed left products s * x. In a free product a single-syllable s only
// touches the first syllable of x, so the packed tail of x is reused as is.
class LeftMultiplier {
 public:
  LeftMultiplier(const GroupTerm& g, std::span<const Element> gens) : g_(g), gens_(gens.begin(), gens.end()) {
    fast_ = g.kind() == GroupKind::kFreeProduct &&
            std::all_of(gens_.begin(), gens_.end(), [](const Element& s) { return s.parts.size() == 1; });
    if (fast_) {
      for (const Element& s : gens_) {
        std::string packed;
        pack_into(s.parts[0], packed);
        packed_syllable_.push_back(std::move(packed));
      }
    }
  }

  void load(const Element& x, std::string_view packed) {
    x_ = &x;
    if (!fast_) return;
    // A copy: inserting into the store may move its pool.
    packed_.assign(packed);
    // Offsets of each syllable inside the packed form, plus the end.
    const char* p = packed_.data();
    get_varint(p);
    p += get_varint(p);
    const std::uint64_t parts = get_varint(p);
    syllable_at_.clear();
    for (std::uint64_t i = 0; i < parts; ++i) {
      syllable_at_.push_back(static_cast<std::size_t>(p - packed_.data()));
      skip_packed(p);
    }
    syllable_at_.push_back(packed.size());
  }

  // Packed form of gens[k] * x.
  void product(std::size_t k, std::string& out) const {
    out.clear();
    if (!fast_) {
      pack_into(multiply(g_, gens_[k], *x_), out);
      return;
    }
    const Element& s = gens_[k];
    const std::uint8_t side = s.sides[0];
    const Element& x = *x_;
    std::size_t keep_from = 0;  // first syllable of x copied verbatim
    std::optional<Element> merged;
    bool prepend = true;
    if (!x.parts.empty() && x.sides[0] == side) {
      const GroupTerm& f = side == 0 ? g_.left() : g_.right();
      merged = multiply(f, s.parts[0], x.parts[0]);
      keep_from = 1;
      prepend = !is_identity(f, *merged);
    }
    const std::size_t n = x.parts.size() - keep_from + (prepend ? 1 : 0);
    put_varint(out, 0);
    put_varint(out, n);
    if (prepend) out.push_back(static_cast<char>(side));
    for (std::size_t i = keep_from; i < x.sides.size(); ++i) out.push_back(static_cast<char>(x.sides[i]));
    put_varint(out, n);
    if (prepend) {
      if (merged) {
        pack_into(*merged, out);
      } else {
        out += packed_syllable_[k];
      }
    }
    out.append(packed_, syllable_at_[keep_from]);
  }

 private:
  const GroupTerm& g_;
  std::vector<Element> gens_;
  bool fast_ = false;
  std::vector<std::string> packed_syllable_;
  const Element* x_ = nullptr;
  std::string packed_;
  std::vector<std::size_t> syllable_at_;
};

std::size_t hash_bytes(std::string_view key) { return std::hash<std::string_view>{}(key); }

bool closed_under_inverses(const GroupTerm& g, std::span<const Element> gens) {
  return std::all_of(gens.begin(), gens.end(), [&](const Element& s) {
    return std::find(gens.begin(), gens.end(), inverse(g, s)) != gens.end();
  });
}

}  // namespace

std::string_view ElementStore::bytes(std::size_t i) const {
  return std::string_view(pool_).substr(offsets_[i], offsets_[i + 1] - offsets_[i]);
}

Element ElementStore::operator[](std::size_t i) const {
  const char* p = pool_.data() + offsets_[i];
  return unpack(p);
}

void ElementStore::pack(const Element& e, std::string& out) { pack_into(e, out); }

std::optional<Vertex> ElementStore::find_hashed(std::string_view key, std::size_t hash) const {
  if (slots_.empty()) return std::nullopt;
  const std::size_t mask = slots_.size() - 1;
  const auto tag = static_cast<std::uint32_t>(hash >> 32);
  for (std::size_t i = hash & mask;; i = (i + 1) & mask) {
    const Slot& slot = slots_[i];
    if (slot.id == kEmptySlot) return std::nullopt;
    if (slot.tag == tag && bytes(slot.id) == key) return slot.id;
  }
}

std::optional<Vertex> ElementStore::find_packed(std::string_view key) const {
  return find_hashed(key, hash_bytes(key));
}

std::optional<Vertex> ElementStore::find(const Element& e) const {
  thread_local std::string key;
  key.clear();
  pack_into(e, key);
  return find_packed(key);
}

void ElementStore::grow() {
  slots_.assign(std::max<std::size_t>(16, slots_.size() * 2), Slot{kEmptySlot, 0});
  const std::size_t mask = slots_.size() - 1;
  for (Vertex id = 0; id < size(); ++id) {
    const std::size_t h = hash_bytes(bytes(id));
    std::size_t i = h & mask;
    while (slots_[i].id != kEmptySlot) i = (i + 1) & mask;
    slots_[i] = Slot{id, static_cast<std::uint32_t>(h >> 32)};
  }
}

std::pair<Vertex, bool> ElementStore::insert_packed(std::string_view key) {
  const std::size_t h = hash_bytes(key);
  if (auto id = find_hashed(key, h)) return {*id, false};
  require(size() < kEmptySlot, "element store is full");
  // Load factor stays at most 1/2.
  if (2 * (size() + 1) > slots_.size()) grow();
  const std::size_t mask = slots_.size() - 1;
  std::size_t i = h & mask;
  while (slots_[i].id != kEmptySlot) i = (i + 1) & mask;
  const auto id = static_cast<Vertex>(size());
  slots_[i] = Slot{id, static_cast<std::uint32_t>(h >> 32)};
  pool_.append(key);
  offsets_.push_back(pool_.size());
  return {id, true};
}

std::pair<Vertex, bool> ElementStore::insert(const Element& e) {
  scratch_.clear();
  pack_into(e, scratch_);
  return insert_packed(scratch_);
}

Vertex CayleyBall::at(const Element& e) const {
  auto id = find(e);
  if (!id) {
    throw Error(ErrorKind::kInsufficientRadius, "element lies outside the ball of radius " +
                                                    std::to_string(radius));
  }
  return *id;
}

CayleyBall cayley_ball(const GroupSpec& spec, int radius, std::size_t cap) {
  return cayley_ball(spec.term, spec.gens, spec.gens, radius, cap);
}

CayleyBall cayley_ball(const GroupTerm& g, std::span<const Element> ball_gens,
                       std::span<const Element> edge_gens, int radius, std::size_t cap) {
  require(radius >= 0, "radius must be nonnegative");
  CayleyBall ball;
  ball.radius = radius;
  ball.term = g;
  ball.elements.insert(identity(g));
  ball.length.push_back(0);

  // With symmetric edge generators every edge is seen from both ends; keep it
  // from the larger id only.
  const bool same = std::equal(ball_gens.begin(), ball_gens.end(), edge_gens.begin(), edge_gens.end());
  const bool symmetric = closed_under_inverses(g, edge_gens);
  std::vector<Edge> edges;
  auto add_edge = [&](Vertex u, Vertex v) {
    if (u != v && (!symmetric || u < v)) edges.emplace_back(u, v);
  };

  // Ids are assigned in BFS order, so the id range is the queue. When v is
  // processed every vertex of length <= length(v) + 1 is already present or is
  // added here, so neighbor lookups are complete.
  LeftMultiplier by_ball_gen(g, ball_gens);
  std::string key;
  for (std::size_t v = 0; v < ball.elements.size(); ++v) {
    const bool grows = ball.length[v] < radius;
    if (!grows && !same) continue;
    const Element x = ball.elements[v];
    by_ball_gen.load(x, ball.elements.bytes(v));
    for (std::size_t k = 0; k < ball_gens.size(); ++k) {
      by_ball_gen.product(k, key);
      std::optional<Vertex> u;
      if (grows) {
        const auto [id, inserted] = ball.elements.insert_packed(key);
        if (inserted) {
          if (ball.elements.size() > cap) {
            throw Error(ErrorKind::kCapacity,
                        "Cayley ball exceeds the cap of " + std::to_string(cap) + " vertices");
          }
          ball.length.push_back(ball.length[v] + 1);
        }
        u = id;
      } else {
        u = ball.elements.find_packed(key);
      }
      if (same && u) add_edge(*u, static_cast<Vertex>(v));
    }
  }
  if (!same) {
    LeftMultiplier by_edge_gen(g, edge_gens);
    for (std::size_t v = 0; v < ball.elements.size(); ++v) {
      const Element x = ball.elements[v];
      by_edge_gen.load(x, ball.elements.bytes(v));
      for (std::size_t k = 0; k < edge_gens.size(); ++k) {
        by_edge_gen.product(k, key);
        if (auto u = ball.elements.find_packed(key)) add_edge(*u, static_cast<Vertex>(v));
      }
    }
  }

  GraphBuilder builder(ball.elements.size());
  builder.add_edges(std::move(edges));
  ball.graph = std::move(builder).build();
  return ball;
}

}  // namespace minex
