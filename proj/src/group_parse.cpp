#include <algorithm>
#include <cctype>
#include <charconv>
#include <unordered_set>

#include "minex/error.hpp"
#include "minex/group.hpp"

namespace minex {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

std::vector<std::string_view> split_top_level(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    require(depth >= 0, "unbalanced brackets in '" + std::string(s) + "'");
    if (c == sep && depth == 0) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  require(depth == 0, "unbalanced brackets in '" + std::string(s) + "'");
  out.push_back(trim(s.substr(start)));
  return out;
}

namespace {

std::int64_t parse_int(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  require(ec == std::errc() && ptr == s.data() + s.size() && !s.empty(),
          "expected an integer, got '" + std::string(s) + "'");
  return value;
}

bool wrapped(std::string_view s, char open, char close) {
  return s.size() >= 2 && s.front() == open && s.back() == close;
}

void flatten(const GroupTerm& g, const Element& e, std::vector<std::int64_t>& out) {
  if (g.kind() == GroupKind::kDirectProduct) {
    flatten(g.left(), e.parts[0], out);
    flatten(g.right(), e.parts[1], out);
    return;
  }
  out.insert(out.end(), e.word.begin(), e.word.end());
}

Element unflatten(const GroupTerm& g, std::span<const std::int64_t> coords) {
  switch (g.kind()) {
    case GroupKind::kFreeAbelian:
      return Element{{coords.begin(), coords.end()}, {}, {}};
    case GroupKind::kCyclic: {
      const std::int64_t k = g.rank();
      return Element{{((coords[0] % k) + k) % k}, {}, {}};
    }
    case GroupKind::kDirectProduct: {
      const std::size_t left = g.left().flat_arity();
      return Element{{},
                     {unflatten(g.left(), coords.first(left)),
                      unflatten(g.right(), coords.subspan(left))},
                     {}};
    }
    default:
      fail("unflatten on a non-abelian term");
  }
}

std::string format_free_word(const Element& e) {
  if (e.word.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < e.word.size();) {
    std::size_t j = i;
    while (j < e.word.size() && e.word[j] == e.word[i]) ++j;
    const std::int64_t letter = e.word[i];
    const std::int64_t exponent = static_cast<std::int64_t>(j - i) * (letter > 0 ? 1 : -1);
    if (!out.empty()) out += '.';
    out += "x" + std::to_string(letter > 0 ? letter : -letter);
    if (exponent != 1) out += "^" + std::to_string(exponent);
    i = j;
  }
  return out;
}

Element parse_free_word(const GroupTerm& g, std::string_view text) {
  Element result = identity(g);
  if (text == "e" || text == "1") return result;
  for (std::string_view letter : split_top_level(text, '.')) {
    require(!letter.empty() && letter.front() == 'x',
            "free group letter must look like x<i>[^k], got '" + std::string(letter) + "'");
    letter.remove_prefix(1);
    std::int64_t exponent = 1;
    if (auto caret = letter.find('^'); caret != std::string_view::npos) {
      exponent = parse_int(letter.substr(caret + 1));
      letter = letter.substr(0, caret);
    }
    const std::int64_t index = parse_int(letter);
    require(index >= 1 && index <= g.rank(), "free group letter index out of range");
    result = multiply(g, result, power(g, Element{{index}, {}, {}}, exponent));
  }
  return result;
}

}  // namespace

std::string format_element(const GroupTerm& g, const Element& e) {
  if (g.is_flat_abelian()) {
    std::vector<std::int64_t> coords;
    flatten(g, e, coords);
    std::string out = "(";
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (i > 0) out += ',';
      out += std::to_string(coords[i]);
    }
    return out + ")";
  }
  switch (g.kind()) {
    case GroupKind::kFree:
      return format_free_word(e);
    case GroupKind::kDirectProduct:
      return "[" + format_element(g.left(), e.parts[0]) + ";" +
             format_element(g.right(), e.parts[1]) + "]";
    case GroupKind::kFreeProduct: {
      if (e.parts.empty()) return "e";
      std::string out;
      for (std::size_t i = 0; i < e.parts.size(); ++i) {
        if (i > 0) out += '*';
        const GroupTerm& f = e.sides[i] == 0 ? g.left() : g.right();
        const std::string body = format_element(f, e.parts[i]);
        out += e.sides[i] == 0 ? "g:" : "h:";
        out += f.kind() == GroupKind::kFreeProduct ? "{" + body + "}" : body;
      }
      return out;
    }
    default:
      break;
  }
  fail("cannot format element");
}

Element parse_element(const GroupTerm& g, std::string_view text) {
  text = trim(text);
  require(!text.empty(), "empty element text");
  if (g.is_flat_abelian()) {
    require(wrapped(text, '(', ')'), "abelian element must be a tuple, got '" + std::string(text) + "'");
    std::vector<std::int64_t> coords;
    for (std::string_view c : split_top_level(text.substr(1, text.size() - 2), ',')) {
      coords.push_back(parse_int(c));
    }
    require(coords.size() == g.flat_arity(),
            "tuple '" + std::string(text) + "' has the wrong number of coordinates");
    return unflatten(g, coords);
  }
  switch (g.kind()) {
    case GroupKind::kFree:
      return parse_free_word(g, text);
    case GroupKind::kDirectProduct: {
      require(wrapped(text, '[', ']'), "direct product element must look like [a;b]");
      auto parts = split_top_level(text.substr(1, text.size() - 2), ';');
      require(parts.size() == 2, "direct product element needs two components");
      return Element{{}, {parse_element(g.left(), parts[0]), parse_element(g.right(), parts[1])}, {}};
    }
    case GroupKind::kFreeProduct: {
      Element result = identity(g);
      if (text == "e" || text == "1") return result;
      for (std::string_view syllable : split_top_level(text, '*')) {
        require(syllable.size() > 2 && (syllable.substr(0, 2) == "g:" || syllable.substr(0, 2) == "h:"),
                "free product syllable must start with g: or h:, got '" + std::string(syllable) + "'");
        const bool left = syllable.front() == 'g';
        const GroupTerm& f = left ? g.left() : g.right();
        std::string_view body = trim(syllable.substr(2));
        if (f.kind() == GroupKind::kFreeProduct) {
          require(wrapped(body, '{', '}'), "nested free product syllable must be braced");
          body = body.substr(1, body.size() - 2);
        }
        const Element x = parse_element(f, body);
        result = multiply(g, result, left ? embed_left(g, x) : embed_right(g, x));
      }
      return result;
    }
    default:
      break;
  }
  fail("cannot parse element '" + std::string(text) + "'");
}

namespace {

class TermParser {
 public:
  explicit TermParser(std::string_view text) : text_(text) {}

  GroupTerm parse() {
    GroupTerm t = expr();
    skip_space();
    require(pos_ == text_.size(), "unexpected '" + std::string(text_.substr(pos_)) + "' in group term");
    return t;
  }

 private:
  GroupTerm expr() {
    GroupTerm t = prod();
    while (accept('*')) t = GroupTerm::free_product(t, prod());
    return t;
  }

  GroupTerm prod() {
    GroupTerm t = atom();
    while (accept('x')) t = GroupTerm::direct_product(t, atom());
    return t;
  }

  GroupTerm atom() {
    skip_space();
    require(pos_ < text_.size(), "group term ended early");
    const char c = text_[pos_++];
    switch (c) {
      case '(': {
        GroupTerm t = expr();
        require(accept(')'), "missing ')' in group term");
        return t;
      }
      case 'Z':
        return GroupTerm::free_abelian(accept('^') ? number() : 1);
      case 'C':
        return GroupTerm::cyclic(number());
      case 'F':
        return GroupTerm::free_group(number());
      default:
        fail(std::string("unexpected '") + c + "' in group term");
    }
  }

  int number() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    require(pos_ > start, "expected a number in group term");
    return static_cast<int>(parse_int(text_.substr(start, pos_ - start)));
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

GroupTerm parse_group_term(std::string_view text) { return TermParser(trim(text)).parse(); }

GroupSpec parse_group_spec(std::string_view text) {
  const std::size_t bar = text.find('|');
  GroupSpec spec{parse_group_term(text.substr(0, bar)), {}};
  std::string_view gens_text = "auto";
  if (bar != std::string_view::npos) {
    std::string_view options = trim(text.substr(bar + 1));
    require(options.substr(0, 5) == "gens=", "expected 'gens=' after '|'");
    gens_text = trim(options.substr(5));
  }
  if (gens_text == "auto" || gens_text == "basis") {
    spec.gens = standard_generators(spec.term);
  } else {
    bool sym = false;
    std::vector<Element> gens;
    for (std::string_view item : split_top_level(gens_text, ',')) {
      if (item == "sym") {
        sym = true;
        continue;
      }
      gens.push_back(parse_element(spec.term, item));
    }
    spec.gens = sym ? symmetrize(spec.term, gens) : gens;
  }
  validate_generators(spec.term, spec.gens);
  return spec;
}

std::string GroupSpec::to_string() const {
  std::string out = term.to_string() + " | gens=";
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i > 0) out += ',';
    out += format_element(term, gens[i]);
  }
  return out;
}

void validate_generators(const GroupTerm& g, std::span<const Element> gens) {
  require(!gens.empty(), "generating set is empty");
  std::unordered_set<Element, ElementHash> members;
  for (const Element& s : gens) {
    validate_element(g, s);
    require(!is_identity(g, s), "generating set contains the identity");
    members.insert(s);
  }
  require(members.size() == gens.size(), "generating set lists an element twice");
  for (const Element& s : gens) {
    require(members.count(inverse(g, s)) > 0,
            "generating set is not symmetric: missing inverse of " + format_element(g, s));
  }

  // Radius-2 ball of the standard generators must be reachable.
  const auto standard = standard_generators(g);
  std::unordered_set<Element, ElementHash> targets{identity(g)};
  std::vector<Element> frontier{identity(g)};
  for (int step = 0; step < 2; ++step) {
    std::vector<Element> next;
    for (const Element& v : frontier) {
      for (const Element& s : standard) {
        Element w = multiply(g, s, v);
        if (targets.insert(w).second) next.push_back(std::move(w));
      }
    }
    frontier = std::move(next);
  }

  constexpr std::size_t kProbeCap = 200'000;
  constexpr int kProbeRadius = 64;
  std::unordered_set<Element, ElementHash> seen{identity(g)};
  frontier = {identity(g)};
  std::size_t found = 1;
  for (int step = 0; step < kProbeRadius && found < targets.size() && !frontier.empty() &&
                     seen.size() < kProbeCap;
       ++step) {
    std::vector<Element> next;
    for (const Element& v : frontier) {
      for (const Element& s : gens) {
        Element w = multiply(g, s, v);
        if (seen.insert(w).second) {
          if (targets.count(w) > 0) ++found;
          next.push_back(std::move(w));
        }
      }
    }
    frontier = std::move(next);
  }
  require(found == targets.size(), "generating set does not generate the group");
}

}  // namespace minex
