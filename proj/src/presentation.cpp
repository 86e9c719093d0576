#include "regen/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace regen {

Word Word::generator(int index, int exponent) {
  if (exponent == 0) return Word{};
  return Word({Letter{index, exponent}});
}

std::size_t Word::length() const {
  std::size_t n = 0;
  for (const auto& l : letters_) n += static_cast<std::size_t>(std::abs(l.exponent));
  return n;
}

bool Word::uses(int generator) const {
  return std::any_of(letters_.begin(), letters_.end(),
                     [&](const Letter& l) { return l.generator == generator; });
}

Word Word::operator*(const Word& other) const {
  std::vector<Letter> out = letters_;
  out.insert(out.end(), other.letters_.begin(), other.letters_.end());
  return free_reduce(Word(std::move(out)));
}

Word free_reduce(const Word& w) {
  std::vector<Letter> stack;
  stack.reserve(w.letters().size());
  for (const auto& l : w.letters()) {
    if (l.exponent == 0) continue;
    if (!stack.empty() && stack.back().generator == l.generator) {
      stack.back().exponent += l.exponent;
      if (stack.back().exponent == 0) stack.pop_back();
    } else {
      stack.push_back(l);
    }
  }
  return Word(std::move(stack));
}

Word word_invert(const Word& w) {
  std::vector<Letter> out(w.letters().rbegin(), w.letters().rend());
  for (auto& l : out) l.exponent = -l.exponent;
  return Word(std::move(out));
}

Word cyclic_reduce(const Word& w) {
  std::vector<Letter> v = free_reduce(w).letters();
  while (v.size() >= 2 && v.front().generator == v.back().generator) {
    v.front().exponent += v.back().exponent;
    v.pop_back();
    if (v.front().exponent == 0) v.erase(v.begin());
  }
  return Word(std::move(v));
}

std::optional<int> Presentation::find(std::string_view name) const {
  for (std::size_t i = 0; i < generators.size(); ++i)
    if (generators[i].name == name) return static_cast<int>(i);
  return std::nullopt;
}

ParseError::ParseError(const std::string& what, int line, int column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + what),
      line_(line),
      column_(column) {}

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// A slice of the source that remembers where it started.
struct Span {
  std::string_view text;
  int line = 1;
  int column = 1;
};

Span trim(Span s) {
  while (!s.text.empty() && std::isspace(static_cast<unsigned char>(s.text.front()))) {
    s.text.remove_prefix(1);
    ++s.column;
  }
  while (!s.text.empty() && std::isspace(static_cast<unsigned char>(s.text.back())))
    s.text.remove_suffix(1);
  return s;
}

Span sub(const Span& s, std::size_t pos, std::size_t len = std::string_view::npos) {
  return Span{s.text.substr(pos, len), s.line, s.column + static_cast<int>(pos)};
}

std::vector<Span> split(const Span& s, char sep) {
  std::vector<Span> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.text.size(); ++i) {
    if (i == s.text.size() || s.text[i] == sep) {
      out.push_back(sub(s, start, i - start));
      start = i + 1;
    }
  }
  return out;
}

std::optional<int> lookup(std::string_view name, const std::vector<Generator>& gens) {
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (gens[i].name == name) return static_cast<int>(i);
  return std::nullopt;
}

Word parse_word_span(Span s, const std::vector<Generator>& gens) {
  s = trim(s);
  std::vector<Letter> letters;
  const auto& t = s.text;
  std::size_t i = 0;
  auto fail = [&](const std::string& msg, std::size_t at) -> void {
    throw ParseError(msg, s.line, s.column + static_cast<int>(at));
  };
  if (t == "1") return Word{};
  while (i < t.size()) {
    if (std::isspace(static_cast<unsigned char>(t[i]))) {
      ++i;
      continue;
    }
    if (!ident_start(t[i])) fail(std::string("unexpected character '") + t[i] + "'", i);
    std::size_t j = i;
    while (j < t.size() && ident_char(t[j])) ++j;
    std::string_view run = t.substr(i, j - i);
    // Split the run into declared names, preferring the longest match.
    std::size_t k = 0;
    while (k < run.size()) {
      std::optional<int> hit;
      std::size_t hit_len = 0;
      for (std::size_t len = run.size() - k; len >= 1; --len) {
        if (auto g = lookup(run.substr(k, len), gens)) {
          hit = g;
          hit_len = len;
          break;
        }
      }
      if (!hit) {
        fail("undeclared generator " + std::string(run.substr(k)), i + k);
      }
      letters.push_back(Letter{*hit, 1});
      k += hit_len;
    }
    i = j;
    if (i < t.size() && t[i] == '^') {
      ++i;
      std::size_t e = i;
      if (e < t.size() && (t[e] == '-' || t[e] == '+')) ++e;
      while (e < t.size() && std::isdigit(static_cast<unsigned char>(t[e]))) ++e;
      int value = 0;
      const char* first = t.data() + i + (t[i] == '+' ? 1 : 0);
      auto [ptr, ec] = std::from_chars(first, t.data() + e, value);
      if (ec != std::errc() || ptr != t.data() + e) fail("bad exponent", i);
      letters.back().exponent = value;
      i = e;
    }
  }
  return free_reduce(Word(std::move(letters)));
}

Word parse_relator(const Span& s, const std::vector<Generator>& gens) {
  auto sides = split(s, '=');
  if (sides.size() > 2) throw ParseError("more than one '=' in relator", s.line, s.column);
  Word w = parse_word_span(sides[0], gens);
  if (sides.size() == 2) w = w * word_invert(parse_word_span(sides[1], gens));
  return w;
}

}  // namespace

Word parse_word(std::string_view text, const std::vector<Generator>& generators) {
  return parse_word_span(Span{text, 1, 1}, generators);
}

Presentation parse_presentation(std::string_view text) {
  // Break into statements, tracking source positions.
  std::vector<Span> statements;
  {
    int line = 1, col = 1;
    std::size_t start = 0;
    int sline = 1, scol = 1;
    bool in_comment = false;
    std::size_t comment_at = std::string_view::npos;
    for (std::size_t i = 0; i <= text.size(); ++i) {
      char c = i < text.size() ? text[i] : '\n';
      if (c == '#' && !in_comment) {
        in_comment = true;
        comment_at = i;
      }
      if (c == '\n' || (c == ';' && !in_comment)) {
        std::size_t end = in_comment ? comment_at : i;
        statements.push_back(Span{text.substr(start, end - start), sline, scol});
        start = i + 1;
        in_comment = false;
        if (c == '\n') {
          ++line;
          col = 1;
        } else {
          ++col;
        }
        sline = line;
        scol = col;
        continue;
      }
      ++col;
    }
  }

  Presentation p;
  bool have_gens = false;
  std::vector<Span> rels, subst;
  std::optional<Span> meridian, longitude;
  for (const auto& raw : statements) {
    Span st = trim(raw);
    if (st.text.empty()) continue;
    auto colon = st.text.find(':');
    if (colon == std::string_view::npos)
      throw ParseError("expected 'key:' at start of statement", st.line, st.column);
    std::string key(trim(sub(st, 0, colon)).text);
    Span body = sub(st, colon + 1);
    if (key == "gens") {
      if (have_gens) throw ParseError("duplicate gens", st.line, st.column);
      have_gens = true;
      std::istringstream in{std::string(body.text)};
      std::string name;
      while (in >> name) {
        if (!ident_start(name[0]) ||
            !std::all_of(name.begin(), name.end(), [](char c) { return ident_char(c); }))
          throw ParseError("bad generator name '" + name + "'", body.line, body.column);
        if (p.find(name)) throw ParseError("duplicate generator " + name, body.line, body.column);
        p.generators.push_back(Generator{name});
      }
    } else if (key == "rels") {
      for (auto& r : split(body, ','))
        if (!trim(r).text.empty()) rels.push_back(r);
    } else if (key == "meridian") {
      meridian = body;
    } else if (key == "longitude") {
      longitude = body;
    } else if (key == "subst") {
      for (auto& r : split(body, ','))
        if (!trim(r).text.empty()) subst.push_back(r);
    } else {
      throw ParseError("unknown key '" + key + "'", st.line, st.column);
    }
  }
  if (!have_gens || p.generators.empty()) throw ParseError("empty generator list", 1, 1);

  for (const auto& r : rels) p.relators.push_back(parse_relator(r, p.generators));
  if (meridian) p.meridian = parse_word_span(*meridian, p.generators);
  if (longitude) p.longitude = parse_word_span(*longitude, p.generators);
  for (const auto& s : subst) {
    auto sides = split(s, '=');
    if (sides.size() != 2) throw ParseError("substitution needs 'g = word'", s.line, s.column);
    Span lhs = trim(sides[0]);
    auto g = p.find(lhs.text);
    if (!g) throw ParseError("undeclared generator " + std::string(lhs.text), lhs.line, lhs.column);
    p.substitutions.push_back(Substitution{*g, parse_word_span(sides[1], p.generators)});
  }
  return p;
}

std::string format_word(const Word& w, const std::vector<Generator>& generators) {
  if (w.empty()) return "1";
  std::string out;
  for (const auto& l : w.letters()) {
    if (!out.empty()) out += ' ';
    out += generators.at(l.generator).name;
    if (l.exponent != 1) out += "^" + std::to_string(l.exponent);
  }
  return out;
}

std::string serialize_presentation(const Presentation& p) {
  std::string out = "gens:";
  for (const auto& g : p.generators) out += " " + g.name;
  out += "\nrels: ";
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    if (i) out += ", ";
    out += format_word(p.relators[i], p.generators);
  }
  out += "\nmeridian: " + format_word(p.meridian, p.generators);
  out += "\nlongitude: " + format_word(p.longitude, p.generators) + "\n";
  if (!p.substitutions.empty()) {
    out += "subst: ";
    for (std::size_t i = 0; i < p.substitutions.size(); ++i) {
      if (i) out += ", ";
      out += p.name(p.substitutions[i].generator) + " = " +
             format_word(p.substitutions[i].replacement, p.generators);
    }
    out += "\n";
  }
  return out;
}

std::vector<int> exponent_sums(const Word& w, int generator_count) {
  std::vector<int> row(generator_count, 0);
  for (const auto& l : w.letters()) row.at(l.generator) += l.exponent;
  return row;
}

std::vector<std::vector<int>> exponent_sum_matrix(const Presentation& p) {
  std::vector<std::vector<int>> m;
  for (const auto& r : p.relators) m.push_back(exponent_sums(r, p.generator_count()));
  return m;
}

}  // namespace regen
