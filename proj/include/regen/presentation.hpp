// Finitely presented groups with a marked peripheral pair.
#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace regen {

/// One syllable g^k of a word; k is never zero.
struct Letter {
  int generator = 0;
  int exponent = 1;

  friend bool operator==(const Letter&, const Letter&) = default;
};

/// A word in the generators, stored as syllables. Adjacent syllables with the
/// same generator are merged by free_reduce().
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  static Word generator(int index, int exponent = 1);

  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  std::size_t syllables() const { return letters_.size(); }
  /// Total number of letters counted with multiplicity.
  std::size_t length() const;
  bool uses(int generator) const;

  Word operator*(const Word& other) const;

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

Word free_reduce(const Word& w);
Word word_invert(const Word& w);
/// Cyclic rotation followed by free reduction of the ends.
Word cyclic_reduce(const Word& w);

struct Generator {
  std::string name;
  friend bool operator==(const Generator&, const Generator&) = default;
};

/// Expresses a surplus generator as a word in the kept ones.
struct Substitution {
  int generator = 0;
  Word replacement;
  friend bool operator==(const Substitution&, const Substitution&) = default;
};

struct Presentation {
  std::vector<Generator> generators;
  std::vector<Word> relators;
  Word meridian;
  Word longitude;
  /// Optional `subst:` block used by the two-generator reduction.
  std::vector<Substitution> substitutions;

  int generator_count() const { return static_cast<int>(generators.size()); }
  std::optional<int> find(std::string_view name) const;
  const std::string& name(int index) const { return generators.at(index).name; }

  friend bool operator==(const Presentation&, const Presentation&) = default;
};

/// Raised for malformed presentation text. Line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Parses the line-oriented presentation format:
///
///   gens: a b m
///   rels: m a m^-1 = a b, m b m^-1 = b a b a b a b a b
///   meridian: m
///   longitude: a b a^-1 b^-1
///   subst: b = a^-1 m a m^-1
///
/// Statements are separated by newlines or ';'. '#' starts a comment.
/// Runs of single-letter generators may be juxtaposed ("aba^-1b^-1").
Presentation parse_presentation(std::string_view text);

/// Parses a word against an existing generator list.
Word parse_word(std::string_view text, const std::vector<Generator>& generators);

std::string format_word(const Word& w, const std::vector<Generator>& generators);
std::string serialize_presentation(const Presentation& p);

/// Entry (i, j) is the exponent sum of generator j in relator i.
std::vector<std::vector<int>> exponent_sum_matrix(const Presentation& p);

/// Exponent sum of each generator in a single word.
std::vector<int> exponent_sums(const Word& w, int generator_count);

}  // namespace regen
