// Finite presentations <x1, ..., xs | w1, ..., wk>.
//
// Grammar: generator names are identifiers; a word is a product of terms
// separated by optional '*', where a term is a generator, '1', or a
// parenthesized word, optionally followed by '^k' with k a (possibly
// negative) integer. Juxtaposed names such as "xy" split by longest-prefix
// match against the generator list. "u = v" stands for u v^-1.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "liequot/matgroup.hpp"

namespace liequot::fp {

// Signed 1-based generator indices; -i is the inverse of generator i.
struct Word {
  std::vector<int> letters;

  bool empty() const noexcept { return letters.empty(); }
  std::size_t length() const noexcept { return letters.size(); }
  friend bool operator==(const Word&, const Word&) = default;
};

Word free_reduce(const Word& w);
Word inverse(const Word& w);
Word concat(const Word& a, const Word& b);

class Presentation {
 public:
  Presentation(std::vector<std::string> names, std::vector<Word> raw_relators,
               std::string source_text);

  std::size_t s() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  // Freely reduced relators; empty ones are dropped.
  const std::vector<Word>& relators() const noexcept { return relators_; }
  const std::vector<Word>& raw_relators() const noexcept { return raw_; }
  const std::string& source_text() const noexcept { return source_; }
  // FNV-1a over the index form of the reduced relators, as 16 hex digits.
  const std::string& hash() const noexcept { return hash_; }

 private:
  std::vector<std::string> names_;
  std::vector<Word> raw_;
  std::vector<Word> relators_;
  std::string source_;
  std::string hash_;
};

Presentation parse_presentation(std::string_view text);
// One presentation per file; '#' starts a comment running to end of line.
Presentation load_presentation(const std::filesystem::path& path);
// Accepts either inline text (starting with '<') or a path to a .fp file.
Presentation read_presentation(const std::string& text_or_path);

std::string format_word(const Word& w, const std::vector<std::string>& names);
// Canonical text; parse_presentation(print(p)) has the same relators.
std::string print(const Presentation& p);

matgrp::Matrix evaluate_word(const Word& w, std::span<const matgrp::Matrix> images);
matgrp::Index evaluate_word(const Word& w, const matgrp::MatGroup& g,
                            std::span<const matgrp::Index> images);

struct Abelianization {
  std::size_t free_rank = 0;
  std::vector<boost::multiprecision::cpp_int> torsion;  // d1 | d2 | ..., all > 1

  bool trivial() const { return free_rank == 0 && torsion.empty(); }
  std::string to_string() const;  // e.g. "Z^2 x Z/2 x Z/6", or "1"
};

// Smith normal form of the relator exponent-sum matrix.
Abelianization abelianization(const Presentation& p);

// Smith normal form diagonal (nonzero entries, in divisibility order).
std::vector<boost::multiprecision::cpp_int> smith_diagonal(
    std::vector<std::vector<boost::multiprecision::cpp_int>> a);

// For a relator that is a pure power x_i^k (up to free reduction), the pair
// (i, |k|) with i 0-based.
std::vector<std::pair<std::size_t, std::uint64_t>> power_relators(const Presentation& p);

}  // namespace liequot::fp
