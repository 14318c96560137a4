#include "liequot/fp.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "liequot/errors.hpp"

namespace liequot::fp {

using boost::multiprecision::cpp_int;

Word free_reduce(const Word& w) {
  Word out;
  for (int l : w.letters) {
    if (!out.letters.empty() && out.letters.back() == -l) {
      out.letters.pop_back();
    } else {
      out.letters.push_back(l);
    }
  }
  return out;
}

Word inverse(const Word& w) {
  Word out;
  out.letters.reserve(w.letters.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) out.letters.push_back(-*it);
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
  return out;
}

namespace {

std::string fnv1a_hex(std::size_t s, const std::vector<Word>& rels) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto feed = [&](std::int64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= static_cast<std::uint8_t>(static_cast<std::uint64_t>(v) >> (8 * i));
      h *= 0x100000001b3ull;
    }
  };
  feed(static_cast<std::int64_t>(s));
  feed(static_cast<std::int64_t>(rels.size()));
  for (const auto& w : rels) {
    feed(static_cast<std::int64_t>(w.letters.size()));
    for (int l : w.letters) feed(l);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

constexpr std::size_t kMaxWordLength = 1'000'000;

class Parser {
 public:
  explicit Parser(std::string_view text) : t_(text) {}

  Presentation run() {
    skip();
    expect('<');
    std::vector<std::string> names;
    skip();
    if (peek() != '|' && peek() != '>') {
      while (true) {
        skip();
        const std::size_t at = pos_;
        std::string name = identifier();
        if (name.empty()) throw SyntaxError("expected generator name", at);
        if (std::find(names.begin(), names.end(), name) != names.end()) {
          throw SyntaxError("duplicate generator '" + name + "'", at);
        }
        names.push_back(std::move(name));
        skip();
        if (peek() == ',') {
          ++pos_;
          continue;
        }
        break;
      }
    }
    names_ = &names;
    std::vector<Word> rels;
    skip();
    if (peek() == '|') {
      ++pos_;
      skip();
      if (peek() != '>') {
        while (true) {
          rels.push_back(relation());
          skip();
          if (peek() == ',') {
            ++pos_;
            continue;
          }
          break;
        }
      }
    }
    skip();
    expect('>');
    skip();
    if (pos_ != t_.size()) throw SyntaxError("trailing characters after '>'", pos_);
    return Presentation(std::move(names), std::move(rels), std::string(t_));
  }

 private:
  char peek() const { return pos_ < t_.size() ? t_[pos_] : '\0'; }

  void skip() {
    while (pos_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[pos_]))) ++pos_;
  }

  void expect(char c) {
    if (peek() != c) throw SyntaxError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  std::string identifier() {
    if (!ident_start(peek())) return {};
    const std::size_t b = pos_;
    while (ident_char(peek())) ++pos_;
    return std::string(t_.substr(b, pos_ - b));
  }

  Word relation() {
    Word lhs = word();
    skip();
    if (peek() == '=') {
      ++pos_;
      Word rhs = word();
      return concat(lhs, inverse(rhs));
    }
    return lhs;
  }

  Word word() {
    Word w;
    bool any = false;
    while (true) {
      skip();
      char c = peek();
      if (c == '*') {
        if (!any) throw SyntaxError("'*' without a left operand", pos_);
        ++pos_;
        skip();
        c = peek();
        if (!(ident_start(c) || c == '(' || c == '1')) {
          throw SyntaxError("expected a term after '*'", pos_);
        }
      }
      if (ident_start(c) || c == '(' || c == '1') {
        Word t = term();
        w.letters.insert(w.letters.end(), t.letters.begin(), t.letters.end());
        if (w.letters.size() > kMaxWordLength) throw SyntaxError("word too long", pos_);
        any = true;
        continue;
      }
      break;
    }
    if (!any) throw SyntaxError("expected a word", pos_);
    return w;
  }

  Word term() {
    skip();
    Word base;
    const char c = peek();
    if (c == '(') {
      ++pos_;
      base = word();
      skip();
      expect(')');
    } else if (c == '1') {
      ++pos_;
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        throw SyntaxError("only the literal 1 may appear as a word", pos_);
      }
    } else {
      const std::size_t at = pos_;
      std::string run = identifier();
      // Split a juxtaposed run by longest-prefix match; only the last
      // generator of the run takes the exponent.
      std::size_t off = 0;
      std::vector<int> letters;
      while (off < run.size()) {
        std::size_t best = 0;
        int idx = 0;
        for (std::size_t i = 0; i < names_->size(); ++i) {
          const auto& nm = (*names_)[i];
          if (nm.size() > best && run.compare(off, nm.size(), nm) == 0) {
            best = nm.size();
            idx = static_cast<int>(i) + 1;
          }
        }
        if (best == 0) {
          throw UnknownGenerator("unknown generator in '" + run + "' at position " +
                                 std::to_string(at + off));
        }
        letters.push_back(idx);
        off += best;
      }
      for (std::size_t i = 0; i + 1 < letters.size(); ++i) base.letters.push_back(letters[i]);
      Word last{{letters.back()}};
      Word powered = power(last);
      base.letters.insert(base.letters.end(), powered.letters.begin(), powered.letters.end());
      return base;
    }
    return power(base);
  }

  Word power(const Word& base) {
    skip();
    if (peek() != '^') return base;
    ++pos_;
    skip();
    bool neg = false;
    if (peek() == '-' || peek() == '+') {
      neg = peek() == '-';
      ++pos_;
    }
    const std::size_t at = pos_;
    std::uint64_t k = 0;
    if (!std::isdigit(static_cast<unsigned char>(peek()))) throw SyntaxError("expected exponent", at);
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      k = k * 10 + static_cast<std::uint64_t>(peek() - '0');
      if (k > kMaxWordLength) throw SyntaxError("exponent too large", at);
      ++pos_;
    }
    const Word unit = neg ? inverse(base) : base;
    if (unit.letters.size() * k > kMaxWordLength) throw SyntaxError("word too long", at);
    Word out;
    for (std::uint64_t i = 0; i < k; ++i) {
      out.letters.insert(out.letters.end(), unit.letters.begin(), unit.letters.end());
    }
    return out;
  }

  std::string_view t_;
  std::size_t pos_ = 0;
  const std::vector<std::string>* names_ = nullptr;
};

}  // namespace

Presentation::Presentation(std::vector<std::string> names, std::vector<Word> raw_relators,
                           std::string source_text)
    : names_(std::move(names)), raw_(std::move(raw_relators)), source_(std::move(source_text)) {
  for (const auto& w : raw_) {
    for (int l : w.letters) {
      if (l == 0 || static_cast<std::size_t>(std::abs(l)) > names_.size()) {
        throw UnknownGenerator("relator letter " + std::to_string(l) + " out of range");
      }
    }
    Word r = free_reduce(w);
    if (!r.empty()) relators_.push_back(std::move(r));
  }
  hash_ = fnv1a_hex(names_.size(), relators_);
}

Presentation parse_presentation(std::string_view text) { return Parser(text).run(); }

Presentation load_presentation(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read presentation file " + path.string());
  std::string line;
  std::string text;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    text += line;
    text += ' ';
  }
  const auto b = text.find_first_not_of(" \t\r\n");
  const auto e = text.find_last_not_of(" \t\r\n");
  if (b == std::string::npos) throw InputError("presentation file " + path.string() + " is empty");
  return parse_presentation(text.substr(b, e - b + 1));
}

Presentation read_presentation(const std::string& text_or_path) {
  const auto b = text_or_path.find_first_not_of(" \t\r\n");
  if (b != std::string::npos && text_or_path[b] == '<') return parse_presentation(text_or_path);
  return load_presentation(text_or_path);
}

std::string format_word(const Word& w, const std::vector<std::string>& names) {
  if (w.empty()) return "1";
  std::string out;
  std::size_t i = 0;
  while (i < w.letters.size()) {
    std::size_t j = i;
    while (j < w.letters.size() && w.letters[j] == w.letters[i]) ++j;
    const int l = w.letters[i];
    const long k = static_cast<long>(j - i) * (l < 0 ? -1 : 1);
    if (!out.empty()) out += '*';
    out += names.at(static_cast<std::size_t>(std::abs(l)) - 1);
    if (k != 1) out += "^" + std::to_string(k);
    i = j;
  }
  return out;
}

std::string print(const Presentation& p) {
  std::string out = "<";
  for (std::size_t i = 0; i < p.s(); ++i) {
    if (i) out += ", ";
    out += p.names()[i];
  }
  out += " | ";
  for (std::size_t i = 0; i < p.relators().size(); ++i) {
    if (i) out += ", ";
    out += format_word(p.relators()[i], p.names());
  }
  out += ">";
  return out;
}

matgrp::Matrix evaluate_word(const Word& w, std::span<const matgrp::Matrix> images) {
  if (images.empty()) throw DimensionMismatch("no generator images");
  const auto& first = images.front();
  for (const auto& m : images) {
    if (m.dim() != first.dim() || !(m.field() == first.field())) {
      throw DimensionMismatch("generator images differ in dimension or field");
    }
  }
  std::vector<matgrp::Matrix> invs(images.size());
  matgrp::Matrix r = matgrp::Matrix::identity(first.field_ptr(), first.dim());
  for (int l : w.letters) {
    const std::size_t i = static_cast<std::size_t>(std::abs(l)) - 1;
    if (i >= images.size()) throw DimensionMismatch("word uses more generators than images");
    if (l > 0) {
      r = r * images[i];
    } else {
      if (invs[i].dim() == 0) invs[i] = images[i].inverse();
      r = r * invs[i];
    }
  }
  return r;
}

matgrp::Index evaluate_word(const Word& w, const matgrp::MatGroup& g,
                            std::span<const matgrp::Index> images) {
  matgrp::Index r = g.identity();
  for (int l : w.letters) {
    const std::size_t i = static_cast<std::size_t>(std::abs(l)) - 1;
    if (i >= images.size()) throw DimensionMismatch("word uses more generators than images");
    r = g.mul(r, l > 0 ? images[i] : g.inv(images[i]));
  }
  return r;
}

std::vector<cpp_int> smith_diagonal(std::vector<std::vector<cpp_int>> a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<cpp_int> diag;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    while (true) {
      // Pivot: least nonzero absolute value in the remaining block.
      std::size_t pi = rows, pj = cols;
      cpp_int best = 0;
      for (std::size_t i = t; i < rows; ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          if (a[i][j] == 0) continue;
          cpp_int v = abs(a[i][j]);
          if (pi == rows || v < best) {
            best = v;
            pi = i;
            pj = j;
          }
        }
      }
      if (pi == rows) return diag;
      std::swap(a[t], a[pi]);
      for (auto& row : a) std::swap(row[t], row[pj]);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        const cpp_int q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        const cpp_int q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility: fold a row whose entries the pivot does not divide.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (a[i][j] % a[t][t] != 0) {
            for (std::size_t k = t; k < cols; ++k) a[t][k] += a[i][k];
            divides = false;
            break;
          }
        }
      }
      if (!divides) continue;
      diag.push_back(abs(a[t][t]));
      break;
    }
  }
  return diag;
}

Abelianization abelianization(const Presentation& p) {
  std::vector<std::vector<cpp_int>> m;
  for (const auto& w : p.relators()) {
    std::vector<cpp_int> row(p.s(), 0);
    for (int l : w.letters) {
      row[static_cast<std::size_t>(std::abs(l)) - 1] += (l > 0 ? 1 : -1);
    }
    m.push_back(std::move(row));
  }
  Abelianization ab;
  auto diag = smith_diagonal(std::move(m));
  ab.free_rank = p.s() - diag.size();
  for (auto& d : diag) {
    if (d > 1) ab.torsion.push_back(d);
  }
  return ab;
}

std::string Abelianization::to_string() const {
  if (trivial()) return "1";
  std::ostringstream os;
  bool first = true;
  if (free_rank > 0) {
    os << "Z";
    if (free_rank > 1) os << "^" << free_rank;
    first = false;
  }
  for (const auto& d : torsion) {
    if (!first) os << " x ";
    os << "Z/" << d;
    first = false;
  }
  return os.str();
}

std::vector<std::pair<std::size_t, std::uint64_t>> power_relators(const Presentation& p) {
  std::vector<std::pair<std::size_t, std::uint64_t>> out;
  for (const auto& w : p.relators()) {
    // Conjugates of x^k constrain x just as well, so reduce cyclically.
    std::size_t b = 0;
    std::size_t e = w.letters.size();
    while (e - b >= 2 && w.letters[b] == -w.letters[e - 1]) {
      ++b;
      --e;
    }
    const int l = w.letters[b];
    const bool pure = std::all_of(w.letters.begin() + static_cast<std::ptrdiff_t>(b),
                                  w.letters.begin() + static_cast<std::ptrdiff_t>(e),
                                  [&](int x) { return x == l; });
    if (pure) out.emplace_back(static_cast<std::size_t>(std::abs(l)) - 1, e - b);
  }
  return out;
}

}  // namespace liequot::fp
