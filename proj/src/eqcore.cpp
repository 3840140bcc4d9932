#include "magma/eqcore.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace magma {

ParseError::ParseError(std::size_t column, const std::string& message)
    : std::runtime_error("syntax error at column " + std::to_string(column) + ": " +
                         message),
      column_(column),
      message_(message) {}

CorpusError::CorpusError(std::size_t line, const std::string& message)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + message
                              : message),
      line_(line) {}

namespace {

void renumber(const Term& t, std::map<std::uint32_t, std::uint32_t>& names) {
  if (t.is_var()) {
    names.emplace(t.index(), static_cast<std::uint32_t>(names.size()));
  } else if (t.is_op()) {
    renumber(t.left(), names);
    renumber(t.right(), names);
  }
}

Term rename(const Term& t, const std::map<std::uint32_t, std::uint32_t>& names) {
  if (t.is_var()) return Term::var(names.at(t.index()));
  if (t.is_const()) return t;
  return Term::op(rename(t.left(), names), rename(t.right(), names));
}

constexpr std::string_view kVarAlphabet = "xyzwuv";
constexpr std::string_view kConstAlphabet = "abcdef";
// UTF-8 encoding of U+25C7 WHITE DIAMOND.
constexpr std::string_view kDiamond = "\xE2\x97\x87";

enum class Tok { Ident, LParen, RParen, Star, Equals, End };

class Parser {
 public:
  Parser(std::string_view text, Syntax syntax) : text_(text), syntax_(syntax) { advance(); }

  Equation equation() {
    Term lhs = term();
    if (tok_ != Tok::Equals) fail(tok_ == Tok::End ? "expected '='" : "expected '=' or end of term");
    advance();
    Term rhs = term();
    if (tok_ == Tok::Equals) fail("more than one '='");
    if (tok_ != Tok::End) fail("unexpected trailing input");
    return Equation{std::nullopt, std::move(lhs), std::move(rhs)};
  }

  Term lone_term() {
    Term t = term();
    if (tok_ != Tok::End) fail("unexpected trailing input");
    return t;
  }

 private:
  Term term() {
    Term left = factor();
    if (tok_ != Tok::Star) return left;
    advance();
    Term right = factor();
    if (tok_ == Tok::Star) fail("chained '*' must be parenthesized");
    return Term::op(std::move(left), std::move(right));
  }

  Term factor() {
    if (tok_ == Tok::Ident) {
      Term t = leaf(ident_);
      advance();
      return t;
    }
    if (tok_ == Tok::LParen) {
      advance();
      Term t = term();
      if (tok_ != Tok::RParen) fail("expected ')'");
      advance();
      return t;
    }
    fail("expected variable or '('");
  }

  Term leaf(const std::string& name) {
    if (syntax_ == Syntax::Law) {
      auto [it, fresh] = names_.emplace(name, static_cast<std::uint32_t>(names_.size()));
      return Term::var(it->second);
    }
    if (name.size() == 1) {
      if (auto v = kVarAlphabet.find(name[0]); v != std::string_view::npos) {
        return Term::var(static_cast<std::uint32_t>(v));
      }
      if (auto c = kConstAlphabet.find(name[0]); c != std::string_view::npos) {
        return Term::constant(static_cast<std::uint32_t>(c));
      }
    } else if ((name[0] == 'v' || name[0] == 'a') && name.size() <= 10) {
      bool digits = true;
      for (std::size_t i = 1; i < name.size(); ++i) digits = digits && std::isdigit(static_cast<unsigned char>(name[i]));
      if (digits && name[1] != '0') {
        const auto index = static_cast<std::uint32_t>(std::stoul(name.substr(1)));
        if (index >= 6) return name[0] == 'v' ? Term::var(index) : Term::constant(index);
      }
    }
    fail("unknown symbol '" + name + "'");
  }

  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    start_ = pos_;
    if (pos_ == text_.size()) {
      tok_ = Tok::End;
      return;
    }
    const char c = text_[pos_];
    if (std::islower(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      while (end < text_.size() && (std::islower(static_cast<unsigned char>(text_[end])) ||
                                    std::isdigit(static_cast<unsigned char>(text_[end])))) {
        ++end;
      }
      ident_ = std::string(text_.substr(pos_, end - pos_));
      pos_ = end;
      tok_ = Tok::Ident;
      return;
    }
    if (text_.substr(pos_, kDiamond.size()) == kDiamond) {
      pos_ += kDiamond.size();
      tok_ = Tok::Star;
      return;
    }
    ++pos_;
    switch (c) {
      case '(': tok_ = Tok::LParen; return;
      case ')': tok_ = Tok::RParen; return;
      case '*': tok_ = Tok::Star; return;
      case '=': tok_ = Tok::Equals; return;
      default: break;
    }
    pos_ = start_;
    fail(std::string("unknown token '") + c + "'");
  }

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(start_, message); }

  std::string_view text_;
  Syntax syntax_;
  std::size_t pos_ = 0;
  std::size_t start_ = 0;
  Tok tok_ = Tok::End;
  std::string ident_;
  std::map<std::string, std::uint32_t> names_;
};

void print_operand(const Term& t, std::string& out);

void print_into(const Term& t, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::Var: out += var_name(t.index()); return;
    case Term::Kind::Const: out += const_name(t.index()); return;
    case Term::Kind::Op: break;
  }
  print_operand(t.left(), out);
  out += '*';
  print_operand(t.right(), out);
}

void print_operand(const Term& t, std::string& out) {
  if (!t.is_op()) {
    print_into(t, out);
    return;
  }
  out += '(';
  print_into(t, out);
  out += ')';
}

}  // namespace

Equation canonicalize(const Equation& eq) {
  std::map<std::uint32_t, std::uint32_t> names;
  renumber(eq.lhs, names);
  renumber(eq.rhs, names);
  return Equation{eq.id, rename(eq.lhs, names), rename(eq.rhs, names)};
}

Term canonicalize(const Term& t) {
  std::map<std::uint32_t, std::uint32_t> names;
  renumber(t, names);
  return rename(t, names);
}

Equation parse_equation(std::string_view text, Syntax syntax) {
  Equation eq = Parser(text, syntax).equation();
  return syntax == Syntax::Law ? canonicalize(eq) : eq;
}

Term parse_term(std::string_view text, Syntax syntax) {
  Term t = Parser(text, syntax).lone_term();
  return syntax == Syntax::Law ? canonicalize(t) : t;
}

std::string var_name(std::uint32_t index) {
  if (index < kVarAlphabet.size()) return std::string(1, kVarAlphabet[index]);
  return "v" + std::to_string(index);
}

std::string const_name(std::uint32_t index) {
  if (index < kConstAlphabet.size()) return std::string(1, kConstAlphabet[index]);
  return "a" + std::to_string(index);
}

std::string print_term(const Term& t) {
  std::string out;
  print_into(t, out);
  return out;
}

std::string print_equation(const Equation& eq) {
  return print_term(eq.lhs) + "=" + print_term(eq.rhs);
}

Corpus::Corpus(std::vector<Equation> equations) : equations_(std::move(equations)) {
  for (std::size_t i = 0; i < equations_.size(); ++i) {
    equations_[i].id = static_cast<EquationId>(i + 1);
  }
}

const Equation& Corpus::at(EquationId id) const {
  if (id == 0 || id > equations_.size()) {
    throw std::out_of_range("equation id " + std::to_string(id) + " not in corpus");
  }
  return equations_[id - 1];
}

Corpus parse_corpus(std::string_view text) {
  std::vector<Equation> eqs;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto first = line.find_first_not_of(" \t");
    if (first != std::string_view::npos && line[first] != '#') {
      try {
        eqs.push_back(parse_equation(line));
      } catch (const ParseError& e) {
        throw CorpusError(line_no, e.what());
      }
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  return Corpus(std::move(eqs));
}

Corpus load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError(0, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw CorpusError(0, "cannot read " + path.string());
  return parse_corpus(buf.str());
}

EquationPair PairRange::at(std::uint64_t index) const {
  const std::uint64_t row = index / (m_ - 1);
  const std::uint64_t col = index % (m_ - 1);
  const auto lhs = static_cast<EquationId>(row + 1);
  const auto rhs = static_cast<EquationId>(col + 1 < lhs ? col + 1 : col + 2);
  return {lhs, rhs};
}

std::uint64_t PairRange::index_of(EquationPair pair) const {
  const std::uint64_t row = pair.first - 1;
  const std::uint64_t col = pair.second < pair.first ? pair.second - 1 : pair.second - 2;
  return row * (m_ - 1) + col;
}

}  // namespace magma
