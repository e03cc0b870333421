#include "weylsym/symcore/text.hpp"

#include <cctype>

namespace weylsym {

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string to_string(const Monomial& m, const SymbolTable& table) {
  std::string out;
  for (std::size_t i = 0; i < table.size(); ++i) {
    unsigned e = m.exponent(i);
    if (e == 0) continue;
    if (!out.empty()) out += '*';
    out += table.name(SymbolId{static_cast<std::uint8_t>(i)});
    if (e > 1) out += '^' + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

std::string to_string(const Poly& p, const SymbolTable& table) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    bool negative = sgn(t.coeff) < 0;
    Rational mag = abs(t.coeff);
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (t.mono.is_one()) {
      out += to_string(mag);
    } else if (mag == 1) {
      out += to_string(t.mono, table);
    } else {
      out += to_string(mag) + "*" + to_string(t.mono, table);
    }
  }
  return out;
}

std::string to_string(const RatExpr& e, const SymbolTable& table) {
  if (e.den().is_constant() && e.den().constant_term() == 1) return to_string(e.num(), table);
  return "(" + to_string(e.num(), table) + ")/(" + to_string(e.den(), table) + ")";
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const SymbolTable& table) : text_(text), table_(table) {}

  RatExpr parse() {
    RatExpr e = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RatExpr expr() {
    RatExpr acc = term();
    for (;;) {
      if (accept('+')) acc += term();
      else if (accept('-')) acc -= term();
      else return acc;
    }
  }

  RatExpr term() {
    RatExpr acc = unary();
    for (;;) {
      if (accept('*')) {
        acc *= unary();
      } else if (accept('/')) {
        RatExpr d = unary();
        if (d.is_structurally_zero()) fail("division by zero");
        acc = acc / d;
      } else {
        return acc;
      }
    }
  }

  RatExpr unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  RatExpr power() {
    RatExpr base = atom();
    if (accept('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      return base.pow(std::stoi(std::string(text_.substr(start, pos_ - start))));
    }
    return base;
  }

  RatExpr atom() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      RatExpr e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return RatExpr(Rational(mpz_class(std::string(text_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      auto name = text_.substr(start, pos_ - start);
      auto id = table_.find(name);
      if (!id) fail("unknown symbol '" + std::string(name) + "'");
      return RatExpr::var(*id);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  const SymbolTable& table_;
  std::size_t pos_ = 0;
};

}  // namespace

RatExpr parse_expression(std::string_view text, const SymbolTable& table) {
  return Parser(text, table).parse();
}

}  // namespace weylsym
