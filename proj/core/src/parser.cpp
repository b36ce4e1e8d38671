#include <cctype>
#include <charconv>
#include <optional>
#include <string>

#include "cexpde/expr.hpp"

namespace cexpde {

namespace {

std::optional<Op> function_op(std::string_view name) {
  if (name == "sin") return Op::Sin;
  if (name == "cos") return Op::Cos;
  if (name == "exp") return Op::Exp;
  if (name == "log") return Op::Log;
  if (name == "sqrt") return Op::Sqrt;
  if (name == "tanh") return Op::Tanh;
  return std::nullopt;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// 1-based index from a digit string; 0 for "0" or a leading zero.
int parse_index(std::string_view digits) {
  if (digits.size() > 1 && digits.front() == '0') return 0;
  if (digits.size() > 6) return 0;
  int value = 0;
  std::from_chars(digits.data(), digits.data() + digits.size(), value);
  return value;
}

class Parser {
 public:
  Parser(std::string_view text, int n) : text_(text), n_(n) {}

  Expr parse() {
    Expr e = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { fail_at(message, pos_); }
  [[noreturn]] void fail_at(const std::string& message, std::size_t at) const {
    throw ParseError("syntax error at offset " + std::to_string(at) + ": " + message, at);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= text_.size()) fail(std::string("expected '") + c + "' before end of input");
      fail(std::string("expected '") + c + "'");
    }
  }

  Expr expr() {
    Expr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = Expr::binary(Op::Add, lhs, term());
      } else if (accept('-')) {
        lhs = Expr::binary(Op::Sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  Expr term() {
    Expr lhs = factor();
    for (;;) {
      if (accept('*')) {
        lhs = Expr::binary(Op::Mul, lhs, factor());
      } else if (accept('/')) {
        lhs = Expr::binary(Op::Div, lhs, factor());
      } else {
        return lhs;
      }
    }
  }

  Expr factor() {
    Expr b = base();
    if (accept('^')) {
      skip_space();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected unsigned integer exponent");
      int k = 0;
      const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, k);
      if (ec != std::errc{} || ptr != text_.data() + pos_) fail_at("exponent out of range", start);
      return Expr::power(b, k);
    }
    return b;
  }

  Expr base() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '-') {
      ++pos_;
      return Expr::unary(Op::Neg, base());
    }
    if (c == '(') {
      ++pos_;
      Expr inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  Expr number() {
    const std::size_t start = pos_;
    const auto digits = [&] {
      const std::size_t s = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return pos_ - s;
    };
    std::size_t mantissa = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) fail_at("malformed number", start);
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
      if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
        pos_ = look;
        digits();
      }
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc{} || ptr != text_.data() + pos_) fail_at("malformed number", start);
    return Expr::constant(value);
  }

  Expr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    if (const auto fn = function_op(name)) {
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] != '(')
        fail("expected '(' after function name '" + std::string(name) + "'");
      ++pos_;
      Expr arg = expr();
      expect(')');
      return Expr::unary(*fn, arg);
    }
    return Expr::variable(resolve(name, start));
  }

  [[noreturn]] void unknown(std::string_view name, std::size_t at) const {
    throw UnknownVariableError("unknown variable '" + std::string(name) + "' at offset " +
                                   std::to_string(at),
                               at);
  }

  void check_index(int index, std::string_view name, std::size_t at) const {
    if (index < 1) unknown(name, at);
    if (index > n_)
      throw DimensionError("variable '" + std::string(name) + "' at offset " +
                               std::to_string(at) + " exceeds dimension n=" +
                               std::to_string(n_),
                           at);
  }

  Var resolve(std::string_view name, std::size_t at) const {
    if (name == "u") return Var::u();
    if (name.size() >= 2 && name[0] == 'x' && all_digits(name.substr(1))) {
      const int i = parse_index(name.substr(1));
      check_index(i, name, at);
      return Var::x(i - 1);
    }
    if (name.size() >= 2 && name[0] == 'u' && all_digits(name.substr(1))) {
      const std::string_view digits = name.substr(1);
      if (n_ >= 10) {
        const int i = parse_index(digits);
        check_index(i, name, at);
        return Var::p(i - 1);
      }
      if (digits.size() == 1) {
        const int i = digits[0] - '0';
        check_index(i, name, at);
        return Var::p(i - 1);
      }
      if (digits.size() == 2) {
        const int i = digits[0] - '0';
        const int j = digits[1] - '0';
        if (i < 1 || j < 1 || i > j) unknown(name, at);
        check_index(i, name, at);
        check_index(j, name, at);
        return Var::h(i - 1, j - 1);
      }
      unknown(name, at);
    }
    if (name.size() >= 3 && name.substr(0, 2) == "u_") {
      const std::string_view rest = name.substr(2);
      const auto sep = rest.find('_');
      if (sep == std::string_view::npos) {
        if (!all_digits(rest)) unknown(name, at);
        const int i = parse_index(rest);
        check_index(i, name, at);
        return Var::p(i - 1);
      }
      const std::string_view a = rest.substr(0, sep);
      const std::string_view b = rest.substr(sep + 1);
      if (!all_digits(a) || !all_digits(b)) unknown(name, at);
      const int i = parse_index(a);
      const int j = parse_index(b);
      if (i < 1 || j < 1 || i > j) unknown(name, at);
      check_index(i, name, at);
      check_index(j, name, at);
      return Var::h(i - 1, j - 1);
    }
    unknown(name, at);
  }

  std::string_view text_;
  int n_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text, int n) {
  if (n < 2) throw std::invalid_argument("parse: dimension must be at least 2");
  return Parser(text, n).parse();
}

}  // namespace cexpde
