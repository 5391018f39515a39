#include "dhtk/parse.hpp"

#include <algorithm>
#include <cctype>

#include "dhtk/error.hpp"

namespace dhtk {

namespace {

bool isIdentStart(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool isIdentChar(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool isDigit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

// c·t^e recursively with unit innermost coefficient, raised to a rational power.
Series monomialPower(const Series& s, const Rational& e, std::size_t pos) {
  if (s.level() == 0) {
    if (s.scalar() == 1) return s;
    throw SyntaxError(pos, "fractional power of a non-unit constant");
  }
  if (!s.isExact() || s.terms().size() != 1)
    throw SyntaxError(pos, "fractional power of a non-monomial");
  const auto& t = s.terms().front();
  return Series::monomial(monomialPower(t.coeff, e, pos), t.exponent * e);
}

class Parser {
 public:
  Parser(std::string_view text, const ParseOptions& options)
      : text_(text), options_(options) {}

  DiffPoly parseAll() {
    DiffPoly result = parseExpr();
    skipWs();
    if (pos_ < text_.size()) throw SyntaxError(pos_, "unexpected character '" + std::string(1, text_[pos_]) + "'");
    int level = std::max(result.level(), options_.minLevel);
    int numVars = options_.numVars > 0 ? options_.numVars : std::max(1, maxVar_ + 1);
    return result.liftedTo(level).withNumVars(numVars);
  }

  bool sawXVariable() const { return sawX_; }

 private:
  void skipWs() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skipWs();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      skipWs();
      throw SyntaxError(pos_, std::string("expected '") + c + "'");
    }
  }

  Integer readInteger() {
    skipWs();
    std::size_t start = pos_;
    while (pos_ < text_.size() && isDigit(text_[pos_])) ++pos_;
    if (start == pos_) throw SyntaxError(start, "expected an integer");
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  static void align(DiffPoly& a, DiffPoly& b) {
    int level = std::max(a.level(), b.level());
    int vars = std::max(a.numVars(), b.numVars());
    a = a.liftedTo(level).withNumVars(vars);
    b = b.liftedTo(level).withNumVars(vars);
  }

  DiffPoly parseExpr() {
    DiffPoly acc = parseTerm();
    while (true) {
      if (accept('+')) {
        DiffPoly rhs = parseTerm();
        align(acc, rhs);
        acc = acc + rhs;
      } else if (accept('-')) {
        DiffPoly rhs = parseTerm();
        align(acc, rhs);
        acc = acc - rhs;
      } else {
        return acc;
      }
    }
  }

  DiffPoly parseTerm() {
    DiffPoly acc = parseUnary();
    while (true) {
      if (accept('*')) {
        DiffPoly rhs = parseUnary();
        align(acc, rhs);
        acc = acc * rhs;
      } else if (accept('/')) {
        std::size_t at = pos_;
        DiffPoly rhs = parseUnary();
        align(acc, rhs);
        acc = divideBy(acc, rhs, at);
      } else {
        return acc;
      }
    }
  }

  DiffPoly divideBy(const DiffPoly& num, const DiffPoly& den, std::size_t at) {
    if (!den.isConstant()) throw SyntaxError(at, "division by an expression in x");
    if (den.isZero()) throw SyntaxError(at, "division by zero");
    const Series& d = den.terms().begin()->second;
    Series inv = inverse(d, options_.tower);
    return inv * num;
  }

  DiffPoly parseUnary() {
    if (accept('-')) return -parseUnary();
    if (accept('+')) return parseUnary();
    return parsePower();
  }

  Rational parseExponent() {
    skipWs();
    if (accept('(')) {
      bool negative = accept('-');
      Integer num = readInteger();
      Integer den = 1;
      if (accept('/')) den = readInteger();
      expect(')');
      if (den == 0) throw SyntaxError(pos_, "zero denominator in exponent");
      return makeRational(negative ? Integer(-num) : num, den);
    }
    return Rational(readInteger());
  }

  DiffPoly parsePower() {
    DiffPoly base = parseAtom();
    while (accept('^')) {
      std::size_t at = pos_;
      Rational e = parseExponent();
      base = raise(base, e, at);
    }
    return base;
  }

  DiffPoly raise(const DiffPoly& base, const Rational& e, std::size_t at) {
    if (base.isConstant()) {
      Series c = base.isZero() ? Series::zero(base.level())
                               : base.terms().begin()->second;
      Series r;
      if (isInteger(e)) {
        if (c.isExactZero() && e < 0) throw SyntaxError(at, "negative power of zero");
        r = power(c, e.get_num().get_si(), options_.tower);
      } else {
        r = monomialPower(c, e, at);
      }
      return DiffPoly::constant(r, base.numVars());
    }
    if (!isInteger(e) || e < 0)
      throw SyntaxError(at, "powers of x-expressions must be non-negative integers");
    return power(base, static_cast<int>(e.get_num().get_si()));
  }

  DiffPoly parseAtom() {
    skipWs();
    if (pos_ >= text_.size()) throw SyntaxError(pos_, "unexpected end of input");
    char c = text_[pos_];
    if (isDigit(c)) {
      return DiffPoly::constant(Series(Rational(readInteger())));
    }
    if (c == '(') {
      ++pos_;
      DiffPoly inner = parseExpr();
      expect(')');
      return inner;
    }
    if (isIdentStart(c)) return parseIdentifier();
    throw SyntaxError(pos_, "unexpected character '" + std::string(1, c) + "'");
  }

  static std::optional<int> indexSuffix(std::string_view name, char prefix) {
    if (name.size() < 2 || name[0] != prefix) return std::nullopt;
    if (!std::all_of(name.begin() + 1, name.end(), isDigit)) return std::nullopt;
    if (name[1] == '0' && name.size() > 2) return std::nullopt;
    return std::stoi(std::string(name.substr(1)));
  }

  DiffPoly parseIdentifier() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && isIdentChar(text_[pos_])) ++pos_;
    std::string name(text_.substr(start, pos_ - start));

    if (auto sym = options_.symbols.find(name); sym != options_.symbols.end())
      return differentialVariable(sym->second);
    if (name == "O") return parseBigO();
    if (auto t = indexSuffix(name, 't')) {
      return DiffPoly::constant(Series::variable(*t, *t + 1));
    }
    if (auto x = indexSuffix(name, 'x')) {
      if (*x < 1 || (options_.numVars > 0 && *x > options_.numVars))
        throw Error(ErrorCode::UnknownVariable,
                    "unknown variable '" + name + "' at position " + std::to_string(start));
      return differentialVariable(*x - 1);
    }
    throw Error(ErrorCode::UnknownVariable,
                "unknown variable '" + name + "' at position " + std::to_string(start));
  }

  DiffPoly differentialVariable(int var) {
    int order = 0;
    while (pos_ < text_.size() && text_[pos_] == '\'') {
      ++order;
      ++pos_;
    }
    if (order == 0 && text_.substr(pos_, 2) == "^(") {
      std::size_t save = pos_;
      pos_ += 2;
      skipWs();
      if (pos_ < text_.size() && isDigit(text_[pos_])) {
        Integer k = readInteger();
        expect(')');
        order = static_cast<int>(k.get_si());
      } else {
        pos_ = save;
      }
    }
    maxVar_ = std::max(maxVar_, var);
    sawX_ = true;
    return DiffPoly::variable(VarKey{var, order}, var + 1);
  }

  DiffPoly parseBigO() {
    expect('(');
    skipWs();
    std::size_t start = pos_;
    while (pos_ < text_.size() && isIdentChar(text_[pos_])) ++pos_;
    auto t = indexSuffix(text_.substr(start, pos_ - start), 't');
    if (!t) throw SyntaxError(start, "O() expects a series variable t<k>");
    Rational e = 1;
    if (accept('^')) e = parseExponent();
    expect(')');
    return DiffPoly::constant(Series::bigO(e, *t + 1));
  }

  std::string_view text_;
  const ParseOptions& options_;
  std::size_t pos_ = 0;
  int maxVar_ = -1;
  bool sawX_ = false;
};

}  // namespace

DiffPoly parseDiffPoly(std::string_view text, const ParseOptions& options) {
  return Parser(text, options).parseAll();
}

Series parseSeries(std::string_view text, const ParseOptions& options) {
  Parser parser(text, options);
  DiffPoly f = parser.parseAll();
  if (parser.sawXVariable() || !f.isConstant())
    throw Error(ErrorCode::UnknownVariable, "series literal may not contain x variables");
  return f.isZero() ? Series::zero(f.level()) : f.terms().begin()->second;
}

std::vector<Series> parseSeriesList(std::string_view text, const ParseOptions& options) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    if (text[i] == ')') --depth;
    if (text[i] == ',' && depth == 0) {
      parts.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  parts.push_back(text.substr(start));
  std::vector<Series> out;
  int level = options.minLevel;
  for (auto p : parts) {
    out.push_back(parseSeries(p, options));
    level = std::max(level, out.back().level());
  }
  for (auto& s : out) s = embed(s, level);
  return out;
}

ValueVec parseValueVec(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s == "inf" || s == "infinity") return ValueVec::infinity();
  if (!s.empty() && s.front() == '(') {
    if (s.back() != ')') throw Error(ErrorCode::InvalidInput, "unbalanced value vector");
    s = s.substr(1, s.size() - 2);
  }
  std::vector<Rational> coords;
  std::size_t start = 0;
  while (start < s.size()) {
    auto comma = s.find(',', start);
    if (comma == std::string::npos) comma = s.size();
    coords.push_back(parseRational(s.substr(start, comma - start)));
    start = comma + 1;
  }
  return ValueVec(std::move(coords));
}

}  // namespace dhtk
