#include <string>

#include "dhtk/series.hpp"

namespace dhtk {

namespace {

std::string exponentSuffix(const Rational& e) {
  if (e == 1) return "";
  if (isInteger(e) && e > 0) return "^" + toString(e);
  return "^(" + toString(e) + ")";
}

std::string variableName(int level) { return "t" + std::to_string(level - 1); }

}  // namespace

std::string coefficientText(const Series& c, bool& negative) {
  std::string text = toText(c);
  negative = text.front() == '-';
  if (negative) text = toText(-c);
  if (text.find(' ') == std::string::npos && text.find('O') == std::string::npos) return text;
  if (text.front() == '(') {
    // Already one parenthesized group?
    int depth = 0;
    std::size_t close = 0;
    for (std::size_t i = 0; i < text.size() && !close; ++i) {
      depth += text[i] == '(' ? 1 : text[i] == ')' ? -1 : 0;
      if (depth == 0) close = i;
    }
    if (close + 1 == text.size()) return text;
  }
  return "(" + text + ")";
}

std::string toText(const Series& a) {
  if (a.level() == 0) return toString(a.scalar());
  const std::string var = variableName(a.level());
  std::string out;
  bool first = true;
  auto emit = [&](bool negative, const std::string& body) {
    if (first) {
      out += negative ? "-" + body : body;
    } else {
      out += negative ? " - " : " + ";
      out += body;
    }
    first = false;
  };
  for (const auto& t : a.terms()) {
    std::string mono = t.exponent == 0 ? "" : var + exponentSuffix(t.exponent);
    if (auto r = t.coeff.asRational()) {
      Rational mag = abs(*r);
      std::string body;
      if (mono.empty()) {
        body = toString(mag);
      } else if (mag == 1) {
        body = mono;
      } else if (isInteger(mag)) {
        body = toString(mag) + "*" + mono;
      } else {
        body = "(" + toString(mag) + ")*" + mono;
      }
      emit(*r < 0, body);
    } else {
      bool negative = false;
      std::string body = coefficientText(t.coeff, negative);
      if (!mono.empty()) body += "*" + mono;
      emit(negative, body);
    }
  }
  if (a.precOrder()) {
    emit(false, "O(" + var + exponentSuffix(*a.precOrder()) + ")");
  }
  if (first) return "0";
  return out;
}

}  // namespace dhtk
