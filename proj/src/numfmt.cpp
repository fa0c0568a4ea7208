#include "mcdeck/numfmt.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "mcdeck/errors.hpp"

namespace mcdeck {

std::string fmt_shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string fmt_pyfloat(double v) {
  std::string s = fmt_shortest(v);
  if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
      s.find("inf") == std::string::npos && s.find("nan") == std::string::npos)
    s += ".0";
  return s;
}

std::string fmt_sig(double v, int sig) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", sig, v);
  return buf;
}

namespace {

// "1.205-3" style tokens: a sign directly after a digit or '.' (and not after
// an 'e'/'E') is an implied exponent marker.
std::string expand_implied_exponent(const std::string& t) {
  for (std::size_t i = 1; i < t.size(); ++i) {
    char c = t[i];
    if ((c == '+' || c == '-') && (std::isdigit(static_cast<unsigned char>(t[i - 1])) ||
                                   t[i - 1] == '.')) {
      bool has_e = false;
      for (std::size_t j = 0; j < i; ++j)
        if (t[j] == 'e' || t[j] == 'E') has_e = true;
      if (!has_e) return t.substr(0, i) + "e" + t.substr(i);
    }
  }
  return t;
}

} // namespace

bool try_parse_number(const std::string& token, double& out) {
  if (token.empty()) return false;
  std::string t = expand_implied_exponent(token);
  const char* begin = t.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  return end == begin + t.size() && end != begin;
}

double parse_number(const std::string& token) {
  double v;
  if (!try_parse_number(token, v))
    throw SyntaxError("not a number: '" + token + "'");
  return v;
}

bool try_parse_int(const std::string& token, int& out) {
  if (token.empty()) return false;
  const char* begin = token.c_str();
  char* end = nullptr;
  long v = std::strtol(begin, &end, 10);
  if (end != begin + token.size() || end == begin) return false;
  out = static_cast<int>(v);
  return true;
}

} // namespace mcdeck
