#include "vstate/interval.hpp"

#include <cctype>
#include <cerrno>
#include <cstdio>
#include <cstring>

namespace vstate {

namespace {

constexpr int kDigits = 24;  // 25 significant digits

std::string canonical(double d) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", kDigits, d);
  return buf;
}

bool plain_integer(const std::string& tok, double& out) {
  std::size_t i = (tok[0] == '+' || tok[0] == '-') ? 1 : 0;
  if (i == tok.size() || tok.size() - i > 15) return false;
  for (std::size_t j = i; j < tok.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(tok[j]))) return false;
  out = std::strtod(tok.c_str(), nullptr);  // < 2^53, so exact
  return true;
}

double parse_endpoint(const std::string& tok, bool upper) {
  if (tok.empty()) throw FormatError("empty interval endpoint");
  if (tok == "inf" || tok == "+inf")
    return std::numeric_limits<double>::infinity();
  if (tok == "-inf") return -std::numeric_limits<double>::infinity();
  double d = 0;
  if (plain_integer(tok, d)) return d;
  char* end = nullptr;
  errno = 0;
  d = std::strtod(tok.c_str(), &end);
  if (end != tok.c_str() + tok.size())
    throw FormatError("bad interval endpoint: '" + tok + "'");
  if (d != d) throw FormatError("NaN interval endpoint");
  // The canonical 25-digit form of a double denotes that double itself, so
  // serialize/parse round trips are bit-identical. Everything else is a
  // foreign decimal and gets enclosed outward.
  if (canonical(d) == tok) return d;
  return upper ? detail::next_up(d) : detail::next_down(d);
}

}  // namespace

std::string endpoint_to_string(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return canonical(x);
}

std::string to_string(const Interval& a) {
  return endpoint_to_string(a.lo) + " " + endpoint_to_string(a.hi);
}

Interval parse_interval(const std::string& s) {
  const std::size_t sp = s.find(' ');
  if (sp == std::string::npos)
    throw FormatError("interval needs two endpoints: '" + s + "'");
  std::size_t b = sp;
  while (b < s.size() && s[b] == ' ') ++b;
  const std::string t0 = s.substr(0, sp);
  const std::string t1 = s.substr(b);
  const Interval r{parse_endpoint(t0, false), parse_endpoint(t1, true)};
  if (!(r.lo <= r.hi))
    throw FormatError("inverted interval endpoints: '" + s + "'");
  return r;
}

Interval from_decimal(const std::string& s) {
  return {parse_endpoint(s, false), parse_endpoint(s, true)};
}

}  // namespace vstate
