#include "epitheta/rational.hpp"

#include <charconv>
#include <ostream>

namespace epitheta {

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
  return v;
}

}  // namespace

Rational Rational::parse(std::string_view s) {
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(s, s));
  std::int64_t n = parse_int(s.substr(0, slash), s);
  std::int64_t d = parse_int(s.substr(slash + 1), s);
  if (d == 0) throw std::invalid_argument("malformed rational '" + std::string(s) + "': zero denominator");
  return Rational(n, d);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace epitheta
