#include "nshd/rational.hpp"

#include <charconv>
#include <limits>
#include <numeric>

#include "nshd/errors.hpp"

namespace nshd {

namespace {

using Wide = __int128;

Rational make_reduced(Wide num, Wide den) {
  if (den == 0) throw InvalidArgument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Wide a = num < 0 ? -num : num;
  Wide b = den;
  while (b != 0) {
    const Wide t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  constexpr Wide lo = std::numeric_limits<std::int64_t>::min();
  constexpr Wide hi = std::numeric_limits<std::int64_t>::max();
  if (num < lo || num > hi || den > hi) throw InvalidArgument("rational overflow");
  return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw InvalidArgument("not a rational number: '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InvalidArgument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = g > 1 ? num / g : num;
  den_ = g > 1 ? den / g : den;
}

Rational Rational::parse(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (s.empty()) throw InvalidArgument("empty rational");

  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    return Rational(parse_int(s.substr(0, slash), text), parse_int(s.substr(slash + 1), text));
  }
  if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    bool negative = false;
    std::string_view body = s;
    if (body.front() == '-' || body.front() == '+') {
      negative = body.front() == '-';
      body.remove_prefix(1);
    }
    const auto d = body.find('.');
    std::string digits(body.substr(0, d));
    const std::string_view frac = body.substr(d + 1);
    if (digits.empty() && frac.empty()) throw InvalidArgument("not a rational number: '" + std::string(text) + "'");
    digits += frac;
    if (frac.size() > 18) throw InvalidArgument("too many decimal places: '" + std::string(text) + "'");
    Wide den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    for (char ch : digits)
      if (ch < '0' || ch > '9') throw InvalidArgument("not a rational number: '" + std::string(text) + "'");
    const Wide num = parse_int(digits.empty() ? "0" : std::string_view(digits), text);
    return make_reduced(negative ? -num : num, den);
  }
  std::string_view body = s;
  if (body.front() == '+') body.remove_prefix(1);
  return Rational(parse_int(body, text));
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  return make_reduced(Wide(a.num_) * b.den_ + Wide(b.num_) * a.den_, Wide(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return make_reduced(Wide(a.num_) * b.den_ - Wide(b.num_) * a.den_, Wide(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return make_reduced(Wide(a.num_) * b.num_, Wide(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw InvalidArgument("division by zero rational");
  return make_reduced(Wide(a.num_) * b.den_, Wide(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const Wide lhs = Wide(a.num_) * b.den_;
  const Wide rhs = Wide(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace nshd
