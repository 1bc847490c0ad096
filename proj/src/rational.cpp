#include "robsynth/rational.hpp"

#include <cctype>

namespace robsynth {

namespace {

Integer parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) {
    throw std::invalid_argument("malformed number: '" + std::string(whole) + "'");
  }
  Integer out = 0;
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("malformed number: '" + std::string(whole) + "'");
    }
    out = out * 10 + (c - '0');
  }
  return out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational out;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(body.substr(0, slash), text);
    Integer den = parse_integer(body.substr(slash + 1), text);
    if (den == 0) {
      throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    }
    out = Rational(num, den);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = body.substr(0, dot);
    std::string_view frac_part = body.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) {
      throw std::invalid_argument("malformed number: '" + std::string(text) + "'");
    }
    Integer ip = int_part.empty() ? Integer(0) : parse_integer(int_part, text);
    Integer fp = frac_part.empty() ? Integer(0) : parse_integer(frac_part, text);
    Integer scale = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
    out = Rational(ip * scale + fp, scale);
  } else {
    out = Rational(parse_integer(body, text));
  }
  return negative ? Rational(-out) : out;
}

std::string format_rational(const Rational& value) {
  Integer num = boost::multiprecision::numerator(value);
  Integer den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();

  Integer rest = den;
  int twos = 0;
  int fives = 0;
  while (rest % 2 == 0) {
    rest /= 2;
    ++twos;
  }
  while (rest % 5 == 0) {
    rest /= 5;
    ++fives;
  }
  if (rest != 1) return num.str() + "/" + den.str();

  int digits = std::max(twos, fives);
  Integer scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  bool negative = num < 0;
  Integer scaled = (negative ? Integer(-num) : num) * (scale / den);
  std::string s = scaled.str();
  if (static_cast<int>(s.size()) <= digits) {
    s.insert(0, static_cast<std::size_t>(digits + 1 - static_cast<int>(s.size())), '0');
  }
  s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  return negative ? "-" + s : s;
}

ExtNonNeg::ExtNonNeg(Rational value) : value_(std::move(value)) {
  if (value_ < 0) {
    throw std::invalid_argument("ExtNonNeg requires a non-negative value, got " +
                                format_rational(value_));
  }
}

const Rational& ExtNonNeg::value() const {
  if (infinite_) throw std::logic_error("value() on infinite ExtNonNeg");
  return value_;
}

ExtNonNeg operator+(const ExtNonNeg& a, const ExtNonNeg& b) {
  if (a.infinite_ || b.infinite_) return ExtNonNeg::infinity();
  return ExtNonNeg(a.value_ + b.value_);
}

ExtNonNeg operator*(const Rational& c, const ExtNonNeg& a) {
  if (c < 0) throw std::invalid_argument("negative scale factor");
  if (a.infinite_) return ExtNonNeg::infinity();
  return ExtNonNeg(c * a.value_);
}

bool operator==(const ExtNonNeg& a, const ExtNonNeg& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
  return a.value_ == b.value_;
}

std::strong_ordering operator<=>(const ExtNonNeg& a, const ExtNonNeg& b) {
  if (a.infinite_ || b.infinite_) {
    if (a.infinite_ == b.infinite_) return std::strong_ordering::equal;
    return a.infinite_ ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  if (a.value_ < b.value_) return std::strong_ordering::less;
  if (a.value_ > b.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string to_string(const ExtNonNeg& v) {
  return v.is_infinite() ? std::string("inf") : format_rational(v.value());
}

ExtNonNeg parse_ext(std::string_view text) {
  if (text == "inf" || text == "infinity") return ExtNonNeg::infinity();
  return ExtNonNeg(parse_rational(text));
}

std::ostream& operator<<(std::ostream& os, const ExtNonNeg& v) { return os << to_string(v); }

}  // namespace robsynth
