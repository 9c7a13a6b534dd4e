#include "virtrep/rdf/numeric.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "virtrep/rdf/vocabulary.hpp"

namespace virtrep::rdf {

namespace {

BigInt pow10(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 0; i < n; ++i) r *= 10;
  return r;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

// Aligns two decimals to a common scale.
std::pair<BigInt, BigInt> align(const Decimal& a, const Decimal& b, unsigned& scale) {
  scale = std::max(a.scale(), b.scale());
  return {a.unscaled() * pow10(scale - a.scale()), b.unscaled() * pow10(scale - b.scale())};
}

}  // namespace

Decimal::Decimal(BigInt unscaled, unsigned scale) : unscaled_(std::move(unscaled)), scale_(scale) {
  normalize();
}

void Decimal::normalize() {
  if (unscaled_.is_zero()) {
    scale_ = 0;
    return;
  }
  while (scale_ > 0 && unscaled_ % 10 == 0) {
    unscaled_ /= 10;
    --scale_;
  }
}

std::optional<Decimal> Decimal::parse(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  auto dot = s.find('.');
  std::string_view int_part = s.substr(0, dot);
  std::string_view frac_part = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
  if (int_part.empty() && frac_part.empty()) return std::nullopt;
  if (!int_part.empty() && !all_digits(int_part)) return std::nullopt;
  if (!frac_part.empty() && !all_digits(frac_part)) return std::nullopt;
  std::string digits(int_part);
  digits.append(frac_part);
  // cpp_int reads a leading zero as an octal prefix.
  digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size()));
  BigInt unscaled(digits.empty() ? std::string("0") : digits);
  if (negative) unscaled = -unscaled;
  return Decimal(std::move(unscaled), static_cast<unsigned>(frac_part.size()));
}

std::string Decimal::to_integer_string() const {
  return (unscaled_ / pow10(scale_)).str();
}

std::string Decimal::to_decimal_string() const {
  BigInt magnitude = abs(unscaled_);
  std::string digits = magnitude.str();
  std::string out = unscaled_.sign() < 0 ? "-" : "";
  if (scale_ == 0) return out + digits + ".0";
  if (digits.size() <= scale_) digits.insert(0, scale_ - digits.size() + 1, '0');
  out += digits.substr(0, digits.size() - scale_);
  out += '.';
  out += digits.substr(digits.size() - scale_);
  return out;
}

double Decimal::to_double() const {
  // Round-trip through text keeps the conversion correctly rounded.
  return *parse_double(to_decimal_string());
}

Decimal operator+(const Decimal& a, const Decimal& b) {
  unsigned scale = 0;
  auto [x, y] = align(a, b, scale);
  return Decimal(x + y, scale);
}

Decimal operator-(const Decimal& a, const Decimal& b) {
  unsigned scale = 0;
  auto [x, y] = align(a, b, scale);
  return Decimal(x - y, scale);
}

Decimal operator*(const Decimal& a, const Decimal& b) {
  return Decimal(a.unscaled_ * b.unscaled_, a.scale_ + b.scale_);
}

std::optional<Decimal> Decimal::divide(const Decimal& a, const Decimal& b) {
  if (b.is_zero()) return std::nullopt;
  // a/b = (ua * 10^sb) / (ub * 10^sa)
  BigInt num = a.unscaled_ * pow10(b.scale_);
  BigInt den = b.unscaled_ * pow10(a.scale_);
  if (den < 0) {
    num = -num;
    den = -den;
  }
  BigInt g = gcd(abs(num), den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  BigInt rest = den;
  unsigned twos = 0, fives = 0;
  while (rest % 2 == 0) {
    rest /= 2;
    ++twos;
  }
  while (rest % 5 == 0) {
    rest /= 5;
    ++fives;
  }
  if (rest == 1) {
    unsigned scale = std::max(twos, fives);
    return Decimal(num * pow10(scale) / den, scale);
  }
  // Non-terminating: round half-even at kDivisionScale digits.
  BigInt scaled = num * pow10(kDivisionScale);
  BigInt q = scaled / den;
  BigInt r = scaled % den;
  BigInt twice = abs(r) * 2;
  if (twice > den || (twice == den && q % 2 != 0)) q += scaled.sign() < 0 ? -1 : 1;
  return Decimal(std::move(q), kDivisionScale);
}

std::strong_ordering operator<=>(const Decimal& a, const Decimal& b) {
  unsigned scale = 0;
  auto [x, y] = align(a, b, scale);
  if (x < y) return std::strong_ordering::less;
  if (x > y) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

namespace {

Numeric::Type promote(Numeric::Type a, Numeric::Type b) { return std::max(a, b); }

template <typename ExactOp, typename DoubleOp>
Numeric combine(const Numeric& a, const Numeric& b, ExactOp exact, DoubleOp dbl) {
  switch (promote(a.type(), b.type())) {
    case Numeric::Type::Integer:
      return Numeric::integer(exact(a.exact(), b.exact()).unscaled());
    case Numeric::Type::Decimal:
      return Numeric::decimal(exact(a.exact(), b.exact()));
    case Numeric::Type::Double:
      break;
  }
  return Numeric::floating(dbl(a.as_double(), b.as_double()));
}

}  // namespace

Numeric operator+(const Numeric& a, const Numeric& b) {
  return combine(a, b, [](auto& x, auto& y) { return x + y; }, [](double x, double y) { return x + y; });
}

Numeric operator-(const Numeric& a, const Numeric& b) {
  return combine(a, b, [](auto& x, auto& y) { return x - y; }, [](double x, double y) { return x - y; });
}

Numeric operator*(const Numeric& a, const Numeric& b) {
  return combine(a, b, [](auto& x, auto& y) { return x * y; }, [](double x, double y) { return x * y; });
}

Numeric Numeric::operator-() const {
  switch (type_) {
    case Type::Integer: return integer(-exact_.unscaled());
    case Type::Decimal: return decimal(-exact_);
    case Type::Double: break;
  }
  return floating(-double_);
}

std::optional<Numeric> Numeric::divide(const Numeric& a, const Numeric& b) {
  if (promote(a.type(), b.type()) == Type::Double) {
    if (b.as_double() == 0.0) return std::nullopt;
    return floating(a.as_double() / b.as_double());
  }
  auto q = Decimal::divide(a.exact(), b.exact());
  if (!q) return std::nullopt;
  return decimal(std::move(*q));
}

std::partial_ordering operator<=>(const Numeric& a, const Numeric& b) {
  if (promote(a.type(), b.type()) == Numeric::Type::Double) return a.as_double() <=> b.as_double();
  return a.exact() <=> b.exact();
}

std::string Numeric::lexical() const {
  switch (type_) {
    case Type::Integer: return exact_.to_integer_string();
    case Type::Decimal: return exact_.to_decimal_string();
    case Type::Double: break;
  }
  return format_double(double_);
}

std::string_view Numeric::datatype() const {
  switch (type_) {
    case Type::Integer: return xsd::kInteger;
    case Type::Decimal: return xsd::kDecimal;
    case Type::Double: break;
  }
  return xsd::kDouble;
}

std::optional<std::string> canonical_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) return std::nullopt;
  auto first = s.find_first_not_of('0');
  if (first == std::string_view::npos) return std::string("0");
  std::string out = negative ? "-" : "";
  out.append(s.substr(first));
  return out;
}

std::optional<std::string> canonical_decimal(std::string_view s) {
  auto d = Decimal::parse(s);
  if (!d) return std::nullopt;
  return d->to_decimal_string();
}

std::optional<double> parse_double(std::string_view s) {
  if (s == "INF" || s == "+INF") return std::numeric_limits<double>::infinity();
  if (s == "-INF") return -std::numeric_limits<double>::infinity();
  if (s == "NaN") return std::numeric_limits<double>::quiet_NaN();
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  // Reject forms from_chars accepts but xsd:double does not (inf, nan, hex).
  for (char c : s) {
    bool ok = (c >= '0' && c <= '9') || c == '.' || c == 'e' || c == 'E' || c == '+' || c == '-';
    if (!ok) return std::nullopt;
  }
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec == std::errc::result_out_of_range) {
    // Overflow saturates, underflow goes to zero.
    return s.find_first_of("eE") != std::string_view::npos && s[s.find_first_of("eE") + 1] == '-'
               ? 0.0
               : (s.front() == '-' ? -std::numeric_limits<double>::infinity()
                                   : std::numeric_limits<double>::infinity());
  }
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "NaN";
  if (std::isinf(v)) return v > 0 ? "INF" : "-INF";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific);
  std::string text(buf, ptr);
  auto e = text.find('e');
  std::string mantissa = text.substr(0, e);
  int exponent = std::stoi(text.substr(e + 1));
  if (mantissa.find('.') == std::string::npos) mantissa += ".0";
  return mantissa + "E" + std::to_string(exponent);
}

std::optional<std::string> canonical_double(std::string_view s) {
  auto v = parse_double(s);
  if (!v) return std::nullopt;
  return format_double(*v);
}

}  // namespace virtrep::rdf
