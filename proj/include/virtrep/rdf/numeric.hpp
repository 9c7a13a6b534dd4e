#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace virtrep::rdf {

using BigInt = boost::multiprecision::cpp_int;

/// Exact decimal number: unscaled * 10^-scale, kept normalized
/// (no trailing zeros in the unscaled value when scale > 0).
class Decimal {
 public:
  /// Fractional digits kept when a quotient has no finite decimal expansion.
  static constexpr unsigned kDivisionScale = 24;

  Decimal() = default;
  Decimal(BigInt unscaled, unsigned scale);
  static Decimal from_integer(BigInt value) { return Decimal(std::move(value), 0); }

  /// Accepts the xsd:decimal lexical space (also plain integers).
  static std::optional<Decimal> parse(std::string_view lexical);

  const BigInt& unscaled() const { return unscaled_; }
  unsigned scale() const { return scale_; }
  bool is_integral() const { return scale_ == 0; }
  bool is_zero() const { return unscaled_.is_zero(); }
  int sign() const { return unscaled_.sign(); }

  /// Canonical xsd:decimal form, always with a fractional part ("1.0", "0.5").
  std::string to_decimal_string() const;
  /// Integer digits only; valid when is_integral().
  std::string to_integer_string() const;
  double to_double() const;

  friend Decimal operator+(const Decimal& a, const Decimal& b);
  friend Decimal operator-(const Decimal& a, const Decimal& b);
  friend Decimal operator*(const Decimal& a, const Decimal& b);
  Decimal operator-() const { return Decimal(-unscaled_, scale_); }

  /// Exact when the quotient terminates, otherwise rounded half-even to
  /// kDivisionScale digits. Empty on division by zero.
  static std::optional<Decimal> divide(const Decimal& a, const Decimal& b);

  friend std::strong_ordering operator<=>(const Decimal& a, const Decimal& b);
  friend bool operator==(const Decimal& a, const Decimal& b) {
    return a.scale_ == b.scale_ && a.unscaled_ == b.unscaled_;
  }

 private:
  void normalize();

  BigInt unscaled_{0};
  unsigned scale_ = 0;
};

/// A numeric literal value with the xsd type it came from. Integers and
/// decimals are exact; doubles are IEEE 754 binary64.
class Numeric {
 public:
  enum class Type : std::uint8_t { Integer, Decimal, Double };

  static Numeric integer(BigInt v) { return Numeric(Type::Integer, Decimal::from_integer(std::move(v)), 0.0); }
  static Numeric decimal(Decimal v) { return Numeric(Type::Decimal, std::move(v), 0.0); }
  static Numeric floating(double v) { return Numeric(Type::Double, Decimal{}, v); }

  Type type() const { return type_; }
  /// Exact value; meaningless for doubles.
  const Decimal& exact() const { return exact_; }
  double as_double() const { return type_ == Type::Double ? double_ : exact_.to_double(); }
  bool is_zero() const { return type_ == Type::Double ? double_ == 0.0 : exact_.is_zero(); }

  /// Operands are promoted integer -> decimal -> double.
  friend Numeric operator+(const Numeric& a, const Numeric& b);
  friend Numeric operator-(const Numeric& a, const Numeric& b);
  friend Numeric operator*(const Numeric& a, const Numeric& b);
  Numeric operator-() const;
  /// integer / integer yields a decimal. Empty on division by zero.
  static std::optional<Numeric> divide(const Numeric& a, const Numeric& b);

  /// Value comparison after promotion; unordered only when a NaN is involved.
  friend std::partial_ordering operator<=>(const Numeric& a, const Numeric& b);
  friend bool operator==(const Numeric& a, const Numeric& b) { return (a <=> b) == 0; }

  /// Canonical lexical form for the value's own type.
  std::string lexical() const;
  std::string_view datatype() const;

 private:
  Numeric(Type t, Decimal e, double d) : type_(t), exact_(std::move(e)), double_(d) {}

  Type type_;
  Decimal exact_;
  double double_;
};

/// Canonical lexical forms. Each returns nullopt if the input is outside the
/// datatype's lexical space.
std::optional<std::string> canonical_integer(std::string_view lexical);
std::optional<std::string> canonical_decimal(std::string_view lexical);
std::optional<std::string> canonical_double(std::string_view lexical);
std::string format_double(double v);
std::optional<double> parse_double(std::string_view lexical);

}  // namespace virtrep::rdf
