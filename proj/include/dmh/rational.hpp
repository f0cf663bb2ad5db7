#pragma once

// Exact rational scalar used for every polytope / LP computation.

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/traits/is_byte_container.hpp>

#include <Eigen/Core>

#include <string>
#include <string_view>

namespace dmh {

/// Arbitrary-precision rational, always held in lowest terms with a positive
/// denominator. Expression templates are disabled so the type behaves as a
/// plain value inside Eigen expressions.
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::cpp_int;

inline Rational make_rational(long long num, long long den = 1) { return Rational(num, den); }

/// Parses "n", "n/d", "-n/d" or a plain decimal such as "0.125" / "-1e-3".
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// "n" for integers, otherwise "n/d".
std::string to_string(const Rational& value);

/// Exact value of a finite double (every double is a dyadic rational).
Rational exact_from_double(double value);

/// Shortest decimal that round-trips the double, read back as a rational.
/// 0.1 becomes 1/10 rather than its binary expansion.
Rational rational_from_decimal(double value);

inline double to_double(const Rational& value) { return value.convert_to<double>(); }

/// Converts a rational into the working scalar of a templated routine.
template <typename Scalar>
Scalar scalar_from(const Rational& value) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return value;
  } else {
    return static_cast<Scalar>(to_double(value));
  }
}

/// Zero-test tolerance: exact for Rational, 1e-9 for floating point.
template <typename Scalar>
double default_tolerance() {
  return std::is_same_v<Scalar, Rational> ? 0.0 : 1e-9;
}

}  // namespace dmh

namespace Eigen {

template <>
struct NumTraits<dmh::Rational> : GenericNumTraits<dmh::Rational> {
  using Real = dmh::Rational;
  using NonInteger = dmh::Rational;
  using Literal = dmh::Rational;
  using Nested = dmh::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 40,
    MulCost = 60
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  static inline int max_digits10() { return 0; }
};

}  // namespace Eigen

// Boost 1.74 probes every constructor argument for a byte-container
// const_iterator; Eigen expressions declare it as void, which breaks the
// probe when an Eigen matrix of Rational is built from an expression.
namespace boost::multiprecision::detail {
template <class Op, class M>
struct is_byte_container<Eigen::CwiseNullaryOp<Op, M>> : boost::false_type {};
template <class Op, class X>
struct is_byte_container<Eigen::CwiseUnaryOp<Op, X>> : boost::false_type {};
template <class Op, class L, class R>
struct is_byte_container<Eigen::CwiseBinaryOp<Op, L, R>> : boost::false_type {};
template <class X, int R, int C, bool I>
struct is_byte_container<Eigen::Block<X, R, C, I>> : boost::false_type {};
template <class X>
struct is_byte_container<Eigen::Transpose<X>> : boost::false_type {};
template <class L, class R, int O>
struct is_byte_container<Eigen::Product<L, R, O>> : boost::false_type {};
template <class S, int R, int C, int O, int MR, int MC>
struct is_byte_container<Eigen::Matrix<S, R, C, O, MR, MC>> : boost::false_type {};
template <class X>
struct is_byte_container<Eigen::MatrixBase<X>> : boost::false_type {};
template <class X>
struct is_byte_container<Eigen::DenseBase<X>> : boost::false_type {};
template <class X>
struct is_byte_container<Eigen::EigenBase<X>> : boost::false_type {};
}  // namespace boost::multiprecision::detail
