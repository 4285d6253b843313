#include "symdyn/scalar.hpp"

#include "symdyn/error.hpp"

#include <cctype>

namespace symdyn {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidMatrix: return "InvalidMatrix";
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::NotASource: return "NotASource";
    case ErrorCode::WouldEmpty: return "WouldEmpty";
    case ErrorCode::BadPartition: return "BadPartition";
    case ErrorCode::NotAFactorization: return "NotAFactorization";
    case ErrorCode::InvalidWitness: return "InvalidWitness";
    case ErrorCode::ShapeError: return "ShapeError";
    case ErrorCode::NotIrreducible: return "NotIrreducible";
    case ErrorCode::NotIrreducibleNontrivial: return "NotIrreducibleNontrivial";
    case ErrorCode::HasSinks: return "HasSinks";
    case ErrorCode::UnknownGenerator: return "UnknownGenerator";
    case ErrorCode::SinkVertex: return "SinkVertex";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

bool is_integral(const Rational& q) { return mp::denominator(q) == 1; }

bool is_integral(const RatMatrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!is_integral(m(i, j))) return false;
  return true;
}

IntMatrix to_integer(const RatMatrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = Integer(mp::numerator(m(i, j)));
  return out;
}

Integer lcm_of_denominators(const RatMatrix& m) {
  Integer d = 1;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) d = mp::lcm(d, Integer(mp::denominator(m(i, j))));
  return d;
}

std::string to_string(const Integer& x) { return x.str(); }

std::string to_string(const Rational& x) {
  if (mp::denominator(x) == 1) return Integer(mp::numerator(x)).str();
  return Integer(mp::numerator(x)).str() + "/" + Integer(mp::denominator(x)).str();
}

namespace {

Integer parse_integer(std::string_view text, std::string_view whole) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
  if (i == text.size()) throw Error(ErrorCode::Parse, "bad number: " + std::string(whole));
  for (std::size_t j = i; j < text.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(text[j])))
      throw Error(ErrorCode::Parse, "bad number: " + std::string(whole));
  std::string digits(text);
  if (digits[0] == '+') digits.erase(0, 1);
  return Integer(digits);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  Integer num = parse_integer(text.substr(0, slash), text);
  auto den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+'))
    throw Error(ErrorCode::Parse, "bad number: " + std::string(text));
  Integer den = parse_integer(den_text, text);
  if (den == 0) throw Error(ErrorCode::Parse, "zero denominator: " + std::string(text));
  return Rational(num, den);
}

IntMatrix int_matrix(const std::vector<std::vector<long long>>& rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto m = n == 0 ? 0 : static_cast<Eigen::Index>(rows[0].size());
  IntMatrix out(n, m);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(rows[i].size()) != m)
      throw Error(ErrorCode::ShapeError, "ragged matrix rows");
    for (Eigen::Index j = 0; j < m; ++j) out(i, j) = rows[i][j];
  }
  return out;
}

}  // namespace symdyn
