#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <string>

namespace outer {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

[[noreturn]] void fail(const std::string& msg);

// "p", "-p", "p/q" with q > 0 after sign normalization
Rat parse_rational(const std::string& text);
std::string format_rational(const Rat& r);

double to_double(const Rat& r);

// natural log, safe for magnitudes far outside double range
double log_bigint(const BigInt& v);
double log_rational(const Rat& r);

// Formal integer combination  sum_i coeff_i * log(base_i)  over positive
// rational bases.  Sign queries are exact: a guarded double estimate first,
// then big-integer power products when the estimate is inconclusive.
// Accumulates a sum of rationals without per-step normalization; one gcd at
// the end.  Much faster than repeated cpp_rational additions when many terms
// with unrelated denominators pile up.
class RatSum {
 public:
  void add(const Rat& r);
  void subtract(const Rat& r);
  void add_fraction(const BigInt& num, const BigInt& den);  // den > 0
  Rat value() const;

 private:
  BigInt num_{0}, den_{1};
};

class LogCombo {
 public:
  void add(const Rat& base, long long coeff);
  void add_all(const LogCombo& other, long long scale = 1);
  double estimate() const;
  int sign() const;  // -1, 0, +1
  bool is_zero() const { return sign() == 0; }
  size_t term_count() const { return terms_.size(); }
  const std::map<Rat, long long>& terms() const { return terms_; }

 private:
  std::map<Rat, long long> terms_;
};

}  // namespace outer
