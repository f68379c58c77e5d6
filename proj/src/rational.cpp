#include "outer/rational.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace outer {

void fail(const std::string& msg) { throw std::runtime_error(msg); }

Rat parse_rational(const std::string& text) {
  if (text.empty()) fail("empty rational literal");
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rat(BigInt(text));
    BigInt num(text.substr(0, slash));
    BigInt den(text.substr(slash + 1));
    if (den == 0) fail("zero denominator in '" + text + "'");
    return Rat(num, den);
  } catch (const std::runtime_error&) {
    throw;
  } catch (const std::exception&) {
    fail("bad rational literal '" + text + "'");
  }
}

std::string format_rational(const Rat& r) {
  const BigInt& num = boost::multiprecision::numerator(r);
  const BigInt& den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double log_bigint(const BigInt& v) {
  if (v <= 0) fail("log of non-positive integer");
  using boost::multiprecision::msb;
  unsigned bits = (v == 1) ? 0 : msb(v);
  if (bits <= 900) return std::log(v.convert_to<double>());
  BigInt top = v >> (bits - 52);
  return std::log(top.convert_to<double>()) +
         double(bits - 52) * std::log(2.0);
}

double log_rational(const Rat& r) {
  if (r <= 0) fail("log of non-positive rational");
  return log_bigint(boost::multiprecision::numerator(r)) -
         log_bigint(boost::multiprecision::denominator(r));
}

double to_double(const Rat& r) {
  const BigInt& num = boost::multiprecision::numerator(r);
  const BigInt& den = boost::multiprecision::denominator(r);
  using boost::multiprecision::msb;
  auto big = [](const BigInt& v) { return v != 0 && msb(abs(v)) > 960; };
  if (!big(num) && !big(den)) return r.convert_to<double>();
  if (num == 0) return 0.0;
  double sign = num < 0 ? -1.0 : 1.0;
  return sign * std::exp(log_bigint(abs(num)) - log_bigint(den));
}

void RatSum::add(const Rat& r) {
  const BigInt& p = boost::multiprecision::numerator(r);
  const BigInt& q = boost::multiprecision::denominator(r);
  num_ = num_ * q + p * den_;
  den_ *= q;
}

void RatSum::subtract(const Rat& r) { add(-r); }

void RatSum::add_fraction(const BigInt& num, const BigInt& den) {
  num_ = num_ * den + num * den_;
  den_ *= den;
}

Rat RatSum::value() const { return Rat(num_, den_); }

void LogCombo::add(const Rat& base, long long coeff) {
  if (base <= 0) fail("LogCombo base must be positive");
  if (coeff == 0 || base == 1) return;
  auto it = terms_.find(base);
  if (it == terms_.end()) {
    terms_.emplace(base, coeff);
  } else {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

void LogCombo::add_all(const LogCombo& other, long long scale) {
  for (const auto& [base, coeff] : other.terms_) add(base, coeff * scale);
}

double LogCombo::estimate() const {
  double s = 0;
  for (const auto& [base, coeff] : terms_) {
    s += double(coeff) * log_rational(base);
  }
  return s;
}

int LogCombo::sign() const {
  if (terms_.empty()) return 0;
  double est = 0, err = 0;
  for (const auto& [base, coeff] : terms_) {
    double l = log_rational(base);
    est += double(coeff) * l;
    err += std::abs(double(coeff)) * (std::abs(l) + 1.0) * 1e-12;
  }
  if (est > err) return 1;
  if (est < -err) return -1;
  // exact: compare the two sides of the product identity
  BigInt lhs = 1, rhs = 1;
  for (const auto& [base, coeff] : terms_) {
    unsigned exp = (unsigned)(coeff > 0 ? coeff : -coeff);
    const BigInt& p = boost::multiprecision::numerator(base);
    const BigInt& q = boost::multiprecision::denominator(base);
    if (coeff > 0) {
      lhs *= boost::multiprecision::pow(p, exp);
      rhs *= boost::multiprecision::pow(q, exp);
    } else {
      lhs *= boost::multiprecision::pow(q, exp);
      rhs *= boost::multiprecision::pow(p, exp);
    }
  }
  return lhs.compare(rhs);
}

}  // namespace outer
