#include "bvgraph/real.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bvg {

Real::Real(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

Real Real::ratio(long long num, long long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  mpq_class q(static_cast<long>(num), static_cast<long>(den));
  q.canonicalize();
  return Real(q);
}

Real Real::inexact(double d) {
  Real r;
  r.exact_ = false;
  r.d_ = d;
  return r;
}

Real Real::pow2(int exponent) {
  mpz_class p = 1;
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(std::abs(exponent)));
  if (exponent >= 0) return Real(mpq_class(p));
  return Real(mpq_class(mpz_class(1), p));
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace

Real Real::parse(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  size_t b = 0;
  while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  s = s.substr(b);
  if (s.empty()) throw std::invalid_argument("empty number");

  bool neg = false;
  std::string_view body(s);
  if (body.front() == '-' || body.front() == '+') {
    neg = body.front() == '-';
    body.remove_prefix(1);
  }

  mpq_class q;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw std::invalid_argument("bad rational: " + s);
    mpz_class n(std::string(num), 10), d(std::string(den), 10);
    if (d == 0) throw std::invalid_argument("zero denominator: " + s);
    q = mpq_class(n, d);
  } else {
    auto epos = body.find_first_of("eE");
    std::string_view mant = body.substr(0, epos);
    long exp10 = 0;
    if (epos != std::string_view::npos) {
      auto es = body.substr(epos + 1);
      bool eneg = false;
      if (!es.empty() && (es.front() == '-' || es.front() == '+')) {
        eneg = es.front() == '-';
        es.remove_prefix(1);
      }
      if (!all_digits(es) || es.size() > 6) throw std::invalid_argument("bad exponent: " + s);
      std::from_chars(es.data(), es.data() + es.size(), exp10);
      if (eneg) exp10 = -exp10;
    }
    auto dot = mant.find('.');
    std::string digits(mant.substr(0, dot));
    std::string frac = dot == std::string_view::npos ? "" : std::string(mant.substr(dot + 1));
    if (digits.empty() && frac.empty()) throw std::invalid_argument("bad number: " + s);
    if ((!digits.empty() && !all_digits(digits)) || (!frac.empty() && !all_digits(frac)))
      throw std::invalid_argument("bad number: " + s);
    mpz_class n(digits + frac, 10);
    exp10 -= static_cast<long>(frac.size());
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::abs(exp10)));
    q = exp10 >= 0 ? mpq_class(n * scale) : mpq_class(n, scale);
  }
  q.canonicalize();
  if (neg) q = -q;
  return Real(q);
}

double Real::to_double() const { return exact_ ? q_.get_d() : d_; }

const mpq_class& Real::rational() const {
  if (!exact_) throw std::logic_error("rational() on inexact value");
  return q_;
}

int Real::sign() const {
  if (exact_) return sgn(q_);
  return (d_ > 0) - (d_ < 0);
}

std::string Real::to_string() const {
  if (exact_) return q_.get_str();
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, d_);
  return std::string(buf, res.ptr);
}

Real& Real::operator+=(const Real& o) {
  if (exact_ && o.exact_) {
    q_ += o.q_;
  } else {
    d_ = to_double() + o.to_double();
    exact_ = false;
  }
  return *this;
}

Real& Real::operator-=(const Real& o) {
  if (exact_ && o.exact_) {
    q_ -= o.q_;
  } else {
    d_ = to_double() - o.to_double();
    exact_ = false;
  }
  return *this;
}

Real& Real::operator*=(const Real& o) {
  if (exact_ && o.exact_) {
    q_ *= o.q_;
  } else if ((exact_ && sgn(q_) == 0) || (o.exact_ && sgn(o.q_) == 0)) {
    *this = Real(0);
  } else {
    d_ = to_double() * o.to_double();
    exact_ = false;
  }
  return *this;
}

Real& Real::operator/=(const Real& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  if (exact_ && o.exact_) {
    q_ /= o.q_;
  } else if (exact_ && sgn(q_) == 0) {
    // stays exact zero
  } else {
    d_ = to_double() / o.to_double();
    exact_ = false;
  }
  return *this;
}

Real Real::operator-() const {
  Real r = *this;
  if (exact_)
    r.q_ = -q_;
  else
    r.d_ = -d_;
  return r;
}

bool operator==(const Real& a, const Real& b) {
  if (a.exact_ && b.exact_) return a.q_ == b.q_;
  return a.to_double() == b.to_double();
}

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (a.exact_ && b.exact_) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::partial_ordering::less
                 : c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent;
  }
  return a.to_double() <=> b.to_double();
}

Real abs(const Real& x) { return x.sign() < 0 ? -x : x; }

Real sqrt(const Real& x) {
  if (x.sign() < 0) throw std::domain_error("sqrt of negative value");
  if (x.is_exact()) {
    const mpq_class& q = x.rational();
    mpz_class n = q.get_num(), d = q.get_den();
    if (mpz_perfect_square_p(n.get_mpz_t()) && mpz_perfect_square_p(d.get_mpz_t())) {
      mpz_class sn, sd;
      mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
      mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
      return Real(mpq_class(sn, sd));
    }
  }
  return Real::inexact(std::sqrt(x.to_double()));
}

const Real& min(const Real& a, const Real& b) { return b < a ? b : a; }
const Real& max(const Real& a, const Real& b) { return a < b ? b : a; }

bool approx_equal(const Real& a, const Real& b, double rel) {
  if (a.is_exact() && b.is_exact()) return a == b;
  double x = a.to_double(), y = b.to_double();
  double scale = std::max({1.0, std::abs(x), std::abs(y)});
  return std::abs(x - y) <= rel * scale;
}

}  // namespace bvg
