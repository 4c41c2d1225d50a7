#include "superhaar/coefficient.hpp"

#include <cmath>
#include <sstream>

#include "superhaar/grassmann.hpp"

namespace superhaar {

std::string GaussRational::str() const {
  std::ostringstream os;
  if (im == 0) {
    os << re.get_str();
  } else if (re == 0) {
    os << im.get_str() << "i";
  } else {
    os << "(" << re.get_str() << (sgn(im) < 0 ? "" : "+") << im.get_str() << "i)";
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const GaussRational& q) { return os << q.str(); }

namespace {
bool perfect_square(const mpz_class& z, mpz_class& root) {
  if (sgn(z) < 0) return false;
  root = sqrt(z);
  return root * root == z;
}
}  // namespace

Q sqrt_exact(const Q& q) {
  if (q.im != 0 || sgn(q.re) <= 0) throw std::domain_error("sqrt needs a positive real body");
  mpz_class rn, rd;
  if (!perfect_square(q.re.get_num(), rn) || !perfect_square(q.re.get_den(), rd))
    throw std::domain_error("sqrt of body is not rational");
  return Q(mpq_class(rn, rd));
}

C sqrt_exact(const C& c) {
  if (c.imag() == 0.0 && c.real() <= 0.0) throw std::domain_error("sqrt needs a body off the non-positive axis");
  return std::sqrt(c);
}

namespace detail {
Q scalar_log(const Q& b) {
  if (b != Q(1)) throw std::domain_error("log of body is not rational");
  return Q(0);
}
C scalar_log(const C& b) { return std::log(b); }
Q scalar_exp(const Q& b) {
  if (!is_zero(b)) throw std::domain_error("exp of body is not rational");
  return Q(1);
}
C scalar_exp(const C& b) { return std::exp(b); }
}  // namespace detail

}  // namespace superhaar
