#include "reclab/rat.hpp"

#include <stdexcept>

namespace reclab {

Rat make_rat(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rat q(static_cast<long>(num), static_cast<long>(den));
  q.canonicalize();
  return q;
}

Rat parse_rat(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  Rat q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

std::string rat_str(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rat mod1(const Rat& q) {
  BigInt fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  Rat r = q - Rat(fl);
  r.canonicalize();
  return r;
}

Rat torus_dist_rat(const Rat& a, const Rat& b) {
  Rat d = mod1(a - b);
  Rat other = 1 - d;
  return d <= other ? d : other;
}

Rat rat_pow(const Rat& q, unsigned k) {
  Rat r = 1;
  Rat base = q;
  while (k > 0) {
    if (k & 1) r *= base;
    base *= base;
    k >>= 1;
  }
  return r;
}

BigInt binom(const BigInt& n, unsigned k) {
  BigInt r;
  mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
  return r;
}

}  // namespace reclab
