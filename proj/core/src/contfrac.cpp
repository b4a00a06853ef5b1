#include "reclab/contfrac.hpp"

#include <sstream>
#include <stdexcept>

namespace reclab {

namespace {

long term_at(const ContinuedFraction& cf, std::size_t i) {
  if (cf.tag == "golden") return i == 0 ? 0 : 1;    // (sqrt(5)-1)/2 = [0;1,1,1,...]
  if (cf.tag == "sqrt2m1") return i == 0 ? 0 : 2;   // sqrt(2)-1   = [0;2,2,2,...]
  if (i < cf.terms.size()) return cf.terms[i];
  throw std::invalid_argument("continued fraction has only " +
                              std::to_string(cf.terms.size()) + " terms");
}

std::size_t term_limit(const ContinuedFraction& cf) {
  return cf.tag.empty() ? cf.terms.size() : std::size_t{400};
}

struct Convergents {
  BigInt h_prev, q_prev, h, q;
  std::size_t used = 0;
};

Convergents run_cf(const ContinuedFraction& cf, std::size_t max_terms,
                   const BigInt* q_target) {
  Convergents c{1, 0, 0, 1, 0};  // h_{-1}/q_{-1} = 1/0, h_0 set by first term
  bool first = true;
  for (std::size_t i = 0; i < max_terms; ++i) {
    long a = term_at(cf, i);
    if (!first && a < 1) throw std::invalid_argument("partial quotients must be >= 1");
    BigInt nh = BigInt(a) * c.h + c.h_prev;
    BigInt nq = BigInt(a) * c.q + c.q_prev;
    c.h_prev = c.h; c.q_prev = c.q;
    c.h = nh; c.q = nq;
    ++c.used;
    first = false;
    if (q_target && c.used >= 2 && c.q * c.q_prev > *q_target) break;
  }
  if (c.used < 1) throw std::invalid_argument("empty continued fraction");
  return c;
}

}  // namespace

ContinuedFraction parse_cf(const std::string& text) {
  if (text == "golden" || text == "sqrt2m1") return {text, {}};
  ContinuedFraction cf;
  std::size_t semi = text.find(';');
  if (semi == std::string::npos)
    throw std::invalid_argument("cf literal needs 'a0;a1,a2,...' form: " + text);
  cf.terms.push_back(std::stol(text.substr(0, semi)));
  std::stringstream rest(text.substr(semi + 1));
  std::string tok;
  while (std::getline(rest, tok, ',')) {
    if (!tok.empty()) cf.terms.push_back(std::stol(tok));
  }
  if (cf.terms.size() < 2)
    throw std::invalid_argument("cf literal needs at least one partial quotient");
  return cf;
}

std::string cf_str(const ContinuedFraction& cf) {
  if (!cf.tag.empty()) return cf.tag;
  std::ostringstream os;
  os << cf.terms[0] << ";";
  for (std::size_t i = 1; i < cf.terms.size(); ++i)
    os << (i > 1 ? "," : "") << cf.terms[i];
  return os.str();
}

Rat cf_convergent(const ContinuedFraction& cf, std::size_t count) {
  auto c = run_cf(cf, count, nullptr);
  Rat r(c.h, c.q);
  r.canonicalize();
  return r;
}

Fixed128 cf_to_fixed(const ContinuedFraction& cf) {
  // |alpha - h_k/q_k| < 1/(q_k q_{k-1}); push q_k q_{k-1} past 2^132 when the
  // tag can supply terms, so the scaled error rounds to a single ulp.
  BigInt target = BigInt(1) << 132;
  auto c = run_cf(cf, term_limit(cf), cf.tag.empty() ? nullptr : &target);
  Rat approx(c.h, c.q);
  approx.canonicalize();
  Fixed128 f = Fixed128::from_rat(approx);
  if (c.used >= 2 && sgn(c.q_prev) > 0) {
    BigInt denom = c.q * c.q_prev;
    BigInt two128 = BigInt(1) << 128;
    BigInt e;
    mpz_cdiv_q(e.get_mpz_t(), two128.get_mpz_t(), denom.get_mpz_t());
    f.err = sat_add(f.err, mpz_to_u128_sat(e));
  }
  // a single-term "fraction" is an integer: exact, nothing to add
  return f;
}

Rat cf_high_precision(const ContinuedFraction& cf, unsigned min_bits) {
  BigInt target = BigInt(1) << min_bits;
  auto c = run_cf(cf, term_limit(cf), cf.tag.empty() ? nullptr : &target);
  Rat r(c.h, c.q);
  r.canonicalize();
  return r;
}

}  // namespace reclab
