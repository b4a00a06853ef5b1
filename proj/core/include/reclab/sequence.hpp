#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace reclab {

// Intensional description of a finite generator sequence P.
class SequenceSpec {
 public:
  struct Explicit {
    std::vector<std::int64_t> terms;
  };
  struct Geometric {  // first, first*ratio, ..., count terms
    std::int64_t first;
    std::int64_t ratio;  // >= 2
    int count;
  };
  struct SuperLacunary {  // p_1 = seed, p_{i+1} = 2*(p_1+...+p_i) + slack
    std::int64_t seed;    // >= 1
    std::int64_t slack;   // >= 1
    int count;
  };

  static SequenceSpec explicit_terms(std::vector<std::int64_t> terms);
  static SequenceSpec geometric(std::int64_t first, std::int64_t ratio, int count);
  static SequenceSpec super_lacunary(std::int64_t seed, std::int64_t slack, int count);

  // Generated terms; throws std::overflow_error if generation leaves int64.
  std::vector<std::int64_t> terms() const;
  std::size_t length() const;

  // True iff all terms are positive and p_{i+1} > 2*(p_1+...+p_i) for every
  // prefix (checked on the generated terms, never assumed).
  bool is_super_lacunary() const;

  const std::variant<Explicit, Geometric, SuperLacunary>& variant() const { return v_; }
  std::string describe() const;

 private:
  std::variant<Explicit, Geometric, SuperLacunary> v_;
};

bool terms_super_lacunary(const std::vector<std::int64_t>& terms);

// The doubling growth rule as a constructor: verifies the flag on the result.
SequenceSpec make_super_lacunary(std::int64_t seed, std::int64_t slack, int count);

}  // namespace reclab
