#ifndef ADISK_MULTIPOLY_HPP
#define ADISK_MULTIPOLY_HPP

#include <vector>

#include "adisk/types.hpp"

namespace adisk {

/// Holomorphic polynomial on C^n: sum of coeff * z^alpha terms.
class MultiPoly {
 public:
  struct Term {
    Cx coeff;
    std::vector<int> powers;  // one exponent per coordinate
  };

  MultiPoly() = default;
  MultiPoly(int dim, std::vector<Term> terms);

  static MultiPoly constant(int dim, Cx value);
  /// The coordinate function z_k.
  static MultiPoly coordinate(int dim, int k);

  Cx eval(const Point& z) const;
  /// Partial derivative d/dz_k, computed term-by-term.
  MultiPoly partial(int k) const;
  /// Euclidean norm of the holomorphic gradient at z.
  double gradient_norm(const Point& z) const;

  int dim() const { return dim_; }
  int total_degree() const;
  const std::vector<Term>& terms() const { return terms_; }

 private:
  int dim_ = 1;
  std::vector<Term> terms_;
};

}  // namespace adisk

#endif  // ADISK_MULTIPOLY_HPP
