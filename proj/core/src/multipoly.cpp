#include "adisk/multipoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace adisk {

MultiPoly::MultiPoly(int dim, std::vector<Term> terms)
    : dim_(dim), terms_(std::move(terms)) {
  if (dim < 1) throw std::invalid_argument("MultiPoly: dim must be >= 1");
  for (const Term& t : terms_) {
    if (static_cast<int>(t.powers.size()) != dim)
      throw std::invalid_argument("MultiPoly: term arity mismatch");
    for (int p : t.powers)
      if (p < 0) throw std::invalid_argument("MultiPoly: negative exponent");
  }
}

MultiPoly MultiPoly::constant(int dim, Cx value) {
  return MultiPoly(dim, {Term{value, std::vector<int>(dim, 0)}});
}

MultiPoly MultiPoly::coordinate(int dim, int k) {
  if (k < 0 || k >= dim) throw std::invalid_argument("MultiPoly: bad coordinate");
  std::vector<int> p(dim, 0);
  p[k] = 1;
  return MultiPoly(dim, {Term{Cx(1.0, 0.0), std::move(p)}});
}

Cx MultiPoly::eval(const Point& z) const {
  if (static_cast<int>(z.size()) != dim_)
    throw std::invalid_argument("MultiPoly: point dimension mismatch");
  Cx acc(0.0, 0.0);
  for (const Term& t : terms_) {
    Cx m = t.coeff;
    for (int k = 0; k < dim_; ++k) {
      for (int p = 0; p < t.powers[k]; ++p) m *= z[k];
    }
    acc += m;
  }
  return acc;
}

MultiPoly MultiPoly::partial(int k) const {
  std::vector<Term> out;
  for (const Term& t : terms_) {
    if (t.powers[k] == 0) continue;
    Term d = t;
    d.coeff *= static_cast<double>(t.powers[k]);
    d.powers[k] -= 1;
    out.push_back(std::move(d));
  }
  return MultiPoly(dim_, std::move(out));
}

double MultiPoly::gradient_norm(const Point& z) const {
  double s = 0.0;
  for (int k = 0; k < dim_; ++k) s += std::norm(partial(k).eval(z));
  return std::sqrt(s);
}

int MultiPoly::total_degree() const {
  int d = 0;
  for (const Term& t : terms_) {
    int td = 0;
    for (int p : t.powers) td += p;
    d = std::max(d, td);
  }
  return d;
}

}  // namespace adisk
