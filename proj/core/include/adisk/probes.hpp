#ifndef ADISK_PROBES_HPP
#define ADISK_PROBES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "adisk/measure.hpp"
#include "adisk/multipoly.hpp"

namespace adisk {

/// Plurisubharmonic probe from the Bremermann class:
/// v(z) = max_j { a_j * ln|p_j(z)| }, every a_j > 0.
class PshTestFunction {
 public:
  struct Term {
    double a;
    MultiPoly p;
  };

  PshTestFunction(std::vector<Term> terms);

  /// -infinity when every p_j vanishes at z.
  double value(const Point& z) const;
  const std::vector<Term>& terms() const { return terms_; }
  int dim() const { return terms_[0].p.dim(); }

 private:
  std::vector<Term> terms_;
};

/// Random dictionary of probes with polynomial degree <= max_degree.
std::vector<PshTestFunction> random_probe_dictionary(int dim, int count,
                                                     int max_degree,
                                                     std::uint64_t seed);

struct JensenEntry {
  std::size_t probe = 0;
  double lhs = 0.0;     // v(z0); -inf passes vacuously
  double rhs = 0.0;     // int v d(mu) over finite samples
  double margin = 0.0;  // rhs + slack - lhs
  bool pass = true;
  bool skipped = false;       // probe vanished at every sample point
  int dropped_samples = 0;    // -inf samples dropped and weight renormalized
};

struct JensenReport {
  std::vector<JensenEntry> entries;
  bool all_pass = true;
  std::string to_json_string(int indent = -1) const;
};

/// Checks v(z0) <= int v d(mu) + slack for every probe. Samples where a probe
/// is -infinite are dropped with the weight renormalized (measure-zero events
/// for nonatomic push-forwards; the bias is O(1/N)).
JensenReport jensen_check(const EmpiricalMeasure& mu, const Point& z0,
                          const std::vector<PshTestFunction>& probes,
                          double slack);

}  // namespace adisk

#endif  // ADISK_PROBES_HPP
