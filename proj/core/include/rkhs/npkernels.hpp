#pragma once

#include <span>

#include "rkhs/kernel.hpp"

namespace rkhs {

/// Finite-set positivity verdict for 1 - 1/K. Necessary-condition semantics
/// only: positivity on a finite set cannot certify a complete NP kernel, but
/// a failure disproves it; the witness eigenvector is attached on failure.
struct NPVerdict {
  std::vector<Point> points;
  double min_eigenvalue = 0.0;
  double trace = 0.0;
  bool is_psd = false;
  Eigen::VectorXcd witness;  // empty when is_psd
};

NPVerdict np_test(const Kernel& k, std::span<const Point> points);

/// The norm-one multiplier vanishing at x that maximizes Re G(y); for
/// complete NP kernels it attains delta(x, y) and is given in closed form.
/// Only offered for families carrying the complete-NP flag.
struct MaximalMultiplier {
  std::function<Complex(const Point&)> fn;
  Complex value_at_y;  // real, equals delta(x, y)
};
MaximalMultiplier maximal_multiplier(const Kernel& k, const Point& x,
                                     const Point& y);

/// A zero set declared through a generator with a known comparison law; the
/// library sums a finite prefix and classifies tails by the declared law.
struct ZeroSetGenerator {
  enum class Kind { explicit_list, geometric, power };
  Kind kind = Kind::explicit_list;
  std::vector<double> points;  // explicit_list
  double a = 1.0;              // geometric: x_n = 1 - a q^n; power: 1 - a/n^p
  double q = 0.5;
  double p = 2.0;
  std::size_t prefix = 10000;

  /// Realized prefix, capped where 1 - x_n underflows representability.
  std::vector<double> realize() const;
  std::string describe() const;
};

enum class SumVerdict { converges, diverges };

/// Comparison-test verdict for a positive-term sum whose terms follow the
/// generator's declared asymptotic law; uses a tail-window ratio test with a
/// log-log slope fallback.
SumVerdict classify_sum(ZeroSetGenerator::Kind law,
                        std::span<const double> terms);

struct ZeroSetReport {
  enum class Classification { converges, diverges_to_zero };
  std::vector<double> points;            // realized zero-set prefix
  Point basepoint;
  std::vector<double> partial_products;  // prefixes of B^2(x0), nonincreasing
  std::vector<double> criterion_terms;   // 1 - delta^2(x_i, x0)
  double criterion_sum = 0.0;            // partial sum of the terms
  bool criterion_sum_finite = false;     // verdict under the declared law
  Classification classification = Classification::diverges_to_zero;
  std::vector<Complex> query_values;     // prefix product at the query points
};

/// Generalized Blaschke product over S with base point x0: the ordered
/// product of maximal multipliers G_{x_i, x0}, each vanishing at x_i and
/// positive at x0.
ZeroSetReport blaschke_product(const Kernel& k, const ZeroSetGenerator& s,
                               const Point& x0, std::size_t n_factors,
                               std::span<const Point> queries);

/// The classical sufficient zero-set criteria on the disk.
struct ZeroSetCriteria {
  double blaschke_sum = 0.0;         // sum (1 - |x_i|^2)
  double shapiro_shields_sum = 0.0;  // sum log 1/(1 - |x_i|^2)
  SumVerdict blaschke_verdict = SumVerdict::diverges;
  SumVerdict shapiro_shields_verdict = SumVerdict::diverges;
  bool admissible = false;  // the requested space's criterion converges
};
enum class ZeroSetSpace { hardy, dirichlet };
ZeroSetCriteria zero_set_criteria(ZeroSetSpace space,
                                  const ZeroSetGenerator& s);

/// Defects of a candidate Drury-Arveson realization
/// K(x,y) = b(x) conj(b(y)) / (1 - <gamma(x), gamma(y)>).
struct DaEmbeddingDefect {
  double kernel_defect = 0.0;  // max |K - realization|
  double metric_defect = 0.0;  // max |delta - rho_n(gamma, gamma)|
};
DaEmbeddingDefect da_embedding_check(
    const Kernel& k, const std::function<Complex(const Point&)>& b,
    const std::function<Point(const Point&)>& gamma,
    std::span<const Point> points);

}  // namespace rkhs
