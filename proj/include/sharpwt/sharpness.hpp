#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sharpwt/characteristics.hpp"
#include "sharpwt/grid.hpp"
#include "sharpwt/opnd.hpp"

namespace sharpwt {

/// c0 + c1 * eps.
struct LinearInEps {
  double c0 = 0.0;
  double c1 = 0.0;
  double at(double eps) const { return c0 + c1 * eps; }
};

/// (int |f|^r w^weight_power)^{1/r}.
struct NormSpec {
  double r = 2.0;
  double weight_power = 1.0;
};

enum class NormKind { Strong, Weak };
enum class ClaimKind { Sharp, UpperBound };

struct CharacteristicSpec {
  enum class Family { Ap, ApOneside, ApqOneside };
  Family family = Family::Ap;
  Side side = Side::Plus;
};

/// Rows should satisfy Tf_norm >= constant * eps^exponent; constant 0 means "fit it".
struct LowerBoundSpec {
  double exponent = 0.0;
  double constant = 0.0;
};

/// A catalog experiment in translated coordinates: the singular point is 0, the weight is
/// |x|^gamma(eps), the test function |t|^s(eps) on [-radius, 0] (Left) or [0, radius] (Right).
/// 2D experiments use the tensor square of both and report products of the 1D quantities.
struct ExperimentSpec {
  std::string id;
  Op1D op;
  int dims = 1;
  Exponents exponents = Exponents::make(2.0);
  LinearInEps weight;
  LinearInEps test;
  Endpoint support = Endpoint::Left;
  double support_radius = 1.0;
  double domain_radius = 1.0;
  NormSpec in_norm;
  NormSpec out_norm;
  NormKind norm_kind = NormKind::Strong;
  CharacteristicSpec characteristic;
  std::vector<double> eps_list{0.2, 0.1, 0.05, 0.025};
  std::size_t n = 1u << 14;
  double predicted_exponent = 1.0;
  ClaimKind claim = ClaimKind::Sharp;
  std::optional<LowerBoundSpec> lower_bound;
};

struct ExperimentOverrides {
  std::optional<double> p;
  std::optional<double> alpha;
  std::optional<std::vector<double>> eps_list;
  std::optional<std::size_t> n;
};

std::vector<std::string> experiment_ids();
/// Throws std::out_of_range for unknown ids.
ExperimentSpec build_experiment(const std::string& id, const ExperimentOverrides& overrides = {});

/// Graded about 0 on the dilated domain [-S R, S R], S = experiment_scale(spec), down to the
/// innermost scale S * support_radius * innermost_scale(spec). The innermost scale depends only on
/// the family, the domain and the smallest eps, so doubling n refines the same grid family. S keeps every evaluated
/// power inside the double exponent range; reported norms are converted back to S = 1.
Grid1D experiment_grid(const ExperimentSpec& spec);
double innermost_scale(const ExperimentSpec& spec);
double experiment_scale(const ExperimentSpec& spec);
ExperimentSpec refined(const ExperimentSpec& spec);

/// Closed-form (int_0^radius t^{s r + k gamma} dt)^{1/r}, squared for 2D. Throws DomainError if divergent.
double analytic_f_norm(const ExperimentSpec& spec, double eps);

/// The same norm by quadrature of the cell averages on experiment_grid(spec), as run_sweep reports it.
double quadrature_f_norm(const ExperimentSpec& spec, double eps);

struct Fit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Least squares on (ln x, ln y). Throws std::invalid_argument with fewer than 2 points.
Fit fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys);

struct SweepRow {
  double eps = 0.0;
  double characteristic = 0.0;
  double f_norm = 0.0;
  double f_norm_quadrature = 0.0;
  double Tf_norm = 0.0;
  double ratio = 0.0;
  bool flagged = false;
};

struct SweepResult {
  std::string id;
  std::vector<SweepRow> rows;
  std::optional<Fit> fit;
  double predicted = 0.0;
  ClaimKind claim = ClaimKind::Sharp;
  std::size_t n = 0;
  /// Cells whose one-sided window set is empty at the domain edge (per 1D factor).
  std::size_t edge_cells = 0;
};

struct SweepOptions {
  /// Off skips the characteristic column (and the fit); ratios are unaffected.
  bool characteristic = true;
};

SweepResult run_sweep(const ExperimentSpec& spec, const SweepOptions& options = {});

/// Sharp: |slope - predicted| <= tol * predicted. UpperBound: slope <= (1 + tol) * predicted.
bool slope_within(const SweepResult& r, double tolerance);

/// Tf_norm / eps^exponent for each unflagged row.
std::vector<double> lower_bound_constants(const SweepResult& r, const LowerBoundSpec& lb);

void write_sweep_csv(std::ostream& out, const SweepResult& r);
std::string fit_line(const SweepResult& r);

}  // namespace sharpwt
