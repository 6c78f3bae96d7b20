#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"

namespace sas {

// Law of the source variable X: finite atom list, empirical sample, or one of
// a few named parametric families.  All supported laws have finite log-moment
// E[ln(1+|X|)].
class SourceDistribution {
 public:
  enum class Kind { atoms, sample, parametric };
  enum class Family { gaussian, cauchy, uniform };

  static SourceDistribution atoms(std::vector<std::pair<double, double>> pts);
  static SourceDistribution sample(std::vector<double> values);
  static SourceDistribution gaussian(double mu, double sigma);
  static SourceDistribution cauchy(double x0, double gamma);
  static SourceDistribution uniform(double a, double b);

  static SourceDistribution from_json(const nlohmann::json& j);
  static SourceDistribution load(const std::string& path);
  nlohmann::json to_json() const;

  Kind kind() const { return kind_; }
  Family family() const;  // parametric kinds only

  // Lebesgue density at x and its mode location; parametric kinds only.
  double density(double x) const;
  double density_mode() const;

  // E[ln(1 + |X|)] -- the class-membership functional; finite for every
  // supported law.
  double log_moment() const;

  // Smallest radius r > 0 with Pr(|X| <= r) >= 1/2.
  double median_radius() const;

  // Pr(|X| <= r).
  double cdf_abs(double r) const;
  // Pr(|X| > r).
  double tail_prob(double r) const;

  // E[f(X)].  Finite weighted sum for atoms/sample; a fixed (deterministic)
  // Gauss-Legendre rule against the density for parametric laws, so nearby
  // integrands see the same abscissae.
  double expect(const std::function<double(double)>& f) const;

  // Support radius for window construction: atoms/sample use the exact
  // maximum |x|; parametric laws use a far quantile.
  double support_radius() const;

  // True when the law has compact support (atoms, samples, uniform).
  bool bounded_support() const;

  // sup of the Lebesgue density of X on {|x| >= r}.  Purely atomic kinds
  // return 0 once r exceeds the support radius (and +inf below it); the
  // parametric families return the exact sup.  Used to bound mixture tails:
  // int_{|x|>r} p(y-x) dF_X(x) <= density_sup_beyond(r) * ||p||_1.
  double density_sup_beyond(double r) const;

  struct Mesh {
    std::vector<double> x, w;
  };

  // Raw views for samplers; param_a/param_b are mu/x0/a and sigma/gamma/b.
  const std::vector<std::pair<double, double>>& atom_list() const {
    return atoms_;
  }
  const std::vector<double>& sample_values() const { return sample_; }
  double param_a() const { return par_a_; }
  double param_b() const { return par_b_; }

 private:
  SourceDistribution() = default;
  void validate();
  void build_mesh();  // fixed integration mesh, parametric kinds only

  std::shared_ptr<const Mesh> mesh_;

  Kind kind_ = Kind::atoms;
  std::vector<std::pair<double, double>> atoms_;  // (location, weight)
  std::vector<double> sample_;
  Family family_ = Family::gaussian;
  double par_a_ = 0.0;  // mu / x0 / a
  double par_b_ = 1.0;  // sigma / gamma / b
};

double log_moment(const SourceDistribution& s);
double median_radius(const SourceDistribution& s);
double expect_over_source(const SourceDistribution& s,
                          const std::function<double(double)>& f);

}  // namespace sas
