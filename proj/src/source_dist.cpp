#include "sas/source_dist.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "sas/quadrature.hpp"

namespace sas {

namespace {

using Mesh = SourceDistribution::Mesh;

void add_gl16(Mesh& m, double a, double b,
              const std::function<double(double)>& density_times_jacobian,
              const std::function<double(double)>& to_x) {
  for (int i = 0; i < 16; ++i) {
    const double t = 0.5 * (a + b) + 0.5 * (b - a) * quad::kGL16Nodes[i];
    m.x.push_back(to_x(t));
    m.w.push_back(0.5 * (b - a) * quad::kGL16Weights[i] *
                  density_times_jacobian(t));
  }
}

}  // namespace

SourceDistribution SourceDistribution::atoms(
    std::vector<std::pair<double, double>> pts) {
  SourceDistribution s;
  s.kind_ = Kind::atoms;
  s.atoms_ = std::move(pts);
  s.validate();
  return s;
}

SourceDistribution SourceDistribution::sample(std::vector<double> values) {
  SourceDistribution s;
  s.kind_ = Kind::sample;
  s.sample_ = std::move(values);
  s.validate();
  return s;
}

SourceDistribution SourceDistribution::gaussian(double mu, double sigma) {
  SourceDistribution s;
  s.kind_ = Kind::parametric;
  s.family_ = Family::gaussian;
  s.par_a_ = mu;
  s.par_b_ = sigma;
  s.validate();
  return s;
}

SourceDistribution SourceDistribution::cauchy(double x0, double gamma) {
  SourceDistribution s;
  s.kind_ = Kind::parametric;
  s.family_ = Family::cauchy;
  s.par_a_ = x0;
  s.par_b_ = gamma;
  s.validate();
  return s;
}

SourceDistribution SourceDistribution::uniform(double a, double b) {
  SourceDistribution s;
  s.kind_ = Kind::parametric;
  s.family_ = Family::uniform;
  s.par_a_ = a;
  s.par_b_ = b;
  s.validate();
  return s;
}

void SourceDistribution::validate() {
  switch (kind_) {
    case Kind::atoms: {
      if (atoms_.empty()) {
        throw std::invalid_argument("SourceDistribution: empty atom list");
      }
      double total = 0.0;
      for (const auto& [x, w] : atoms_) {
        if (!(w > 0.0) || !std::isfinite(x)) {
          throw std::invalid_argument(
              "SourceDistribution: atom weights must be positive and "
              "locations finite");
        }
        total += w;
      }
      if (std::fabs(total - 1.0) > 1e-12) {
        throw std::invalid_argument(
            "SourceDistribution: atom weights must sum to 1");
      }
      break;
    }
    case Kind::sample:
      if (sample_.empty()) {
        throw std::invalid_argument("SourceDistribution: empty sample");
      }
      break;
    case Kind::parametric:
      if (family_ == Family::uniform) {
        if (!(par_a_ < par_b_)) {
          throw std::invalid_argument("SourceDistribution: need a < b");
        }
      } else if (!(par_b_ > 0.0)) {
        throw std::invalid_argument(
            "SourceDistribution: scale parameter must be positive");
      }
      break;
  }
  if (kind_ == Kind::parametric) {
    build_mesh();
  }
}

SourceDistribution SourceDistribution::from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "atoms") {
    std::vector<std::pair<double, double>> pts;
    for (const auto& a : j.at("atoms")) {
      pts.emplace_back(a.at(0).get<double>(), a.at(1).get<double>());
    }
    return atoms(std::move(pts));
  }
  if (kind == "sample") {
    return sample(j.at("values").get<std::vector<double>>());
  }
  if (kind == "parametric") {
    const std::string name = j.at("name").get<std::string>();
    const auto& p = j.at("params");
    if (name == "gaussian") {
      return gaussian(p.at("mu").get<double>(), p.at("sigma").get<double>());
    }
    if (name == "cauchy") {
      return cauchy(p.at("x0").get<double>(), p.at("gamma").get<double>());
    }
    if (name == "uniform") {
      return uniform(p.at("a").get<double>(), p.at("b").get<double>());
    }
    throw std::invalid_argument("SourceDistribution: unknown family " + name);
  }
  throw std::invalid_argument("SourceDistribution: unknown kind " + kind);
}

SourceDistribution SourceDistribution::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("SourceDistribution: cannot open " + path);
  }
  nlohmann::json j;
  in >> j;
  return from_json(j);
}

nlohmann::json SourceDistribution::to_json() const {
  nlohmann::json j;
  switch (kind_) {
    case Kind::atoms: {
      j["kind"] = "atoms";
      auto arr = nlohmann::json::array();
      for (const auto& [x, w] : atoms_) {
        arr.push_back({x, w});
      }
      j["atoms"] = arr;
      break;
    }
    case Kind::sample:
      j["kind"] = "sample";
      j["values"] = sample_;
      break;
    case Kind::parametric:
      j["kind"] = "parametric";
      if (family_ == Family::gaussian) {
        j["name"] = "gaussian";
        j["params"] = {{"mu", par_a_}, {"sigma", par_b_}};
      } else if (family_ == Family::cauchy) {
        j["name"] = "cauchy";
        j["params"] = {{"x0", par_a_}, {"gamma", par_b_}};
      } else {
        j["name"] = "uniform";
        j["params"] = {{"a", par_a_}, {"b", par_b_}};
      }
      break;
  }
  return j;
}

double SourceDistribution::expect(
    const std::function<double(double)>& f) const {
  quad::Accum acc;
  switch (kind_) {
    case Kind::atoms:
      for (const auto& [x, w] : atoms_) {
        acc.add(w * f(x));
      }
      return acc.sum;
    case Kind::sample: {
      const double w = 1.0 / static_cast<double>(sample_.size());
      for (double x : sample_) {
        acc.add(w * f(x));
      }
      return acc.sum;
    }
    case Kind::parametric:
      break;
  }
  for (std::size_t i = 0; i < mesh_->x.size(); ++i) {
    acc.add(mesh_->w[i] * f(mesh_->x[i]));
  }
  return acc.sum;
}

// Deterministic fixed mesh; common integrands kink at x = 0, so 0 is a mesh
// breakpoint whenever it lies in the covered range.
void SourceDistribution::build_mesh() {
  Mesh m;
  if (family_ == Family::gaussian) {
    const double mu = par_a_, sg = par_b_;
    const double lo = mu - 8.5 * sg, hi = mu + 8.5 * sg;
    const auto dens = [mu, sg](double x) {
      const double z = (x - mu) / sg;
      return std::exp(-0.5 * z * z) / (sg * std::sqrt(2.0 * M_PI));
    };
    const auto ident = [](double x) { return x; };
    std::vector<double> brk = {lo, hi};
    if (lo < 0.0 && 0.0 < hi) {
      brk.insert(brk.begin() + 1, 0.0);
    }
    for (std::size_t s = 0; s + 1 < brk.size(); ++s) {
      const int panels =
          std::max(1, static_cast<int>(std::ceil((brk[s + 1] - brk[s]) /
                                                 (0.5 * sg))));
      for (int p = 0; p < panels; ++p) {
        const double a = brk[s] + (brk[s + 1] - brk[s]) * p / panels;
        const double b = brk[s] + (brk[s + 1] - brk[s]) * (p + 1) / panels;
        add_gl16(m, a, b, dens, ident);
      }
    }
  } else if (family_ == Family::cauchy) {
    // x = x0 + gamma tan(theta), theta in (-pi/2, pi/2): the measure becomes
    // d(theta)/pi exactly, so the heavy tails need no truncation remainder --
    // only dyadic grading of theta toward +-pi/2.
    const double x0 = par_a_, gm = par_b_;
    const auto to_x = [x0, gm](double th) { return x0 + gm * std::tan(th); };
    const auto dens = [](double) { return 1.0 / M_PI; };
    const double th0 = std::atan(-x0 / gm);  // theta of x = 0
    std::vector<std::pair<double, double>> segs;
    const double edge = M_PI / 2 - M_PI / 8;
    std::vector<double> brk = {-edge, th0, edge};
    std::sort(brk.begin(), brk.end());
    for (std::size_t s = 0; s + 1 < brk.size(); ++s) {
      const double a = brk[s], b = brk[s + 1];
      const int panels =
          std::max(1, static_cast<int>(std::ceil((b - a) / (M_PI / 64))));
      for (int p = 0; p < panels; ++p) {
        segs.emplace_back(a + (b - a) * p / panels,
                          a + (b - a) * (p + 1) / panels);
      }
    }
    for (int k = 0; k < 44; ++k) {  // graded wings
      const double w1 = (M_PI / 8) * std::pow(0.5, k);
      segs.emplace_back(M_PI / 2 - w1, M_PI / 2 - 0.5 * w1);
      segs.emplace_back(-(M_PI / 2 - 0.5 * w1), -(M_PI / 2 - w1));
    }
    for (const auto& [a, b] : segs) {
      add_gl16(m, a, b, dens, to_x);
    }
  } else {  // uniform
    const double a0 = par_a_, b0 = par_b_;
    const auto dens = [a0, b0](double) { return 1.0 / (b0 - a0); };
    const auto ident = [](double x) { return x; };
    std::vector<double> brk = {a0, b0};
    if (a0 < 0.0 && 0.0 < b0) {
      brk.insert(brk.begin() + 1, 0.0);
    }
    for (std::size_t s = 0; s + 1 < brk.size(); ++s) {
      const int panels = std::max(
          1, static_cast<int>(std::ceil(32.0 * (brk[s + 1] - brk[s]) /
                                        (b0 - a0))));
      for (int p = 0; p < panels; ++p) {
        add_gl16(m, brk[s] + (brk[s + 1] - brk[s]) * p / panels,
                 brk[s] + (brk[s + 1] - brk[s]) * (p + 1) / panels, dens,
                 ident);
      }
    }
  }
  double mass = 0.0;
  for (double w : m.w) {
    mass += w;
  }
  for (double& w : m.w) {
    w /= mass;  // unit total mass despite quantile truncation
  }
  mesh_ = std::make_shared<const Mesh>(std::move(m));
}

double SourceDistribution::log_moment() const {
  return expect([](double x) { return std::log1p(std::fabs(x)); });
}

double SourceDistribution::cdf_abs(double r) const {
  if (r < 0.0) {
    return 0.0;
  }
  switch (kind_) {
    case Kind::atoms: {
      double p = 0.0;
      for (const auto& [x, w] : atoms_) {
        if (std::fabs(x) <= r) {
          p += w;
        }
      }
      return p;
    }
    case Kind::sample: {
      std::size_t c = 0;
      for (double x : sample_) {
        if (std::fabs(x) <= r) {
          ++c;
        }
      }
      return static_cast<double>(c) / sample_.size();
    }
    case Kind::parametric:
      break;
  }
  if (family_ == Family::gaussian) {
    const double mu = par_a_, sg = par_b_;
    const auto Phi = [](double z) { return 0.5 * std::erfc(-z / M_SQRT2); };
    return Phi((r - mu) / sg) - Phi((-r - mu) / sg);
  }
  if (family_ == Family::cauchy) {
    const double x0 = par_a_, gm = par_b_;
    return (std::atan((r - x0) / gm) - std::atan((-r - x0) / gm)) / M_PI;
  }
  const double a = par_a_, b = par_b_;
  const double lo = std::max(a, -r), hi = std::min(b, r);
  return hi > lo ? (hi - lo) / (b - a) : 0.0;
}

double SourceDistribution::tail_prob(double r) const { return 1.0 - cdf_abs(r); }

double SourceDistribution::median_radius() const {
  if (kind_ == Kind::atoms || kind_ == Kind::sample) {
    std::vector<std::pair<double, double>> abs_pts;  // (|x|, weight)
    if (kind_ == Kind::atoms) {
      for (const auto& [x, w] : atoms_) {
        abs_pts.emplace_back(std::fabs(x), w);
      }
    } else {
      const double w = 1.0 / static_cast<double>(sample_.size());
      for (double x : sample_) {
        abs_pts.emplace_back(std::fabs(x), w);
      }
    }
    std::sort(abs_pts.begin(), abs_pts.end());
    double cum = 0.0;
    for (const auto& [r, w] : abs_pts) {
      cum += w;
      if (cum >= 0.5 - 1e-12) {
        return std::max(r, 1e-12);  // the radius must be strictly positive
      }
    }
    return std::max(abs_pts.back().first, 1e-12);
  }
  double hi = std::fabs(par_a_) + std::fabs(par_b_) + 1.0;
  while (cdf_abs(hi) < 0.5) {
    hi *= 2.0;
  }
  double lo = 0.0;
  while (hi - lo > 1e-9 * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    (cdf_abs(mid) >= 0.5 ? hi : lo) = mid;
  }
  return std::max(hi, 1e-12);
}

double SourceDistribution::support_radius() const {
  switch (kind_) {
    case Kind::atoms: {
      double r = 0.0;
      for (const auto& [x, w] : atoms_) {
        r = std::max(r, std::fabs(x));
      }
      return r;
    }
    case Kind::sample: {
      double r = 0.0;
      for (double x : sample_) {
        r = std::max(r, std::fabs(x));
      }
      return r;
    }
    case Kind::parametric:
      break;
  }
  if (family_ == Family::gaussian) {
    return std::fabs(par_a_) + 8.5 * par_b_;
  }
  if (family_ == Family::cauchy) {
    return std::fabs(par_a_) + par_b_ * std::tan(M_PI * (0.5 - 1e-12));
  }
  return std::max(std::fabs(par_a_), std::fabs(par_b_));
}

SourceDistribution::Family SourceDistribution::family() const {
  if (kind_ != Kind::parametric) {
    throw std::logic_error("SourceDistribution: family() needs a parametric kind");
  }
  return family_;
}

double SourceDistribution::density(double x) const {
  if (kind_ != Kind::parametric) {
    throw std::logic_error("SourceDistribution: density() needs a parametric kind");
  }
  if (family_ == Family::gaussian) {
    const double z = (x - par_a_) / par_b_;
    return std::exp(-0.5 * z * z) / (par_b_ * std::sqrt(2.0 * M_PI));
  }
  if (family_ == Family::cauchy) {
    const double d = x - par_a_;
    return par_b_ / (M_PI * (d * d + par_b_ * par_b_));
  }
  return (x >= par_a_ && x <= par_b_) ? 1.0 / (par_b_ - par_a_) : 0.0;
}

double SourceDistribution::density_mode() const {
  if (kind_ != Kind::parametric) {
    throw std::logic_error(
        "SourceDistribution: density_mode() needs a parametric kind");
  }
  return family_ == Family::uniform ? 0.5 * (par_a_ + par_b_) : par_a_;
}

bool SourceDistribution::bounded_support() const {
  return kind_ != Kind::parametric || family_ == Family::uniform;
}

double SourceDistribution::density_sup_beyond(double r) const {
  if (kind_ != Kind::parametric) {
    return r > support_radius() ? 0.0 : HUGE_VAL;
  }
  if (family_ == Family::gaussian) {
    const double d = std::max(r - std::fabs(par_a_), 0.0);
    return std::exp(-0.5 * d * d / (par_b_ * par_b_)) /
           (par_b_ * std::sqrt(2.0 * M_PI));
  }
  if (family_ == Family::cauchy) {
    const double d = std::max(r - std::fabs(par_a_), 0.0);
    return par_b_ / (M_PI * (d * d + par_b_ * par_b_));
  }
  return r > support_radius() ? 0.0 : 1.0 / (par_b_ - par_a_);
}

double log_moment(const SourceDistribution& s) { return s.log_moment(); }
double median_radius(const SourceDistribution& s) { return s.median_radius(); }
double expect_over_source(const SourceDistribution& s,
                          const std::function<double(double)>& f) {
  return s.expect(f);
}

}  // namespace sas
