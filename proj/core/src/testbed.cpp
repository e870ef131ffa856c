#include "saddlescape/testbed.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "saddlescape/sampling.hpp"
#include "saddlescape/verify.hpp"

namespace saddlescape {

namespace {

constexpr double kPi = std::numbers::pi;

Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

Box square(int n, double half) {
  return Box{Vec::Constant(n, -half), Vec::Constant(n, half)};
}

class AdditiveNoiseOracle : public StochasticOracle {
 public:
  AdditiveNoiseOracle(std::shared_ptr<const GradientOracle> base, double sigma)
      : base_(std::move(base)), sigma_(sigma) {}

  int dim() const override { return base_->dim(); }
  Vec sample(const Vec& x, RngStream& rng) const override {
    return base_->grad(x) + gaussian_sample(dim(), sigma_ * sigma_, rng);
  }
  Vec mean_grad(const Vec& x) const override { return base_->grad(x); }
  double value(const Vec& x) const override { return base_->eval(x); }
  double sigma() const override { return sigma_; }
  double ell_tilde() const override { return base_->spec().ell; }
  SmoothnessSpec spec() const override { return base_->spec(); }

  // The mean of m i.i.d. N(0, sigma^2 I) draws is N(0, sigma^2/m I); draw it once.
  Vec minibatch_mean(const Vec& x, std::int64_t m, const RngStream& base) const override {
    if (m < 1) throw ParameterError("minibatch size must be >= 1");
    RngStream s = base.substream(0);
    const double var = sigma_ * sigma_ / static_cast<double>(m);
    return base_->grad(x) + gaussian_sample(dim(), var, s);
  }

  // Shared theta cancels exactly in the paired difference.
  Vec minibatch_difference(const Vec& x0, const Vec& y, std::int64_t m,
                           const RngStream&) const override {
    if (m < 1) throw ParameterError("minibatch size must be >= 1");
    return base_->grad(x0 + y) - base_->grad(x0);
  }

 private:
  std::shared_ptr<const GradientOracle> base_;
  double sigma_;
};

class FiniteSumOracle : public StochasticOracle {
 public:
  FiniteSumOracle(std::shared_ptr<const GradientOracle> base, std::vector<Mat> a,
                  std::vector<Vec> b, double sigma, double ell_tilde)
      : base_(std::move(base)), a_(std::move(a)), b_(std::move(b)), sigma_(sigma),
        ell_tilde_(ell_tilde) {}

  int dim() const override { return base_->dim(); }
  Vec sample(const Vec& x, RngStream& rng) const override {
    const auto i = static_cast<std::size_t>(rng.next_u64() % a_.size());
    return base_->grad(x) + a_[i] * x + b_[i];
  }
  Vec mean_grad(const Vec& x) const override { return base_->grad(x); }
  double value(const Vec& x) const override { return base_->eval(x); }
  double sigma() const override { return sigma_; }
  double ell_tilde() const override { return ell_tilde_; }
  SmoothnessSpec spec() const override { return base_->spec(); }

 private:
  std::shared_ptr<const GradientOracle> base_;
  std::vector<Mat> a_;
  std::vector<Vec> b_;
  double sigma_;
  double ell_tilde_;
};

}  // namespace

AnalyticOracle::AnalyticOracle(int n, ValueFn f, GradFn g, SmoothnessSpec spec)
    : n_(n), f_(std::move(f)), g_(std::move(g)), spec_(spec) {
  if (n < 1) throw ParameterError("dimension must be >= 1");
  spec_.validate();
}

bool Box::contains(const Vec& x) const {
  return x.size() == lo.size() && (x.array() >= lo.array()).all() &&
         (x.array() <= hi.array()).all();
}

Vec Box::sample(RngStream& rng) const {
  Vec x(lo.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = lo[i] + (hi[i] - lo[i]) * rng.uniform();
  return x;
}

double Box::max_norm() const { return lo.cwiseAbs().cwiseMax(hi.cwiseAbs()).norm(); }

Landscape make_quartic() {
  Landscape L;
  L.id = "quartic";
  // Hessian diag(3 x1^2/4 - 1, 9/4): |.| <= 5.75 and the third derivative 3 x1/2 <= 4.5 on the box.
  L.oracle = std::make_shared<AnalyticOracle>(
      2,
      [](const Vec& x) {
        const double a = x[0] * x[0];
        return a * a / 16.0 - a / 2.0 + 9.0 / 8.0 * x[1] * x[1];
      },
      [](const Vec& x) { return vec2(x[0] * x[0] * x[0] / 4.0 - x[0], 9.0 / 4.0 * x[1]); },
      SmoothnessSpec{5.75, 4.5});
  L.saddles.push_back({vec2(0, 0), -1.0, vec2(1, 0)});
  L.minima.push_back({vec2(-2, 0), -1.0});
  L.minima.push_back({vec2(2, 0), -1.0});
  L.box = square(2, 3.0);
  L.notes = "box [-3,3]^2: ell = max(|3x1^2/4 - 1|, 9/4) = 5.75, rho = max 3|x1|/2 = 4.5";
  L.ncf_ell = 5.75;
  L.delta_f = 1.0;
  return L;
}

Landscape make_cubic_stochastic() {
  Landscape L;
  L.id = "cubic";
  L.oracle = std::make_shared<AnalyticOracle>(
      2,
      [](const Vec& x) {
        const double q = x[0] * x[0] + x[1] * x[1];
        return (x[0] * x[0] * x[0] - x[1] * x[1] * x[1]) / 2.0 - 3.0 * x[0] * x[1] + q * q / 2.0;
      },
      [](const Vec& x) {
        const double q = x[0] * x[0] + x[1] * x[1];
        return vec2(1.5 * x[0] * x[0] - 3.0 * x[1] + 2.0 * x[0] * q,
                    -1.5 * x[1] * x[1] - 3.0 * x[0] + 2.0 * x[1] * q);
      },
      SmoothnessSpec{35.0, 28.0});
  const double s = 1.0 / std::sqrt(2.0);
  L.saddles.push_back({vec2(0, 0), -3.0, vec2(s, s)});
  const double a = 0.72335165185120516;
  const double b = 1.1332042263636685;
  const double fmin = -1.3641479081703342;
  L.minima.push_back({vec2(a, b), fmin});
  L.minima.push_back({vec2(-b, -a), fmin});
  L.box = square(2, 1.5);
  L.notes =
      "box [-1.5,1.5]^2: Hessian spectral radius peaks at the corners (34.5) -> ell = 35; "
      "third-derivative operator norm <= 27.6 -> rho = 28";
  L.ncf_ell = 4.0;
  L.delta_f = -fmin;
  return L;
}

Landscape make_triangle() {
  Landscape L;
  L.id = "triangle";
  L.oracle = std::make_shared<AnalyticOracle>(
      2,
      [](const Vec& x) {
        const double u = x[1] + (std::cos(2.0 * kPi * x[0]) - 1.0) / 2.0;
        return 0.5 * std::cos(kPi * x[0]) + 0.5 * u * u - 0.5;
      },
      [](const Vec& x) {
        const double u = x[1] + (std::cos(2.0 * kPi * x[0]) - 1.0) / 2.0;
        return vec2(-0.5 * kPi * std::sin(kPi * x[0]) - u * kPi * std::sin(2.0 * kPi * x[0]), u);
      },
      SmoothnessSpec{50.0, 340.0});
  L.saddles.push_back({vec2(0, 0), -kPi * kPi / 2.0, vec2(1, 0)});
  L.minima.push_back({vec2(-1, 0), -1.0});
  L.minima.push_back({vec2(1, 0), -1.0});
  L.box = square(2, 1.5);
  L.notes = "box [-1.5,1.5]^2: grid bound 49.35 on the Hessian -> ell = 50; 335.7 -> rho = 340";
  L.ncf_ell = 6.0;
  L.delta_f = 1.0;
  return L;
}

Landscape make_exponential() {
  Landscape L;
  L.id = "exponential";
  L.oracle = std::make_shared<AnalyticOracle>(
      2,
      [](const Vec& x) {
        const double a = x[0] * x[0];
        const double s = std::exp(-a);
        const double w = x[1] - a * s;
        return s / (1.0 + s) + 0.5 * w * w - 1.0;
      },
      [](const Vec& x) {
        const double a = x[0] * x[0];
        const double s = std::exp(-a);
        const double w = x[1] - a * s;
        const double g1 = -2.0 * x[0] * s / ((1.0 + s) * (1.0 + s)) -
                          w * 2.0 * x[0] * s * (1.0 - a);
        return vec2(g1, w);
      },
      SmoothnessSpec{6.6, 20.0});
  L.saddles.push_back({vec2(0, 0), -0.5, vec2(1, 0)});
  L.box = square(2, 3.0);
  L.notes =
      "box [-3,3]^2: grid bound 6.5 on the Hessian -> ell = 6.6; 19.44 -> rho = 20; "
      "infimum -1 is approached only as |x1| grows, so no interior minimum is listed";
  L.ncf_ell = 1.5;
  L.delta_f = 0.5;
  return L;
}

Landscape make_highdim(int n, double eps_h) {
  if (n < 2) throw ParameterError("highdim needs n >= 2");
  if (!(eps_h > 0.0)) throw ParameterError("eps_h must be positive");
  Landscape L;
  std::ostringstream id;
  id << "highdim-n" << n << "-eps" << eps_h;
  L.id = id.str();
  const double ell = std::max({1.0, eps_h, 6.75 - eps_h});
  L.oracle = std::make_shared<AnalyticOracle>(
      n,
      [eps_h](const Vec& x) {
        const double a = x[0] * x[0];
        return 0.5 * (x.squaredNorm() - (1.0 + eps_h) * a) + a * a / 16.0;
      },
      [eps_h](const Vec& x) {
        Vec g = x;
        g[0] = -eps_h * x[0] + x[0] * x[0] * x[0] / 4.0;
        return g;
      },
      SmoothnessSpec{ell, 4.5});
  Vec e1 = Vec::Zero(n);
  e1[0] = 1.0;
  L.saddles.push_back({Vec::Zero(n), -eps_h, e1});
  const double xm = 2.0 * std::sqrt(eps_h);
  L.minima.push_back({-xm * e1, -eps_h * eps_h});
  L.minima.push_back({xm * e1, -eps_h * eps_h});
  L.box = square(n, 3.0);
  L.notes = "box [-3,3]^n: Hessian diag(3x1^2/4 - eps_h, 1, ..., 1) -> ell = max(1, 6.75 - eps_h), rho = 4.5";
  L.ncf_ell = ell;
  L.delta_f = eps_h * eps_h;
  return L;
}

std::shared_ptr<const StochasticOracle> with_noise(const Landscape& land, double sigma) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw ParameterError("sigma must be >= 0");
  return std::make_shared<AdditiveNoiseOracle>(land.oracle, sigma);
}

std::shared_ptr<const StochasticOracle> with_finite_sum_noise(const Landscape& land,
                                                              int components, double scale,
                                                              std::uint64_t seed) {
  if (components < 2) throw ParameterError("finite-sum noise needs >= 2 components");
  if (!(scale >= 0.0)) throw ParameterError("scale must be >= 0");
  const int n = land.oracle->dim();
  RngStream rng(seed, 0);
  std::vector<Mat> a(static_cast<std::size_t>(components));
  std::vector<Vec> b(static_cast<std::size_t>(components));
  Mat a_mean = Mat::Zero(n, n);
  Vec b_mean = Vec::Zero(n);
  for (int i = 0; i < components; ++i) {
    Mat m(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) m(r, c) = rng.normal();
    a[i] = scale / std::sqrt(static_cast<double>(n)) * 0.5 * (m + m.transpose());
    b[i] = scale * gaussian_sample(n, 1.0, rng);
    a_mean += a[i];
    b_mean += b[i];
  }
  a_mean /= components;
  b_mean /= components;
  double a_norm = 0.0;
  double sigma = 0.0;
  const double radius = land.box.max_norm();
  for (int i = 0; i < components; ++i) {
    a[i] -= a_mean;
    b[i] -= b_mean;
    Eigen::SelfAdjointEigenSolver<Mat> es(a[i], Eigen::EigenvaluesOnly);
    const double op = es.eigenvalues().cwiseAbs().maxCoeff();
    a_norm = std::max(a_norm, op);
    sigma = std::max(sigma, op * radius + b[i].norm());
  }
  return std::make_shared<FiniteSumOracle>(land.oracle, std::move(a), std::move(b), sigma,
                                           land.oracle->spec().ell + a_norm);
}

std::vector<std::string> landscape_ids() {
  return {"quartic", "cubic", "triangle", "exponential", "highdim"};
}

Landscape make_landscape(std::string_view id, int dim, double eps_h) {
  if (id == "quartic") return make_quartic();
  if (id == "cubic" || id == "cubic-stochastic") return make_cubic_stochastic();
  if (id == "triangle") return make_triangle();
  if (id == "exponential") return make_exponential();
  if (id == "highdim") return make_highdim(dim, eps_h);
  throw ParameterError("unknown landscape id '" + std::string(id) + "'");
}

bool CertificationReport::passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

CertificationReport certify_landscape(const Landscape& land, std::uint64_t seed, int points) {
  CertificationReport rep;
  rep.id = land.id;
  const GradientOracle& f = *land.oracle;
  const SmoothnessSpec spec = f.spec();
  const int n = f.dim();
  const bool dense_ok = n <= kDenseCap;
  RngStream rng(seed, 0);

  auto add = [&](std::string name, bool ok, double value, double limit) {
    std::ostringstream d;
    d.precision(6);
    d << "value=" << value << " limit=" << limit;
    rep.checks.push_back({std::move(name), ok, d.str()});
  };

  double worst_fd = 0.0;
  double worst_lip = 0.0;
  double worst_spec = 0.0;
  for (int k = 0; k < points; ++k) {
    const Vec a = land.box.sample(rng);
    const Vec b = land.box.sample(rng);
    worst_fd = std::max(worst_fd, fd_gradient_rel_error(f, a));
    worst_lip = std::max(worst_lip, (f.grad(a) - f.grad(b)).norm() / (a - b).norm());
    if (dense_ok) {
      const Mat H = fd_hessian(f, a, default_fd_step(a));
      Eigen::SelfAdjointEigenSolver<Mat> es(H, Eigen::EigenvaluesOnly);
      worst_spec = std::max(worst_spec, es.eigenvalues().cwiseAbs().maxCoeff());
    } else {
      Vec u = gaussian_sample(n, 1.0, rng);
      u.normalize();
      worst_spec = std::max(worst_spec, std::abs(fd_quadform(f, a, u, default_fd_step(a))));
    }
  }
  add("fd-gradient", worst_fd <= 1e-5, worst_fd, 1e-5);
  add("gradient-lipschitz", worst_lip <= spec.ell * (1.0 + 1e-9), worst_lip, spec.ell);
  add("ell-bounds-spectrum", worst_spec <= spec.ell * 1.001, worst_spec, spec.ell * 1.001);

  for (std::size_t i = 0; i < land.saddles.size(); ++i) {
    const auto& s = land.saddles[i];
    const std::string tag = "saddle[" + std::to_string(i) + "]";
    const double gn = f.grad(s.point).norm();
    add(tag + " gradient", gn <= 1e-10, gn, 1e-10);
    double lam = 0.0;
    if (dense_ok) {
      lam = dense_hessian_eig(f, s.point).lambda_min_est;
    } else {
      lam = fd_quadform(f, s.point, s.eigvec, default_fd_step(s.point));
    }
    rep.saddle_lambdas.push_back(lam);
    add(tag + " lambda_min", std::abs(lam - s.lambda_min) <= 1e-3, lam, s.lambda_min);
    RngStream prng = rng.split();
    const double gp = grad_power_lambda_min(f, s.point, 500, prng).lambda_min_est;
    add(tag + " grad-power agreement", std::abs(gp - lam) <= 0.05 * spec.ell, gp, lam);
  }
  for (std::size_t i = 0; i < land.minima.size(); ++i) {
    const auto& m = land.minima[i];
    const std::string tag = "minimum[" + std::to_string(i) + "]";
    const double gn = f.grad(m.point).norm();
    add(tag + " gradient", gn <= 1e-10, gn, 1e-10);
    const double fv = f.eval(m.point);
    add(tag + " value", std::abs(fv - m.f) <= 1e-9 * std::max(1.0, std::abs(m.f)), fv, m.f);
    double lam = 0.0;
    if (dense_ok) {
      lam = dense_hessian_eig(f, m.point).lambda_min_est;
    } else {
      lam = std::numeric_limits<double>::infinity();
      for (int j = 0; j < n; ++j) {
        Vec e = Vec::Zero(n);
        e[j] = 1.0;
        lam = std::min(lam, fd_quadform(f, m.point, e, default_fd_step(m.point)));
      }
    }
    add(tag + " lambda_min", lam >= -1e-6, lam, -1e-6);
  }
  return rep;
}

}  // namespace saddlescape
