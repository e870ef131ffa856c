#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "saddlescape/verify.hpp"
#include "test_util.hpp"

using namespace saddlescape;

TEST(Verify, DenseHessianOfQuadraticIsExact) {
  const Mat H = testutil::mixed_hessian(5);
  const auto f = testutil::quadratic(H);
  const Vec x = Vec::LinSpaced(5, -1.0, 1.0);
  EXPECT_LE((fd_hessian(*f, x, 1e-3) - H).norm(), 1e-10);
  const CurvatureReport rep = dense_hessian_eig(*f, x);
  EXPECT_NEAR(rep.lambda_min_est, -1.0, 1e-8);
  ASSERT_TRUE(rep.spectrum.has_value());
  EXPECT_EQ(rep.spectrum->size(), 5);
  EXPECT_NEAR(rep.quad_form, rep.lambda_min_est, 1e-9);
  Eigen::Index imax = 0;
  rep.eigvec_est.cwiseAbs().maxCoeff(&imax);
  EXPECT_GT(rep.eigvec_est[imax], 0.0);
}

TEST(Verify, DenseCapIsEnforced) {
  const Landscape hd = make_highdim(300, 1.0);
  EXPECT_THROW(dense_hessian_eig(hd.f(), Vec::Zero(300)), ParameterError);
}

TEST(Verify, QuadformMatchesAnalytic) {
  const Landscape q = make_quartic();
  Vec e(2);
  e << 0.6, 0.8;
  // H(0) = diag(-1, 9/4)
  EXPECT_NEAR(fd_quadform(q.f(), Vec::Zero(2), e, 1e-4), 0.36 * -1.0 + 0.64 * 2.25, 1e-8);
  EXPECT_THROW(fd_quadform(q.f(), Vec::Zero(2), Vec::Ones(2), 1e-4), ParameterError);
}

TEST(Verify, ClassifySaddleAndMinimum) {
  const Landscape q = make_quartic();
  const StationarityVerdict s = classify(q.f(), q.saddles[0].point, 0.01);
  EXPECT_TRUE(s.grad_ok);
  EXPECT_FALSE(s.curv_ok);
  EXPECT_FALSE(s.is_sosp);
  const StationarityVerdict m = classify(q.f(), q.minima[0].point, 0.01);
  EXPECT_TRUE(m.is_sosp);
  EXPECT_NEAR(m.tol_curv, 10.0 * 4.5 * default_fd_step(q.minima[0].point), 1e-15);
}

TEST(Verify, GradPowerAgreesWithDense) {
  for (const auto& land : {make_quartic(), make_cubic_stochastic(), make_triangle()}) {
    RngStream rng(6, 0);
    const Vec x = land.saddles[0].point;
    const CurvatureReport gp = grad_power_lambda_min(land.f(), x, 2000, rng);
    const CurvatureReport dn = dense_hessian_eig(land.f(), x);
    EXPECT_NEAR(gp.lambda_min_est, dn.lambda_min_est, 1e-3) << land.id;
    EXPECT_EQ(gp.method, CurvatureMethod::kGradPower);
  }
}

TEST(Verify, FdGradientErrorDetectsWrongGradient) {
  const Landscape q = make_quartic();
  EXPECT_LE(fd_gradient_rel_error(q.f(), Vec::Constant(2, 0.7)), 1e-8);
  AnalyticOracle bad(
      2, [](const Vec& x) { return x.squaredNorm(); }, [](const Vec& x) -> Vec { return x; },
      SmoothnessSpec{2, 1});
  EXPECT_GT(fd_gradient_rel_error(bad, Vec::Constant(2, 0.7)), 0.1);
}

TEST(Verify, MethodNames) {
  EXPECT_EQ(to_string(CurvatureMethod::kFdDense), "fd-dense");
  EXPECT_EQ(to_string(CurvatureMethod::kFdQuadform), "fd-quadform");
  EXPECT_EQ(to_string(CurvatureMethod::kGradPower), "grad-power");
}
