#include <gtest/gtest.h>

#include <random>

#include "hexstab/errors.hpp"
#include "hexstab/material.hpp"
#include "oracles.hpp"

using namespace hexstab;

namespace {

// F = I + scale * random, C = F^T F.
CauchyGreenVoigt random_c(std::mt19937& rng, double scale = 0.1) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat3 F = Mat3::Identity();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) F(i, j) += scale * u(rng);
  return CauchyGreenVoigt::from_tensor(F.transpose() * F);
}

CauchyGreenVoigt voigt(const Vec6& c) {
  CauchyGreenVoigt v;
  v.c = c;
  return v;
}

MaterialParams test_params() {
  return MaterialParams::from_E_nu(3.0, 0.3).with_moduli(2.0, 0.7, 0.4);
}

}  // namespace

TEST(MaterialParams, LameFromENu) {
  const MaterialParams mp = MaterialParams::from_E_nu(200e9, 0.33);
  const double lam = 200e9 * 0.33 / ((1 - 0.66) * 1.33);
  EXPECT_NEAR(mp.lambda, lam, 1e-6);
  EXPECT_NEAR(mp.lambda / 1.45953e11, 1.0, 1e-5);
  EXPECT_NEAR(mp.mu / 7.5188e10, 1.0, 1e-4);
  EXPECT_NEAR(mp.K, 200e9 / (3 * (1 - 0.66)), 1e-3);
  EXPECT_DOUBLE_EQ(mp.K1, mp.mu / 2);
  EXPECT_DOUBLE_EQ(mp.K2, mp.mu / 2);
}

TEST(MaterialParams, BenchmarkParametrization) {
  const MaterialParams a = MaterialParams::benchmark(200e9, 0.33);
  EXPECT_DOUBLE_EQ(a.K1, 200e9 / 2.66);
  EXPECT_EQ(a.K2, 0.0);
  EXPECT_DOUBLE_EQ(a.K, 200e9 / (3 * 0.67));
  const MaterialParams b =
      MaterialParams::benchmark(200e9, 0.33, BulkConvention::OneMinusTwoNu);
  EXPECT_DOUBLE_EQ(b.K, 200e9 / (3 * (1 - 0.66)));
}

TEST(MaterialParams, RejectsInvalid) {
  EXPECT_THROW(MaterialParams::from_E_nu(0.0, 0.3), std::invalid_argument);
  EXPECT_THROW(MaterialParams::from_E_nu(1.0, 0.5), std::invalid_argument);
  EXPECT_THROW(MaterialParams::from_E_nu(1.0, -0.1), std::invalid_argument);
}

TEST(DMatrix, NuZero) {
  const Mat6 D = d_matrix(MaterialParams::from_E_nu(1.0, 0.0));
  Vec6 diag;
  diag << 1, 1, 1, 0.5, 0.5, 0.5;
  EXPECT_LE((D - Mat6(diag.asDiagonal())).norm(), 1e-15);
}

TEST(DMatrix, MatchesIndependentFormulaAndIsPositive) {
  const Mat6 D = d_matrix(MaterialParams::from_E_nu(1.0, 0.3));
  EXPECT_LE(oracle::rel_err(D, oracle::isotropic_d(1.0, 0.3)), 1e-15);
  std::mt19937 rng(7);
  std::normal_distribution<double> n;
  for (int t = 0; t < 100; ++t) {
    Vec6 x;
    for (int i = 0; i < 6; ++i) x[i] = n(rng);
    EXPECT_GT(x.dot(D * x), 0.0);
  }
}

TEST(CauchyGreen, FromDeformationGradient) {
  Vec9 F;
  F << 1.1, 0.2, 0.0, -0.1, 0.9, 0.3, 0.05, 0.0, 1.2;
  const Mat3 Fm = Eigen::Map<const Eigen::Matrix<double, 3, 3, Eigen::RowMajor>>(F.data());
  const CauchyGreenVoigt C = CauchyGreenVoigt::from_deformation_gradient(F);
  EXPECT_LE((C.tensor() - Fm.transpose() * Fm).norm(), 1e-15);
  EXPECT_LE((C.c - oracle::voigt_of(Fm.transpose() * Fm)).norm(), 1e-15);
}

TEST(Invariants, Identity) {
  const InvariantSet I = invariants_and_derivatives(CauchyGreenVoigt::identity());
  EXPECT_EQ(I.v1, 3.0);
  EXPECT_EQ(I.v2, 3.0);
  EXPECT_EQ(I.v3, 1.0);
  Vec6 d3;
  d3 << 1, 1, 1, 0, 0, 0;
  EXPECT_EQ(I.d3, d3);
}

TEST(Invariants, DiagonalTensor) {
  Vec6 c;
  c << 4, 1, 1, 0, 0, 0;
  const InvariantSet I = invariants_and_derivatives(voigt(c));
  EXPECT_DOUBLE_EQ(I.v1, 6.0);
  EXPECT_DOUBLE_EQ(I.v2, 9.0);
  EXPECT_DOUBLE_EQ(I.v3, 4.0);
  Vec6 d2;
  d2 << 2, 5, 5, 0, 0, 0;
  EXPECT_EQ(I.d2, d2);
}

TEST(Invariants, NonPositiveThrows) {
  Vec6 c;
  c << 1, 1, -1, 0, 0, 0;
  EXPECT_THROW(invariants_and_derivatives(voigt(c)), NonPositiveDefinite);
}

TEST(Invariants, DerivativesMatchFiniteDifferences) {
  std::mt19937 rng(8);
  const double h = 1e-6;
  for (int t = 0; t < 100; ++t) {
    const Vec6 c = random_c(rng, 0.3).c;
    const InvariantSet I = invariants_and_derivatives(voigt(c));
    const auto scalar = [](int k) {
      return [k](const Vec6& x) {
        const InvariantSet s = invariants_and_derivatives(voigt(x));
        return k == 0 ? s.v1 : k == 1 ? s.v2 : s.v3;
      };
    };
    const auto grad = [](int k) {
      return [k](const Vec6& x) -> Vec6 {
        const InvariantSet s = invariants_and_derivatives(voigt(x));
        return k == 0 ? s.d1 : k == 1 ? s.d2 : s.d3;
      };
    };
    const Vec6* d[] = {&I.d1, &I.d2, &I.d3};
    const Mat6* dd[] = {&I.dd1, &I.dd2, &I.dd3};
    for (int k = 0; k < 3; ++k) {
      EXPECT_LE(oracle::rel_err(*d[k], oracle::fd_tensor_gradient(scalar(k), c, h)), 1e-6);
      const Mat6 fd = oracle::fd_tensor_jacobian(grad(k), c, h);
      if (k == 0)
        EXPECT_EQ(dd[k]->norm(), 0.0);
      else
        EXPECT_LE(oracle::rel_err(*dd[k], fd), 1e-6) << "I" << k + 1;
    }
    EXPECT_LE(oracle::rel_err(I.dd3, I.dd3.transpose()), 1e-15);
  }
}

TEST(ModifiedInvariants, Identity) {
  const InvariantSet J = modified_invariant_derivatives(CauchyGreenVoigt::identity());
  EXPECT_NEAR(J.v1, 3.0, 1e-15);
  EXPECT_NEAR(J.v2, 3.0, 1e-15);
  EXPECT_EQ(J.v3, 1.0);
  EXPECT_LE(J.d1.norm(), 1e-15);
  EXPECT_LE(J.d2.norm(), 1e-15);
  Vec6 half;
  half << 0.5, 0.5, 0.5, 0, 0, 0;
  EXPECT_LE((J.d3 - half).norm(), 1e-15);
}

TEST(ModifiedInvariants, DilationInvariance) {
  std::mt19937 rng(9);
  for (int t = 0; t < 20; ++t) {
    const Vec6 c = random_c(rng, 0.2).c;
    const InvariantSet base = modified_invariant_derivatives(voigt(c));
    for (double alpha : {0.5, 2.0, 10.0}) {
      const InvariantSet s = modified_invariant_derivatives(voigt(alpha * c));
      EXPECT_NEAR(s.v1 / base.v1, 1.0, 1e-12);
      EXPECT_NEAR(s.v2 / base.v2, 1.0, 1e-12);
    }
  }
  Vec6 c4;
  c4 << 4, 4, 4, 0, 0, 0;
  const InvariantSet s = modified_invariant_derivatives(voigt(c4));
  EXPECT_NEAR(s.v1, 3.0, 1e-14);
  EXPECT_NEAR(s.v2, 3.0, 1e-14);
  EXPECT_NEAR(s.v3, 8.0, 1e-14);
}

TEST(ModifiedInvariants, DerivativesMatchFiniteDifferences) {
  std::mt19937 rng(10);
  const double h = 1e-6;
  for (int t = 0; t < 100; ++t) {
    const Vec6 c = random_c(rng, 0.3).c;
    const InvariantSet J = modified_invariant_derivatives(voigt(c));
    const Vec6* d[] = {&J.d1, &J.d2, &J.d3};
    const Mat6* dd[] = {&J.dd1, &J.dd2, &J.dd3};
    for (int k = 0; k < 3; ++k) {
      const auto value = [k](const Vec6& x) {
        const InvariantSet s = modified_invariant_derivatives(voigt(x));
        return k == 0 ? s.v1 : k == 1 ? s.v2 : s.v3;
      };
      const auto grad = [k](const Vec6& x) -> Vec6 {
        const InvariantSet s = modified_invariant_derivatives(voigt(x));
        return k == 0 ? s.d1 : k == 1 ? s.d2 : s.d3;
      };
      EXPECT_LE(oracle::rel_err(*d[k], oracle::fd_tensor_gradient(value, c, h)), 1e-5);
      EXPECT_LE(oracle::rel_err(*dd[k], oracle::fd_tensor_jacobian(grad, c, h)), 1e-5)
          << "J" << k + 1;
    }
  }
}

TEST(StressTangent, StressFreeReference) {
  const MaterialParams mp = MaterialParams::benchmark(200e9, 0.33);
  const StressTangentSplit st = stress_and_tangent(CauchyGreenVoigt::identity(), mp);
  EXPECT_LE(st.S_iso.norm(), 1e-14 * mp.K);
  EXPECT_LE(st.S_vol.norm(), 1e-14 * mp.K);
}

TEST(StressTangent, PureDilation) {
  const MaterialParams mp = MaterialParams::from_E_nu(1.0, 0.3).with_moduli(2.0, 0.5, 0.0);
  Vec6 c;
  c << 1.3, 1.3, 1.3, 0, 0, 0;
  const StressTangentSplit st = stress_and_tangent(voigt(c), mp);
  EXPECT_LE(st.S_iso.norm(), 1e-15);
  EXPECT_GT(st.S_vol[0], 0.0);
  EXPECT_DOUBLE_EQ(st.S_vol[0], st.S_vol[1]);
  EXPECT_DOUBLE_EQ(st.S_vol[0], st.S_vol[2]);
  EXPECT_EQ(st.S_vol.tail<3>().norm(), 0.0);
}

TEST(StressTangent, LinearizationAtReferenceIsIsotropic) {
  // K1 = mu/2, K2 = 0 and K = lambda + 2mu/3 reproduce D at C = I.
  const MaterialParams base = MaterialParams::from_E_nu(1.0, 0.3);
  const MaterialParams mp =
      base.with_moduli(base.lambda + 2.0 * base.mu / 3.0, base.mu / 2.0, 0.0);
  const StressTangentSplit st = stress_and_tangent(CauchyGreenVoigt::identity(), mp);
  EXPECT_LE(oracle::rel_err(st.L(), oracle::isotropic_d(1.0, 0.3)), 1e-14);
}

TEST(StressTangent, EnergyConsistencyChain) {
  std::mt19937 rng(11);
  const MaterialParams mp = test_params();
  const double h = 1e-6;
  for (int t = 0; t < 100; ++t) {
    const Vec6 c = random_c(rng).c;
    const StressTangentSplit st = stress_and_tangent(voigt(c), mp);
    const Vec6 S_fd = 2.0 * oracle::fd_tensor_gradient(
                                [&](const Vec6& x) { return strain_energy_density(voigt(x), mp); },
                                c, h);
    const Mat6 L_fd = 2.0 * oracle::fd_tensor_jacobian(
                                [&](const Vec6& x) -> Vec6 { return stress_and_tangent(voigt(x), mp).S(); },
                                c, h);
    EXPECT_LE(oracle::rel_err(st.S(), S_fd), 1e-5);
    EXPECT_LE(oracle::rel_err(st.L(), L_fd), 1e-5);
    EXPECT_LE(oracle::rel_err(st.L_iso, st.L_iso.transpose()), 1e-10);
    EXPECT_LE(oracle::rel_err(st.L_vol, st.L_vol.transpose()), 1e-10);
  }
}

TEST(StressTangent, SplitPartsAreSeparatelyConsistent) {
  std::mt19937 rng(12);
  const MaterialParams mp = test_params();
  const MaterialParams iso = mp.with_moduli(0.0, mp.K1, mp.K2);
  const MaterialParams vol = mp.with_moduli(mp.K, 0.0, 0.0);
  for (int t = 0; t < 10; ++t) {
    const CauchyGreenVoigt C = random_c(rng);
    const StressTangentSplit st = stress_and_tangent(C, mp);
    const StressTangentSplit a = stress_and_tangent(C, iso);
    const StressTangentSplit b = stress_and_tangent(C, vol);
    EXPECT_LE((st.S_iso - a.S()).norm(), 1e-14);
    EXPECT_LE((st.S_vol - b.S()).norm(), 1e-14);
    EXPECT_LE((st.L_iso - a.L()).norm(), 1e-13);
    EXPECT_LE((st.L_vol - b.L()).norm(), 1e-13);
  }
}

TEST(StressTangent, NeoHookeanReduction) {
  std::mt19937 rng(13);
  const MaterialParams mp = MaterialParams::benchmark(200e9, 0.33);
  for (int t = 0; t < 10; ++t) {
    const CauchyGreenVoigt C = random_c(rng);
    const InvariantSet J = modified_invariant_derivatives(C);
    const StressTangentSplit st = stress_and_tangent(C, mp);
    EXPECT_LE(oracle::rel_err(st.S_iso, 2.0 * mp.K1 * J.d1), 1e-15);
  }
}

TEST(StrainEnergy, Values) {
  const MaterialParams mp = MaterialParams::benchmark(200e9, 0.33);
  EXPECT_EQ(strain_energy_density(CauchyGreenVoigt::identity(), mp), 0.0);
  Vec6 c;
  c << 4, 1, 1, 0, 0, 0;
  const MaterialParams k1 = mp.with_moduli(0.0, 1.0, 0.0);
  const double J1 = 6.0 * std::pow(4.0, -1.0 / 3.0);
  EXPECT_NEAR(J1, 3.77976, 1e-5);
  EXPECT_NEAR(strain_energy_density(voigt(c), k1), J1 - 3.0, 1e-14);
}

TEST(VoigtToTensor, Symmetric) {
  Vec6 v;
  v << 1, 2, 3, 4, 5, 6;
  const Mat3 T = voigt_to_tensor(v);
  EXPECT_EQ(T, oracle::tensor_of(v));
}
