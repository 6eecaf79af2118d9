#include "twinfock/interference_models.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "twinfock/error.hpp"
#include "twinfock/metrology.hpp"
#include "twinfock/projection.hpp"

using namespace twinfock;
using std::numbers::pi;

TEST(P4Model, IndistinguishablePairsReduceToIdealProjection) {
  for (int i = 0; i < 1000; ++i) {
    const double phi = -pi + 2 * pi * i / 999.0;
    const double ideal = 0.75 * std::cos(2 * phi) + 0.25;
    EXPECT_NEAR(p4_model(1.0, phi), ideal * ideal, 1e-12) << phi;
    EXPECT_NEAR(p4_model(1.0, phi), projection_closed_form(2, phi), 1e-12) << phi;
  }
}

TEST(P2Model, FullVisibilityIsCosSquared) {
  for (int i = 0; i < 1000; ++i) {
    const double phi = -pi + 2 * pi * i / 999.0;
    EXPECT_NEAR(p2_model(1.0, phi), std::cos(phi) * std::cos(phi), 1e-12);
    EXPECT_NEAR(p2_model(1.0, phi), projection_closed_form(1, phi), 1e-12);
  }
}

TEST(Models, RangeSymmetryAndPeriod) {
  for (double theta : {0.0, 0.3, 0.93, 0.953, 1.0}) {
    for (double phi = -4.0; phi <= 4.0; phi += 0.0371) {
      for (double p : {p2_model(theta, phi), p4_model(theta, phi)}) {
        EXPECT_GE(p, 0.0);
        EXPECT_LE(p, 1.0);
      }
      EXPECT_NEAR(p2_model(theta, phi), p2_model(theta, -phi), 1e-15);
      EXPECT_NEAR(p4_model(theta, phi), p4_model(theta, -phi), 1e-15);
      EXPECT_NEAR(p2_model(theta, phi), p2_model(theta, phi + pi), 1e-12);
      EXPECT_NEAR(p4_model(theta, phi), p4_model(theta, phi + pi), 1e-12);
    }
    EXPECT_DOUBLE_EQ(p2_model(theta, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(p4_model(theta, 0.0), 1.0);
  }
}

TEST(Models, ComplementIsAccurateNearTheOrigin) {
  const double phi = 1e-9;
  // 1 - P2 ~ 2V phi^2/(1+V); 1 - P4 ~ 2 phi^2 (1+2r)/(1+r) at small phi
  EXPECT_NEAR(p2_jet(0.953, phi).complement / (2 * 0.953 * phi * phi / 1.953), 1.0, 1e-9);
  EXPECT_NEAR(p4_jet(0.93, phi).complement / (2 * phi * phi * 2.86 / 1.93), 1.0, 1e-9);
}

TEST(Models, ParameterDerivativesMatchFiniteDifference) {
  const double h = 1e-6;
  for (double theta : {0.1, 0.5, 0.93}) {
    for (double phi = 0.0; phi <= pi; phi += 0.1) {
      EXPECT_NEAR(p2_parameter_derivative(theta, phi),
                  (p2_model(theta + h, phi) - p2_model(theta - h, phi)) / (2 * h), 1e-8);
      EXPECT_NEAR(p4_parameter_derivative(theta, phi),
                  (p4_model(theta + h, phi) - p4_model(theta - h, phi)) / (2 * h), 1e-8);
    }
  }
}

TEST(Models, PhaseUncertaintyAtOrigin) {
  const double two = phase_uncertainty(DetectionModel::two_photon(0.953), 0.0).delta_phi;
  EXPECT_NEAR(two, 0.5 * std::sqrt(1.953 / (2 * 0.953)), 1e-12);
  EXPECT_NEAR(two, 0.506, 0.001);
  EXPECT_LT(two, limits(2).sql);
  EXPECT_NEAR(phase_uncertainty(DetectionModel::four_photon(0.0), 0.0).delta_phi, 0.3536, 1e-4);
  EXPECT_NEAR(phase_uncertainty(DetectionModel::four_photon(0.93), 0.0).delta_phi, 0.2904, 1e-4);
}

TEST(Models, FourPhotonPrecisionImprovesWithIndistinguishability) {
  double previous = 1.0;
  for (int i = 0; i <= 20; ++i) {
    const double r = i / 20.0;
    const double d = phase_uncertainty(DetectionModel::four_photon(r), 0.0).delta_phi;
    EXPECT_LT(d, previous);
    previous = d;
  }
  EXPECT_NEAR(previous, 1.0 / std::sqrt(12.0), 1e-9);
}

TEST(Models, ParameterOutOfRange) {
  EXPECT_THROW(p2_model(-0.01, 0.0), DomainError);
  EXPECT_THROW(p2_model(1.01, 0.0), DomainError);
  EXPECT_THROW(p4_model(-0.01, 0.0), DomainError);
  EXPECT_THROW(p4_model(1.01, 0.0), DomainError);
  EXPECT_THROW(p4_model(0.5, std::nan("")), DomainError);
}
