#include <catch2/catch_amalgamated.hpp>

#include "ddsim/rng.hpp"
#include "ddsim/states.hpp"

using namespace ddsim;
using Catch::Approx;

namespace {

Vec basis(Eigen::Index d, Eigen::Index k) {
  Vec v = Vec::Zero(d);
  v(k) = 1.0;
  return v;
}

}  // namespace

TEST_CASE("trace distance and fidelity on pure states", "[states]") {
  DensityMatrix r0 = pure_state(basis(2, 0));
  DensityMatrix r1 = pure_state(basis(2, 1));
  Vec plus(2);
  plus << 1.0, 1.0;
  DensityMatrix rp = pure_state(plus);  // pure_state normalizes

  SECTION("orthogonal states are maximally distinguishable") {
    CHECK(trace_distance(r0, r1) == Approx(1.0).margin(1e-12));
    CHECK(fidelity(r0, r1) == Approx(0.0).margin(1e-8));
  }
  SECTION("overlap 1/sqrt(2) pair") {
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(fidelity(r0, rp) == Approx(s).margin(1e-10));
    CHECK(trace_distance(r0, rp) == Approx(s).margin(1e-10));
  }
  SECTION("identical states") {
    CHECK(trace_distance(rp, rp) <= 1e-14);
    CHECK(fidelity(rp, rp) == Approx(1.0).margin(1e-12));
  }
}

TEST_CASE("psd square root", "[states]") {
  Mat d = Mat::Zero(2, 2);
  d(0, 0) = 4.0;
  d(1, 1) = 9.0;
  Mat r = psd_sqrt(d);
  CHECK(std::abs(r(0, 0) - 2.0) <= 1e-12);
  CHECK(std::abs(r(1, 1) - 3.0) <= 1e-12);

  Mat neg = Mat::Zero(2, 2);
  neg(0, 0) = 1.0;
  neg(1, 1) = -0.5;
  CHECK_THROWS_AS(psd_sqrt(neg), std::invalid_argument);
}

TEST_CASE("density matrix validation", "[states]") {
  SECTION("trace must be one") {
    Mat half = 0.5 * eye(2);
    CHECK_NOTHROW(DensityMatrix(half));
    CHECK_THROWS_AS(DensityMatrix(Mat((0.5 + 1e-9) * eye(2))), std::invalid_argument);
  }
  SECTION("must be hermitian") {
    Mat r = 0.5 * eye(2);
    r(0, 1) = cplx(0.0, 0.3);  // without the conjugate partner
    CHECK_THROWS_AS(DensityMatrix(r), std::invalid_argument);
  }
  SECTION("must be positive") {
    Mat r = Mat::Zero(2, 2);
    r(0, 0) = 1.5;
    r(1, 1) = -0.5;
    CHECK_THROWS_AS(DensityMatrix(r), std::invalid_argument);
  }
  SECTION("maximally mixed state") {
    DensityMatrix mm = maximally_mixed(4);
    CHECK(std::abs(mm.mat().trace().real() - 1.0) <= 1e-15);
    CHECK((mm.mat() * mm.mat()).trace().real() == Approx(0.25).margin(1e-14));
  }
  SECTION("pure state rejects the zero vector") {
    CHECK_THROWS_AS(pure_state(Vec(Vec::Zero(3))), std::invalid_argument);
  }
}

TEST_CASE("random states are valid and reproducible", "[states]") {
  DensityMatrix a = random_density(4, 99);
  DensityMatrix b = random_density(4, 99);
  DensityMatrix c = random_density(4, 100);
  CHECK(op_norm(Mat(a.mat() - b.mat())) <= 1e-15);
  CHECK(op_norm(Mat(a.mat() - c.mat())) > 1e-3);
}

TEST_CASE("fidelity-distance relations on random pairs", "[states]") {
  for (int t = 0; t < 10; ++t) {
    DensityMatrix r1 = random_density(3 + (t % 3), 500 + 2 * t);
    DensityMatrix r2 = random_density(3 + (t % 3), 501 + 2 * t);
    const double dist = trace_distance(r1, r2);
    const double fid = fidelity(r1, r2);
    CHECK(dist >= -1e-12);
    CHECK(dist <= 1.0 + 1e-12);
    CHECK(fid >= -1e-12);
    CHECK(fid <= 1.0 + 1e-10);
    CHECK(1.0 - fid <= dist + 1e-9);
    CHECK(dist <= std::sqrt(std::max(0.0, 1.0 - fid * fid)) + 1e-9);
  }
}

TEST_CASE("partial trace of a product state", "[states]") {
  DensityMatrix rs = random_density(2, 31);
  DensityMatrix rb = random_density(4, 32);
  Mat red = partial_trace_bath(tensor(rs.mat(), rb.mat()), 4);
  CHECK(op_norm(Mat(red - rs.mat())) <= 1e-13);
}
