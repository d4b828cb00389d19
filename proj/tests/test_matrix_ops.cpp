#include <catch2/catch_amalgamated.hpp>

#include "ddsim/matrix_ops.hpp"
#include "ddsim/pauli.hpp"
#include "ddsim/rng.hpp"

using namespace ddsim;
using Catch::Approx;

namespace {
const double kSqrt2 = std::sqrt(2.0);
}

TEST_CASE("norms agree with hand values", "[matrix_ops]") {
  SECTION("pauli x") {
    Mat sx = sigma(Axis::X);
    CHECK(op_norm(sx) == Approx(1.0).margin(1e-14));
    CHECK(norm(sx, NormKind::Frobenius) == Approx(kSqrt2).margin(1e-14));
    CHECK(trace_norm(sx) == Approx(2.0).margin(1e-14));
  }
  SECTION("non-normal 2x2, singular values 1 +- sqrt(2)") {
    Mat a(2, 2);
    a << 1, 2, 0, 1;
    CHECK(op_norm(a) == Approx(1.0 + kSqrt2).margin(1e-12));
    CHECK(norm(a, NormKind::Frobenius) == Approx(std::sqrt(6.0)).margin(1e-12));
    CHECK(trace_norm(a) == Approx(2.0 * kSqrt2).margin(1e-12));
  }
  SECTION("rank-one projector-like") {
    Mat a = Mat::Zero(2, 2);
    a(0, 1) = 1.0;
    CHECK(op_norm(a) == Approx(1.0).margin(1e-14));
    CHECK(trace_norm(a) == Approx(1.0).margin(1e-14));
  }
}

TEST_CASE("norm inequalities on random draws", "[matrix_ops]") {
  for (int t = 0; t < 8; ++t) {
    Mat a = random_matrix(4, 100 + t);
    Mat b = random_matrix(4, 200 + t);
    Mat u = random_unitary(4, 300 + t);
    CHECK(op_norm(a) <= norm(a, NormKind::Frobenius) + 1e-12);
    CHECK(norm(a, NormKind::Frobenius) <= trace_norm(a) + 1e-12);
    for (auto kind : {NormKind::Operator, NormKind::Frobenius, NormKind::Trace}) {
      CHECK(norm(Mat(a + b), kind) <= norm(a, kind) + norm(b, kind) + 1e-12);
      CHECK(norm(Mat(u * a), kind) == Approx(norm(a, kind)).margin(1e-10));
    }
    CHECK(op_norm(Mat(a * b)) <= op_norm(a) * op_norm(b) + 1e-12);
  }
}

TEST_CASE("tensor product layout and norms", "[matrix_ops]") {
  Mat sx = sigma(Axis::X), sz = sigma(Axis::Z);
  Mat t = tensor(sx, sz);
  REQUIRE(t.rows() == 4);
  // row index = 2*i1 + i2, left factor varies slowest
  CHECK(t(0, 2) == cplx(1, 0));
  CHECK(t(1, 3) == cplx(-1, 0));
  CHECK(t(2, 0) == cplx(1, 0));
  CHECK(std::abs(t(0, 1)) == 0.0);

  Mat a = random_matrix(3, 7), b = random_matrix(2, 8);
  CHECK(op_norm(tensor(a, b)) == Approx(op_norm(a) * op_norm(b)).margin(1e-10));
  CHECK(norm(tensor(a, b), NormKind::Frobenius) ==
        Approx(norm(a, NormKind::Frobenius) * norm(b, NormKind::Frobenius)).margin(1e-10));
}

TEST_CASE("partial trace over the bath factor", "[matrix_ops]") {
  SECTION("product operator reduces to tr(b) * a") {
    Mat a = random_matrix(3, 11), b = random_matrix(4, 12);
    Mat red = partial_trace_bath(tensor(a, b), 4);
    CHECK(op_norm(Mat(red - b.trace() * a)) <= 1e-12);
  }
  SECTION("bell state reduces to the maximally mixed qubit") {
    Mat rho = Mat::Zero(4, 4);
    rho(0, 0) = rho(0, 3) = rho(3, 0) = rho(3, 3) = 0.5;
    Mat red = partial_trace_bath(rho, 2);
    CHECK(op_norm(Mat(red - 0.5 * eye(2))) <= 1e-14);
  }
  SECTION("dimension must divide") {
    CHECK_THROWS_AS(partial_trace_bath(random_matrix(6, 1), 4), std::invalid_argument);
  }
}

TEST_CASE("partial trace norm factors", "[matrix_ops]") {
  CHECK(partial_trace_norm_factor(NormKind::Trace, 5) == Approx(1.0));
  CHECK(partial_trace_norm_factor(NormKind::Frobenius, 4) == Approx(2.0));
  CHECK(partial_trace_norm_factor(NormKind::Operator, 4) == Approx(4.0));

  // contraction on random input, equality on a (x) identity
  for (Eigen::Index db : {2, 3}) {
    Mat x = random_matrix(3 * db, 40 + db);
    Mat a = random_matrix(3, 50 + db);
    Mat sat = tensor(a, eye(db));
    for (auto kind : {NormKind::Operator, NormKind::Frobenius, NormKind::Trace}) {
      const double f = partial_trace_norm_factor(kind, db);
      CHECK(norm(partial_trace_bath(x, db), kind) <= f * norm(x, kind) + 1e-10);
      CHECK(norm(partial_trace_bath(sat, db), kind) ==
            Approx(f * norm(sat, kind)).margin(1e-9));
    }
  }
}

TEST_CASE("commutator and hermitize", "[matrix_ops]") {
  Mat sx = sigma(Axis::X), sy = sigma(Axis::Y), sz = sigma(Axis::Z);
  CHECK(op_norm(Mat(commutator(sx, sy) - cplx(0, 2) * sz)) <= 1e-14);
  CHECK(op_norm(Mat(commutator(sx, sx))) <= 1e-14);

  Mat up = Mat::Zero(2, 2);
  up(0, 1) = 2.0;
  CHECK(op_norm(Mat(hermitize(up) - sx)) <= 1e-14);
  CHECK(hermiticity_defect(sx) <= 1e-15);
  CHECK(hermiticity_defect(up) == Approx(2.0).margin(1e-12));
}

TEST_CASE("unitarity defect", "[matrix_ops]") {
  CHECK(unitarity_defect(sigma(Axis::Y)) <= 1e-14);
  CHECK(unitarity_defect(Mat(0.5 * eye(2))) == Approx(0.75).margin(1e-14));
}

TEST_CASE("distance modulo global phase", "[matrix_ops]") {
  Mat sx = sigma(Axis::X);
  CHECK(phase_dist(sx, Mat(cplx(0, 1) * sx)) <= 1e-12);
  CHECK(phase_dist(sx, Mat(std::exp(cplx(0, 0.7)) * sx)) <= 1e-12);
  CHECK(phase_dist(sx, sigma(Axis::Z)) == Approx(kSqrt2).margin(1e-12));
}

TEST_CASE("square input enforced", "[matrix_ops]") {
  Mat bad = Mat::Zero(2, 3);
  CHECK_THROWS_AS(op_norm(bad), std::invalid_argument);
}
