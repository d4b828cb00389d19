#include <catch2/catch_amalgamated.hpp>

#include "ddsim/hamiltonian.hpp"

using namespace ddsim;
using Catch::Approx;

TEST_CASE("single-qubit operators embed at the right slot", "[pauli]") {
  Mat z0 = pauli_on(Axis::Z, 0, 2);
  Mat z1 = pauli_on(Axis::Z, 1, 2);
  CHECK(std::abs(z0(0, 0) - 1.0) <= 1e-15);
  CHECK(std::abs(z0(1, 1) - 1.0) <= 1e-15);
  CHECK(std::abs(z0(2, 2) + 1.0) <= 1e-15);
  CHECK(std::abs(z1(1, 1) + 1.0) <= 1e-15);
  CHECK(std::abs(z1(2, 2) - 1.0) <= 1e-15);
  CHECK(op_norm(Mat(z0 * z1 - pauli_string("ZZ"))) <= 1e-15);
  CHECK_THROWS_AS(pauli_on(Axis::X, 2, 2), std::invalid_argument);
}

TEST_CASE("global pauli and string constructors agree", "[pauli]") {
  CHECK(op_norm(Mat(global_pauli(Axis::X, 3) - pauli_string("XXX"))) <= 1e-15);
  CHECK(op_norm(Mat(pauli_string("IXZ") -
                    tensor(eye(2), tensor(sigma(Axis::X), sigma(Axis::Z))))) <= 1e-15);
  CHECK_THROWS_AS(pauli_string(""), std::invalid_argument);
  CHECK_THROWS_AS(axis_from_char('q'), std::invalid_argument);
}

TEST_CASE("exchange coupling matrix", "[hamiltonian]") {
  Mat h = heisenberg_control(2, {{0, 1, 1.0}});
  Mat want(4, 4);
  want << 1, 0, 0, 0, 0, -1, 2, 0, 0, 2, -1, 0, 0, 0, 0, 1;
  CHECK(op_norm(Mat(h - want)) <= 1e-14);
  CHECK(op_norm(h) == Approx(3.0).margin(1e-12));  // singlet eigenvalue -3

  CHECK(nearest_neighbor_chain(4, 0.5).size() == 3);
  CHECK_THROWS_AS(heisenberg_control(2, {{1, 1, 1.0}}), std::invalid_argument);
}

TEST_CASE("linear coupling assembly", "[hamiltonian]") {
  SECTION("single term is a plain tensor product") {
    Mat b = random_hermitian(2, 0.3, 5);
    Mat h = linear_coupling(1, 1, {{0, Axis::Z, b}});
    CHECK(op_norm(Mat(h - tensor(sigma(Axis::Z), b))) <= 1e-13);
    CHECK(op_norm(h) == Approx(0.3).margin(1e-12));
  }
  SECTION("bath operator dimension is enforced") {
    Mat b = random_hermitian(4, 0.3, 6);
    CHECK_THROWS_AS(linear_coupling(1, 1, {{0, Axis::Z, b}}), std::invalid_argument);
  }
  SECTION("term draws are stable under reordering") {
    auto t1 = random_coupling_terms(2, 1, 0.05, 77);
    auto t2 = random_coupling_terms(2, 1, 0.05, 77);
    REQUIRE(t1.size() == 6);
    for (size_t k = 0; k < t1.size(); ++k)
      CHECK(op_norm(Mat(t1[k].bath_op - t2[k].bath_op)) <= 1e-15);
  }
}

TEST_CASE("per-qubit model scales exactly linearly", "[hamiltonian]") {
  const std::uint64_t seed = 88;
  const double j1 = op_norm(linear_coupling(1, 1, per_qubit_coupling_terms(1, 0.05, seed)));
  for (int n : {2, 3}) {
    const double jn = op_norm(linear_coupling(n, n, per_qubit_coupling_terms(n, 0.05, seed)));
    CHECK(jn == Approx(n * j1).margin(1e-12));
  }
  CHECK(op_norm(per_qubit_bath(3, 0.2, seed)) == Approx(0.6).margin(1e-12));
}

TEST_CASE("strength report", "[hamiltonian]") {
  SystemBathSplit s;
  s.n_sys = 1;
  s.n_bath = 1;
  s.h_ctrl = sigma(Axis::Z);
  s.h_bath = sigma(Axis::Z);
  s.h_err = linear_coupling(1, 1, {{0, Axis::X, Mat(0.4 * sigma(Axis::X))}});
  StrengthReport r = strengths(s);
  CHECK(r.J == Approx(0.4).margin(1e-12));
  CHECK(r.beta == Approx(2.0).margin(1e-12));  // commuting embeddings, norms add
}

TEST_CASE("system and bath embeddings commute", "[hamiltonian]") {
  Mat a = random_hermitian(4, 1.0, 91);
  Mat b = random_hermitian(2, 1.0, 92);
  CHECK(op_norm(commutator(embed_system(a, 2), embed_bath(b, 4))) <= 1e-13);
}

TEST_CASE("seeded draws have exact target norm", "[rng]") {
  for (int t = 0; t < 5; ++t) {
    Mat h = random_hermitian(6, 0.7, 300 + t);
    CHECK(op_norm(h) == Approx(0.7).margin(1e-12));
    CHECK(hermiticity_defect(h) <= 1e-14);
  }
  CHECK(unitarity_defect(random_unitary(5, 12)) <= 1e-12);
  CHECK(op_norm(Mat(random_hermitian(4, 1.0, 1) - random_hermitian(4, 1.0, 1))) <= 1e-15);
  CHECK(op_norm(Mat(random_hermitian(4, 1.0, 1) - random_hermitian(4, 1.0, 2))) > 1e-3);
}
