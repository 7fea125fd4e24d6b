#include <doctest.h>

#include "fermidyn/fermion.hpp"
#include "test_helpers.hpp"

using namespace fermidyn;
using namespace fermidyn::testing;

TEST_CASE("two-mode operators match the printed representation") {
  const ModeOperatorSet ops = build_operators(FermionicSystem(2));
  CHECK(max_diff(ops.lowering[0], printed_a1_two_modes()) == 0.0);
  CHECK(max_diff(ops.lowering[1], printed_a2_two_modes()) == 0.0);
  CHECK(max_diff(ops.raising[0], adjoint(printed_a1_two_modes())) == 0.0);
}

TEST_CASE("one- and three-mode operators") {
  const ModeOperatorSet single = build_operators(FermionicSystem(1));
  ComplexMatrix sp = ComplexMatrix::Zero(2, 2);
  sp(0, 1) = 1.0;
  CHECK(max_diff(single.lowering[0], sp) == 0.0);

  // a_3 = sigma_+ (x) sigma_z (x) sigma_z has exactly four entries.
  const ModeOperatorSet ops = build_operators(FermionicSystem(3));
  const ComplexMatrix& a3 = ops.lowering[2];
  CHECK(a3(0, 4) == ComplexScalar(1.0));
  CHECK(a3(1, 5) == ComplexScalar(-1.0));
  CHECK(a3(2, 6) == ComplexScalar(-1.0));
  CHECK(a3(3, 7) == ComplexScalar(1.0));
  CHECK(a3.cwiseAbs().sum() == 4.0);

  CHECK_THROWS_AS(FermionicSystem(0), std::invalid_argument);
  CHECK_THROWS_AS(FermionicSystem(13), std::invalid_argument);
}

TEST_CASE("number operators are diagonal occupation projectors") {
  for (int n = 1; n <= 5; ++n) {
    const ModeOperatorSet ops = build_operators(FermionicSystem(n));
    for (int j = 1; j <= n; ++j) {
      const ComplexMatrix& num = ops.number[static_cast<std::size_t>(j - 1)];
      // by definition the full product a^dag a, entry for entry
      CHECK(max_diff(num, matmul(ops.raising[static_cast<std::size_t>(j - 1)],
                                 ops.lowering[static_cast<std::size_t>(j - 1)])) == 0.0);
      for (Index idx = 0; idx < ops.dimension(); ++idx) {
        const int bit = static_cast<int>((idx >> (j - 1)) & 1);
        CHECK(num(idx, idx) == ComplexScalar(double(bit)));
      }
      CHECK(max_abs(num - ComplexMatrix(num.diagonal().asDiagonal())) == 0.0);
    }
  }
}

TEST_CASE("number_eigenvalue reads the occupation bit") {
  CHECK(number_eigenvalue(1, FockState(2, {1, 0})) == 1);  // phi_{0,1}
  CHECK(number_eigenvalue(2, FockState(2, {1, 0})) == 0);
  CHECK(number_eigenvalue(3, FockState(3, {0, 1, 1})) == 1);  // phi_{1,1,0}
  CHECK_THROWS_AS(number_eigenvalue(3, FockState(2, {0, 0})), std::invalid_argument);

  // agrees with <phi, N_j phi> computed through the matrices
  const ModeOperatorSet ops = build_operators(FermionicSystem(4));
  for (Index idx = 0; idx < 16; ++idx) {
    const FockState state = FockState::from_index(4, idx);
    const ComplexVector phi = state_vector(state);
    for (int j = 1; j <= 4; ++j) {
      const ComplexScalar expectation =
          phi.dot(ops.number[static_cast<std::size_t>(j - 1)] * phi);
      CHECK(expectation.real() == double(number_eigenvalue(j, state)));
    }
  }
}

TEST_CASE("lowering kills the vacuum, raising flips a bit up to sign") {
  const int n = 4;
  const ModeOperatorSet ops = build_operators(FermionicSystem(n));
  const ComplexVector vacuum = basis_vector(0, ops.dimension());
  for (int j = 1; j <= n; ++j) {
    CHECK((ops.lowering[static_cast<std::size_t>(j - 1)] * vacuum).norm() == 0.0);
  }
  for (Index idx = 0; idx < ops.dimension(); ++idx) {
    for (int j = 1; j <= n; ++j) {
      const ComplexVector raised = ops.raising[static_cast<std::size_t>(j - 1)] *
                                   basis_vector(idx, ops.dimension());
      if ((idx >> (j - 1)) & 1) {
        CHECK(raised.norm() == 0.0);
      } else {
        const Index target = idx | (Index{1} << (j - 1));
        CHECK(std::abs(raised(target)) == 1.0);
        CHECK(raised.cwiseAbs().sum() == 1.0);
      }
    }
  }
}

TEST_CASE("two raisings build the doubly occupied state up to phase") {
  const ModeOperatorSet ops = build_operators(FermionicSystem(2));
  const ComplexVector built = ops.raising[0] * (ops.raising[1] * basis_vector(0, 4));
  CHECK(std::abs(built(3)) == 1.0);
  CHECK(built.cwiseAbs().sum() == 1.0);
}

TEST_CASE("canonical anticommutation relations hold exactly") {
  for (int n = 1; n <= 5; ++n) {
    const CarReport report = verify_car(build_operators(FermionicSystem(n)));
    CHECK(report.max_violation == 0.0);
  }
}

TEST_CASE("sum of number operators counts particles") {
  const int n = 4;
  const ModeOperatorSet ops = build_operators(FermionicSystem(n));
  ComplexMatrix total = ComplexMatrix::Zero(ops.dimension(), ops.dimension());
  for (const ComplexMatrix& num : ops.number) total += num;
  for (Index idx = 0; idx < ops.dimension(); ++idx) {
    int popcount = 0;
    for (int b = 0; b < n; ++b) popcount += static_cast<int>((idx >> b) & 1);
    const ComplexVector phi = basis_vector(idx, ops.dimension());
    CHECK((total * phi - double(popcount) * phi).norm() == 0.0);
  }
}

TEST_CASE("dropping the sigma_z string breaks the CAR") {
  ModeOperatorSet ops = build_operators(FermionicSystem(3));
  ComplexMatrix sp = ComplexMatrix::Zero(2, 2);
  sp(0, 1) = 1.0;
  const ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);
  ops.lowering[1] = kron(kron(id2, sp), id2);  // a_2 without its string
  ops.raising[1] = ops.lowering[1].adjoint();
  ops.number[1] = ops.raising[1] * ops.lowering[1];
  const CarReport report = verify_car(ops);
  CHECK(report.max_violation >= 1.0);
  CHECK(report.max_pair >= 1.0);  // {a_1, a_2} no longer vanishes
}
