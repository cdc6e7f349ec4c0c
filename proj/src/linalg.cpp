// Copyright 2026 The rdsim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rdo/linalg.hpp"

#include <string>

#include "rdo/errors.hpp"

namespace rdo {

Vector least_squares_solve(const Matrix& A, const Vector& b) {
  Eigen::ColPivHouseholderQR<Matrix> qr(A);
  if (qr.rank() < A.cols()) {
    throw RankDeficientError("stacked matrix has rank " + std::to_string(qr.rank()) +
                             " < " + std::to_string(A.cols()));
  }
  return qr.solve(b);
}

bool has_full_column_rank(const Matrix& A) {
  return Eigen::ColPivHouseholderQR<Matrix>(A).rank() == A.cols();
}

namespace {

Vector ata_eigenvalues(const Matrix& A) {
  Matrix ata = A.transpose() * A;
  Eigen::SelfAdjointEigenSolver<Matrix> es;
  if (ata.rows() <= 3) {
    es.computeDirect(ata, Eigen::EigenvaluesOnly);
  } else {
    es.compute(ata, Eigen::EigenvaluesOnly);
  }
  return es.eigenvalues();
}

}  // namespace

double min_eigenvalue_ata(const Matrix& A) { return ata_eigenvalues(A).minCoeff(); }
double max_eigenvalue_ata(const Matrix& A) { return ata_eigenvalues(A).maxCoeff(); }

}  // namespace rdo
