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

#pragma once

#include <Eigen/Dense>

namespace rdo {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Least-squares solution of A x ~= b via column-pivoted QR.
/// Throws RankDeficientError when rank(A) < A.cols().
Vector least_squares_solve(const Matrix& A, const Vector& b);

/// True when the matrix has full column rank (numerically).
bool has_full_column_rank(const Matrix& A);

/// Extremal eigenvalues of the symmetric PSD matrix A^T A.
/// Direct (closed-form) solver for d <= 3, iterative otherwise.
double min_eigenvalue_ata(const Matrix& A);
double max_eigenvalue_ata(const Matrix& A);

}  // namespace rdo
