// Copyright 2026 The qkge authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <complex>

namespace qkge {

using cplx = std::complex<double>;

// Three Euler angles of a single-qubit unitary (global phase dropped).
struct EulerGate {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

// Row-major 2x2 complex matrix.
struct TwoByTwo {
  cplx m00, m01, m10, m11;
};

// G(alpha, beta, gamma) =
//   [  e^{i beta} cos(alpha)   e^{i gamma} sin(alpha) ]
//   [ -e^{-i gamma} sin(alpha) e^{-i beta} cos(alpha) ]
TwoByTwo gate_matrix(const EulerGate& g);

TwoByTwo adjoint(const TwoByTwo& m);

TwoByTwo identity_2x2();
TwoByTwo hadamard_2x2();
TwoByTwo pauli_x_2x2();

// Real rotation [[cos t, -sin t], [sin t, cos t]].
TwoByTwo rotation_2x2(double theta);

}  // namespace qkge
