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
#include "qkge/qsim/gates.hpp"

#include <cmath>

namespace qkge {

TwoByTwo gate_matrix(const EulerGate& g) {
  const double c = std::cos(g.alpha);
  const double s = std::sin(g.alpha);
  const cplx eb(std::cos(g.beta), std::sin(g.beta));
  const cplx eg(std::cos(g.gamma), std::sin(g.gamma));
  return TwoByTwo{eb * c, eg * s, -std::conj(eg) * s, std::conj(eb) * c};
}

TwoByTwo adjoint(const TwoByTwo& m) {
  return TwoByTwo{std::conj(m.m00), std::conj(m.m10), std::conj(m.m01),
                  std::conj(m.m11)};
}

TwoByTwo identity_2x2() { return TwoByTwo{1.0, 0.0, 0.0, 1.0}; }

TwoByTwo hadamard_2x2() {
  const double h = 1.0 / std::sqrt(2.0);
  return TwoByTwo{h, h, h, -h};
}

TwoByTwo pauli_x_2x2() { return TwoByTwo{0.0, 1.0, 1.0, 0.0}; }

TwoByTwo rotation_2x2(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return TwoByTwo{c, -s, s, c};
}

}  // namespace qkge
