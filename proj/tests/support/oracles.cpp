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

#include "support/oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace qkge::testing {

DenseMatrix dense_identity(std::size_t dim) {
  DenseMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = 1.0;
  return m;
}

DenseMatrix dense_from_2x2(const TwoByTwo& g) {
  DenseMatrix m(2);
  m.at(0, 0) = g.m00;
  m.at(0, 1) = g.m01;
  m.at(1, 0) = g.m10;
  m.at(1, 1) = g.m11;
  return m;
}

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out(a.dim * b.dim);
  for (std::size_t i = 0; i < a.dim; ++i) {
    for (std::size_t j = 0; j < a.dim; ++j) {
      for (std::size_t k = 0; k < b.dim; ++k) {
        for (std::size_t l = 0; l < b.dim; ++l) {
          out.at(i * b.dim + k, j * b.dim + l) = a.at(i, j) * b.at(k, l);
        }
      }
    }
  }
  return out;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.dim != b.dim) throw std::invalid_argument("matmul dim mismatch");
  DenseMatrix out(a.dim);
  for (std::size_t i = 0; i < a.dim; ++i) {
    for (std::size_t k = 0; k < a.dim; ++k) {
      cplx aik = a.at(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < a.dim; ++j) {
        out.at(i, j) += aik * b.at(k, j);
      }
    }
  }
  return out;
}

DenseMatrix dense_adjoint(const DenseMatrix& a) {
  DenseMatrix out(a.dim);
  for (std::size_t i = 0; i < a.dim; ++i) {
    for (std::size_t j = 0; j < a.dim; ++j) {
      out.at(i, j) = std::conj(a.at(j, i));
    }
  }
  return out;
}

std::vector<cplx> matvec(const DenseMatrix& a, std::span<const cplx> v) {
  if (a.dim != v.size()) throw std::invalid_argument("matvec dim mismatch");
  std::vector<cplx> out(a.dim);
  for (std::size_t i = 0; i < a.dim; ++i) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < a.dim; ++j) acc += a.at(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

namespace {

// Kronecker chain over qubits 1..n (MSB first) with per-qubit factors.
DenseMatrix chain(int n_qubits, const std::function<DenseMatrix(int)>& factor) {
  DenseMatrix m = factor(1);
  for (int q = 2; q <= n_qubits; ++q) m = kron(m, factor(q));
  return m;
}

}  // namespace

DenseMatrix dense_slot_matrix(int n_qubits, const GateSlot& slot,
                              const EulerGate& gate) {
  const DenseMatrix g = dense_from_2x2(gate_matrix(gate));
  const DenseMatrix eye = dense_identity(2);
  if (!slot.is_controlled()) {
    return chain(n_qubits, [&](int q) { return q == slot.target ? g : eye; });
  }
  DenseMatrix p0(2), p1(2);
  p0.at(0, 0) = 1.0;
  p1.at(1, 1) = 1.0;
  DenseMatrix term0 =
      chain(n_qubits, [&](int q) { return q == slot.control ? p0 : eye; });
  DenseMatrix term1 = chain(n_qubits, [&](int q) {
    if (q == slot.control) return p1;
    return q == slot.target ? g : eye;
  });
  DenseMatrix out(term0.dim);
  for (std::size_t i = 0; i < out.a.size(); ++i) {
    out.a[i] = term0.a[i] + term1.a[i];
  }
  return out;
}

DenseMatrix dense_circuit_matrix(const CircuitSpec& spec,
                                 const ParamStore& params) {
  if (params.gates.size() != spec.slots.size()) {
    throw std::invalid_argument("parameter count does not match spec");
  }
  const std::size_t dim = std::size_t{1} << spec.n_qubits;
  DenseMatrix m = dense_identity(dim);
  if (spec.hadamard_prelude) {
    const DenseMatrix h = dense_from_2x2(hadamard_2x2());
    m = chain(spec.n_qubits, [&](int) { return h; });
  }
  for (std::size_t k = 0; k < spec.slots.size(); ++k) {
    m = matmul(dense_slot_matrix(spec.n_qubits, spec.slots[k], params.gates[k]),
               m);
  }
  return m;
}

std::vector<cplx> dense_apply(const CircuitSpec& spec, const ParamStore& params,
                              std::span<const cplx> in, bool adjoint) {
  DenseMatrix m = dense_circuit_matrix(spec, params);
  if (adjoint) m = dense_adjoint(m);
  return matvec(m, in);
}

double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size()) throw std::invalid_argument("size mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

double max_abs_diff_real(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("size mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

double central_difference(const std::function<double(double)>& f, double x,
                          double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

double mean(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  long double acc = 0.0;
  for (double x : xs) acc += x;
  return static_cast<double>(acc / xs.size());
}

double sample_std(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean(xs);
  long double acc = 0.0;
  for (double x : xs) acc += (x - m) * (x - m);
  return std::sqrt(static_cast<double>(acc / (xs.size() - 1)));
}

double regression_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("regression needs matched points");
  }
  const double mx = mean(x);
  const double my = mean(y);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  return sxy / sxx;
}

double chi_square_critical(int dof, double z) {
  const double k = static_cast<double>(dof);
  const double t = 1.0 - 2.0 / (9.0 * k) + z * std::sqrt(2.0 / (9.0 * k));
  return k * t * t * t;
}

}  // namespace qkge::testing
