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

#include "qkge/baselines/baselines.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qkge {

namespace {

void check_classical(ModelKind kind) {
  if (is_quantum(kind)) {
    throw std::invalid_argument("classical model constructed with kind " +
                                std::string(to_string(kind)));
  }
}

double sum_sq(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return acc;
}

// d loss / d eta for one labeled triple, excluding regularization.
double loss_coefficient(ClassicalLoss which, double eta, double y,
                        std::size_t batch_size) {
  switch (which) {
    case ClassicalLoss::mse:
      return (2.0 / static_cast<double>(batch_size)) * (eta - y);
    case ClassicalLoss::logistic:
      // -y * sigmoid(-y eta); the division saturates to 0 when exp overflows.
      return -y / (1.0 + std::exp(y * eta));
  }
  throw std::invalid_argument("loss_coefficient: bad loss tag");
}

}  // namespace

const char* to_string(ClassicalLoss loss) {
  switch (loss) {
    case ClassicalLoss::mse:
      return "mse";
    case ClassicalLoss::logistic:
      return "logistic";
  }
  return "?";
}

ClassicalLoss classical_loss_from_string(const std::string& name) {
  if (name == "mse") return ClassicalLoss::mse;
  if (name == "logistic") return ClassicalLoss::logistic;
  throw std::invalid_argument("unknown loss \"" + name +
                              "\" (valid: mse, logistic)");
}

std::size_t ClassicalModel::entity_width() const {
  return kind == ModelKind::complex_bilinear ? 2u * rank : rank;
}

std::size_t ClassicalModel::predicate_width() const {
  switch (kind) {
    case ModelKind::rescal:
      return static_cast<std::size_t>(rank) * rank;
    case ModelKind::complex_bilinear:
      return 2u * rank;
    default:
      return rank;
  }
}

std::size_t ClassicalModel::core_size() const {
  if (kind != ModelKind::tucker) return 0;
  return static_cast<std::size_t>(rank) * rank * rank;
}

std::span<const double> ClassicalModel::entity_row(std::uint32_t e) const {
  const std::size_t w = entity_width();
  return {entities.data() + static_cast<std::size_t>(e) * w, w};
}

std::span<const double> ClassicalModel::predicate_row(std::uint32_t p) const {
  const std::size_t w = predicate_width();
  return {predicates.data() + static_cast<std::size_t>(p) * w, w};
}

std::span<double> ClassicalModel::entity_row(std::uint32_t e) {
  const std::size_t w = entity_width();
  return {entities.data() + static_cast<std::size_t>(e) * w, w};
}

std::span<double> ClassicalModel::predicate_row(std::uint32_t p) {
  const std::size_t w = predicate_width();
  return {predicates.data() + static_cast<std::size_t>(p) * w, w};
}

std::size_t ClassicalModel::parameter_count() const {
  return entities.size() + predicates.size() + core.size();
}

ClassicalModel make_classical_model(ModelKind kind, std::uint32_t n_entities,
                                    std::uint32_t n_predicates,
                                    std::uint32_t rank, double lambda) {
  check_classical(kind);
  if (rank == 0) throw std::invalid_argument("classical model needs rank >= 1");
  if (n_entities == 0 || n_predicates == 0) {
    throw std::invalid_argument("classical model needs a non-empty vocabulary");
  }
  ClassicalModel m;
  m.kind = kind;
  m.n_entities = n_entities;
  m.n_predicates = n_predicates;
  m.rank = rank;
  m.lambda = lambda;
  m.entities.assign(static_cast<std::size_t>(n_entities) * m.entity_width(),
                    0.0);
  m.predicates.assign(
      static_cast<std::size_t>(n_predicates) * m.predicate_width(), 0.0);
  m.core.assign(m.core_size(), 0.0);
  return m;
}

double classical_value(const ClassicalModel& model, const Triple& t) {
  const std::size_t R = model.rank;
  const auto s = model.entity_row(t.s);
  const auto p = model.predicate_row(t.p);
  const auto o = model.entity_row(t.o);
  switch (model.kind) {
    case ModelKind::rescal: {
      double acc = 0.0;
      for (std::size_t i = 0; i < R; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < R; ++j) row += p[i * R + j] * o[j];
        acc += s[i] * row;
      }
      return acc;
    }
    case ModelKind::distmult: {
      double acc = 0.0;
      for (std::size_t r = 0; r < R; ++r) acc += s[r] * p[r] * o[r];
      return acc;
    }
    case ModelKind::complex_bilinear: {
      // Re sum_r s_r p_r conj(o_r), interleaved (re, im) storage.
      double acc = 0.0;
      for (std::size_t r = 0; r < R; ++r) {
        const double sr = s[2 * r], si = s[2 * r + 1];
        const double pr = p[2 * r], pi = p[2 * r + 1];
        const double outr = o[2 * r], outi = o[2 * r + 1];
        const double spr = sr * pr - si * pi;
        const double spi = sr * pi + si * pr;
        acc += spr * outr + spi * outi;
      }
      return acc;
    }
    case ModelKind::tucker: {
      const auto& W = model.core;
      double acc = 0.0;
      for (std::size_t i = 0; i < R; ++i) {
        for (std::size_t j = 0; j < R; ++j) {
          const double sp = s[i] * p[j];
          const double* w = W.data() + (i * R + j) * R;
          double inner = 0.0;
          for (std::size_t k = 0; k < R; ++k) inner += w[k] * o[k];
          acc += sp * inner;
        }
      }
      return acc;
    }
    default:
      throw std::invalid_argument("classical_value: quantum kind");
  }
}

double classical_loss(const ClassicalModel& model,
                      std::span<const LabeledTriple> batch,
                      ClassicalLoss which) {
  if (batch.empty()) throw std::invalid_argument("classical_loss: empty batch");
  double data = 0.0;
  for (const auto& lt : batch) {
    const double eta = classical_value(model, lt.t);
    switch (which) {
      case ClassicalLoss::mse: {
        const double d = lt.y - eta;
        data += d * d;
        break;
      }
      case ClassicalLoss::logistic:
        // log1p(exp(x)) with saturation for large x.
        {
          const double x = -lt.y * eta;
          data += x > 36.0 ? x : std::log1p(std::exp(x));
        }
        break;
    }
  }
  if (which == ClassicalLoss::mse) {
    data /= static_cast<double>(batch.size());
  }
  const double reg = model.lambda * (sum_sq(model.entities) +
                                     sum_sq(model.predicates) +
                                     sum_sq(model.core));
  return data + reg;
}

ClassicalGradients classical_gradients(
    const ClassicalModel& model, std::span<const LabeledTriple> batch,
    ClassicalLoss which) {
  if (batch.empty()) {
    throw std::invalid_argument("classical_gradients: empty batch");
  }
  ClassicalGradients g;
  g.entities.assign(model.entities.size(), 0.0);
  g.predicates.assign(model.predicates.size(), 0.0);
  g.core.assign(model.core.size(), 0.0);

  const std::size_t R = model.rank;
  const std::size_t ew = model.entity_width();
  const std::size_t pw = model.predicate_width();

  for (const auto& lt : batch) {
    const auto& t = lt.t;
    const double eta = classical_value(model, t);
    const double c = loss_coefficient(which, eta, lt.y, batch.size());
    const auto s = model.entity_row(t.s);
    const auto p = model.predicate_row(t.p);
    const auto o = model.entity_row(t.o);
    double* gs = g.entities.data() + static_cast<std::size_t>(t.s) * ew;
    double* gp =
        g.predicates.data() + static_cast<std::size_t>(t.p) * pw;
    double* go = g.entities.data() + static_cast<std::size_t>(t.o) * ew;
    switch (model.kind) {
      case ModelKind::rescal: {
        for (std::size_t i = 0; i < R; ++i) {
          double row = 0.0;
          for (std::size_t j = 0; j < R; ++j) {
            row += p[i * R + j] * o[j];
            gp[i * R + j] += c * s[i] * o[j];
            go[j] += c * s[i] * p[i * R + j];
          }
          gs[i] += c * row;
        }
        break;
      }
      case ModelKind::distmult: {
        for (std::size_t r = 0; r < R; ++r) {
          gs[r] += c * p[r] * o[r];
          gp[r] += c * s[r] * o[r];
          go[r] += c * s[r] * p[r];
        }
        break;
      }
      case ModelKind::complex_bilinear: {
        for (std::size_t r = 0; r < R; ++r) {
          const double sr = s[2 * r], si = s[2 * r + 1];
          const double pr = p[2 * r], pi = p[2 * r + 1];
          const double outr = o[2 * r], outi = o[2 * r + 1];
          // d eta / d s = p conj(o) read as (Re, -Im); likewise below.
          gs[2 * r] += c * (pr * outr + pi * outi);
          gs[2 * r + 1] += c * (pr * outi - pi * outr);
          gp[2 * r] += c * (sr * outr + si * outi);
          gp[2 * r + 1] += c * (sr * outi - si * outr);
          go[2 * r] += c * (sr * pr - si * pi);
          go[2 * r + 1] += c * (sr * pi + si * pr);
        }
        break;
      }
      case ModelKind::tucker: {
        const auto& W = model.core;
        for (std::size_t i = 0; i < R; ++i) {
          for (std::size_t j = 0; j < R; ++j) {
            const double sp = s[i] * p[j];
            const double* w = W.data() + (i * R + j) * R;
            double* gw = g.core.data() + (i * R + j) * R;
            double inner = 0.0;
            for (std::size_t k = 0; k < R; ++k) {
              inner += w[k] * o[k];
              go[k] += c * sp * w[k];
              gw[k] += c * sp * o[k];
            }
            gs[i] += c * p[j] * inner;
            gp[j] += c * s[i] * inner;
          }
        }
        break;
      }
      default:
        throw std::invalid_argument("classical_gradients: quantum kind");
    }
  }

  const double two_lambda = 2.0 * model.lambda;
  if (two_lambda != 0.0) {
    for (std::size_t i = 0; i < g.entities.size(); ++i) {
      g.entities[i] += two_lambda * model.entities[i];
    }
    for (std::size_t i = 0; i < g.predicates.size(); ++i) {
      g.predicates[i] += two_lambda * model.predicates[i];
    }
    for (std::size_t i = 0; i < g.core.size(); ++i) {
      g.core[i] += two_lambda * model.core[i];
    }
  }
  return g;
}

std::vector<double> score_sweep_weights(const ClassicalModel& model,
                                        std::uint32_t predicate,
                                        std::uint32_t fixed_entity,
                                        CorruptSide varying) {
  const std::size_t R = model.rank;
  const auto p = model.predicate_row(predicate);
  const auto f = model.entity_row(fixed_entity);
  const bool sweep_object = varying == CorruptSide::object;
  std::vector<double> w(model.entity_width(), 0.0);
  switch (model.kind) {
    case ModelKind::rescal: {
      // Object sweep: w_j = sum_i s_i A_ij; subject sweep: w_i = sum_j A_ij o_j.
      for (std::size_t i = 0; i < R; ++i) {
        for (std::size_t j = 0; j < R; ++j) {
          if (sweep_object) {
            w[j] += f[i] * p[i * R + j];
          } else {
            w[i] += p[i * R + j] * f[j];
          }
        }
      }
      break;
    }
    case ModelKind::distmult: {
      for (std::size_t r = 0; r < R; ++r) w[r] = f[r] * p[r];
      break;
    }
    case ModelKind::complex_bilinear: {
      for (std::size_t r = 0; r < R; ++r) {
        const double fr = f[2 * r], fi = f[2 * r + 1];
        const double pr = p[2 * r], pi = p[2 * r + 1];
        if (sweep_object) {
          // score(o) = Re((s p) conj(o)) = Re(sp) o_re + Im(sp) o_im.
          w[2 * r] = fr * pr - fi * pi;
          w[2 * r + 1] = fr * pi + fi * pr;
        } else {
          // score(s) = Re(s (p conj(o))): weight (Re, -Im) of p conj(o).
          w[2 * r] = pr * fr + pi * fi;
          w[2 * r + 1] = pr * fi - pi * fr;
        }
      }
      break;
    }
    case ModelKind::tucker: {
      const auto& W = model.core;
      for (std::size_t i = 0; i < R; ++i) {
        for (std::size_t j = 0; j < R; ++j) {
          const double* wk = W.data() + (i * R + j) * R;
          if (sweep_object) {
            const double sp = f[i] * p[j];
            for (std::size_t k = 0; k < R; ++k) w[k] += sp * wk[k];
          } else {
            double inner = 0.0;
            for (std::size_t k = 0; k < R; ++k) inner += wk[k] * f[k];
            w[i] += p[j] * inner;
          }
        }
      }
      break;
    }
    default:
      throw std::invalid_argument("score_sweep_weights: quantum kind");
  }
  return w;
}

}  // namespace qkge
