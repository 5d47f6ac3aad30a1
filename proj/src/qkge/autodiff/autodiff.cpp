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
#include "qkge/autodiff/autodiff.hpp"

#include <cmath>
#include <stdexcept>

namespace qkge {

namespace {

double ipow(double base, int exp) {
  double out = 1.0;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

}  // namespace

double loss(const std::vector<std::pair<double, double>>& eta_and_label,
            const LossConfig& cfg) {
  if (eta_and_label.empty()) {
    throw std::invalid_argument("loss: empty batch");
  }
  if (cfg.kappa < 1) {
    throw std::invalid_argument("loss: kappa must be at least 1");
  }
  double acc = 0.0;
  for (const auto& [eta, y] : eta_and_label) {
    acc += ipow(y - eta, 2 * cfg.kappa);
  }
  return acc / static_cast<double>(eta_and_label.size());
}

double loss_gradient_coefficient(double eta, double label, int kappa,
                                 std::size_t batch_size) {
  if (kappa < 1) throw std::invalid_argument("kappa must be at least 1");
  if (batch_size == 0) throw std::invalid_argument("empty batch");
  return (2.0 * kappa / static_cast<double>(batch_size)) *
         ipow(eta - label, 2 * kappa - 1);
}

namespace {

constexpr double kHalfPi = 1.5707963267948966;
constexpr double kPi = 3.141592653589793;

TwoByTwo average(const TwoByTwo& a, const TwoByTwo& b) {
  return TwoByTwo{0.5 * (a.m00 + b.m00), 0.5 * (a.m01 + b.m01),
                  0.5 * (a.m10 + b.m10), 0.5 * (a.m11 + b.m11)};
}

}  // namespace

// Shifted-parameter derivative identities:
//   d/d alpha G = G(alpha + pi/2, beta, gamma)
//   d/d beta  G = 1/2 G(alpha, beta + pi/2, 0) + 1/2 G(alpha, beta + pi/2, pi)
//   d/d gamma G = 1/2 G(alpha, 0, gamma + pi/2) + 1/2 G(alpha, pi, gamma + pi/2)
// These are exact, not approximations; tests pin them to the entrywise
// analytic derivatives at 1e-12.
TwoByTwo gate_derivative(const EulerGate& g, GateParam which) {
  switch (which) {
    case GateParam::alpha:
      return gate_matrix(EulerGate{g.alpha + kHalfPi, g.beta, g.gamma});
    case GateParam::beta:
      return average(gate_matrix(EulerGate{g.alpha, g.beta + kHalfPi, 0.0}),
                     gate_matrix(EulerGate{g.alpha, g.beta + kHalfPi, kPi}));
    case GateParam::gamma:
      return average(gate_matrix(EulerGate{g.alpha, 0.0, g.gamma + kHalfPi}),
                     gate_matrix(EulerGate{g.alpha, kPi, g.gamma + kHalfPi}));
  }
  throw std::invalid_argument("gate_derivative: bad parameter tag");
}

namespace {

StateVector& pool_at(std::vector<StateVector>& pool, std::size_t i, int n) {
  while (pool.size() <= i) pool.emplace_back(n);
  if (pool[i].n_qubits() != n) pool[i] = StateVector(n);
  return pool[i];
}

bool kept(const std::vector<std::uint8_t>* keep, std::size_t i) {
  return keep == nullptr || (*keep)[i] != 0;
}

void apply_slot_matrix(const GateSlot& slot, const TwoByTwo& m,
                       StateVector& st, bool derivative) {
  if (slot.is_controlled()) {
    st.apply_controlled(slot.control, slot.target, m);
    if (derivative) st.project_qubit(slot.control, 1);
  } else {
    st.apply_single(slot.target, m);
  }
}

// pre[i] = state just before slot i (prelude folded into pre[0]);
// pre[slot_count] is the circuit output.
void prefix_sweep(const CircuitSpec& spec, const ParamStore& params,
                  const std::vector<std::uint8_t>* keep,
                  const StateVector& input, std::vector<StateVector>& pre) {
  const std::size_t n_slots = spec.slot_count();
  pool_at(pre, n_slots, spec.n_qubits);
  pre[0] = input;
  if (spec.hadamard_prelude) {
    const TwoByTwo h = hadamard_2x2();
    for (int q = 1; q <= spec.n_qubits; ++q) pre[0].apply_single(q, h);
  }
  for (std::size_t i = 0; i < n_slots; ++i) {
    pre[i + 1] = pre[i];
    if (kept(keep, i)) {
      apply_slot_matrix(spec.slots[i], gate_matrix(params.gates[i]),
                        pre[i + 1], false);
    }
  }
}

// bra[i] = (slots i..end applied in order)^dagger seed, so that
// <seed| slots_{i..end} x = <bra[i]| x. The parameter chain only covers
// slots; the prelude carries no parameters.
void bra_sweep(const CircuitSpec& spec, const ParamStore& params,
               const std::vector<std::uint8_t>* keep, const StateVector& seed,
               std::vector<StateVector>& bra) {
  const std::size_t n_slots = spec.slot_count();
  pool_at(bra, n_slots, spec.n_qubits);
  bra[n_slots] = seed;
  for (std::size_t step = 0; step < n_slots; ++step) {
    const std::size_t i = n_slots - 1 - step;
    bra[i] = bra[i + 1];
    if (kept(keep, i)) {
      apply_slot_matrix(spec.slots[i], adjoint(gate_matrix(params.gates[i])),
                        bra[i], false);
    }
  }
}

// Gradients of every angle of one circuit: Re <bra[i+1] | dSlot_i | pre[i]>.
void slot_gradients(const CircuitSpec& spec, const ParamStore& params,
                    const std::vector<std::uint8_t>* keep,
                    const std::vector<StateVector>& pre,
                    const std::vector<StateVector>& bra, StateVector& tmp,
                    std::vector<double>& out) {
  const std::size_t n_slots = spec.slot_count();
  out.assign(3 * n_slots, 0.0);
  for (std::size_t i = 0; i < n_slots; ++i) {
    if (!kept(keep, i)) continue;
    for (int t = 0; t < 3; ++t) {
      const TwoByTwo d =
          gate_derivative(params.gates[i], static_cast<GateParam>(t));
      tmp = pre[i];
      apply_slot_matrix(spec.slots[i], d, tmp, true);
      out[3 * i + t] = inner_product(bra[i + 1], tmp).real();
    }
  }
}

std::vector<double> real_parts(const StateVector& st) {
  std::vector<double> out(st.dim());
  for (std::size_t k = 0; k < st.dim(); ++k) out[k] = st.amplitude(k).real();
  return out;
}

}  // namespace

EtaGradient eta_gradient(const QuantumModel& model, std::size_t s,
                         std::size_t p, std::size_t o,
                         const TripleOverrides* ov, GradientWorkspace* ws) {
  model.check_triple(s, p, o);
  GradientWorkspace local;
  if (ws == nullptr) ws = &local;
  const TripleOverrides none{};
  if (ov == nullptr) ov = &none;
  const int n = model.n_qubits;

  const ParamStore& pred =
      ov->pred_params ? *ov->pred_params : model.pred_params[p];

  EtaGradient grad;
  StateVector& tmp = pool_at(ws->tmp, 0, n);

  if (model.kind == ModelKind::qce) {
    const AmplitudeTree& st =
        ov->subj_tree ? *ov->subj_tree : model.entity_trees[s];
    const AmplitudeTree& ot =
        ov->obj_tree ? *ov->obj_tree : model.entity_trees[o];
    const StateVector ket_s = st.prepare_state();
    const StateVector ket_o = ot.prepare_state();

    prefix_sweep(model.pred_spec, pred, ov->pred_keep, ket_s, ws->pre_p);
    const StateVector& sp = ws->pre_p[model.pred_spec.slot_count()];
    bra_sweep(model.pred_spec, pred, ov->pred_keep, ket_o, ws->bra_p);

    grad.eta = inner_product(ket_o, sp).real();
    slot_gradients(model.pred_spec, pred, ov->pred_keep, ws->pre_p, ws->bra_p,
                   tmp, grad.pred_gates);
    grad.subj_vec = real_parts(ws->bra_p[0]);  // Re(U_p^+ |o>)
    grad.obj_vec = real_parts(sp);             // Re(U_p |s>)
    return grad;
  }

  const ParamStore& subj =
      ov->subj_params ? *ov->subj_params : model.entity_params[s];
  const ParamStore& obj =
      ov->obj_params ? *ov->obj_params : model.entity_params[o];

  const StateVector zero(n);
  prefix_sweep(model.entity_spec, subj, ov->subj_keep, zero, ws->pre_s);
  const StateVector& ket_s = ws->pre_s[model.entity_spec.slot_count()];
  prefix_sweep(model.pred_spec, pred, ov->pred_keep, ket_s, ws->pre_p);
  const StateVector& sp = ws->pre_p[model.pred_spec.slot_count()];
  prefix_sweep(model.entity_spec, obj, ov->obj_keep, zero, ws->pre_o);
  const StateVector& ket_o = ws->pre_o[model.entity_spec.slot_count()];

  grad.eta = inner_product(ket_o, sp).real();

  bra_sweep(model.pred_spec, pred, ov->pred_keep, ket_o, ws->bra_p);
  slot_gradients(model.pred_spec, pred, ov->pred_keep, ws->pre_p, ws->bra_p,
                 tmp, grad.pred_gates);

  // d eta / d theta_s: eta = Re <U_p^+ o | U_s |0>.
  bra_sweep(model.entity_spec, subj, ov->subj_keep, ws->bra_p[0], ws->bra_s);
  slot_gradients(model.entity_spec, subj, ov->subj_keep, ws->pre_s, ws->bra_s,
                 tmp, grad.subj_gates);

  // d eta / d theta_o: eta = Re <dO|sp> = Re <sp|dO>.
  bra_sweep(model.entity_spec, obj, ov->obj_keep, sp, ws->bra_o);
  slot_gradients(model.entity_spec, obj, ov->obj_keep, ws->pre_o, ws->bra_o,
                 tmp, grad.obj_gates);

  return grad;
}

EtaGradient eta_gradient_reference(const QuantumModel& model, std::size_t s,
                                   std::size_t p, std::size_t o) {
  model.check_triple(s, p, o);
  EtaGradient grad;
  const StateVector ket_s = model.entity_state(s);
  const StateVector ket_o = model.entity_state(o);
  StateVector sp = ket_s;
  apply_circuit(model.pred_spec, model.pred_params[p], sp);
  grad.eta = inner_product(ket_o, sp).real();

  const auto& pred = model.pred_params[p];
  grad.pred_gates.assign(model.pred_spec.param_count(), 0.0);
  for (std::size_t i = 0; i < model.pred_spec.slot_count(); ++i) {
    for (int t = 0; t < 3; ++t) {
      CircuitRun run;
      run.replace_slot = static_cast<int>(i);
      run.replacement =
          gate_derivative(pred.gates[i], static_cast<GateParam>(t));
      StateVector st = ket_s;
      apply_circuit(model.pred_spec, pred, st, run);
      grad.pred_gates[3 * i + t] = inner_product(ket_o, st).real();
    }
  }

  if (model.kind == ModelKind::qce) {
    auto [ds, dobj] = eta_gradient_qce_embeddings(model, s, p, o);
    grad.subj_vec = std::move(ds);
    grad.obj_vec = std::move(dobj);
    return grad;
  }

  const auto& subj = model.entity_params[s];
  const auto& obj = model.entity_params[o];
  grad.subj_gates.assign(model.entity_spec.param_count(), 0.0);
  grad.obj_gates.assign(model.entity_spec.param_count(), 0.0);
  for (std::size_t i = 0; i < model.entity_spec.slot_count(); ++i) {
    for (int t = 0; t < 3; ++t) {
      CircuitRun run;
      run.replace_slot = static_cast<int>(i);
      // Subject side: d|s> pushed through the predicate circuit.
      run.replacement =
          gate_derivative(subj.gates[i], static_cast<GateParam>(t));
      StateVector dsubj(model.n_qubits);
      apply_circuit(model.entity_spec, subj, dsubj, run);
      apply_circuit(model.pred_spec, pred, dsubj);
      grad.subj_gates[3 * i + t] = inner_product(ket_o, dsubj).real();

      // Object side: eta = Re <dO | sp>.
      run.replacement =
          gate_derivative(obj.gates[i], static_cast<GateParam>(t));
      StateVector dobj(model.n_qubits);
      apply_circuit(model.entity_spec, obj, dobj, run);
      grad.obj_gates[3 * i + t] = inner_product(dobj, sp).real();
    }
  }
  return grad;
}

std::pair<std::vector<double>, std::vector<double>> eta_gradient_qce_embeddings(
    const QuantumModel& model, std::size_t s, std::size_t p, std::size_t o) {
  if (model.kind != ModelKind::qce) {
    throw std::logic_error("eta_gradient_qce_embeddings: not a qce model");
  }
  model.check_triple(s, p, o);
  StateVector sp = model.entity_state(s);
  apply_circuit(model.pred_spec, model.pred_params[p], sp);
  StateVector w = model.entity_state(o);
  CircuitRun adj;
  adj.adjoint = true;
  apply_circuit(model.pred_spec, model.pred_params[p], w, adj);
  std::vector<double> ds(w.dim()), dobj(sp.dim());
  for (std::size_t k = 0; k < w.dim(); ++k) ds[k] = w.amplitude(k).real();
  for (std::size_t k = 0; k < sp.dim(); ++k) dobj[k] = sp.amplitude(k).real();
  return {std::move(ds), std::move(dobj)};
}

}  // namespace qkge
