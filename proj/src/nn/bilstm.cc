// Copyright 2026 The PathWalk Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pathwalk/nn/bilstm.h"

#include <algorithm>
#include <cmath>

#include "pathwalk/common.h"
#include "pathwalk/simd/kernels.h"

namespace pathwalk::nn {
namespace {

template <typename Real>
Real sigmoid(Real x) {
  return Real(1) / (Real(1) + std::exp(-x));
}

template <typename Real>
bool all_finite(std::span<const Real> values) {
  return std::all_of(values.begin(), values.end(), [](Real v) { return std::isfinite(v); });
}

template <typename Real>
void run_direction(const LstmWeights<Real>& weights, std::span<const Real> input, std::size_t length, std::size_t d,
                   std::size_t h, bool reverse, DirectionCache<Real>& cache, std::span<Real> final_hidden) {
  const auto& k = simd::kernels<Real>();
  const std::size_t rows = d + h;
  cache.concat = Matrix<Real>(length, rows);
  cache.gates = Matrix<Real>(length, 4 * h);
  cache.cell = Matrix<Real>(length, h);
  cache.cell_tanh = Matrix<Real>(length, h);
  std::vector<Real> hidden(h, Real(0)), cell(h, Real(0));
  for (std::size_t s = 0; s < length; ++s) {
    const std::size_t pos = reverse ? length - 1 - s : s;
    auto concat = cache.concat.row(s);
    std::copy_n(input.data() + pos * d, d, concat.begin());
    std::copy(hidden.begin(), hidden.end(), concat.begin() + static_cast<std::ptrdiff_t>(d));

    auto gates = cache.gates.row(s);
    std::copy(weights.b.begin(), weights.b.end(), gates.begin());
    k.gemv_accumulate(concat.data(), rows, weights.w.data(), 4 * h, gates.data());

    auto c_row = cache.cell.row(s);
    auto tc_row = cache.cell_tanh.row(s);
    for (std::size_t j = 0; j < h; ++j) {
      const Real i_g = sigmoid(gates[kInputGate * h + j]);
      const Real f_g = sigmoid(gates[kForgetGate * h + j]);
      const Real o_g = sigmoid(gates[kOutputGate * h + j]);
      const Real g_g = std::tanh(gates[kCandidate * h + j]);
      gates[kInputGate * h + j] = i_g;
      gates[kForgetGate * h + j] = f_g;
      gates[kOutputGate * h + j] = o_g;
      gates[kCandidate * h + j] = g_g;
      cell[j] = f_g * cell[j] + i_g * g_g;
      c_row[j] = cell[j];
      tc_row[j] = std::tanh(cell[j]);
      hidden[j] = o_g * tc_row[j];
    }
  }
  std::copy(hidden.begin(), hidden.end(), final_hidden.begin());
}

template <typename Real>
void backprop_direction(const LstmWeights<Real>& weights, const DirectionCache<Real>& cache, std::size_t d,
                        std::size_t h, bool reverse, std::span<const Real> d_final_hidden, LstmWeights<Real>& grads,
                        std::span<Real> d_input) {
  const auto& k = simd::kernels<Real>();
  const std::size_t length = cache.gates.rows();
  const std::size_t rows = d + h;
  std::vector<Real> dh(d_final_hidden.begin(), d_final_hidden.end());
  std::vector<Real> dc(h, Real(0));
  std::vector<Real> dz(4 * h);
  std::vector<Real> d_concat(rows);
  for (std::size_t s = length; s-- > 0;) {
    const std::size_t pos = reverse ? length - 1 - s : s;
    const auto gates = cache.gates.row(s);
    const auto tc = cache.cell_tanh.row(s);
    for (std::size_t j = 0; j < h; ++j) {
      const Real i_g = gates[kInputGate * h + j];
      const Real f_g = gates[kForgetGate * h + j];
      const Real o_g = gates[kOutputGate * h + j];
      const Real g_g = gates[kCandidate * h + j];
      const Real c_prev = s > 0 ? cache.cell(s - 1, j) : Real(0);
      const Real d_o = dh[j] * tc[j];
      const Real d_c = dc[j] + dh[j] * o_g * (Real(1) - tc[j] * tc[j]);
      dz[kInputGate * h + j] = d_c * g_g * i_g * (Real(1) - i_g);
      dz[kForgetGate * h + j] = d_c * c_prev * f_g * (Real(1) - f_g);
      dz[kOutputGate * h + j] = d_o * o_g * (Real(1) - o_g);
      dz[kCandidate * h + j] = d_c * i_g * (Real(1) - g_g * g_g);
      dc[j] = d_c * f_g;
    }
    k.rank1_update(cache.concat.row(s).data(), rows, dz.data(), 4 * h, grads.w.data());
    k.axpy(Real(1), dz.data(), grads.b.data(), 4 * h);
    k.gemv_transposed(weights.w.data(), rows, 4 * h, dz.data(), d_concat.data());
    Real* dx = d_input.data() + pos * d;
    for (std::size_t c = 0; c < d; ++c) dx[c] += d_concat[c];
    std::copy(d_concat.begin() + static_cast<std::ptrdiff_t>(d), d_concat.end(), dh.begin());
  }
}

}  // namespace

template <typename Real>
std::vector<Real> softmax(std::span<const Real> logits) {
  std::vector<Real> probs(logits.size());
  if (logits.empty()) return probs;
  const Real top = *std::max_element(logits.begin(), logits.end());
  Real total = 0;
  for (std::size_t c = 0; c < logits.size(); ++c) {
    probs[c] = std::exp(logits[c] - top);
    total += probs[c];
  }
  for (Real& p : probs) p /= total;
  return probs;
}

template <typename Real>
std::vector<Real> bilstm_forward(const ModelParams<Real>& params, std::span<const Real> input, std::size_t length,
                                 ForwardCache<Real>* cache) {
  const ModelDims& dims = params.dims;
  const std::size_t d = dims.input_dim, h = dims.hidden;
  if (length == 0) throw ContractError("bilstm_forward: length must be >= 1");
  if (input.size() != length * d) throw ContractError("bilstm_forward: input must be length x input_dim");
  if (!all_finite(input)) throw NumericError("bilstm_forward: non-finite input vector");

  ForwardCache<Real> local;
  ForwardCache<Real>& c = cache ? *cache : local;
  c.length = length;
  c.sentence.assign(2 * h, Real(0));
  std::span<Real> sentence(c.sentence);
  run_direction(params.forward, input, length, d, h, false, c.forward, sentence.first(h));
  run_direction(params.backward, input, length, d, h, true, c.backward, sentence.last(h));

  c.logits.assign(params.out_b.begin(), params.out_b.end());
  simd::kernels<Real>().gemv_accumulate(c.sentence.data(), 2 * h, params.out_w.data(), dims.classes,
                                        c.logits.data());
  if (!all_finite<Real>(c.logits)) throw NumericError("bilstm_forward: non-finite logits (check parameters)");
  c.probs = softmax<Real>(c.logits);
  return c.probs;
}

template <typename Real>
void bilstm_backward(const ModelParams<Real>& params, const ForwardCache<Real>& cache, int label, Real scale,
                     ModelParams<Real>& grads, std::span<Real> d_input) {
  const ModelDims& dims = params.dims;
  const std::size_t d = dims.input_dim, h = dims.hidden;
  if (label < 0 || static_cast<std::size_t>(label) >= dims.classes) throw ContractError("bilstm_backward: bad label");
  if (d_input.size() != cache.length * d) throw ContractError("bilstm_backward: d_input must be length x input_dim");
  std::fill(d_input.begin(), d_input.end(), Real(0));

  // d(-log softmax)/d logits = p - onehot
  std::vector<Real> d_logits(dims.classes);
  for (std::size_t c = 0; c < dims.classes; ++c) {
    d_logits[c] = scale * (cache.probs[c] - (static_cast<int>(c) == label ? Real(1) : Real(0)));
  }
  const auto& k = simd::kernels<Real>();
  k.rank1_update(cache.sentence.data(), 2 * h, d_logits.data(), dims.classes, grads.out_w.data());
  k.axpy(Real(1), d_logits.data(), grads.out_b.data(), dims.classes);
  std::vector<Real> d_sentence(2 * h);
  k.gemv_transposed(params.out_w.data(), 2 * h, dims.classes, d_logits.data(), d_sentence.data());

  const std::span<const Real> ds(d_sentence);
  backprop_direction(params.forward, cache.forward, d, h, false, ds.first(h), grads.forward, d_input);
  backprop_direction(params.backward, cache.backward, d, h, true, ds.last(h), grads.backward, d_input);
}

template std::vector<float> softmax<float>(std::span<const float>);
template std::vector<double> softmax<double>(std::span<const double>);
template std::vector<float> bilstm_forward<float>(const ModelParams<float>&, std::span<const float>, std::size_t,
                                                  ForwardCache<float>*);
template std::vector<double> bilstm_forward<double>(const ModelParams<double>&, std::span<const double>, std::size_t,
                                                    ForwardCache<double>*);
template void bilstm_backward<float>(const ModelParams<float>&, const ForwardCache<float>&, int, float,
                                     ModelParams<float>&, std::span<float>);
template void bilstm_backward<double>(const ModelParams<double>&, const ForwardCache<double>&, int, double,
                                      ModelParams<double>&, std::span<double>);

}  // namespace pathwalk::nn
