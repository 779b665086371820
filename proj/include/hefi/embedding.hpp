/*
 * Copyright 2026 The hefi Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

#include <Eigen/Dense>

namespace hefi {

using Message = Eigen::VectorXcd;

// Canonical embedding of R[X]/(X^N + 1) into C^(N/2): slot j is the
// polynomial evaluated at zeta_j = exp(i*pi*(5^j mod 2N)/N). The conjugate
// roots carry the conjugate slots, so real coefficients round-trip.
class CanonicalEmbedding {
 public:
  // Tables depend only on N and are shared between instances.
  explicit CanonicalEmbedding(std::size_t n);

  std::size_t n() const { return n_; }
  std::size_t slots() const { return n_ / 2; }

  // Slot j, column i holds zeta_j^i.
  const Eigen::MatrixXcd& vandermonde() const { return tables_->v; }
  // Index t such that zeta_j = exp(i*pi*t/N).
  std::size_t root_index(std::size_t j) const { return tables_->root_index[j]; }

  // Evaluate real coefficients at the slot roots.
  template <class Derived>
  Message evaluate(const Eigen::MatrixBase<Derived>& coeffs) const {
    return tables_->v * coeffs.template cast<std::complex<double>>();
  }

  // Real coefficients m with m(zeta_j) = z_j and m(conj zeta_j) = conj z_j.
  Eigen::VectorXd interpolate(const Message& z) const;

 private:
  struct Tables {
    std::vector<std::size_t> root_index;
    Eigen::MatrixXcd v;
  };
  static std::shared_ptr<const Tables> tables_for(std::size_t n);

  std::size_t n_;
  std::shared_ptr<const Tables> tables_;
};

// sqrt(sum |a_i - b_i|^2).
double l2_error(const Message& z, const Message& z_ref);

}  // namespace hefi
