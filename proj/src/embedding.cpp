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

#include "hefi/embedding.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <vector>

#include "hefi/errors.hpp"
#include "hefi/ring.hpp"

namespace hefi {

CanonicalEmbedding::CanonicalEmbedding(std::size_t n) : n_(n) {
  if (n < 2 || !is_power_of_two(n)) throw ConfigError("ring dimension must be a power of two >= 2");
  tables_ = tables_for(n);
}

std::shared_ptr<const CanonicalEmbedding::Tables> CanonicalEmbedding::tables_for(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, std::shared_ptr<const Tables>> cache;
  const std::lock_guard<std::mutex> lock(mutex);
  if (auto it = cache.find(n); it != cache.end()) return it->second;

  const std::size_t two_n = 2 * n;
  std::vector<std::complex<double>> unit(two_n);
  for (std::size_t t = 0; t < two_n; ++t) {
    const double angle = std::numbers::pi * static_cast<double>(t) / static_cast<double>(n);
    unit[t] = {std::cos(angle), std::sin(angle)};
  }

  auto tables = std::make_shared<Tables>();
  tables->root_index.resize(n / 2);
  std::size_t g = 1;
  for (std::size_t j = 0; j < n / 2; ++j) {
    tables->root_index[j] = g;
    g = (g * 5) % two_n;
  }

  tables->v.resize(static_cast<Eigen::Index>(n / 2), static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n / 2; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      tables->v(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) =
          unit[(tables->root_index[j] * i) % two_n];
    }
  }
  cache.emplace(n, tables);
  return tables;
}

Eigen::VectorXd CanonicalEmbedding::interpolate(const Message& z) const {
  if (static_cast<std::size_t>(z.size()) != slots()) {
    throw DimensionMismatch("message must have N/2 slots");
  }
  return (tables_->v.adjoint() * z).real() * (2.0 / static_cast<double>(n_));
}

double l2_error(const Message& z, const Message& z_ref) {
  if (z.size() != z_ref.size()) throw DimensionMismatch("message lengths differ");
  return (z - z_ref).norm();
}

}  // namespace hefi
