// Copyright 2026 The VCodes Authors
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

#include <stdexcept>

#include "vcodes/metrics/metrics.hpp"

namespace vcodes::metrics {

double pass_at_k(const PassAtKInput& input) {
  if (input.n < 1) throw std::invalid_argument("pass_at_k: n must be >= 1");
  if (input.c < 0 || input.c > input.n)
    throw std::invalid_argument("pass_at_k: c out of range");
  if (input.k < 1 || input.k > input.n)
    throw std::invalid_argument("pass_at_k: k out of range");
  if (input.c == 0) return 0.0;
  if (input.n - input.c < input.k) return 1.0;
  // 1 - prod_{i=0}^{k-1} (n-c-i)/(n-i), never forming large factorials.
  double miss = 1.0;
  for (int i = 0; i < input.k; ++i) {
    miss *= static_cast<double>(input.n - input.c - i) /
            static_cast<double>(input.n - i);
  }
  return 1.0 - miss;
}

}  // namespace vcodes::metrics
