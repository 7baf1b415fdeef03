// Copyright 2026 The mcmcb Authors
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


#ifndef MCMCB_VERIFY_HPP
#define MCMCB_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace mcmcb {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Exact-mode self checks: transform round trips, dual against Kraus form,
/// the twirl fixed point, the path identity, gauge invariance and the graph
/// invariants. Never throws; exceptions become failed checks.
std::vector<CheckResult> run_invariant_suite(uint64_t seed);

}  // namespace mcmcb

#endif  // MCMCB_VERIFY_HPP
