// Copyright 2026 The QAMC Authors
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

#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace qamc {

enum class PayoffKind { euro_call, euro_put, digital_call, digital_put, futures };

struct PayoffSpec {
  PayoffKind kind = PayoffKind::euro_call;
  double strike = 0.5;
  /// Multiplies the payoff; -1 gives the short position.
  double scale = 1.0;

  double operator()(double x) const;
  void validate() const;
};

std::string_view to_string(PayoffKind kind);
/// Throws ValidationError naming the unknown kind.
PayoffKind parse_payoff_kind(std::string_view name);

/// Payoff evaluated on every grid point.
std::vector<double> evaluate(const PayoffSpec& payoff, const std::vector<double>& grid);

/// The seven contracts of the reference grid: call 0.5, put 1.5, digital call
/// 0.5, digital put 1.5, futures 0.5 / 1.0 / 1.5 (strikes relative to S_t).
std::array<PayoffSpec, 7> reference_contracts(double s_t = 1.0);

}  // namespace qamc
