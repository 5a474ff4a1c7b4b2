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

#include "qamc/payoff.hpp"

#include <algorithm>
#include <cmath>

#include "qamc/error.hpp"

namespace qamc {

double PayoffSpec::operator()(double x) const {
  double v = 0.0;
  switch (kind) {
    case PayoffKind::euro_call: v = std::max(0.0, x - strike); break;
    case PayoffKind::euro_put: v = std::max(0.0, strike - x); break;
    case PayoffKind::digital_call: v = x >= strike ? 1.0 : 0.0; break;
    case PayoffKind::digital_put: v = x <= strike ? 1.0 : 0.0; break;
    case PayoffKind::futures: v = x - strike; break;
  }
  return scale * v;
}

void PayoffSpec::validate() const {
  if (!(strike > 0.0)) throw ValidationError("payoff.strike", "must be positive");
  if (!std::isfinite(scale) || scale == 0.0) {
    throw ValidationError("payoff.scale", "must be finite and nonzero");
  }
}

std::string_view to_string(PayoffKind kind) {
  switch (kind) {
    case PayoffKind::euro_call: return "euro_call";
    case PayoffKind::euro_put: return "euro_put";
    case PayoffKind::digital_call: return "digital_call";
    case PayoffKind::digital_put: return "digital_put";
    case PayoffKind::futures: return "futures";
  }
  return "unknown";
}

PayoffKind parse_payoff_kind(std::string_view name) {
  for (auto k : {PayoffKind::euro_call, PayoffKind::euro_put, PayoffKind::digital_call,
                 PayoffKind::digital_put, PayoffKind::futures}) {
    if (to_string(k) == name) return k;
  }
  throw ValidationError("payoff.kind", "unknown payoff kind '" + std::string(name) + "'");
}

std::vector<double> evaluate(const PayoffSpec& payoff, const std::vector<double>& grid) {
  std::vector<double> out(grid.size());
  std::transform(grid.begin(), grid.end(), out.begin(),
                 [&payoff](double x) { return payoff(x); });
  return out;
}

std::array<PayoffSpec, 7> reference_contracts(double s_t) {
  return {{{PayoffKind::euro_call, 0.5 * s_t},
           {PayoffKind::euro_put, 1.5 * s_t},
           {PayoffKind::digital_call, 0.5 * s_t},
           {PayoffKind::digital_put, 1.5 * s_t},
           {PayoffKind::futures, 0.5 * s_t},
           {PayoffKind::futures, 1.0 * s_t},
           {PayoffKind::futures, 1.5 * s_t}}};
}

}  // namespace qamc
