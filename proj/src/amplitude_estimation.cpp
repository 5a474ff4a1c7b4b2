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

#include "qamc/amplitude_estimation.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <numbers>

#include "qamc/error.hpp"
#include "qamc/rng.hpp"

namespace qamc {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kMaxRounds = 100000;

void require_open_unit(double v, const char* field) {
  if (!(v > 0.0 && v < 1.0)) throw ValidationError(field, "must lie in (0, 1)");
}

void require_epsilon(double eps) {
  if (!(eps > 0.0 && eps < 0.5)) throw ValidationError("epsilon", "must lie in (0, 0.5)");
}

void require_shots(std::uint64_t shots) {
  if (shots == 0) throw ValidationError("shots", "must be at least 1");
}

bool all_zero_projector(const EncodedOracle& o) {
  const auto p = o.good.pattern();
  const unsigned n = o.n_qubits();
  return p.value == 0 && o.good.terms().size() == n && p.mask == ((1ull << n) - 1);
}

// Two-sided Hoeffding half-width for a mean of `n` Bernoulli draws at failure
// probability exp(-log_inv_budget) * 2.
double hoeffding(double log_two_over_budget, std::uint64_t n) {
  return std::sqrt(log_two_over_budget / (2.0 * static_cast<double>(n)));
}

void finish(AEResult& r) {
  r.oracle_calls = calls_from_rounds(r.rounds);
  r.max_grover_power = 0;
  for (const auto& rd : r.rounds) r.max_grover_power = std::max(r.max_grover_power, rd.k);
  r.ci_lo = std::min(r.ci_lo, r.estimate);
  r.ci_hi = std::max(r.ci_hi, r.estimate);
}

}  // namespace

std::string_view to_string(AEAlgorithm algorithm) {
  switch (algorithm) {
    case AEAlgorithm::cae: return "cae";
    case AEAlgorithm::iqae: return "iqae";
    case AEAlgorithm::mlae: return "mlae";
    case AEAlgorithm::rqae: return "rqae";
  }
  return "unknown";
}

AEAlgorithm parse_ae_algorithm(std::string_view name) {
  for (auto a : {AEAlgorithm::cae, AEAlgorithm::iqae, AEAlgorithm::mlae, AEAlgorithm::rqae}) {
    if (to_string(a) == name) return a;
  }
  throw ValidationError("ae", "unknown amplitude estimation algorithm '" +
                                  std::string(name) + "'");
}

std::vector<std::uint64_t> make_schedule(std::string_view name) {
  const auto open = name.find('(');
  const auto close = name.rfind(')');
  if (open == std::string_view::npos || close != name.size() - 1 || close <= open + 1) {
    throw ValidationError("schedule", "expected lin(n) or exp(n), got '" +
                                          std::string(name) + "'");
  }
  const auto kind = name.substr(0, open);
  const auto arg = name.substr(open + 1, close - open - 1);
  unsigned n = 0;
  const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), n);
  if (ec != std::errc{} || ptr != arg.data() + arg.size() || n == 0 || n > 40) {
    throw ValidationError("schedule", "bad length in '" + std::string(name) + "'");
  }
  std::vector<std::uint64_t> out;
  if (kind == "lin") {
    for (unsigned j = 0; j < n; ++j) out.push_back(j);
  } else if (kind == "exp") {
    out.push_back(0);
    for (unsigned j = 1; j < n; ++j) out.push_back(std::uint64_t{1} << (j - 1));
  } else {
    throw ValidationError("schedule", "unknown schedule family '" + std::string(kind) + "'");
  }
  return out;
}

std::vector<std::string> default_schedule_names() {
  return {"lin(5)", "lin(10)", "exp(5)", "exp(7)", "exp(9)"};
}

void AEConfig::validate() const {
  switch (algorithm) {
    case AEAlgorithm::cae:
      if (aux_qubits < 2) throw ValidationError("aux_qubits", "must be at least 2");
      require_shots(shots);
      break;
    case AEAlgorithm::iqae:
      require_epsilon(epsilon);
      require_open_unit(alpha, "alpha");
      require_shots(shots);
      break;
    case AEAlgorithm::mlae:
      if (schedule.empty()) throw ValidationError("schedule", "must not be empty");
      require_shots(shots);
      if (ns < 2) throw ValidationError("ns", "must be at least 2");
      if (!(delta > 0.0 && delta < kPi / 4)) {
        throw ValidationError("delta", "must lie in (0, pi/4)");
      }
      break;
    case AEAlgorithm::rqae:
      require_epsilon(epsilon);
      require_open_unit(gamma, "gamma");
      if (!(q > 1.0)) throw ValidationError("q", "amplification ratio must exceed 1");
      break;
  }
}

bool AEResult::has_flag(std::string_view f) const {
  return std::find(flags.begin(), flags.end(), f) != flags.end();
}

std::uint64_t calls_from_rounds(const std::vector<RoundLog>& rounds) {
  std::uint64_t total = 0;
  for (const auto& r : rounds) total += r.shots * (2 * r.k + 1);
  return total;
}

// ---------------------------------------------------------------------------
// AmplifiedSampler

AmplifiedSampler::AmplifiedSampler(EncodedOracle oracle)
    : oracle_(std::move(oracle)), grover_(grover(oracle_)) {
  CallCounter cc;
  const auto s = prepare(oracle_, &cc);
  state_.assign(s.amplitudes().begin(), s.amplitudes().end());
  state_calls_ = cc.calls;
}

void AmplifiedSampler::advance_to(std::uint64_t k) {
  if (k < state_k_) {
    CallCounter cc;
    const auto s = prepare(oracle_, &cc);
    state_.assign(s.amplitudes().begin(), s.amplitudes().end());
    state_calls_ = cc.calls;
    state_k_ = 0;
  }
  std::uint64_t d = k - state_k_;
  if (d == 0) return;

  const double dim = static_cast<double>(state_.size());
  const double per_q = static_cast<double>(kernel_passes(grover_)) * dim;
  const bool narrow = grover_.width() <= 8;
  bool use_ladder = false;
  if (narrow) {
    const unsigned needed = static_cast<unsigned>(std::bit_width(d));
    const unsigned built = ladder_ ? ladder_->levels_built() : 0;
    double ladder_cost = static_cast<double>(std::popcount(d)) * dim * dim;
    if (needed > built) ladder_cost += static_cast<double>(needed - built) * dim * dim * dim;
    if (!ladder_) ladder_cost += dim * per_q;
    use_ladder = ladder_cost < static_cast<double>(d) * per_q;
  }

  CallCounter cc;
  if (use_ladder) {
    if (!ladder_) ladder_.emplace(grover_);
    for (unsigned j = 0; d != 0; ++j, d >>= 1) {
      if (d & 1) apply_in_place(ladder_->level(j), state_, &cc);
    }
  } else {
    for (std::uint64_t i = 0; i < d; ++i) apply_in_place(grover_, state_, &cc);
  }
  state_calls_ += cc.calls;
  state_k_ = k;
}

double AmplifiedSampler::probability_after(std::uint64_t k) {
  advance_to(k);
  return std::clamp(kernels::omp::pattern_weight(state_, oracle_.good.pattern()), 0.0, 1.0);
}

std::uint64_t AmplifiedSampler::sample(std::uint64_t k, std::uint64_t shots,
                                       std::uint64_t seed, CallCounter* probe) {
  const double p = probability_after(k);
  if (probe) probe->calls += shots * state_calls_;
  return sample_binomial(p, shots, seed);
}

// ---------------------------------------------------------------------------
// Canonical amplitude estimation (phase estimation on Q)

AEResult cae_estimate(const EncodedOracle& oracle, unsigned aux_qubits,
                      std::uint64_t shots, std::uint64_t seed, CallCounter* probe,
                      unsigned qubit_cap) {
  if (aux_qubits < 2) throw ValidationError("aux_qubits", "must be at least 2");
  require_shots(shots);
  validate(oracle);
  const unsigned n_o = oracle.n_qubits();
  const unsigned total = n_o + aux_qubits;
  check_width(total, qubit_cap);

  const GateProgram q = grover(oracle);
  GateProgram circuit;
  circuit.add_oracle_call(oracle.program);
  std::vector<unsigned> aux(aux_qubits);
  for (unsigned j = 0; j < aux_qubits; ++j) {
    aux[j] = n_o + j;
    circuit.add_gate(aux[j], gates::hadamard());
  }
  if (q.width() <= 8) {
    PowerLadder ladder(q);
    for (unsigned j = 0; j < aux_qubits; ++j) {
      circuit.add_controlled(Projector::single(aux[j], true), share(ladder.level(j)));
    }
  } else {
    for (unsigned j = 0; j < aux_qubits; ++j) {
      circuit.add_controlled(Projector::single(aux[j], true),
                             share(power(q, std::uint64_t{1} << j, 0)));
    }
  }
  circuit.append(adjoint(qft(aux)));

  std::vector<cplx> amps(std::size_t{1} << total, cplx{});
  amps[0] = 1.0;
  CallCounter cc;
  apply_in_place(circuit, amps, &cc);
  if (probe) probe->calls += shots * cc.calls;

  const std::size_t m = std::size_t{1} << aux_qubits;
  const std::size_t block = std::size_t{1} << n_o;
  std::vector<double> cdf(m);
  double acc = 0.0;
  for (std::size_t y = 0; y < m; ++y) {
    double py = 0.0;
    for (std::size_t o = 0; o < block; ++o) py += std::norm(amps[(y << n_o) | o]);
    acc += py;
    cdf[y] = acc;
  }

  PhiloxEngine engine(seed);
  std::vector<std::uint64_t> counts(m, 0);
  std::vector<double> values;
  values.reserve(shots);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = engine.uniform() * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const auto y = static_cast<std::size_t>(std::min<std::ptrdiff_t>(
        it - cdf.begin(), static_cast<std::ptrdiff_t>(m - 1)));
    ++counts[y];
    values.push_back(std::abs(std::sin(kPi * static_cast<double>(y) / static_cast<double>(m))));
  }
  const auto mode = static_cast<std::size_t>(
      std::max_element(counts.begin(), counts.end()) - counts.begin());

  AEResult r;
  r.estimate = std::abs(std::sin(kPi * static_cast<double>(mode) / static_cast<double>(m)));
  std::sort(values.begin(), values.end());
  const auto at = [&values](double frac) {
    const auto idx = static_cast<std::size_t>(
        std::floor(frac * static_cast<double>(values.size() - 1) + 0.5));
    return values[std::min(idx, values.size() - 1)];
  };
  r.ci_lo = at(0.025);
  r.ci_hi = at(0.975);
  r.rounds.push_back({(std::uint64_t{1} << aux_qubits) - 1, shots, counts[mode], 0.0, 0.0,
                      "modal outcome y=" + std::to_string(mode)});
  finish(r);
  return r;
}

// ---------------------------------------------------------------------------
// Iterative amplitude estimation

namespace {

struct NextPower {
  std::uint64_t k;
  bool upper;
};

// Angles are in units of 2*pi, so theta lies in [0, 1/4].
NextPower find_next_k(std::uint64_t k, bool upper, double theta_l, double theta_u) {
  const auto old_scaling = static_cast<std::int64_t>(4 * k + 2);
  const double width = theta_u - theta_l;
  if (!(width > 0.0)) return {k, upper};
  const double max_d = std::floor(1.0 / (2.0 * width));
  const auto max_scaling = static_cast<std::int64_t>(std::min(max_d, 4.0e15));
  std::int64_t scaling = max_scaling - (((max_scaling - 2) % 4) + 4) % 4;
  while (scaling >= 2 * old_scaling) {
    const double s = static_cast<double>(scaling);
    const double tmin = s * theta_l - std::floor(s * theta_l);
    const double tmax = s * theta_u - std::floor(s * theta_u);
    if (tmin <= tmax && tmax <= 0.5 && tmin <= 0.5) {
      return {static_cast<std::uint64_t>((scaling - 2) / 4), true};
    }
    if (tmax >= 0.5 && tmax >= tmin && tmin >= 0.5) {
      return {static_cast<std::uint64_t>((scaling - 2) / 4), false};
    }
    scaling -= 4;
  }
  return {k, upper};
}

}  // namespace

AEResult iqae_estimate(const EncodedOracle& oracle, double epsilon, double alpha,
                       std::uint64_t shots, std::uint64_t seed, CallCounter* probe,
                       unsigned stall_rounds) {
  require_epsilon(epsilon);
  require_open_unit(alpha, "alpha");
  require_shots(shots);
  AmplifiedSampler sampler(oracle);

  const auto amp = [](double t) { return std::sin(2.0 * kPi * t); };
  double theta_l = 0.0, theta_u = 0.25;
  std::uint64_t k = 0;
  bool upper = true;
  std::uint64_t pooled_shots = 0, pooled_hits = 0;
  std::uint64_t stage = 0;
  unsigned held = 0;
  AEResult r;

  for (std::uint64_t round = 1; amp(theta_u) - amp(theta_l) > 2.0 * epsilon; ++round) {
    if (round > kMaxRounds) throw std::runtime_error("IQAE exceeded its round limit");
    const auto next = find_next_k(k, upper, theta_l, theta_u);
    if (round > 1 && next.k == k) {
      ++held;
    } else {
      held = 0;
      ++stage;
      pooled_shots = 0;
      pooled_hits = 0;
    }
    k = next.k;
    upper = next.upper;

    const std::uint64_t hits = sampler.sample(k, shots, derive_seed(seed, round), probe);
    pooled_shots += shots;
    pooled_hits += hits;

    // Geometric failure split over Grover-power stages: stage j gets
    // alpha / 2^j, shared by the pooled rounds that keep k fixed.
    const double log_term = std::log(2.0 / alpha) + static_cast<double>(stage) * std::numbers::ln2;
    const double half = hoeffding(log_term, pooled_shots);
    const double p = static_cast<double>(pooled_hits) / static_cast<double>(pooled_shots);
    const double p_min = std::max(0.0, p - half);
    const double p_max = std::min(1.0, p + half);

    double t_min = 0.0, t_max = 0.0;
    if (upper) {
      t_min = std::acos(1.0 - 2.0 * p_min) / (2.0 * kPi);
      t_max = std::acos(1.0 - 2.0 * p_max) / (2.0 * kPi);
    } else {
      t_min = 1.0 - std::acos(1.0 - 2.0 * p_max) / (2.0 * kPi);
      t_max = 1.0 - std::acos(1.0 - 2.0 * p_min) / (2.0 * kPi);
    }
    const double scaling = static_cast<double>(4 * k + 2);
    // The interval lies inside one half-period of the scaled angle; take the
    // period index from the lower end so an upper end sitting exactly on the
    // boundary does not jump to the next period.
    const double period = std::floor(scaling * theta_l);
    theta_u = (period + t_max) / scaling;
    theta_l = (period + t_min) / scaling;
    theta_l = std::clamp(theta_l, 0.0, 0.25);
    theta_u = std::clamp(theta_u, theta_l, 0.25);

    RoundLog log{k, shots, hits, 0.0, alpha * std::exp2(-static_cast<double>(stage)), {}};
    if (held > 0 && held % stall_rounds == 0) {
      log.note = "k held at " + std::to_string(k) + " for " + std::to_string(held) + " rounds";
      if (!r.has_flag("stalled")) r.flags.emplace_back("stalled");
    }
    r.rounds.push_back(std::move(log));
  }

  r.ci_lo = amp(theta_l);
  r.ci_hi = amp(theta_u);
  r.estimate = 0.5 * (r.ci_lo + r.ci_hi);
  finish(r);
  return r;
}

// ---------------------------------------------------------------------------
// Maximum-likelihood amplitude estimation

std::vector<double> mlae_log_likelihood(const std::vector<RoundLog>& rounds,
                                        std::size_t ns, double delta, Backend backend) {
  std::vector<double> out(ns);
  const double lo = delta;
  const double step = (kPi / 2.0 - 2.0 * delta) / static_cast<double>(ns - 1);
  const auto eval = [&rounds, lo, step](std::size_t i) {
    const double theta = lo + step * static_cast<double>(i);
    double ll = 0.0;
    for (const auto& rd : rounds) {
      const double angle = static_cast<double>(2 * rd.k + 1) * theta;
      const double s = std::sin(angle);
      const double c = std::cos(angle);
      if (rd.hits > 0) ll += static_cast<double>(rd.hits) * std::log(s * s);
      if (rd.shots > rd.hits) ll += static_cast<double>(rd.shots - rd.hits) * std::log(c * c);
    }
    return ll;
  };
  if (backend == Backend::serial) {
    for (std::size_t i = 0; i < ns; ++i) out[i] = eval(i);
  } else {
    const auto n = static_cast<std::int64_t>(ns);
#pragma omp parallel for schedule(static) if (ns >= 2048)
    for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = eval(static_cast<std::size_t>(i));
  }
  return out;
}

AEResult mlae_estimate(const EncodedOracle& oracle, const std::vector<std::uint64_t>& schedule,
                       std::uint64_t shots, std::size_t ns, double delta,
                       std::uint64_t seed, CallCounter* probe) {
  AEConfig cfg;
  cfg.algorithm = AEAlgorithm::mlae;
  cfg.schedule = schedule;
  cfg.shots = shots;
  cfg.ns = ns;
  cfg.delta = delta;
  cfg.validate();

  AmplifiedSampler sampler(oracle);
  AEResult r;
  bool all_zero = true, all_one = true;
  for (std::size_t j = 0; j < schedule.size(); ++j) {
    const auto hits = sampler.sample(schedule[j], shots, derive_seed(seed, j + 1), probe);
    all_zero = all_zero && hits == 0;
    all_one = all_one && hits == shots;
    r.rounds.push_back({schedule[j], shots, hits, 0.0, 0.0, {}});
  }

  const auto ll = mlae_log_likelihood(r.rounds, ns, delta);
  const auto best = static_cast<std::size_t>(std::max_element(ll.begin(), ll.end()) - ll.begin());
  const double step = (kPi / 2.0 - 2.0 * delta) / static_cast<double>(ns - 1);
  const double theta = delta + step * static_cast<double>(best);

  if (all_zero || all_one) {
    r.flags.emplace_back("degenerate");
    r.rounds.back().note = all_zero ? "no hits in any round" : "all shots hit in every round";
  }
  if (best == 0 || best == ns - 1) r.flags.emplace_back("boundary");

  // Observed Fisher information at the maximizer.
  double info = 0.0;
  for (const auto& rd : r.rounds) {
    const double kk = static_cast<double>(2 * rd.k + 1);
    const double s = std::sin(kk * theta), c = std::cos(kk * theta);
    const double h = static_cast<double>(rd.hits);
    const double miss = static_cast<double>(rd.shots - rd.hits);
    info += 2.0 * kk * kk * (h / (s * s) + miss / (c * c));
  }
  const double sd = (std::isfinite(info) && info > 0.0) ? 1.0 / std::sqrt(info) : step;
  r.estimate = std::sin(theta);
  r.ci_lo = std::sin(std::max(0.0, theta - 1.96 * sd));
  r.ci_hi = std::sin(std::min(kPi / 2.0, theta + 1.96 * sd));
  finish(r);
  return r;
}

// ---------------------------------------------------------------------------
// Real amplitude estimation

EncodedOracle shift_oracle(const EncodedOracle& oracle, double b) {
  if (!(std::abs(b) <= 1.0)) throw ValidationError("shift", "must lie in [-1, 1]");
  validate(oracle);
  if (!oracle.is_signed() || !all_zero_projector(oracle)) {
    throw ValidationError("encoding",
                          "shifting needs a signed oracle with an all-zeros good state");
  }
  const unsigned anc = oracle.n_qubits();
  GateProgram call_a;
  call_a.add_oracle_call(oracle.program);
  GateProgram shift;
  const double s = std::sqrt(std::max(0.0, 1.0 - b * b));
  shift.add_gate(0, Matrix::real2x2(b, -s, s, b));

  GateProgram prog;
  prog.add_gate(anc, gates::hadamard());
  prog.add_controlled(Projector::single(anc, true), share(std::move(call_a)));
  prog.add_controlled(Projector::single(anc, false), share(std::move(shift)));
  prog.add_gate(anc, gates::hadamard());

  EncodedOracle out{share(std::move(prog)), Projector::all_zero(anc + 1), oracle.kind,
                    oracle.f_norm, oracle.data_qubits, oracle.ancilla_qubits + 1};
  validate(out);
  return out;
}

AEResult rqae_estimate(const EncodedOracle& oracle, double epsilon, double gamma, double q,
                       std::uint64_t shots_hint, std::uint64_t seed, CallCounter* probe) {
  require_epsilon(epsilon);
  require_open_unit(gamma, "gamma");
  if (!(q > 1.0)) throw ValidationError("q", "amplification ratio must exceed 1");
  if (!oracle.is_signed()) {
    throw ValidationError("encoding",
                          "RQAE needs a signed (direct or synthetic) encoding; the square-root "
                          "encoding discards the sign");
  }

  // Each round shrinks the worst-case interval width by q, from 2 down to
  // 2 * epsilon.
  const auto max_rounds = static_cast<std::uint64_t>(
      std::max(1.0, std::ceil(std::log(1.0 / epsilon) / std::log(q) - 1e-12)));
  const double budget = gamma / static_cast<double>(max_rounds);
  const double log_term = std::log(2.0 / budget);
  const auto shots_for = [&](double half_width) {
    const double n = std::ceil(log_term / (2.0 * half_width * half_width));
    return std::max<std::uint64_t>(std::max<std::uint64_t>(shots_hint, 1),
                                   static_cast<std::uint64_t>(n));
  };

  AEResult r;
  r.is_signed = true;

  // Round 0: shift b = 1 puts (a + 1) / 2 >= 0 on the good state, so the
  // measured probability determines a with its sign.
  double a_min = -1.0, a_max = 1.0;
  {
    const double target = 1.0 / (2.0 * q * q);
    const std::uint64_t n = shots_for(target);
    AmplifiedSampler sampler(shift_oracle(oracle, 1.0));
    const auto hits = sampler.sample(0, n, derive_seed(seed, 0), probe);
    const double p = static_cast<double>(hits) / static_cast<double>(n);
    const double half = hoeffding(log_term, n);
    a_min = 2.0 * std::sqrt(std::max(0.0, p - half)) - 1.0;
    a_max = 2.0 * std::sqrt(std::min(1.0, p + half)) - 1.0;
    r.rounds.push_back({0, n, hits, 1.0, budget, {}});
  }

  for (std::uint64_t round = 1; 0.5 * (a_max - a_min) > epsilon; ++round) {
    if (round > kMaxRounds) throw std::runtime_error("RQAE exceeded its round limit");
    const double b = std::clamp(-a_min, -1.0, 1.0);
    const double width = a_max - a_min;
    const double theta_max = std::asin(std::min(1.0, 0.5 * width));
    const auto k = static_cast<std::uint64_t>(
        std::max(0.0, std::floor((kPi / (2.0 * theta_max) - 1.0) / 2.0)));
    const double kk = static_cast<double>(2 * k + 1);
    const double s = std::sin(kk * width / (2.0 * q));
    const std::uint64_t n = shots_for(0.5 * s * s);

    AmplifiedSampler sampler(shift_oracle(oracle, b));
    const auto hits = sampler.sample(k, n, derive_seed(seed, round), probe);
    const double p = static_cast<double>(hits) / static_cast<double>(n);
    const double half = hoeffding(log_term, n);
    const double th_lo = std::asin(std::sqrt(std::max(0.0, p - half))) / kk;
    const double th_hi = std::asin(std::sqrt(std::min(1.0, p + half))) / kk;
    const double base = -b;
    const double new_min = std::max(a_min, base + 2.0 * std::sin(th_lo));
    const double new_max = std::min(a_max, base + 2.0 * std::sin(th_hi));
    RoundLog log{k, n, hits, b, budget, {}};
    if (new_min <= new_max) {
      a_min = new_min;
      a_max = new_max;
    } else {
      // Disjoint from the previous interval: a failure event happened.
      // Keep the fresh measurement.
      a_min = base + 2.0 * std::sin(th_lo);
      a_max = base + 2.0 * std::sin(th_hi);
      log.note = "interval reset";
      r.flags.emplace_back("interval_reset");
    }
    r.rounds.push_back(std::move(log));
  }

  r.ci_lo = a_min;
  r.ci_hi = a_max;
  r.estimate = 0.5 * (a_min + a_max);
  finish(r);
  return r;
}

AEResult estimate(const EncodedOracle& oracle, const AEConfig& config, CallCounter* probe) {
  config.validate();
  switch (config.algorithm) {
    case AEAlgorithm::cae:
      return cae_estimate(oracle, config.aux_qubits, config.shots, config.seed, probe);
    case AEAlgorithm::iqae:
      return iqae_estimate(oracle, config.epsilon, config.alpha, config.shots, config.seed,
                           probe, config.stall_rounds);
    case AEAlgorithm::mlae:
      return mlae_estimate(oracle, config.schedule, config.shots, config.ns, config.delta,
                           config.seed, probe);
    case AEAlgorithm::rqae:
      return rqae_estimate(oracle, config.epsilon, config.gamma, config.q, 0, config.seed,
                           probe);
  }
  throw std::logic_error("unhandled algorithm");
}

}  // namespace qamc
