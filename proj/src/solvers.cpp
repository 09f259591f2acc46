#include "annealbench/solvers.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <numbers>
#include <numeric>

#include "annealbench/errors.hpp"
#include "annealbench/thread_pool.hpp"

namespace annealbench {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Bits random_bits(std::size_t n, Rng& rng) {
  Bits x(n);
  std::size_t i = 0;
  while (i < n) {
    auto w = rng.next();
    for (int b = 0; b < 64 && i < n; ++b, ++i, w >>= 1) x[i] = static_cast<std::uint8_t>(w & 1u);
  }
  return x;
}

Bits start_state(const QuboMatrix& q, const Bits& initial, Rng& rng) {
  if (initial.empty()) return random_bits(q.size(), rng);
  check_bits(q, initial);
  return initial;
}

void require_nonempty(const QuboProblem& p) {
  if (p.size() == 0) throw EmptyInputError("QUBO has no variables");
}

struct TracePoint {
  std::size_t iteration;
  double best;
};

}  // namespace

BetaRange auto_beta_range(const QuboMatrix& q) {
  double max_field = 0.0;
  for (std::size_t k = 0; k < q.size(); ++k) {
    double f = std::abs(q.linear()[k]);
    for (const auto& nb : q.neighbors(k)) f += std::abs(nb.weight);
    max_field = std::max(max_field, f);
  }
  double min_coef = 0.0;
  for (const auto& t : q.terms()) {
    const double a = std::abs(t.value);
    if (a > 0.0 && (min_coef == 0.0 || a < min_coef)) min_coef = a;
  }
  if (max_field == 0.0) return {1.0, 1.0};
  return {std::log(2.0) / max_field, std::log(100.0) / min_coef};
}

std::vector<double> geometric_ladder(double first, double last, std::size_t count) {
  if (count == 0) return {};
  if (!(first > 0.0) || !(last > 0.0)) throw ParameterError("ladder ends must be positive");
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double t = count == 1 ? 1.0 : static_cast<double>(i) / static_cast<double>(count - 1);
    out[i] = first * std::pow(last / first, t);
  }
  return out;
}

void SaConfig::validate() const {
  if (num_reads < 1) throw ParameterError("num_reads must be >= 1");
  if (sweeps < 1) throw ParameterError("sweeps must be >= 1");
  if (beta_range && !(beta_range->hot > 0.0 && beta_range->hot < beta_range->cold))
    throw ParameterError("explicit beta range needs 0 < beta_hot < beta_cold");
  for (double b : beta_schedule)
    if (!(b >= 0.0) || !std::isfinite(b)) throw ParameterError("beta schedule entries must be >= 0");
}

void PtConfig::validate() const {
  if (replicas < 1) throw ParameterError("replicas must be >= 1");
  if (iterations < 1) throw ParameterError("iterations must be >= 1");
  if (offset_increase_rate < 0.0) throw ParameterError("offset_increase_rate must be >= 0");
  if (beta_range && !(beta_range->hot > 0.0 && beta_range->hot < beta_range->cold))
    throw ParameterError("explicit beta range needs 0 < beta_hot < beta_cold");
  if (!beta_ladder.empty() && beta_ladder.size() != replicas)
    throw ParameterError("beta ladder size must equal the replica count");
}

void TabuConfig::validate() const {
  if (tenure < 1) throw ParameterError("tenure must be >= 1");
  if (max_iterations < 1) throw ParameterError("max_iterations must be >= 1");
  if (restarts < 1) throw ParameterError("restarts must be >= 1");
}

void PermAnnealConfig::validate() const {
  if (iterations < 1) throw ParameterError("iterations must be >= 1");
  if (t0 > 0.0 && t_end > 0.0 && t0 < t_end) throw ParameterError("need T0 >= T_end > 0");
}

FlipState::FlipState(const QuboMatrix& q, Bits x) : q_(&q), x_(std::move(x)) {
  check_bits(q, x_);
  field_.assign(q.linear().begin(), q.linear().end());
  for (const auto& t : q.terms()) {
    if (t.i == t.j) continue;
    if (x_[t.j]) field_[t.i] += t.value;
    if (x_[t.i]) field_[t.j] += t.value;
  }
  energy_ = annealbench::energy(q, x_);
}

void FlipState::flip(std::size_t k) noexcept {
  const double sign = x_[k] ? -1.0 : 1.0;
  energy_ += delta(k);
  for (const auto& nb : q_->neighbors(k)) field_[nb.index] += sign * nb.weight;
  x_[k] ^= 1u;
}

SampleSet simulated_annealing(const QuboProblem& p, const SaConfig& cfg) {
  cfg.validate();
  require_nonempty(p);
  const auto t0 = Clock::now();
  const auto& q = p.qubo;
  const auto n = q.size();

  std::vector<double> betas;
  if (!cfg.beta_schedule.empty()) {
    // Spread the custom ladder evenly over the sweeps.
    betas.resize(cfg.sweeps);
    for (std::size_t s = 0; s < cfg.sweeps; ++s)
      betas[s] = cfg.beta_schedule[s * cfg.beta_schedule.size() / cfg.sweeps];
  } else {
    const auto r = cfg.beta_range ? *cfg.beta_range : auto_beta_range(q);
    betas = geometric_ladder(r.hot, r.cold, cfg.sweeps);
  }

  const std::size_t every = std::max<std::size_t>(1, cfg.sweeps / 100);
  SampleSet out;
  out.samples.resize(cfg.num_reads);
  std::vector<std::vector<TracePoint>> traces(cfg.trace ? cfg.num_reads : 0);

  parallel_for(cfg.num_reads, [&](std::size_t r) {
    auto rng = Rng::stream(cfg.seed, "sa.read", r);
    FlipState s(q, start_state(q, cfg.initial_state, rng));
    double best = s.energy();
    for (std::size_t sw = 0; sw < cfg.sweeps; ++sw) {
      const double beta = betas[sw];
      for (std::size_t k = 0; k < n; ++k) {
        const double d = s.delta(k);
        if (d <= 0.0) {
          s.flip(k);
        } else {
          const double x = beta * d;
          if (x < 40.0 && rng.uniform() < std::exp(-x)) s.flip(k);
        }
      }
      best = std::min(best, s.energy());
      if (cfg.trace && (sw % every == 0 || sw + 1 == cfg.sweeps)) traces[r].push_back({sw + 1, best});
    }
    out.samples[r].bits = s.bits();
  });

  for (std::size_t r = 0; r < traces.size(); ++r)
    for (const auto& tp : traces[r]) cfg.trace(r, tp.iteration, tp.best);
  p.annotate(out);
  out.solve_seconds = seconds_since(t0);
  out.solver_label = "sa";
  return out;
}

namespace {

constexpr std::size_t kBands = 64;
constexpr std::size_t kDirectBands = 3;

struct Band {
  double q;       // 2^-j, the acceptance bound of band j
  double log1mq;  // log1p(-q) for the geometric skips
};

const std::array<Band, kBands>& bands() {
  static const auto table = [] {
    std::array<Band, kBands> t{};
    for (std::size_t j = 0; j < kBands; ++j) {
      t[j].q = std::ldexp(1.0, -static_cast<int>(j));
      t[j].log1mq = j ? std::log1p(-t[j].q) : 0.0;
    }
    return t;
  }();
  return table;
}

}  // namespace

std::optional<std::size_t> parallel_trial_step(FlipState& s, double beta, double offset, Rng& rng,
                                               std::vector<std::uint32_t>& scratch) {
  const auto n = s.bits().size();
  scratch.resize(3 * n + 1);
  std::uint32_t* certain = scratch.data();
  std::uint32_t* band = scratch.data() + n;
  std::uint32_t* sorted = scratch.data() + 2 * n;
  std::array<std::uint32_t, kBands + 1> start{};
  const double scale = beta / std::numbers::ln2;
  std::size_t nc = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double d = s.delta(k) - offset;
    const bool ok = d <= 0.0;
    certain[nc] = static_cast<std::uint32_t>(k);
    nc += ok;
    // Band j holds candidates with 2^-(j+1) < p <= 2^-j; the last band is open.
    const auto j = ok ? 0u : static_cast<std::uint32_t>(std::min(scale * d, static_cast<double>(kBands - 1)));
    band[k] = ok ? kBands : j;
    start[j + 1] += !ok;
  }
  for (std::size_t j = 0; j < kBands; ++j) start[j + 1] += start[j];
  const std::size_t nu = start[kBands];
  // Certain candidates land past nu, where fill[kBands] starts.
  auto fill = start;
  for (std::size_t k = 0; k < n; ++k) if (band[k] < kBands) sorted[fill[band[k]]++] = static_cast<std::uint32_t>(k);
  // Each band j member must be accepted with its own p <= q = 2^-j. Dense
  // bands draw per member; sparse ones visit with probability q through
  // geometric skips and then accept with p/q.
  const auto& table = bands();
  const auto p_of = [&](std::uint32_t k) { return std::exp(-beta * (s.delta(k) - offset)); };
  for (std::size_t j = 0; j < kBands && start[j] < nu; ++j) {
    const std::size_t lo = start[j], hi = start[j + 1];
    const double q = table[j].q;
    const bool closed = j + 1 < kBands;
    if (j < kDirectBands) {
      for (std::size_t pos = lo; pos < hi; ++pos) {
        const double u = rng.uniform();
        if (u >= q) continue;
        if (u < 0.5 * q || u < p_of(sorted[pos])) certain[nc++] = sorted[pos];
      }
      continue;
    }
    for (std::size_t pos = lo; pos < hi; ++pos) {
      // u <= 1 - r*q implies u <= (1 - q)^r, so the skip passes the band end.
      const double u0 = rng.uniform_open_closed();
      const auto r = static_cast<double>(hi - pos);
      if (u0 <= 1.0 - r * q) break;
      const double skip = std::floor(std::log(u0) / table[j].log1mq);
      if (skip >= r) break;
      pos += static_cast<std::size_t>(skip);
      const auto k = sorted[pos];
      const double u = rng.uniform();
      if ((u < 0.5 && closed) || u * q < p_of(k)) certain[nc++] = k;
    }
  }
  if (nc == 0) return std::nullopt;
  const std::size_t k = certain[rng.below(nc)];
  s.flip(k);
  return k;
}

SampleSet parallel_tempering(const QuboProblem& p, const PtConfig& cfg) {
  cfg.validate();
  require_nonempty(p);
  const auto t0 = Clock::now();
  const auto& q = p.qubo;
  const auto w_count = cfg.replicas;

  std::vector<double> ladder = cfg.beta_ladder;
  if (ladder.empty()) {
    const auto r = cfg.beta_range ? *cfg.beta_range : auto_beta_range(q);
    ladder = geometric_ladder(r.hot, r.cold, w_count);
  }
  const double offset_step = cfg.offset_increase_rate * q.mean_abs_coefficient();

  struct Walker {
    FlipState state;
    Rng rng;
    Bits best_bits;
    double best;
    double offset = 0.0;
    std::vector<std::uint32_t> scratch;
  };
  std::vector<Walker> walkers;
  walkers.reserve(w_count);
  for (std::size_t w = 0; w < w_count; ++w) {
    auto rng = Rng::stream(cfg.seed, "pt.walker", w);
    FlipState s(q, start_state(q, cfg.initial_state, rng));
    Bits b = s.bits();
    const double e = s.energy();
    walkers.push_back({std::move(s), rng, std::move(b), e, 0.0, {}});
  }
  std::vector<std::size_t> at_level(w_count);
  std::iota(at_level.begin(), at_level.end(), std::size_t{0});
  std::vector<double> walker_beta(w_count);
  auto swap_rng = Rng::stream(cfg.seed, "pt.swap");

  const std::size_t block = cfg.swap_interval ? cfg.swap_interval : cfg.iterations;
  std::size_t done = 0, round = 0, next_trace = 0;
  while (done < cfg.iterations) {
    const std::size_t steps = std::min(block, cfg.iterations - done);
    for (std::size_t l = 0; l < w_count; ++l) walker_beta[at_level[l]] = ladder[l];
    parallel_for(w_count, [&](std::size_t w) {
      auto& wk = walkers[w];
      const double beta = walker_beta[w];
      for (std::size_t it = 0; it < steps; ++it) {
        if (parallel_trial_step(wk.state, beta, wk.offset, wk.rng, wk.scratch)) {
          wk.offset = 0.0;
          if (wk.state.energy() < wk.best) {
            wk.best = wk.state.energy();
            wk.best_bits = wk.state.bits();
          }
        } else {
          wk.offset += offset_step;
        }
      }
    });
    done += steps;
    if (cfg.swap_interval && w_count > 1) {
      for (std::size_t l = round % 2; l + 1 < w_count; l += 2) {
        const auto a = at_level[l], b = at_level[l + 1];
        const double x = (ladder[l] - ladder[l + 1]) *
                         (walkers[a].state.energy() - walkers[b].state.energy());
        if (x >= 0.0 || swap_rng.uniform() < std::exp(x)) std::swap(at_level[l], at_level[l + 1]);
      }
      ++round;
    }
    if (cfg.trace && (done >= next_trace || done == cfg.iterations)) {
      double best = walkers[0].best;
      for (const auto& wk : walkers) best = std::min(best, wk.best);
      cfg.trace(0, done, best);
      next_trace = done + std::max<std::size_t>(1, cfg.trace_every);
    }
  }

  SampleSet out;
  out.samples.resize(w_count);
  for (std::size_t w = 0; w < w_count; ++w) out.samples[w].bits = std::move(walkers[w].best_bits);
  p.annotate(out);
  out.solve_seconds = seconds_since(t0);
  out.solver_label = "pt";
  return out;
}

SampleSet tabu_search(const QuboProblem& p, const TabuConfig& cfg) {
  cfg.validate();
  require_nonempty(p);
  const auto t0 = Clock::now();
  const auto& q = p.qubo;
  const auto n = q.size();
  const std::size_t every = std::max<std::size_t>(1, cfg.max_iterations / 100);

  SampleSet out;
  out.samples.resize(cfg.restarts);
  std::vector<std::vector<TracePoint>> traces(cfg.trace ? cfg.restarts : 0);
  parallel_for(cfg.restarts, [&](std::size_t r) {
    auto rng = Rng::stream(cfg.seed, "tabu.restart", r);
    FlipState s(q, r == 0 ? start_state(q, cfg.initial_state, rng) : random_bits(n, rng));
    Bits best_bits = s.bits();
    double best = s.energy();
    std::vector<std::size_t> tabu_until(n, 0);
    for (std::size_t it = 1; it <= cfg.max_iterations; ++it) {
      std::size_t pick = n, ties = 0;
      double pick_d = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const double d = s.delta(k);
        const bool admissible = tabu_until[k] < it || s.energy() + d < best - 1e-12 * (1 + std::abs(best));
        if (!admissible) continue;
        if (pick == n || d < pick_d) {
          pick = k;
          pick_d = d;
          ties = 1;
        } else if (d == pick_d && rng.below(++ties) == 0) {
          pick = k;
        }
      }
      if (pick == n) {
        pick = static_cast<std::size_t>(
            std::min_element(tabu_until.begin(), tabu_until.end()) - tabu_until.begin());
      }
      s.flip(pick);
      tabu_until[pick] = it + cfg.tenure;
      if (s.energy() < best) {
        best = s.energy();
        best_bits = s.bits();
      }
      if (cfg.trace && (it % every == 0 || it == cfg.max_iterations)) traces[r].push_back({it, best});
    }
    out.samples[r].bits = std::move(best_bits);
  });
  for (std::size_t r = 0; r < traces.size(); ++r)
    for (const auto& tp : traces[r]) cfg.trace(r, tp.iteration, tp.best);
  p.annotate(out);
  out.solve_seconds = seconds_since(t0);
  out.solver_label = "tabu";
  return out;
}

SampleSet random_sampler(const QuboProblem& p, std::size_t reads, std::uint64_t seed) {
  if (reads < 1) throw ParameterError("reads must be >= 1");
  const auto t0 = Clock::now();
  SampleSet out;
  out.samples.resize(reads);
  for (std::size_t r = 0; r < reads; ++r) {
    auto rng = Rng::stream(seed, "random.read", r);
    if (p.kind == ProblemKind::qap) {
      Permutation perm(p.qap->size());
      std::iota(perm.begin(), perm.end(), 0u);
      rng.shuffle(perm.begin(), perm.end());
      out.samples[r].bits = permutation_to_bits(perm);
    } else {
      out.samples[r].bits = random_bits(p.size(), rng);
    }
  }
  p.annotate(out);
  out.solve_seconds = seconds_since(t0);
  out.solver_label = "random";
  return out;
}

namespace {

double energy_scale(const QuboMatrix& q) {
  double s = 1.0 + std::abs(q.offset());
  for (const auto& t : q.terms()) s += std::abs(t.value);
  return s;
}

// Visits every configuration in Gray-code order with its incremental energy.
template <class F>
void gray_walk(const QuboMatrix& q, F&& visit) {
  const auto n = q.size();
  FlipState s(q, Bits(n, 0));
  visit(s.bits(), s.energy());
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t t = 1; t < total; ++t) {
    s.flip(static_cast<std::size_t>(std::countr_zero(t)));
    visit(s.bits(), s.energy());
  }
}

void check_capacity(const QuboMatrix& q, std::size_t max_n) {
  if (q.size() > max_n || q.size() > 40)
    throw CapacityError("brute force limited to n <= " + std::to_string(std::min<std::size_t>(max_n, 40)) +
                        " (got " + std::to_string(q.size()) + ")");
}

}  // namespace

std::vector<Bits> enumerate_minimizers(const QuboMatrix& q, double tol, std::size_t max_n) {
  check_capacity(q, max_n);
  const double scale = energy_scale(q);
  if (tol < 0.0) tol = 1e-9 * scale;
  const double loose = std::max(tol, 1e-7 * scale);
  double approx_min = std::numeric_limits<double>::infinity();
  gray_walk(q, [&](const Bits&, double e) { approx_min = std::min(approx_min, e); });
  std::vector<std::pair<double, Bits>> cand;
  gray_walk(q, [&](const Bits& x, double e) {
    if (e <= approx_min + loose) cand.emplace_back(energy(q, x), x);
  });
  double exact_min = std::numeric_limits<double>::infinity();
  for (const auto& c : cand) exact_min = std::min(exact_min, c.first);
  std::vector<Bits> out;
  for (auto& c : cand)
    if (c.first <= exact_min + tol) out.push_back(std::move(c.second));
  std::sort(out.begin(), out.end());
  return out;
}

QuboOptimum brute_force_qubo(const QuboMatrix& q, std::size_t max_n) {
  if (q.size() == 0) return {{}, q.offset()};
  auto mins = enumerate_minimizers(q, -1.0, max_n);
  QuboOptimum o{mins.front(), 0.0};
  o.energy = energy(q, o.x);
  return o;
}

namespace {

template <class F>
void for_each_permutation(std::size_t n, std::size_t max_n, F&& visit) {
  if (n > max_n || n > 12)
    throw CapacityError("permutation brute force limited to n <= " +
                        std::to_string(std::min<std::size_t>(max_n, 12)));
  Permutation perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  do {
    visit(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace

QapOptimum brute_force_qap(const QapInstance& inst, std::size_t max_n) {
  QapOptimum best{{}, std::numeric_limits<double>::infinity()};
  for_each_permutation(inst.size(), max_n, [&](const Permutation& perm) {
    const double e = qap_objective(inst, perm);
    if (e < best.energy) best = {perm, e};
  });
  return best;
}

std::vector<Permutation> all_optimal_permutations(const QapInstance& inst, double tol,
                                                  std::size_t max_n) {
  std::vector<std::pair<double, Permutation>> all;
  double best = std::numeric_limits<double>::infinity();
  for_each_permutation(inst.size(), max_n, [&](const Permutation& perm) {
    const double e = qap_objective(inst, perm);
    best = std::min(best, e);
    all.emplace_back(e, perm);
  });
  std::vector<Permutation> out;
  const double t = tol * std::max(1.0, std::abs(best));
  for (auto& [e, perm] : all)
    if (e <= best + t) out.push_back(std::move(perm));
  return out;
}

double QapObjective::reset(std::span<const std::uint32_t> perm) {
  perm_.assign(perm.begin(), perm.end());
  return qap_objective(*inst_, perm_);
}

double QapObjective::swap_delta(std::size_t i, std::size_t j) {
  if (i == j) return 0.0;
  const auto& F = inst_->flow;
  const auto& D = inst_->dist;
  const auto a = perm_[i], b = perm_[j];
  double d = F(i, i) * (D(b, b) - D(a, a)) + F(j, j) * (D(a, a) - D(b, b)) +
             F(i, j) * (D(b, a) - D(a, b)) + F(j, i) * (D(a, b) - D(b, a));
  const auto n = perm_.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (k == i || k == j) continue;
    const auto pk = perm_[k];
    d += (F(i, k) - F(j, k)) * (D(b, pk) - D(a, pk)) + (F(k, i) - F(k, j)) * (D(pk, b) - D(pk, a));
  }
  return d;
}

void QapObjective::commit_swap(std::size_t i, std::size_t j) { std::swap(perm_[i], perm_[j]); }

PermAnnealResult permutation_annealer(PermutationObjective& obj, const PermAnnealConfig& cfg,
                                      std::optional<Permutation> start) {
  cfg.validate();
  const auto n = obj.size();
  if (n == 0) throw EmptyInputError("empty permutation objective");
  Permutation perm;
  if (start) {
    check_permutation(*start, n);
    perm = *start;
  } else {
    perm.resize(n);
    std::iota(perm.begin(), perm.end(), 0u);
    auto srng = Rng::stream(cfg.seed, "perm.start");
    srng.shuffle(perm.begin(), perm.end());
  }
  double value = obj.reset(perm);
  PermAnnealResult best{perm, value};
  if (n < 2) return best;

  auto rng = Rng::stream(cfg.seed, "perm.moves");
  double t0 = cfg.t0;
  if (t0 <= 0.0) {
    double sum = 0.0;
    std::size_t cnt = 0;
    for (int s = 0; s < 200; ++s) {
      const auto i = rng.below(n);
      auto j = rng.below(n - 1);
      if (j >= i) ++j;
      const double d = std::abs(obj.swap_delta(i, j));
      if (d > 0.0) {
        sum += d;
        ++cnt;
      }
    }
    t0 = cnt ? sum / static_cast<double>(cnt) : 1.0;
  }
  const double t_end = cfg.t_end > 0.0 ? std::min(cfg.t_end, t0) : t0 * 1e-3;
  const double factor =
      cfg.iterations > 1 ? std::pow(t_end / t0, 1.0 / static_cast<double>(cfg.iterations - 1)) : 1.0;

  double temp = t0;
  for (std::size_t it = 0; it < cfg.iterations; ++it, temp *= factor) {
    const auto i = rng.below(n);
    auto j = rng.below(n - 1);
    if (j >= i) ++j;
    const double d = obj.swap_delta(i, j);
    if (d <= 0.0 || rng.uniform() < std::exp(-d / temp)) {
      obj.commit_swap(i, j);
      std::swap(perm[i], perm[j]);
      value += d;
      if (value < best.value - 1e-12 * std::max(1.0, std::abs(best.value))) {
        best.value = value;
        best.perm = perm;
      }
    }
    if (cfg.trace && ((it + 1) % std::max<std::size_t>(1, cfg.trace_every) == 0 || it + 1 == cfg.iterations))
      cfg.trace(it + 1, best.value);
  }
  // Drop accumulated rounding from the incremental sum.
  best.value = obj.reset(best.perm);
  return best;
}

SampleSet SolverSpec::run(const QuboProblem& p, std::uint64_t seed, const Bits& initial) const {
  switch (kind) {
    case Kind::sa: {
      auto c = sa;
      c.seed = seed;
      c.initial_state = initial;
      return simulated_annealing(p, c);
    }
    case Kind::pt: {
      auto c = pt;
      c.seed = seed;
      c.initial_state = initial;
      return parallel_tempering(p, c);
    }
    case Kind::tabu: {
      auto c = tabu;
      c.seed = seed;
      c.initial_state = initial;
      return tabu_search(p, c);
    }
    case Kind::random: return random_sampler(p, random_reads, seed);
  }
  throw ParameterError("unknown solver kind");
}

std::string SolverSpec::label() const { return to_string(kind); }

SolverSpec::Kind solver_kind_from_string(const std::string& s) {
  if (s == "sa") return SolverSpec::Kind::sa;
  if (s == "pt") return SolverSpec::Kind::pt;
  if (s == "tabu") return SolverSpec::Kind::tabu;
  if (s == "random") return SolverSpec::Kind::random;
  throw ParameterError("unknown solver '" + s + "' (sa|pt|tabu|random)");
}

std::string to_string(SolverSpec::Kind k) {
  switch (k) {
    case SolverSpec::Kind::sa: return "sa";
    case SolverSpec::Kind::pt: return "pt";
    case SolverSpec::Kind::tabu: return "tabu";
    case SolverSpec::Kind::random: return "random";
  }
  return "sa";
}

}  // namespace annealbench
