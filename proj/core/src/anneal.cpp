#include "mianneal/anneal.hpp"

#include <algorithm>
#include <atomic>
#include <barrier>
#include <chrono>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

namespace mianneal {

std::string_view to_string(Algorithm algo) noexcept {
  switch (algo) {
    case Algorithm::kSa: return "sa";
    case Algorithm::kSqa: return "sqa";
    case Algorithm::kMi: return "mi";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view text) {
  if (text == "sa") return Algorithm::kSa;
  if (text == "sqa") return Algorithm::kSqa;
  if (text == "mi") return Algorithm::kMi;
  throw std::invalid_argument("unknown algorithm '" + std::string(text) + "' (expected sa, sqa or mi)");
}

std::string_view to_string(SaAttempts mode) noexcept {
  return mode == SaAttempts::kOne ? "one" : "P";
}

SaAttempts parse_sa_attempts(std::string_view text) {
  if (text == "one" || text == "1") return SaAttempts::kOne;
  if (text == "P" || text == "p") return SaAttempts::kPerLayer;
  throw std::invalid_argument("unknown SA attempt mode '" + std::string(text) + "' (expected one or P)");
}

void AnnealRunConfig::set_mcs_limit(std::uint64_t mcs) {
  mcs_limit = mcs;
  temperature.total_mcs = mcs;
  gamma.total_mcs = mcs;
}

std::uint64_t AnnealRunConfig::effective_stride() const noexcept {
  if (trace_stride > 0) return trace_stride;
  return std::max<std::uint64_t>(1, mcs_limit / 1000);
}

void AnnealRunConfig::validate() const {
  if (mcs_limit < 1) throw std::invalid_argument("mcs_limit must be >= 1");
  if (trotter < 1) throw std::invalid_argument("trotter number must be >= 1");
  if (trotter > std::numeric_limits<std::uint32_t>::max())
    throw std::invalid_argument("trotter number too large");
  if (algorithm != Algorithm::kSa && trotter < 2)
    throw std::invalid_argument(std::string(to_string(algorithm)) + " needs trotter number >= 2");
  if (worker_count < 1) throw std::invalid_argument("worker_count must be >= 1");
  if (!(jperp_scale >= 0.0) || !std::isfinite(jperp_scale))
    throw std::invalid_argument("jperp_scale must be a finite non-negative number");
  temperature.validate();
  if (temperature.total_mcs != mcs_limit)
    throw std::invalid_argument("temperature schedule length differs from mcs_limit");
  if (algorithm != Algorithm::kSa) {
    gamma.validate();
    if (gamma.total_mcs != mcs_limit)
      throw std::invalid_argument("gamma schedule length differs from mcs_limit");
  }
}

// ---------------------------------------------------------------------------

TrotterEnsemble::TrotterEnsemble(const ProblemGraph& graph, std::size_t trotter,
                                 const StreamRng& rng, std::uint32_t first_stream)
    : graph_(&graph) {
  if (trotter < 1) throw std::invalid_argument("ensemble needs at least one layer");
  layers_.reserve(trotter);
  for (std::size_t k = 0; k < trotter; ++k)
    layers_.push_back(SpinConfiguration::random(graph.n_nodes(), rng,
                                                first_stream + static_cast<std::uint32_t>(k)));
  init_fields();
}

TrotterEnsemble::TrotterEnsemble(const ProblemGraph& graph, std::vector<SpinConfiguration> layers)
    : graph_(&graph), layers_(std::move(layers)) {
  if (layers_.empty()) throw std::invalid_argument("ensemble needs at least one layer");
  for (const auto& l : layers_)
    if (l.size() != graph.n_nodes()) throw std::invalid_argument("layer size mismatch");
  init_fields();
}

void TrotterEnsemble::init_fields() {
  const std::size_t n = graph_->n_nodes();
  fields_.assign(layers_.size(), std::vector<Energy>(n, 0));
  energies_.resize(layers_.size());
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    for (NodeIndex i = 0; i < n; ++i)
      for (const auto& nb : graph_->neighbors(i)) fields_[k][i] += Energy{nb.w} * layers_[k][nb.node];
    energies_[k] = mianneal::layer_energy(*graph_, layers_[k]);
  }
  // Lowest energy, ties to the lowest index.
  min_index_ = static_cast<std::size_t>(
      std::min_element(energies_.begin(), energies_.end()) - energies_.begin());
  min_energy_ = energies_[min_index_];
  min_snapshot_ = layers_[min_index_];
  retarget_count_ = 0;
}

void TrotterEnsemble::flip(std::size_t k, NodeIndex site) {
  auto& s = layers_[k];
  auto& h = fields_[k];
  energies_[k] += -2 * s[site] * h[site];
  s.flip(site);
  const Energy twice_new = 2 * s[site];
  for (const auto& nb : graph_->neighbors(site)) h[nb.node] += twice_new * nb.w;
}

bool TrotterEnsemble::retarget_if_better(std::size_t k) {
  if (energies_[k] >= min_energy_) return false;
  min_index_ = k;
  min_energy_ = energies_[k];
  min_snapshot_ = layers_[k];
  ++retarget_count_;
  return true;
}

void TrotterEnsemble::set_target(std::size_t k, Energy energy, SpinConfiguration snapshot,
                                 std::uint64_t retargets) {
  min_index_ = k;
  min_energy_ = energy;
  min_snapshot_ = std::move(snapshot);
  retarget_count_ = retargets;
}

bool TrotterEnsemble::audit() const {
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    if (energies_[k] != mianneal::layer_energy(*graph_, layers_[k])) return false;
    for (NodeIndex i = 0; i < graph_->n_nodes(); ++i) {
      Energy h = 0;
      for (const auto& nb : graph_->neighbors(i)) h += Energy{nb.w} * layers_[k][nb.node];
      if (h != fields_[k][i]) return false;
    }
  }
  return mianneal::layer_energy(*graph_, min_snapshot_) == min_energy_;
}

std::size_t layers_at_min(const TrotterEnsemble& ensemble) {
  const auto& e = ensemble.layer_energies();
  return static_cast<std::size_t>(std::count(e.begin(), e.end(), ensemble.min_energy()));
}

// ---------------------------------------------------------------------------

namespace {

using Clock = std::chrono::steady_clock;

bool sample_due(std::uint64_t m, std::uint64_t stride, std::uint64_t limit) {
  return m % stride == 0 || m == limit;
}

TraceRow make_row(std::uint64_t m, double temperature, double gamma, double jp,
                  const TrotterEnsemble& ens) {
  return {m,
          temperature,
          gamma,
          jp,
          cut_from_energy(ens.graph(), ens.min_energy()),
          ens.min_energy(),
          layers_at_min(ens),
          ens.retarget_count()};
}

TrialResult finish(const TrotterEnsemble& ens, ConvergenceTrace trace, std::uint64_t mcs_to_best,
                   Clock::time_point start) {
  TrialResult r;
  r.best_spins = ens.min_snapshot();
  r.best_cut = cut_from_energy(ens.graph(), ens.min_energy());
  r.trace = std::move(trace);
  r.mcs_to_best = mcs_to_best;
  r.wall_time_s = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

void require_algorithm(const AnnealRunConfig& config, Algorithm expected) {
  if (config.algorithm != expected)
    throw std::invalid_argument("config algorithm is '" + std::string(to_string(config.algorithm)) +
                                "', expected '" + std::string(to_string(expected)) + "'");
  config.validate();
}

// Target shared by concurrent MI workers. Readers poll `version` and copy
// the snapshot pointer under the lock when it moves; writers publish only
// on a strict energy improvement.
struct SharedTarget {
  std::mutex mutex;
  std::atomic<std::uint64_t> version{0};
  std::atomic<Energy> energy{0};
  std::shared_ptr<const SpinConfiguration> snapshot;
  std::size_t index = 0;
  std::uint64_t retargets = 0;
  std::uint64_t mcs_to_best = 0;

  bool publish(const TrotterEnsemble& ens, std::size_t k, std::uint64_t m) {
    std::lock_guard lock(mutex);
    const Energy e = ens.layer_energy(k);
    if (e >= energy.load(std::memory_order_relaxed)) return false;
    snapshot = std::make_shared<const SpinConfiguration>(ens.layer(k));
    index = k;
    ++retargets;
    mcs_to_best = m;
    energy.store(e, std::memory_order_relaxed);
    version.fetch_add(1, std::memory_order_release);
    return true;
  }
};

TrialResult mi_run_concurrent(const ProblemGraph& graph, const AnnealRunConfig& config,
                              const McsObserver& observer) {
  const auto start = Clock::now();
  const StreamRng rng(config.seed);
  const std::size_t p = config.trotter;
  const auto n = static_cast<std::uint32_t>(graph.n_nodes());
  const std::uint64_t limit = config.mcs_limit;
  const std::uint64_t stride = config.effective_stride();
  TrotterEnsemble ens(graph, p, rng);

  SharedTarget shared;
  shared.snapshot = std::make_shared<const SpinConfiguration>(ens.min_snapshot());
  shared.index = ens.min_index();
  shared.energy.store(ens.min_energy());

  ConvergenceTrace trace{stride, {}};
  const std::size_t workers = std::min(config.worker_count, p);
  std::uint64_t segment_end = std::min(stride, limit);

  // Runs on one thread while every worker waits, so reading all layers is safe.
  auto on_segment = [&]() noexcept {
    const std::uint64_t m = segment_end;
    {
      std::lock_guard lock(shared.mutex);
      ens.set_target(shared.index, shared.energy.load(), *shared.snapshot, shared.retargets);
    }
    if (sample_due(m, stride, limit)) {
      trace.rows.push_back(make_row(m, config.temperature.value_at(m), config.gamma.value_at(m),
                                    effective_jperp_at(p, config.temperature, config.gamma,
                                                       config.jperp_scale, m),
                                    ens));
    }
    if (observer) observer(m, ens);
    segment_end = std::min(segment_end + stride, limit);
  };
  std::barrier sync(static_cast<std::ptrdiff_t>(workers), on_segment);

  auto work = [&](std::size_t first, std::size_t last) {
    std::shared_ptr<const SpinConfiguration> target;
    std::uint64_t seen_version = ~std::uint64_t{0};
    std::uint64_t m = 1;
    while (m <= limit) {
      const std::uint64_t end = segment_end;
      for (; m <= end; ++m) {
        const double temp = config.temperature.value_at(m);
        const double jp =
            effective_jperp_at(p, config.temperature, config.gamma, config.jperp_scale, m);
        for (std::size_t k = first; k < last; ++k) {
          if (const auto v = shared.version.load(std::memory_order_acquire); v != seen_version) {
            std::lock_guard lock(shared.mutex);
            target = shared.snapshot;
            seen_version = shared.version.load(std::memory_order_relaxed);
          }
          const auto draw = rng.attempt(static_cast<std::uint32_t>(k), m - 1, n);
          const NodeIndex i = draw.site;
          const double delta = static_cast<double>(ens.delta(k, i)) +
                               2.0 * jp * ens.layer(k)[i] * (*target)[i];
          if (!metropolis_accept(delta, temp, draw.uniform)) continue;
          ens.flip(k, i);
          if (ens.layer_energy(k) < shared.energy.load(std::memory_order_relaxed))
            shared.publish(ens, k, m);
        }
      }
      sync.arrive_and_wait();
    }
  };

  {
    std::vector<std::jthread> pool;
    const std::size_t per = p / workers, extra = p % workers;
    std::size_t first = 0;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t count = per + (w < extra ? 1 : 0);
      pool.emplace_back(work, first, first + count);
      first += count;
    }
  }
  return finish(ens, std::move(trace), shared.mcs_to_best, start);
}

}  // namespace

TrialResult sa_run(const ProblemGraph& graph, const AnnealRunConfig& config, std::uint32_t stream,
                   const McsObserver& observer) {
  require_algorithm(config, Algorithm::kSa);
  const auto start = Clock::now();
  const StreamRng rng(config.seed);
  const auto n = static_cast<std::uint32_t>(graph.n_nodes());
  const std::uint64_t attempts = config.sa_attempts == SaAttempts::kOne ? 1 : config.trotter;
  const std::uint64_t stride = config.effective_stride();
  TrotterEnsemble ens(graph, 1, rng, stream);
  ConvergenceTrace trace{stride, {}};
  std::uint64_t mcs_to_best = 0;

  for (std::uint64_t m = 1; m <= config.mcs_limit; ++m) {
    const double temp = config.temperature.value_at(m);
    for (std::uint64_t j = 0; j < attempts; ++j) {
      const auto draw = rng.attempt(stream, (m - 1) * attempts + j, n);
      if (!metropolis_accept(static_cast<double>(ens.delta(0, draw.site)), temp, draw.uniform))
        continue;
      ens.flip(0, draw.site);
      if (ens.retarget_if_better(0)) mcs_to_best = m;
    }
    if (observer) observer(m, ens);
    if (sample_due(m, stride, config.mcs_limit)) trace.rows.push_back(make_row(m, temp, 0.0, 0.0, ens));
  }
  return finish(ens, std::move(trace), mcs_to_best, start);
}

TrialResult sqa_run(const ProblemGraph& graph, const AnnealRunConfig& config,
                    const McsObserver& observer) {
  require_algorithm(config, Algorithm::kSqa);
  const auto start = Clock::now();
  const StreamRng rng(config.seed);
  const std::size_t p = config.trotter;
  const auto n = static_cast<std::uint32_t>(graph.n_nodes());
  const std::uint64_t stride = config.effective_stride();
  TrotterEnsemble ens(graph, p, rng);
  ConvergenceTrace trace{stride, {}};
  std::uint64_t mcs_to_best = 0;

  for (std::uint64_t m = 1; m <= config.mcs_limit; ++m) {
    const double temp = config.temperature.value_at(m);
    const double jp =
        effective_jperp_at(p, config.temperature, config.gamma, config.jperp_scale, m);
    for (std::size_t k = 0; k < p; ++k) {
      const auto draw = rng.attempt(static_cast<std::uint32_t>(k), m - 1, n);
      const NodeIndex i = draw.site;
      const auto& prev = ens.layer((k + p - 1) % p);
      const auto& next = ens.layer((k + 1) % p);
      const double delta = static_cast<double>(ens.delta(k, i)) +
                           2.0 * jp * ens.layer(k)[i] * (prev[i] + next[i]);
      if (!metropolis_accept(delta, temp, draw.uniform)) continue;
      ens.flip(k, i);
      if (ens.retarget_if_better(k)) mcs_to_best = m;
    }
    if (observer) observer(m, ens);
    if (sample_due(m, stride, config.mcs_limit))
      trace.rows.push_back(make_row(m, temp, config.gamma.value_at(m), jp, ens));
  }
  return finish(ens, std::move(trace), mcs_to_best, start);
}

TrialResult mi_run(const ProblemGraph& graph, const AnnealRunConfig& config,
                   const McsObserver& observer) {
  require_algorithm(config, Algorithm::kMi);
  if (config.worker_count > 1) return mi_run_concurrent(graph, config, observer);

  const auto start = Clock::now();
  const StreamRng rng(config.seed);
  const std::size_t p = config.trotter;
  const auto n = static_cast<std::uint32_t>(graph.n_nodes());
  const std::uint64_t stride = config.effective_stride();
  TrotterEnsemble ens(graph, p, rng);
  ConvergenceTrace trace{stride, {}};
  std::uint64_t mcs_to_best = 0;

  for (std::uint64_t m = 1; m <= config.mcs_limit; ++m) {
    const double temp = config.temperature.value_at(m);
    const double jp =
        effective_jperp_at(p, config.temperature, config.gamma, config.jperp_scale, m);
    for (std::size_t k = 0; k < p; ++k) {
      const auto draw = rng.attempt(static_cast<std::uint32_t>(k), m - 1, n);
      const NodeIndex i = draw.site;
      // The min layer also couples to the frozen snapshot, not to itself.
      const double delta = static_cast<double>(ens.delta(k, i)) +
                           2.0 * jp * ens.layer(k)[i] * ens.min_snapshot()[i];
      if (!metropolis_accept(delta, temp, draw.uniform)) continue;
      ens.flip(k, i);
      if (ens.retarget_if_better(k)) mcs_to_best = m;
    }
    if (observer) observer(m, ens);
    if (sample_due(m, stride, config.mcs_limit))
      trace.rows.push_back(make_row(m, temp, config.gamma.value_at(m), jp, ens));
  }
  return finish(ens, std::move(trace), mcs_to_best, start);
}

TrialResult anneal(const ProblemGraph& graph, const AnnealRunConfig& config) {
  switch (config.algorithm) {
    case Algorithm::kSa: return sa_run(graph, config);
    case Algorithm::kSqa: return sqa_run(graph, config);
    case Algorithm::kMi: return mi_run(graph, config);
  }
  throw std::invalid_argument("unknown algorithm");
}

}  // namespace mianneal
