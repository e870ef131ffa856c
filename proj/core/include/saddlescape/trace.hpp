#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "saddlescape/types.hpp"

namespace saddlescape {

enum class Event { kGd, kAgd, kPerturbUniform, kNcfStep, kNcfExploit, kNce, kSgd };

std::string_view to_string(Event e);

struct TraceRecord {
  std::int64_t t = 0;
  double f = 0.0;          // objective after this iteration
  double grad_norm = 0.0;  // gradient (or minibatch estimate) norm seen by the iteration
  Event event = Event::kGd;
  bool fallback = false;   // exploit kept x0 because neither candidate decreased f
  std::optional<Vec> x;
  std::optional<Vec> v;    // momentum, accelerated drivers only

  bool operator==(const TraceRecord& o) const;
};

/// One negative-curvature exploit: anchor, direction and the realized decrease.
struct ExploitEvent {
  std::int64_t t = 0;
  Vec anchor;
  Vec e_hat;
  double f_before = 0.0;
  double f_after = 0.0;
  bool moved = false;
  // Decrease fell short of (1/384) sqrt(eps^3/rho): anchor is a candidate
  // second-order stationary point.
  bool candidate = false;

  bool operator==(const ExploitEvent& o) const;
};

struct TraceMeta {
  std::string algorithm;
  std::vector<std::pair<std::string, double>> params;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  Vec x0;
  double f0 = 0.0;
  std::int64_t gradient_evals = 0;    // deterministic gradient queries
  std::int64_t gradient_samples = 0;  // stochastic per-sample gradient queries

  bool operator==(const TraceMeta& o) const;
};

struct Trace {
  TraceMeta meta;
  std::vector<TraceRecord> records;
  std::vector<ExploitEvent> exploits;

  std::int64_t size() const { return static_cast<std::int64_t>(records.size()); }
  // f after iteration t (t >= 1), or f0 for t == 0. Clamped to the last record.
  double f_at(std::int64_t t) const;
  double final_f() const { return records.empty() ? meta.f0 : records.back().f; }
  std::vector<Vec> candidates() const;

  bool operator==(const Trace& o) const;
};

/// Common run controls shared by every driver.
struct RunControls {
  double trust_radius = 1e6;
  bool stop_on_candidate = false;
  bool record_iterates = false;
  // Stop once this many records exist (0 = no budget beyond T_total).
  std::int64_t max_records = 0;
};

/// Iterate left the trust region or became non-finite. Carries the partial trace.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, Trace partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const Trace& partial() const { return partial_; }

 private:
  Trace partial_;
};

}  // namespace saddlescape
