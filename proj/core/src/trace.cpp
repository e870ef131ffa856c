#include "saddlescape/trace.hpp"

#include <algorithm>

namespace saddlescape {

namespace {
bool same_vec(const Vec& a, const Vec& b) {
  return a.size() == b.size() && (a.size() == 0 || a == b);
}

bool same_opt(const std::optional<Vec>& a, const std::optional<Vec>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || same_vec(*a, *b);
}
}  // namespace

std::string_view to_string(Event e) {
  switch (e) {
    case Event::kGd: return "gd";
    case Event::kAgd: return "agd";
    case Event::kPerturbUniform: return "perturb-uniform";
    case Event::kNcfStep: return "ncf-step";
    case Event::kNcfExploit: return "ncf-exploit";
    case Event::kNce: return "nce";
    case Event::kSgd: return "sgd";
  }
  return "unknown";
}

bool TraceRecord::operator==(const TraceRecord& o) const {
  return t == o.t && f == o.f && grad_norm == o.grad_norm && event == o.event &&
         fallback == o.fallback && same_opt(x, o.x) && same_opt(v, o.v);
}

bool ExploitEvent::operator==(const ExploitEvent& o) const {
  return t == o.t && same_vec(anchor, o.anchor) && same_vec(e_hat, o.e_hat) &&
         f_before == o.f_before && f_after == o.f_after && moved == o.moved &&
         candidate == o.candidate;
}

bool TraceMeta::operator==(const TraceMeta& o) const {
  return algorithm == o.algorithm && params == o.params && seed == o.seed &&
         stream_id == o.stream_id && same_vec(x0, o.x0) && f0 == o.f0 &&
         gradient_evals == o.gradient_evals && gradient_samples == o.gradient_samples;
}

bool Trace::operator==(const Trace& o) const {
  return meta == o.meta && records == o.records && exploits == o.exploits;
}

double Trace::f_at(std::int64_t t) const {
  if (t <= 0 || records.empty()) return meta.f0;
  const auto idx = std::min<std::int64_t>(t, size()) - 1;
  return records[static_cast<std::size_t>(idx)].f;
}

std::vector<Vec> Trace::candidates() const {
  std::vector<Vec> out;
  for (const auto& e : exploits) {
    if (e.candidate) out.push_back(e.anchor);
  }
  return out;
}

}  // namespace saddlescape
