#include "lochf/numsgp/semigroup.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <numeric>

#include "lochf/error.hpp"

namespace lochf::numsgp {
namespace {

// Membership in <gens> for 0..limit.
std::vector<bool> members(const std::vector<std::uint32_t>& gens, std::uint64_t limit) {
  std::vector<bool> in(limit + 1, false);
  in[0] = true;
  for (std::uint64_t s = 1; s <= limit; ++s) {
    for (auto a : gens) {
      if (a <= s && in[s - a]) {
        in[s] = true;
        break;
      }
    }
  }
  return in;
}

ScanItem inspect(const NumericalSemigroup& s) {
  ScanItem item{s.generators, s.frobenius, {}, std::nullopt};
  const auto h = semigroup_hf(s, s.multiplicity + 1);
  item.hf = h.values;
  for (std::size_t n = 0; n + 1 < item.hf.size(); ++n) {
    if (item.hf[n] > item.hf[n + 1]) {
      item.first_violation = n;
      break;
    }
  }
  return item;
}

void enumerate(const ScanConstraints& c, std::vector<std::uint32_t>& prefix,
               std::vector<std::vector<std::uint32_t>>& out) {
  const std::size_t k = prefix.size();
  if (k >= c.min_embdim && k >= 2) {
    std::uint32_t g = 0;
    for (auto a : prefix) g = std::gcd(g, a);
    if (g == 1) out.push_back(prefix);
  }
  if (k == c.max_embdim) return;
  if (k == 0) {
    for (std::uint32_t a = 2; a <= c.max_multiplicity; ++a) {
      prefix.push_back(a);
      enumerate(c, prefix, out);
      prefix.pop_back();
    }
    return;
  }
  // minimal generators of a semigroup with Frobenius F are at most F + a_1
  const std::uint32_t top = c.max_frobenius + prefix.front();
  const auto in = members(prefix, top);
  for (std::uint32_t a = prefix.back() + 1; a <= top; ++a) {
    if (in[a]) continue;
    prefix.push_back(a);
    enumerate(c, prefix, out);
    prefix.pop_back();
  }
}

ScanReport evaluate(const std::vector<std::vector<std::uint32_t>>& candidates, unsigned jobs,
                    std::int64_t max_frobenius, bool keep_items) {
  std::vector<std::optional<ScanItem>> results(candidates.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto s = semigroup_closure(candidates[i]);
      if (max_frobenius >= 0 && s.frobenius > max_frobenius) continue;
      results[i] = inspect(s);
    }
  };
  jobs = std::max(1u, jobs);
  if (jobs == 1 || candidates.size() < 2) {
    work(0, candidates.size());
  } else {
    std::vector<std::future<void>> tasks;
    const std::size_t chunk = (candidates.size() + jobs - 1) / jobs;
    for (std::size_t b = 0; b < candidates.size(); b += chunk) {
      tasks.push_back(std::async(std::launch::async, work, b,
                                 std::min(candidates.size(), b + chunk)));
    }
    for (auto& t : tasks) t.get();
  }
  ScanReport report;
  for (auto& r : results) {
    if (!r) continue;
    ++report.scanned;
    const bool three = r->generators.size() == 3;
    if (three) ++report.embdim3_scanned;
    if (r->first_violation) {
      if (three) ++report.embdim3_violations;
      report.violations.push_back(*r);
    }
    if (keep_items) report.items.push_back(std::move(*r));
  }
  return report;
}

}  // namespace

bool NumericalSemigroup::contains(std::uint64_t s) const {
  if (static_cast<std::int64_t>(s) > frobenius) return true;
  return s >= apery[s % multiplicity];
}

NumericalSemigroup semigroup_closure(std::vector<std::uint32_t> generators) {
  if (generators.empty()) throw Error(Errc::invalid_input, "semigroup needs generators");
  std::sort(generators.begin(), generators.end());
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
  if (generators.front() == 0) throw Error(Errc::invalid_input, "generators must be positive");
  std::uint32_t g = 0;
  for (auto a : generators) g = std::gcd(g, a);
  if (g != 1) {
    throw Error(Errc::gcd_not_one, "generators have gcd " + std::to_string(g));
  }

  NumericalSemigroup s;
  for (auto a : generators) {
    if (!s.generators.empty() && members(s.generators, a)[a]) {
      s.redundant.push_back(a);
    } else {
      s.generators.push_back(a);
    }
  }
  s.multiplicity = s.generators.front();
  const std::uint64_t limit =
      static_cast<std::uint64_t>(s.generators.front()) * s.generators.back() + 1;
  const auto in = members(s.generators, limit);
  for (std::uint64_t x = 0; x <= limit; ++x) {
    if (!in[x]) {
      s.gaps.push_back(static_cast<std::uint32_t>(x));
      s.frobenius = static_cast<std::int64_t>(x);
    }
  }
  s.apery.assign(s.multiplicity, 0);
  std::vector<bool> seen(s.multiplicity, false);
  for (std::uint64_t x = 0; x <= limit; ++x) {
    if (in[x] && !seen[x % s.multiplicity]) {
      seen[x % s.multiplicity] = true;
      s.apery[x % s.multiplicity] = x;
    }
  }
  return s;
}

std::vector<std::uint64_t> SumsetFiltration::layer(std::uint32_t n) const {
  std::vector<std::uint64_t> out;
  for (std::uint64_t s = 0; s < bound; ++s) {
    if (order[s] == static_cast<std::int32_t>(n)) out.push_back(s);
  }
  return out;
}

SumsetFiltration sumset_filtration(const NumericalSemigroup& s, std::uint32_t n_max) {
  const std::uint64_t a1 = s.generators.front();
  const std::uint64_t ak = s.generators.back();
  SumsetFiltration f;
  f.bound = static_cast<std::uint64_t>(s.frobenius + 1) + std::max(n_max * ak, (n_max + 1) * a1);
  f.order.assign(f.bound, -1);
  f.order[0] = 0;
  for (std::uint64_t x = 1; x < f.bound; ++x) {
    for (auto a : s.generators) {
      if (a <= x && f.order[x - a] >= 0) f.order[x] = std::max(f.order[x], f.order[x - a] + 1);
    }
  }
  return f;
}

HilbertVector semigroup_hf(const NumericalSemigroup& s, std::uint32_t n_max) {
  const auto f = sumset_filtration(s, n_max);
  HilbertVector h;
  h.values.assign(n_max + 1, 0);
  for (std::uint64_t x = 0; x < f.bound; ++x) {
    if (f.order[x] >= 0 && f.order[x] <= static_cast<std::int32_t>(n_max)) ++h.values[f.order[x]];
  }
  h.valid_to = n_max;
  return h;
}

HilbertVector semigroup_hf(const std::vector<std::uint32_t>& generators, std::uint32_t n_max) {
  return semigroup_hf(semigroup_closure(generators), n_max);
}

PresentationCheck verify_presentation(const std::vector<std::uint32_t>& generators,
                                      const locring::QuotientPresentation& candidate,
                                      std::uint32_t n_max) {
  if (candidate.nvars() != generators.size()) {
    throw Error(Errc::invalid_input, "need one variable per semigroup generator");
  }
  const auto s = semigroup_closure(generators);
  if (n_max + 1 > candidate.truncation()) {
    throw Error(Errc::precision_exceeded, "window " + std::to_string(n_max) +
                                              " needs D > " + std::to_string(n_max));
  }
  PresentationCheck check;
  for (std::size_t i = 0; i < candidate.relations().size(); ++i) {
    std::map<std::uint64_t, exactla::Scalar> image;
    for (const auto& [m, c] : candidate.relations()[i].terms()) {
      std::uint64_t e = 0;
      for (std::size_t v = 0; v < m.nvars(); ++v) e += static_cast<std::uint64_t>(m[v]) * generators[v];
      auto [it, fresh] = image.try_emplace(e, c);
      if (!fresh) it->second += c;
    }
    const bool vanishes = std::all_of(image.begin(), image.end(),
                                      [](const auto& kv) { return kv.second.is_zero(); });
    if (!vanishes && !check.failing_relation) {
      check.failing_relation = i;
      check.reason = "relation " + std::to_string(i + 1) + " does not vanish at X_i = t^a_i";
    }
  }
  auto shared = std::make_shared<const locring::QuotientPresentation>(candidate);
  check.semigroup_hf = semigroup_hf(s, n_max);
  check.local_hf = locring::hilbert_function(locring::ModulePresentation::free(shared, 1), n_max);
  for (std::uint32_t n = 0; n <= n_max; ++n) {
    if (check.semigroup_hf.values[n] != check.local_hf.values[n]) {
      check.mismatch_degree = n;
      if (!check.failing_relation) {
        check.reason = "Hilbert functions differ in degree " + std::to_string(n) + ": " +
                       std::to_string(check.semigroup_hf.values[n]) + " vs " +
                       std::to_string(check.local_hf.values[n]);
      }
      break;
    }
  }
  check.verified = !check.failing_relation && !check.mismatch_degree;
  return check;
}

ScanReport monotonicity_scan(const ScanConstraints& constraints) {
  std::vector<std::vector<std::uint32_t>> candidates;
  std::vector<std::uint32_t> prefix;
  enumerate(constraints, prefix, candidates);
  return evaluate(candidates, constraints.jobs, constraints.max_frobenius, false);
}

ScanReport monotonicity_scan(const std::vector<std::vector<std::uint32_t>>& candidates,
                             unsigned jobs) {
  return evaluate(candidates, jobs, -1, true);
}

}  // namespace lochf::numsgp
