#include "wlgnn/express.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <mutex>
#include <thread>

namespace wlgnn {
namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

struct Outputs {
  std::vector<std::vector<double>> approx;           // per graph, per vertex
  std::vector<std::vector<Rational>> exact;          // rational mode only
};

Outputs evaluate_once(const GnnModel& model, const std::vector<QueryCase>& cases,
                      std::optional<std::uint64_t> seed_base, std::size_t trial) {
  Outputs o;
  for (std::size_t g = 0; g < cases.size(); ++g) {
    RunOptions ro;
    if (seed_base) ro.seed = trial_seed(*seed_base, trial, g);
    const auto res = run(model, cases[g].graph, ro);
    if (res.vertex_output.dim != 1)
      throw ModelError("query check needs a one-dimensional vertex output");
    std::vector<double> a;
    std::vector<Rational> e;
    for (std::size_t v = 0; v < res.vertex_output.size(); ++v) {
      a.push_back(res.vertex_output.row_as_double(v)[0]);
      if (res.vertex_output.mode == NumericMode::Rational) e.push_back(res.vertex_output.exact[v][0]);
    }
    o.approx.push_back(std::move(a));
    o.exact.push_back(std::move(e));
  }
  return o;
}

bool on_side(double out, bool member, double eps) { return member ? out >= 1.0 - eps : out <= eps; }

}  // namespace

std::uint64_t trial_seed(std::uint64_t base, std::size_t trial, std::size_t graph) {
  return splitmix(splitmix(base ^ splitmix(trial)) + graph);
}

std::pair<double, double> wilson_interval(std::size_t successes, std::size_t n, double z) {
  if (n == 0) return {0.0, 1.0};
  const double p = static_cast<double>(successes) / static_cast<double>(n);
  const double nn = static_cast<double>(n);
  const double denom = 1.0 + z * z / nn;
  const double centre = (p + z * z / (2 * nn)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / nn + z * z / (4 * nn * nn)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

ExpressReport expresses_query_check(const GnnModel& model, const std::vector<QueryCase>& cases,
                                    const ExpressOptions& opt) {
  if (!(opt.epsilon >= 0.0 && opt.epsilon < 0.5))
    throw std::invalid_argument("epsilon must lie in [0, 1/2)");
  for (const auto& c : cases)
    if (c.members.size() != c.graph.order())
      throw std::invalid_argument("query membership does not cover the vertex set");

  ExpressReport rep;
  rep.epsilon = opt.epsilon;
  rep.randomised = model.rni_padding > 0;
  const std::size_t trials = rep.randomised ? std::max<std::size_t>(opt.trials, 1) : 1;
  rep.trials = trials;

  std::vector<Outputs> all(trials);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (std::size_t t; (t = next++) < trials;) {
      try {
        all[t] = evaluate_once(model, cases, rep.randomised ? std::optional(opt.seed) : std::nullopt, t);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  {
    const std::size_t workers = std::min<std::size_t>(trials, std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
  }
  if (error) std::rethrow_exception(error);

  double min_pos = INFINITY, max_neg = -INFINITY;
  bool any_pos = false, any_neg = false;
  for (std::size_t g = 0; g < cases.size(); ++g)
    for (std::size_t v = 0; v < cases[g].graph.order(); ++v) {
      VertexMargin vm;
      vm.graph = g;
      vm.vertex = static_cast<Vertex>(v);
      vm.member = cases[g].members[v];
      vm.output = all[0].approx[g][v];
      if (!all[0].exact[g].empty()) vm.exact_output = all[0].exact[g][v];
      std::size_t ok = 0;
      for (std::size_t t = 0; t < trials; ++t) {
        const double out = all[t].approx[g][v];
        vm.deviation = std::max(vm.deviation, std::abs(out - (vm.member ? 1.0 : 0.0)));
        if (on_side(out, vm.member, opt.epsilon)) ++ok;
        if (vm.member) {
          min_pos = std::min(min_pos, out);
          any_pos = true;
        } else {
          max_neg = std::max(max_neg, out);
          any_neg = true;
        }
      }
      vm.success_rate = static_cast<double>(ok) / static_cast<double>(trials);
      rep.achieved_epsilon = std::max(rep.achieved_epsilon, vm.deviation);
      rep.vertices.push_back(std::move(vm));
    }
  if (any_pos && any_neg) rep.margin = min_pos - max_neg;

  for (std::size_t t = 0; t < trials; ++t) {
    bool failed = false;
    for (std::size_t g = 0; g < cases.size() && !failed; ++g)
      for (std::size_t v = 0; v < cases[g].graph.order() && !failed; ++v)
        failed = !on_side(all[t].approx[g][v], cases[g].members[v], opt.epsilon);
    if (failed) ++rep.failed_trials;
  }
  rep.delta_hat = static_cast<double>(rep.failed_trials) / static_cast<double>(trials);
  rep.delta_interval = wilson_interval(rep.failed_trials, trials);
  rep.expresses = rep.randomised ? rep.delta_hat < opt.delta : rep.failed_trials == 0;
  return rep;
}

}  // namespace wlgnn
