#include "hazmax/search.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

#include "timing_rules.hpp"

namespace hazmax {

std::string_view to_string(SearchStatus status) {
  return status == SearchStatus::ProvedOptimal ? "PROVED_OPTIMAL" : "BOUND_ONLY";
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration

Optimum exhaustive_max_delay(const Circuit& circuit, const ExhaustiveOptions& options) {
  const std::size_t n = circuit.pis().size();
  if (n > options.max_inputs) {
    throw CapacityError("exhaustive search limited to " + std::to_string(options.max_inputs) +
                        " primary inputs, circuit has " + std::to_string(n));
  }
  PairEvaluator eval(circuit, horizon(circuit));
  const std::uint64_t count = std::uint64_t{1} << n;
  std::vector<Bit> first(n), second(n);
  auto fill = [n](std::vector<Bit>& bits, std::uint64_t code) {
    for (std::size_t i = 0; i < n; ++i) bits[i] = static_cast<Bit>((code >> (n - 1 - i)) & 1U);
  };

  Optimum best;
  best.value = -2;
  for (std::uint64_t a = 0; a < count; ++a) {
    fill(first, a);
    eval.load_vector(1, first);
    for (std::uint64_t b = 0; b < count; ++b) {
      fill(second, b);
      eval.load_vector(2, second);
      const Time value = eval.propagate();
      // Strict improvement keeps the lexicographically smallest witness.
      if (value > best.value) {
        best.value = value;
        best.witness = VectorPair{first, second};
      }
    }
  }
  best.explored = count * count;
  best.leaves = best.explored;
  best.status = SearchStatus::ProvedOptimal;
  best.upper_bound = best.value;
  return best;
}

// ---------------------------------------------------------------------------
// Partial assignments and the bound

PartialAssignment PartialAssignment::empty(const Circuit& circuit) {
  const std::size_t n = circuit.pis().size();
  return {std::vector<Ternary>(n, Ternary::Unknown), std::vector<Ternary>(n, Ternary::Unknown)};
}

PartialAssignment PartialAssignment::from_pair(const VectorPair& pair) {
  PartialAssignment p;
  for (Bit b : pair.first) p.first.push_back(b ? Ternary::One : Ternary::Zero);
  for (Bit b : pair.second) p.second.push_back(b ? Ternary::One : Ternary::Zero);
  return p;
}

bool PartialAssignment::complete() const {
  auto known = [](Ternary t) { return t != Ternary::Unknown; };
  return std::all_of(first.begin(), first.end(), known) &&
         std::all_of(second.begin(), second.end(), known);
}

namespace {

template <class ValueAt>
Ternary ternary_gate_value(GateKind kind, std::size_t n, ValueAt&& value_at) {
  switch (kind) {
    case GateKind::Inv:
    case GateKind::Buff: {
      const Ternary v = value_at(0);
      if (v == Ternary::Unknown || kind == GateKind::Buff) return v;
      return v == Ternary::One ? Ternary::Zero : Ternary::One;
    }
    case GateKind::Xor:
    case GateKind::Xnor: {
      Bit acc = detail::inverting(kind) ? 1 : 0;
      for (std::size_t i = 0; i < n; ++i) {
        const Ternary v = value_at(i);
        if (v == Ternary::Unknown) return Ternary::Unknown;
        acc ^= static_cast<Bit>(v);
      }
      return static_cast<Ternary>(acc);
    }
    default: {
      const Bit c = *controlling_value(kind);
      bool unknown = false;
      for (std::size_t i = 0; i < n; ++i) {
        const Ternary v = value_at(i);
        if (v == Ternary::Unknown) {
          unknown = true;
        } else if (static_cast<Bit>(v) == c) {
          return static_cast<Ternary>(detail::controlled_output(kind, c));
        }
      }
      if (unknown) return Ternary::Unknown;
      return static_cast<Ternary>(detail::controlled_output(kind, c) ^ 1);
    }
  }
}

}  // namespace

BoundEvaluator::BoundEvaluator(const Circuit& circuit, Time horizon)
    : circuit_(circuit),
      horizon_(horizon),
      arrivals_(sta_arrivals(circuit)),
      slots_(circuit.signal_count()),
      scratch_(circuit.signal_count()) {
  if (!circuit.delays_assigned()) {
    throw std::invalid_argument("circuit has gates without an assigned delay");
  }
}

Time BoundEvaluator::bound(const PartialAssignment& partial) {
  const auto pis = circuit_.pis();
  for (std::size_t i = 0; i < pis.size(); ++i) {
    const Ternary v1 = partial.first[i];
    const Ternary v2 = partial.second[i];
    slots_[pis[i]] = {v1, v2, v1 != Ternary::Unknown && v2 != Ternary::Unknown, 0, 0};
  }
  for (SignalIndex s : circuit_.topo()) {
    const auto& gate = circuit_.gate(s);
    const std::size_t n = gate.inputs.size();
    Slot& out = slots_[s];
    out.v1 = ternary_gate_value(gate.kind, n, [&](std::size_t i) { return slots_[gate.inputs[i]].v1; });
    out.v2 = ternary_gate_value(gate.kind, n, [&](std::size_t i) { return slots_[gate.inputs[i]].v2; });

    bool all_exact = true;
    for (SignalIndex in : gate.inputs) all_exact = all_exact && slots_[in].exact;
    if (all_exact) {
      auto as_state = [&](std::size_t i) -> const SignalState& {
        const Slot& slot = slots_[gate.inputs[i]];
        SignalState& st = scratch_[gate.inputs[i]];
        st = {static_cast<Bit>(slot.v1), static_cast<Bit>(slot.v2), slot.t1, slot.t2};
        return st;
      };
      const StarTimes star = detail::star_times_by(gate.kind, n, as_state);
      const FinalTimes fin = detail::finalize(static_cast<Bit>(out.v1), static_cast<Bit>(out.v2),
                                              star, gate.delay, horizon_);
      out.exact = true;
      out.t1 = fin.t1;
      out.t2 = fin.t2;
      continue;
    }

    // The pre-delay late time is always one of the input late times: the
    // minimum over inputs at the controlling value when such inputs exist,
    // otherwise the maximum over all inputs.
    Time late_ub = -1;
    bool known_ctrl = false;
    if (auto c = controlling_value(gate.kind)) {
      for (SignalIndex in : gate.inputs) {
        const Slot& slot = slots_[in];
        if (slot.v2 != Ternary::Unknown && static_cast<Bit>(slot.v2) == *c) {
          late_ub = known_ctrl ? std::min(late_ub, slot.t2) : slot.t2;
          known_ctrl = true;
        }
      }
    }
    if (!known_ctrl) {
      for (SignalIndex in : gate.inputs) late_ub = std::max(late_ub, slots_[in].t2);
    }
    out.exact = false;
    out.t1 = 0;
    out.t2 = late_ub == -1 ? -1 : std::min(late_ub + gate.delay, arrivals_[s]);
  }
  Time latest = -1;
  for (SignalIndex po : circuit_.pos()) latest = std::max(latest, slots_[po].t2);
  return latest;
}

Time bound_partial(const Circuit& circuit, const PartialAssignment& partial) {
  BoundEvaluator eval(circuit, horizon(circuit));
  return eval.bound(partial);
}

// ---------------------------------------------------------------------------
// Branch and bound

namespace {

struct Variable {
  std::size_t position;  // index into pis()
  bool second;
};

class SharedState {
 public:
  SharedState(const BranchBoundOptions& options)
      : options_(options), start_(std::chrono::steady_clock::now()) {}

  /// Counts a node visit; false when the budget is spent.
  bool admit() {
    if (stop_.load(std::memory_order_relaxed)) return false;
    if (options_.budget.node_limit) {
      const std::uint64_t before = nodes_.fetch_add(1, std::memory_order_relaxed);
      if (before >= *options_.budget.node_limit) {
        nodes_.fetch_sub(1, std::memory_order_relaxed);
        stop_.store(true);
        return false;
      }
    } else {
      nodes_.fetch_add(1, std::memory_order_relaxed);
    }
    if (options_.budget.time_limit &&
        std::chrono::steady_clock::now() - start_ >= *options_.budget.time_limit) {
      stop_.store(true);
      return false;
    }
    return true;
  }

  Time best() const { return best_.load(std::memory_order_acquire); }

  void offer(Time value) {
    if (value <= best()) return;
    std::lock_guard lock(mutex_);
    if (value <= best_.load()) return;
    best_.store(value, std::memory_order_release);
    if (options_.on_incumbent) options_.on_incumbent(value);
  }

  std::uint64_t nodes() const { return nodes_.load(); }
  bool stopped() const { return stop_.load(); }

 private:
  const BranchBoundOptions& options_;
  std::chrono::steady_clock::time_point start_;
  std::atomic<std::uint64_t> nodes_{0};
  std::atomic<bool> stop_{false};
  std::atomic<Time> best_{-2};
  std::mutex mutex_;
};

class Worker {
 public:
  Worker(const Circuit& circuit, Time horizon, const std::vector<Variable>& vars,
         const BranchBoundOptions& options, SharedState& shared)
      : eval_(circuit, horizon),
        partial_(PartialAssignment::empty(circuit)),
        vars_(vars),
        options_(options),
        shared_(shared) {}

  void set_prefix(std::uint64_t code, std::size_t depth) {
    partial_ = PartialAssignment{std::vector<Ternary>(partial_.first.size(), Ternary::Unknown),
                                 std::vector<Ternary>(partial_.second.size(), Ternary::Unknown)};
    for (std::size_t d = 0; d < depth; ++d) {
      const unsigned branch = static_cast<unsigned>((code >> (depth - 1 - d)) & 1U);
      assign(d, branch);
    }
  }

  Time prefix_bound() { return eval_.bound(partial_); }

  /// Explores the subtree below the current assignment. Returns an upper
  /// bound on what was left unexplored when the budget ran out.
  std::optional<Time> dfs(std::size_t depth) {
    if (!shared_.admit()) return eval_.bound(partial_);
    const Time b = eval_.bound(partial_);
    if (depth == vars_.size()) {
      ++leaves_;
      record_leaf(b);
      return std::nullopt;
    }
    if (b <= shared_.best()) return std::nullopt;
    for (unsigned branch = 0; branch < 2; ++branch) {
      assign(depth, branch);
      auto residual = dfs(depth + 1);
      if (residual) {
        Time rest = *residual;
        for (unsigned other = branch + 1; other < 2; ++other) {
          assign(depth, other);
          rest = std::max(rest, eval_.bound(partial_));
        }
        unassign(depth);
        return rest;
      }
    }
    unassign(depth);
    return std::nullopt;
  }

  Time best_value() const { return best_value_; }
  const std::optional<VectorPair>& best_witness() const { return best_witness_; }
  std::uint64_t leaves() const { return leaves_; }

 private:
  void assign(std::size_t depth, unsigned branch) {
    const Variable& v = vars_[depth];
    const bool one = options_.value_order == ValueOrder::ZeroFirst ? branch == 1 : branch == 0;
    (v.second ? partial_.second : partial_.first)[v.position] = one ? Ternary::One : Ternary::Zero;
  }
  void unassign(std::size_t depth) {
    const Variable& v = vars_[depth];
    (v.second ? partial_.second : partial_.first)[v.position] = Ternary::Unknown;
  }

  void record_leaf(Time value) {
    VectorPair pair;
    for (Ternary t : partial_.first) pair.first.push_back(static_cast<Bit>(t));
    for (Ternary t : partial_.second) pair.second.push_back(static_cast<Bit>(t));
    if (value > best_value_ || (value == best_value_ && best_witness_ && pair < *best_witness_)) {
      best_value_ = value;
      best_witness_ = std::move(pair);
    }
    shared_.offer(value);
  }

  BoundEvaluator eval_;
  PartialAssignment partial_;
  const std::vector<Variable>& vars_;
  const BranchBoundOptions& options_;
  SharedState& shared_;
  Time best_value_ = -2;
  std::optional<VectorPair> best_witness_;
  std::uint64_t leaves_ = 0;
};

std::vector<Variable> branching_variables(const Circuit& circuit, BranchOrder order) {
  const auto pis = circuit.pis();
  std::vector<std::size_t> positions(pis.size());
  std::iota(positions.begin(), positions.end(), 0);
  if (order == BranchOrder::Fanout) {
    std::stable_sort(positions.begin(), positions.end(), [&](std::size_t a, std::size_t b) {
      return circuit.fanout(pis[a]) > circuit.fanout(pis[b]);
    });
  }
  std::vector<Variable> vars;
  for (std::size_t p : positions) {
    vars.push_back({p, false});
    vars.push_back({p, true});
  }
  return vars;
}

}  // namespace

LocalOptimum hill_climb(const Circuit& circuit, std::uint64_t evaluations, std::uint64_t seed,
                        std::optional<std::chrono::steady_clock::time_point> deadline) {
  const std::size_t n = circuit.pis().size();
  PairEvaluator eval(circuit, horizon(circuit));
  std::mt19937_64 rng(seed);
  LocalOptimum best;
  VectorPair pair{std::vector<Bit>(n), std::vector<Bit>(n)};
  std::vector<std::size_t> order(2 * n);
  std::iota(order.begin(), order.end(), 0);
  auto flip = [&](std::size_t k) {
    Bit& b = k < n ? pair.first[k] : pair.second[k - n];
    b ^= 1;
  };
  auto spent = [&] {
    if (best.evaluations >= evaluations) return true;
    return deadline && (best.evaluations & 255) == 0 && std::chrono::steady_clock::now() >= *deadline;
  };

  while (!spent()) {
    for (std::size_t i = 0; i < n; ++i) {
      pair.first[i] = static_cast<Bit>(rng() & 1);
      pair.second[i] = static_cast<Bit>(rng() & 1);
    }
    Time current = eval.evaluate(pair.first, pair.second);
    ++best.evaluations;
    bool improved = true;
    while (improved && !spent()) {
      improved = false;
      std::shuffle(order.begin(), order.end(), rng);
      for (std::size_t k : order) {
        if (spent()) break;
        flip(k);
        const Time v = eval.evaluate(pair.first, pair.second);
        ++best.evaluations;
        if (v > current) {
          current = v;
          improved = true;
        } else {
          flip(k);
        }
      }
    }
    if (current > best.value || (current == best.value && best.witness && pair < *best.witness) ||
        !best.witness) {
      best.value = current;
      best.witness = pair;
    }
  }
  return best;
}

Optimum branch_bound_max_delay(const Circuit& circuit, const BranchBoundOptions& options) {
  const Time T = horizon(circuit);
  const std::vector<Variable> vars = branching_variables(circuit, options.branch_order);
  SharedState shared(options);

  LocalOptimum warm;
  if (options.warm_start > 0) {
    std::optional<std::chrono::steady_clock::time_point> deadline;
    if (options.budget.time_limit) {
      deadline = std::chrono::steady_clock::now() +
                 std::chrono::duration_cast<std::chrono::steady_clock::duration>(*options.budget.time_limit);
    }
    warm = hill_climb(circuit, options.warm_start, options.warm_start_seed, deadline);
    if (warm.witness) shared.offer(warm.value);
  }

  const unsigned jobs = std::max(1U, options.jobs);
  std::size_t split = 0;
  if (jobs > 1) {
    while (split < vars.size() && (std::uint64_t{1} << split) < std::uint64_t{jobs} * 8) ++split;
  }
  const std::uint64_t tasks = std::uint64_t{1} << split;

  std::vector<Worker> workers;
  workers.reserve(jobs);
  for (unsigned j = 0; j < jobs; ++j) workers.emplace_back(circuit, T, vars, options, shared);

  std::atomic<std::uint64_t> next_task{0};
  std::vector<Time> residuals(jobs, -1);
  std::vector<bool> aborted(jobs, false);

  auto run = [&](unsigned id) {
    Worker& w = workers[id];
    while (true) {
      const std::uint64_t task = next_task.fetch_add(1);
      if (task >= tasks) return;
      w.set_prefix(task, split);
      std::optional<Time> residual;
      if (shared.stopped()) {
        residual = w.prefix_bound();
      } else {
        residual = w.dfs(split);
      }
      if (residual) {
        aborted[id] = true;
        residuals[id] = std::max(residuals[id], *residual);
      }
    }
  };

  if (jobs == 1) {
    run(0);
  } else {
    std::vector<std::jthread> threads;
    for (unsigned j = 0; j < jobs; ++j) threads.emplace_back(run, j);
  }

  Optimum result;
  result.value = -1;
  if (warm.witness) {
    result.value = warm.value;
    result.witness = warm.witness;
  }
  for (const Worker& w : workers) {
    result.leaves += w.leaves();
    if (!w.best_witness()) continue;
    if (!result.witness || w.best_value() > result.value ||
        (w.best_value() == result.value && *w.best_witness() < *result.witness)) {
      result.value = w.best_value();
      result.witness = w.best_witness();
    }
  }
  result.explored = shared.nodes();

  const bool any_aborted = std::find(aborted.begin(), aborted.end(), true) != aborted.end();
  if (!any_aborted) {
    result.status = SearchStatus::ProvedOptimal;
    result.upper_bound = result.value;
  } else {
    Time ub = result.value;
    for (Time r : residuals) ub = std::max(ub, r);
    result.upper_bound = ub;
    result.status = ub <= result.value && result.witness ? SearchStatus::ProvedOptimal
                                                         : SearchStatus::BoundOnly;
  }
  return result;
}

}  // namespace hazmax
