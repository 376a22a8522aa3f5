// Worst-case delay search: find the vector pair that maximizes the latest
// PO stabilization time under the timing model.

#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "hazmax/netlist.hpp"
#include "hazmax/sta.hpp"
#include "hazmax/timing_model.hpp"

namespace hazmax {

enum class SearchStatus { ProvedOptimal, BoundOnly };

std::string_view to_string(SearchStatus status);

struct Optimum {
  Time value = -1;
  std::optional<VectorPair> witness;
  SearchStatus status = SearchStatus::BoundOnly;
  Time upper_bound = -1;      // equals value once proved optimal
  std::uint64_t explored = 0;  // pairs (exhaustive) or tree nodes (branch and bound)
  std::uint64_t leaves = 0;    // complete pairs evaluated
};

class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExhaustiveOptions {
  /// 4^n pairs are enumerated; beyond ~12 inputs this gets slow.
  std::size_t max_inputs = 16;
};

/// Enumerates all 4^n pairs. The witness is the lexicographically smallest
/// maximizing pair (first vector, then second, bits in pis() order).
/// Throws CapacityError when the circuit has more PIs than allowed.
Optimum exhaustive_max_delay(const Circuit& circuit, const ExhaustiveOptions& options = {});

enum class Ternary : std::uint8_t { Zero = 0, One = 1, Unknown = 2 };

/// Partial vector pair, indexed like pis().
struct PartialAssignment {
  std::vector<Ternary> first;
  std::vector<Ternary> second;

  static PartialAssignment empty(const Circuit& circuit);
  static PartialAssignment from_pair(const VectorPair& pair);
  bool complete() const;
};

/// Upper bound on max_late over every completion of a partial assignment.
/// Values are propagated three-valued; a gate whose inputs are all exactly
/// known gets exact times, otherwise its latest stabilization is bounded by
/// its input bounds plus delay and by its STA arrival. Exact on complete
/// assignments.
class BoundEvaluator {
 public:
  BoundEvaluator(const Circuit& circuit, Time horizon);

  Time bound(const PartialAssignment& partial);

 private:
  struct Slot {
    Ternary v1;
    Ternary v2;
    bool exact;
    Time t1;
    Time t2;  // exact t2 or an upper bound when !exact
  };

  const Circuit& circuit_;
  Time horizon_;
  ArrivalMap arrivals_;
  std::vector<Slot> slots_;
  std::vector<SignalState> scratch_;
};

Time bound_partial(const Circuit& circuit, const PartialAssignment& partial);

enum class BranchOrder { Fanout, Name };
enum class ValueOrder { ZeroFirst, OneFirst };

struct SearchBudget {
  std::optional<std::uint64_t> node_limit;
  std::optional<std::chrono::duration<double>> time_limit;
};

struct BranchBoundOptions {
  SearchBudget budget;
  BranchOrder branch_order = BranchOrder::Fanout;
  ValueOrder value_order = ValueOrder::ZeroFirst;
  unsigned jobs = 1;
  /// Pair evaluations spent on a hill-climbing warm start that seeds the
  /// incumbent before the tree search; 0 disables it.
  std::uint64_t warm_start = 0;
  std::uint64_t warm_start_seed = 1;
  /// Called with every new incumbent value (from the thread that found it).
  std::function<void(Time)> on_incumbent;
};

/// Depth-first branch and bound over the 2n (PI, vector) bits, pruning nodes
/// whose bound does not beat the incumbent. Branching variables are the
/// (PI, first) then (PI, second) bits, PIs ordered by decreasing fanout
/// (ties by name) unless BranchOrder::Name is requested. With jobs > 1 the
/// tree is split at the root and the incumbent value is shared. Among
/// witnesses of equal value found, the lexicographically smallest is kept.
Optimum branch_bound_max_delay(const Circuit& circuit, const BranchBoundOptions& options = {});

struct LocalOptimum {
  Time value = -1;
  std::optional<VectorPair> witness;
  std::uint64_t evaluations = 0;
};

/// Random restarts of first-improvement single-bit hill climbing. Stops
/// after `evaluations` pair evaluations or at `deadline`.
LocalOptimum hill_climb(const Circuit& circuit, std::uint64_t evaluations, std::uint64_t seed,
                        std::optional<std::chrono::steady_clock::time_point> deadline = {});

}  // namespace hazmax
